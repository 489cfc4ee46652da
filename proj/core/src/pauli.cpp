#include "qc/pauli.hpp"

#include <json.hpp>

#include <array>
#include <map>
#include <sstream>

namespace qc {

Pauli::Pauli(int phase, std::vector<std::uint8_t> xs, std::vector<std::uint8_t> zs)
    : c(mod3(phase)), a(std::move(xs)), b(std::move(zs)) {
  if (a.size() != b.size()) throw ContractViolation("Pauli: exponent length mismatch");
  for (auto& v : a) v %= 3;
  for (auto& v : b) v %= 3;
}

Pauli Pauli::z_on(int n, int wire, int power) { return single(n, wire, 0, power); }
Pauli Pauli::x_on(int n, int wire, int power) { return single(n, wire, power, 0); }

Pauli Pauli::single(int n, int wire, int x, int z, int phase) {
  Pauli p(n);
  p.a.at(wire) = static_cast<std::uint8_t>(mod3(x));
  p.b.at(wire) = static_cast<std::uint8_t>(mod3(z));
  p.c = mod3(phase);
  return p;
}

bool Pauli::is_scalar() const {
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] || b[j]) return false;
  return true;
}

std::string Pauli::str() const {
  std::string s;
  if (c) s = "w^" + std::to_string(c);
  for (std::size_t j = 0; j < a.size(); ++j) {
    std::string f;
    if (a[j]) f += a[j] == 1 ? "X" : "X^2";
    if (b[j]) f += b[j] == 1 ? "Z" : "Z^2";
    if (f.empty()) f = "I";
    s += (s.empty() ? "" : " ") + f;
  }
  return s.empty() ? "w^0" : s;
}

Pauli parse_pauli(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  Pauli p;
  while (is >> tok) {
    if (tok.rfind("w^", 0) == 0) {
      p.c = mod3(std::stoi(tok.substr(2)));
      continue;
    }
    int x = 0, z = 0;
    if (tok != "I") {
      std::size_t i = 0;
      auto read = [&](char letter, int& out) {
        if (i < tok.size() && tok[i] == letter) {
          ++i;
          out = 1;
          if (i + 1 < tok.size() && tok[i] == '^') {
            out = tok[i + 1] - '0';
            i += 2;
          }
        }
      };
      read('X', x);
      read('Z', z);
      if (i != tok.size() || x < 0 || x > 2 || z < 0 || z > 2)
        throw std::invalid_argument("bad Pauli factor '" + tok + "'");
    }
    p.a.push_back(static_cast<std::uint8_t>(x));
    p.b.push_back(static_cast<std::uint8_t>(z));
  }
  return p;
}

Pauli pauli_mul(const Pauli& p, const Pauli& q) {
  if (p.n() != q.n()) throw ContractViolation("pauli_mul: length mismatch");
  Pauli r(p.n());
  int phase = p.c + q.c;
  for (int j = 0; j < p.n(); ++j) {
    // Z^b X^a' = w^{b a'} X^a' Z^b
    phase += p.b[j] * q.a[j];
    r.a[j] = static_cast<std::uint8_t>((p.a[j] + q.a[j]) % 3);
    r.b[j] = static_cast<std::uint8_t>((p.b[j] + q.b[j]) % 3);
  }
  r.c = mod3(phase);
  return r;
}

Pauli pauli_pow(const Pauli& p, int k) {
  Pauli r = Pauli::identity(p.n());
  for (int i = 0; i < mod3(k); ++i) r = pauli_mul(r, p);
  return r;
}

int commutation_phase(const Pauli& p, const Pauli& q) {
  if (p.n() != q.n()) throw ContractViolation("commutation_phase: length mismatch");
  int e = 0;
  for (int j = 0; j < p.n(); ++j) e += p.b[j] * q.a[j] - q.b[j] * p.a[j];
  return mod3(e);
}

CycloMatrix pauli_matrix(const Pauli& p) {
  const CycloMatrix& x = local_matrix(GateKind::X);
  const CycloMatrix& z = local_matrix(GateKind::Z);
  CycloMatrix m = CycloMatrix::identity(1) * CycloNumber::omega_pow(p.c);
  for (int j = 0; j < p.n(); ++j) {
    CycloMatrix f = CycloMatrix::identity(3);
    for (int i = 0; i < p.a[j]; ++i) f = f * x;
    for (int i = 0; i < p.b[j]; ++i) f = f * z;
    m = m.tensor(f);
  }
  return m;
}

// ---------------------------------------------------------------------------
// gate actions, derived from the exact matrices

namespace {

struct Action {
  int arity = 0;
  // images of X_0, Z_0, X_1, Z_1 (local wires)
  std::array<Pauli, 4> fwd;
  std::array<Pauli, 4> bwd;
};

Pauli match_pauli(const CycloMatrix& m, int k) {
  const int total = k == 1 ? 9 : 81;
  for (int idx = 0; idx < total; ++idx) {
    Pauli p(k);
    int r = idx;
    for (int j = 0; j < k; ++j) {
      p.a[j] = static_cast<std::uint8_t>(r % 3);
      r /= 3;
      p.b[j] = static_cast<std::uint8_t>(r % 3);
      r /= 3;
    }
    CycloMatrix pm = pauli_matrix(p);
    for (int c = 0; c < 3; ++c)
      if (pm * CycloNumber::omega_pow(c) == m) {
        p.c = c;
        return p;
      }
  }
  throw std::logic_error("gate does not normalize the Pauli group");
}

Action derive_action(GateKind kind) {
  Action act;
  Gate probe{kind, 0, 1};
  act.arity = probe.arity();
  if (act.arity == 0) return act;
  const CycloMatrix& u = local_matrix(kind);
  const CycloMatrix ud = u.dagger();
  for (int w = 0; w < act.arity; ++w) {
    Pauli gx = Pauli::x_on(act.arity, w), gz = Pauli::z_on(act.arity, w);
    act.fwd[2 * w] = match_pauli(u * pauli_matrix(gx) * ud, act.arity);
    act.fwd[2 * w + 1] = match_pauli(u * pauli_matrix(gz) * ud, act.arity);
    act.bwd[2 * w] = match_pauli(ud * pauli_matrix(gx) * u, act.arity);
    act.bwd[2 * w + 1] = match_pauli(ud * pauli_matrix(gz) * u, act.arity);
  }
  return act;
}

const Action& action_of(GateKind k) {
  static const std::map<GateKind, Action> table = [] {
    std::map<GateKind, Action> t;
    for (int i = 0; i <= static_cast<int>(GateKind::RemoteXC); ++i) {
      auto kind = static_cast<GateKind>(i);
      t.emplace(kind, derive_action(kind));
    }
    return t;
  }();
  return table.at(k);
}

Pauli act(const Gate& g, const Pauli& p, bool forward) {
  const Action& ac = action_of(g.kind);
  if (ac.arity == 0) return p;
  std::array<int, 2> wires{g.w0, g.w1};
  for (int w = 0; w < ac.arity; ++w)
    if (wires[w] < 0 || wires[w] >= p.n()) throw ContractViolation("gate wire outside Pauli");
  const auto& img = forward ? ac.fwd : ac.bwd;
  Pauli local = Pauli::identity(ac.arity);
  for (int w = 0; w < ac.arity; ++w) {
    local = pauli_mul(local, pauli_pow(img[2 * w], p.a[wires[w]]));
    local = pauli_mul(local, pauli_pow(img[2 * w + 1], p.b[wires[w]]));
  }
  Pauli r = p;
  r.c = mod3(p.c + local.c);
  for (int w = 0; w < ac.arity; ++w) {
    r.a[wires[w]] = local.a[w];
    r.b[wires[w]] = local.b[w];
  }
  return r;
}

}  // namespace

Pauli conjugate_gate(const Gate& g, const Pauli& p) { return act(g, p, true); }
Pauli preimage_gate(const Gate& g, const Pauli& p) { return act(g, p, false); }

// ---------------------------------------------------------------------------
// tableaus

Tableau Tableau::identity(int n) {
  Tableau t;
  t.n = n;
  for (int j = 0; j < n; ++j) {
    t.zimg.push_back(Pauli::z_on(n, j));
    t.ximg.push_back(Pauli::x_on(n, j));
  }
  return t;
}

Pauli Tableau::apply(const Pauli& p) const {
  if (p.n() != n) throw ContractViolation("Tableau::apply: length mismatch");
  Pauli r = Pauli::identity(n);
  r.c = p.c;
  for (int j = 0; j < n; ++j) {
    r = pauli_mul(r, pauli_pow(ximg[j], p.a[j]));
    r = pauli_mul(r, pauli_pow(zimg[j], p.b[j]));
  }
  return r;
}

namespace {

using Mat3 = std::vector<std::vector<int>>;

// column k holds the exponents of the image of generator k (X_0..X_{n-1}, Z_0..Z_{n-1})
Mat3 exponent_matrix(const Tableau& t) {
  const int n = t.n;
  Mat3 m(2 * n, std::vector<int>(2 * n, 0));
  for (int k = 0; k < 2 * n; ++k) {
    const Pauli& p = k < n ? t.ximg[k] : t.zimg[k - n];
    for (int j = 0; j < n; ++j) {
      m[j][k] = p.a[j];
      m[n + j][k] = p.b[j];
    }
  }
  return m;
}

std::optional<Mat3> invert_mod3(Mat3 m) {
  const int d = static_cast<int>(m.size());
  Mat3 inv(d, std::vector<int>(d, 0));
  for (int i = 0; i < d; ++i) inv[i][i] = 1;
  for (int col = 0; col < d; ++col) {
    int piv = -1;
    for (int r = col; r < d; ++r)
      if (m[r][col] % 3) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    const int s = m[col][col] == 1 ? 1 : 2;  // inverse in Z3
    for (int j = 0; j < d; ++j) {
      m[col][j] = mod3(m[col][j] * s);
      inv[col][j] = mod3(inv[col][j] * s);
    }
    for (int r = 0; r < d; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const int f = m[r][col];
      for (int j = 0; j < d; ++j) {
        m[r][j] = mod3(m[r][j] - f * m[col][j]);
        inv[r][j] = mod3(inv[r][j] - f * inv[col][j]);
      }
    }
  }
  return inv;
}

}  // namespace

bool Tableau::valid() const {
  if (static_cast<int>(zimg.size()) != n || static_cast<int>(ximg.size()) != n) return false;
  for (int j = 0; j < n; ++j)
    if (zimg[j].n() != n || ximg[j].n() != n) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (commutation_phase(zimg[i], ximg[j]) != (i == j ? 1 : 0)) return false;
      if (commutation_phase(zimg[i], zimg[j]) != 0) return false;
      if (commutation_phase(ximg[i], ximg[j]) != 0) return false;
    }
  return invert_mod3(exponent_matrix(*this)).has_value();
}

void tableau_apply_gate(Tableau& t, const Gate& g) {
  if (g.is_scalar()) return;
  for (auto& p : t.zimg) p = conjugate_gate(g, p);
  for (auto& p : t.ximg) p = conjugate_gate(g, p);
}

Tableau tableau_of(const Circuit& c) {
  validate(c);
  Tableau t = Tableau::identity(c.n);
  for (const auto& g : c.word) tableau_apply_gate(t, g);
  return t;
}

Tableau tableau_compose(const Tableau& t1, const Tableau& t2) {
  if (t1.n != t2.n) throw ContractViolation("tableau_compose: size mismatch");
  if (!t1.valid() || !t2.valid()) throw ContractViolation("tableau_compose: invalid tableau");
  Tableau r = t1;
  for (auto& p : r.zimg) p = t2.apply(p);
  for (auto& p : r.ximg) p = t2.apply(p);
  return r;
}

Tableau tableau_invert(const Tableau& t) {
  if (!t.valid()) throw ContractViolation("tableau_invert: invalid tableau");
  const int n = t.n;
  auto inv = invert_mod3(exponent_matrix(t));
  Tableau r;
  r.n = n;
  r.zimg.resize(n);
  r.ximg.resize(n);
  for (int k = 0; k < 2 * n; ++k) {
    // target generator has exponent vector e_k; preimage exponents = inv column k
    Pauli p(n);
    for (int j = 0; j < n; ++j) {
      p.a[j] = static_cast<std::uint8_t>((*inv)[j][k]);
      p.b[j] = static_cast<std::uint8_t>((*inv)[n + j][k]);
    }
    p.c = mod3(-t.apply(p).c);
    if (k < n) r.ximg[k] = p;
    else r.zimg[k - n] = p;
  }
  return r;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

nlohmann::json pauli_json(const Pauli& p) { return {{"c", p.c}, {"a", p.a}, {"b", p.b}}; }

Pauli pauli_from(const nlohmann::json& j) {
  return Pauli(j.at("c").get<int>(), j.at("a").get<std::vector<std::uint8_t>>(),
               j.at("b").get<std::vector<std::uint8_t>>());
}

}  // namespace

std::string tableau_to_json(const Tableau& t) {
  nlohmann::json j;
  j["n"] = t.n;
  j["z"] = nlohmann::json::array();
  j["x"] = nlohmann::json::array();
  for (const auto& p : t.zimg) j["z"].push_back(pauli_json(p));
  for (const auto& p : t.ximg) j["x"].push_back(pauli_json(p));
  return j.dump(2);
}

Tableau tableau_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  Tableau t;
  t.n = j.at("n").get<int>();
  for (const auto& p : j.at("z")) t.zimg.push_back(pauli_from(p));
  for (const auto& p : j.at("x")) t.ximg.push_back(pauli_from(p));
  if (!t.valid()) throw std::invalid_argument("tableau is not a valid Clifford tableau");
  return t;
}

}  // namespace qc
