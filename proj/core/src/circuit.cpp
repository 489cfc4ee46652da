#include "qc/circuit.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <map>
#include <random>
#include <sstream>

namespace qc {

Gate Gate::cz(int i, int j) { return {j == i + 1 ? GateKind::CZ : GateKind::RemoteCZ, i, j}; }
Gate Gate::cx(int i, int j) { return {j == i + 1 ? GateKind::CX : GateKind::RemoteCX, i, j}; }
Gate Gate::xc(int i, int j) { return {j == i + 1 ? GateKind::XC : GateKind::RemoteXC, i, j}; }

int Gate::arity() const {
  switch (kind) {
    case GateKind::MinusOmega:
    case GateKind::MinusOne:
    case GateKind::Omega:
      return 0;
    case GateKind::H:
    case GateKind::S:
    case GateKind::SPrime:
    case GateKind::Z:
    case GateKind::X:
      return 1;
    default:
      return 2;
  }
}

bool Gate::is_primitive() const {
  return kind == GateKind::MinusOmega || kind == GateKind::H || kind == GateKind::S ||
         kind == GateKind::CZ;
}

std::string gate_name(GateKind k) {
  switch (k) {
    case GateKind::MinusOmega: return "W";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::CZ: return "CZ";
    case GateKind::MinusOne: return "MINUS";
    case GateKind::Omega: return "OMEGA";
    case GateKind::SPrime: return "SP";
    case GateKind::Z: return "Z";
    case GateKind::X: return "X";
    case GateKind::Swap: return "SWAP";
    case GateKind::CX: return "CX";
    case GateKind::XC: return "XC";
    case GateKind::RemoteCZ: return "CZ";
    case GateKind::RemoteCX: return "CX";
    case GateKind::RemoteXC: return "XC";
  }
  return "?";
}

Circuit& Circuit::add(const Gate& g, int power) {
  for (int i = 0; i < power; ++i) word.push_back(g);
  return *this;
}

Circuit& Circuit::append(const Circuit& c) {
  if (c.n > n) n = c.n;
  word.insert(word.end(), c.word.begin(), c.word.end());
  return *this;
}

namespace {

bool gate_valid(const Gate& g, int n) {
  switch (g.arity()) {
    case 0: return true;
    case 1: return g.w0 >= 0 && g.w0 < n;
    default:
      if (g.w0 < 0 || g.w1 >= n || g.w0 >= g.w1) return false;
      switch (g.kind) {
        case GateKind::CZ:
        case GateKind::Swap:
        case GateKind::CX:
        case GateKind::XC:
          return g.w1 == g.w0 + 1;
        default:
          return g.w1 > g.w0 + 1;
      }
  }
}

}  // namespace

bool Circuit::valid() const {
  if (n < 0) return false;
  for (const auto& g : word)
    if (!gate_valid(g, n)) return false;
  return true;
}

void validate(const Circuit& c) {
  for (const auto& g : c.word)
    if (!gate_valid(g, c.n))
      throw ContractViolation("gate " + print_gate(g) + " invalid for n=" + std::to_string(c.n));
}

// ---------------------------------------------------------------------------
// expansion

namespace {

void push_z(Circuit& c, int w) {
  c.add(Gate::s(w)).add(Gate::h(w), 2).add(Gate::s(w), 2).add(Gate::h(w), 2);
}

void push_cx(Circuit& c, int i) {
  c.add(Gate::h(i + 1)).add(Gate{GateKind::CZ, i, i + 1}).add(Gate::h(i + 1), 3);
}

void push_xc(Circuit& c, int i) {
  c.add(Gate::h(i)).add(Gate{GateKind::CZ, i, i + 1}).add(Gate::h(i), 3);
}

void push_swap(Circuit& c, int i) {
  push_cx(c, i);
  push_xc(c, i);
  push_xc(c, i);
  push_cx(c, i);
  c.add(Gate::h(i), 2).add(Gate::minus_omega(), 3);
}

void push_expanded(Circuit& c, const Gate& g) {
  switch (g.kind) {
    case GateKind::MinusOmega:
    case GateKind::H:
    case GateKind::S:
    case GateKind::CZ:
      c.add(g);
      return;
    case GateKind::MinusOne: c.add(Gate::minus_omega(), 3); return;
    case GateKind::Omega: c.add(Gate::minus_omega(), 4); return;
    case GateKind::SPrime:
      c.add(Gate::h(g.w0), 2).add(Gate::s(g.w0)).add(Gate::h(g.w0), 2);
      return;
    case GateKind::Z: push_z(c, g.w0); return;
    case GateKind::X:
      c.add(Gate::h(g.w0));
      push_z(c, g.w0);
      c.add(Gate::h(g.w0), 3);
      return;
    case GateKind::Swap: push_swap(c, g.w0); return;
    case GateKind::CX: push_cx(c, g.w0); return;
    case GateKind::XC: push_xc(c, g.w0); return;
    case GateKind::RemoteCZ:
    case GateKind::RemoteCX:
    case GateKind::RemoteXC: {
      const int i = g.w0, j = g.w1;
      for (int k = j - 1; k > i; --k) push_swap(c, k);
      if (g.kind == GateKind::RemoteCZ) c.add(Gate{GateKind::CZ, i, i + 1});
      else if (g.kind == GateKind::RemoteCX) push_cx(c, i);
      else push_xc(c, i);
      for (int k = i + 1; k < j; ++k) push_swap(c, k);
      return;
    }
  }
}

int inverse_power(GateKind k) {
  switch (k) {
    case GateKind::MinusOmega: return 5;
    case GateKind::H: return 3;
    case GateKind::MinusOne:
    case GateKind::Swap:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

Circuit expand_derived(const Gate& g, int n) {
  Circuit c(n);
  push_expanded(c, g);
  return c;
}

Circuit expand_all(const Circuit& in) {
  Circuit c(in.n);
  for (const auto& g : in.word) push_expanded(c, g);
  return c;
}

Circuit inverse(const Circuit& c) {
  Circuit r(c.n);
  for (auto it = c.word.rbegin(); it != c.word.rend(); ++it) r.add(*it, inverse_power(it->kind));
  return r;
}

// ---------------------------------------------------------------------------
// matrices

namespace {

CycloMatrix make_local(GateKind k) {
  const CycloNumber w = CycloNumber::omega();
  const CycloNumber w2 = CycloNumber::omega_pow(2);
  auto perm9 = [](auto f) {
    CycloMatrix m(9, 9);
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) {
        auto [p, q] = f(x, y);
        m(3 * p + q, 3 * x + y) = 1;
      }
    return m;
  };
  switch (k) {
    case GateKind::MinusOmega: return CycloMatrix::diag({CycloNumber::unit_phase(1)});
    case GateKind::MinusOne: return CycloMatrix::diag({CycloNumber(-1)});
    case GateKind::Omega: return CycloMatrix::diag({w});
    case GateKind::H: {
      // 1/(w^2 - w) = (1 + 2w)/3
      const CycloNumber scale(1, 2, 1);
      CycloMatrix m(3, 3);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = scale * CycloNumber::omega_pow(r * c);
      return m;
    }
    case GateKind::S: return CycloMatrix::diag({w, w, 1});
    case GateKind::SPrime: return CycloMatrix::diag({w, 1, w});
    case GateKind::Z: return CycloMatrix::diag({1, w, w2});
    case GateKind::X: {
      CycloMatrix m(3, 3);
      for (int j = 0; j < 3; ++j) m((j + 1) % 3, j) = 1;
      return m;
    }
    case GateKind::CZ:
    case GateKind::RemoteCZ: {
      std::vector<CycloNumber> d;
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) d.push_back(CycloNumber::omega_pow(x * y));
      return CycloMatrix::diag(d);
    }
    case GateKind::Swap: return perm9([](int x, int y) { return std::pair{y, x}; });
    case GateKind::CX:
    case GateKind::RemoteCX:
      return perm9([](int x, int y) { return std::pair{x, (x + y) % 3}; });
    case GateKind::XC:
    case GateKind::RemoteXC:
      return perm9([](int x, int y) { return std::pair{(x + y) % 3, y}; });
  }
  return {};
}

std::size_t pow3(int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= 3;
  return r;
}

// Applies the local matrix to every column; get(row, col) returns a mutable reference.
template <class Access>
void apply_local(const Gate& g, int n, std::size_t ncols, Access&& get) {
  const CycloMatrix& u = local_matrix(g.kind);
  const std::size_t dim = pow3(n);
  if (g.arity() == 0) {
    const CycloNumber& s = u(0, 0);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < ncols; ++c) get(r, c) = get(r, c) * s;
    return;
  }
  std::array<std::size_t, 9> offs{};
  std::size_t local = 0;
  std::vector<std::size_t> strides;
  strides.push_back(pow3(n - 1 - g.w0));
  if (g.arity() == 2) strides.push_back(pow3(n - 1 - g.w1));
  if (strides.size() == 1) {
    local = 3;
    for (int i = 0; i < 3; ++i) offs[i] = i * strides[0];
  } else {
    local = 9;
    for (int i = 0; i < 9; ++i) offs[i] = (i / 3) * strides[0] + (i % 3) * strides[1];
  }
  std::array<CycloNumber, 9> in;
  for (std::size_t base = 0; base < dim; ++base) {
    bool is_base = true;
    for (auto st : strides)
      if ((base / st) % 3 != 0) is_base = false;
    if (!is_base) continue;
    for (std::size_t c = 0; c < ncols; ++c) {
      for (std::size_t i = 0; i < local; ++i) in[i] = get(base + offs[i], c);
      for (std::size_t i = 0; i < local; ++i) {
        CycloNumber acc;
        for (std::size_t j = 0; j < local; ++j) {
          const CycloNumber& e = u(i, j);
          if (!e.is_zero() && !in[j].is_zero()) acc += e * in[j];
        }
        get(base + offs[i], c) = std::move(acc);
      }
    }
  }
}

}  // namespace

const CycloMatrix& local_matrix(GateKind k) {
  static const std::map<GateKind, CycloMatrix> table = [] {
    std::map<GateKind, CycloMatrix> t;
    for (int i = 0; i <= static_cast<int>(GateKind::RemoteXC); ++i) {
      auto kind = static_cast<GateKind>(i);
      t.emplace(kind, make_local(kind));
    }
    return t;
  }();
  return table.at(k);
}

void apply_gate(const Gate& g, int n, CycloMatrix& m) {
  apply_local(g, n, m.cols(), [&](std::size_t r, std::size_t c) -> CycloNumber& { return m(r, c); });
}

void apply_gate(const Gate& g, int n, std::vector<CycloNumber>& state) {
  apply_local(g, n, 1, [&](std::size_t r, std::size_t) -> CycloNumber& { return state[r]; });
}

CycloMatrix interpret(const Circuit& c) {
  validate(c);
  CycloMatrix m = CycloMatrix::identity(pow3(c.n));
  for (const auto& g : c.word) apply_gate(g, c.n, m);
  return m;
}

CycloMatrix interpret_expanded(const Circuit& c) { return interpret(expand_all(c)); }

std::vector<CycloNumber> interpret_column(const Circuit& c, std::size_t column) {
  validate(c);
  std::vector<CycloNumber> st(pow3(c.n));
  st.at(column) = 1;
  for (const auto& g : c.word) apply_gate(g, c.n, st);
  return st;
}

// ---------------------------------------------------------------------------
// text format

ParseError::ParseError(Kind k, int ln, int col, std::string tok, const std::string& msg)
    : std::runtime_error(std::to_string(ln) + ":" + std::to_string(col) + ": " + msg),
      kind(k),
      line(ln),
      column(col),
      token(std::move(tok)) {}

namespace {

struct Token {
  std::string text;
  int line;
  int col;
};

std::optional<long long> parse_int(const std::string& s) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

const std::map<std::string, GateKind>& gate_table() {
  static const std::map<std::string, GateKind> t = {
      {"H", GateKind::H},         {"S", GateKind::S},       {"CZ", GateKind::CZ},
      {"SP", GateKind::SPrime},   {"Z", GateKind::Z},       {"X", GateKind::X},
      {"SWAP", GateKind::Swap},   {"CX", GateKind::CX},     {"XC", GateKind::XC},
      {"W", GateKind::MinusOmega}, {"OMEGA", GateKind::Omega}, {"MINUS", GateKind::MinusOne},
  };
  return t;
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  std::vector<std::vector<Token>> stmts(1);
  int line = 1, col = 1;
  bool comment = false;
  std::string cur;
  int cur_line = 0, cur_col = 0;
  auto flush_token = [&] {
    if (!cur.empty()) stmts.back().push_back({cur, cur_line, cur_col});
    cur.clear();
  };
  for (char ch : text) {
    if (ch == '\n') {
      flush_token();
      stmts.emplace_back();
      comment = false;
      ++line;
      col = 1;
      continue;
    }
    if (!comment) {
      if (ch == '#') {
        flush_token();
        comment = true;
      } else if (ch == ';') {
        flush_token();
        stmts.emplace_back();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        flush_token();
      } else {
        if (cur.empty()) {
          cur_line = line;
          cur_col = col;
        }
        cur.push_back(ch);
      }
    }
    ++col;
  }
  flush_token();

  auto syntax = [](const Token& t, const std::string& msg) {
    return ParseError(ParseError::Kind::Syntax, t.line, t.col, t.text,
                      "syntax error at '" + t.text + "': " + msg);
  };

  Circuit c;
  bool have_header = false;
  for (auto& st : stmts) {
    if (st.empty()) continue;
    if (!have_header) {
      std::string joined;
      for (auto& t : st) joined += t.text;
      if (joined.size() < 3 || joined.rfind("n=", 0) != 0) throw syntax(st[0], "expected header n=<int>");
      auto v = parse_int(joined.substr(2));
      if (!v || *v < 0 || *v > 64) throw syntax(st[0], "bad wire count");
      c.n = static_cast<int>(*v);
      have_header = true;
      continue;
    }
    const Token& head = st[0];
    std::string name = head.text;
    long long power = 1;
    if (auto caret = name.find('^'); caret != std::string::npos) {
      auto p = parse_int(name.substr(caret + 1));
      if (!p || *p < 0) throw syntax(head, "bad power suffix");
      power = *p;
      name = name.substr(0, caret);
    }
    auto it = gate_table().find(name);
    if (it == gate_table().end()) throw syntax(head, "unknown gate");
    Gate g{it->second, -1, -1};
    const int ar = g.arity();
    if (static_cast<int>(st.size()) - 1 != ar)
      throw syntax(head, "expected " + std::to_string(ar) + " wire argument(s)");
    std::vector<int> wires;
    for (std::size_t i = 1; i < st.size(); ++i) {
      auto v = parse_int(st[i].text);
      if (!v) throw syntax(st[i], "expected wire index");
      if (*v < 0 || *v >= c.n)
        throw ParseError(ParseError::Kind::WireRange, st[i].line, st[i].col, st[i].text,
                         "wire " + st[i].text + " out of range for n=" + std::to_string(c.n));
      wires.push_back(static_cast<int>(*v));
    }
    if (ar == 1) g.w0 = wires[0];
    if (ar == 2) {
      if (wires[0] >= wires[1])
        throw ParseError(ParseError::Kind::WireRange, st[2].line, st[2].col, st[2].text,
                         "two-wire gates need i < j");
      switch (g.kind) {
        case GateKind::CZ: g = Gate::cz(wires[0], wires[1]); break;
        case GateKind::CX: g = Gate::cx(wires[0], wires[1]); break;
        case GateKind::XC: g = Gate::xc(wires[0], wires[1]); break;
        default:
          if (wires[1] != wires[0] + 1)
            throw ParseError(ParseError::Kind::WireRange, st[2].line, st[2].col, st[2].text,
                             "SWAP needs adjacent wires");
          g = Gate::swap(wires[0], wires[1]);
      }
    }
    c.add(g, static_cast<int>(power));
  }
  if (!have_header) throw ParseError(ParseError::Kind::Syntax, line, col, "", "missing header n=<int>");
  return c;
}

std::string print_gate(const Gate& g) {
  std::string s = gate_name(g.kind);
  if (g.arity() >= 1) s += " " + std::to_string(g.w0);
  if (g.arity() == 2) s += " " + std::to_string(g.w1);
  return s;
}

std::string print_circuit(const Circuit& c) {
  std::string s = "n=" + std::to_string(c.n);
  for (const auto& g : c.word) s += "; " + print_gate(g);
  return s;
}

Circuit random_word(int n, int length, std::uint64_t seed) {
  std::vector<Gate> alphabet{Gate::minus_omega()};
  for (int j = 0; j < n; ++j) alphabet.push_back(Gate::h(j));
  for (int j = 0; j < n; ++j) alphabet.push_back(Gate::s(j));
  for (int j = 0; j + 1 < n; ++j) alphabet.push_back(Gate::cz(j, j + 1));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  Circuit c(n);
  for (int i = 0; i < length; ++i) c.add(alphabet[pick(rng)]);
  return c;
}

}  // namespace qc
