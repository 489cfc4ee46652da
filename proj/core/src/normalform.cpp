#include "qc/normalform.hpp"

#include <json.hpp>

#include <map>
#include <random>
#include <sstream>

namespace qc {

char box_letter(BoxKind k) { return static_cast<char>('A' + static_cast<int>(k)); }

bool NormalBox::valid() const {
  auto in3 = [](int v) { return v >= 0 && v < 3; };
  if (wire < 0 || !in3(i0) || !in3(i1)) return false;
  if (kind == BoxKind::A) return !(i0 == 0 && i1 == 0);
  if (!two_index()) return i1 == 0;
  return true;
}

std::string NormalBox::str() const {
  std::string s(1, box_letter(kind));
  s += std::to_string(i0);
  if (two_index()) s += std::to_string(i1);
  return s + "@" + std::to_string(wire);
}

std::vector<NormalBox> all_boxes() {
  std::vector<NormalBox> out;
  for (int x = 0; x < 3; ++x)
    for (int z = 0; z < 3; ++z)
      if (x || z) out.push_back(NormalBox::a(x, z, 0));
  for (int x = 0; x < 3; ++x)
    for (int z = 0; z < 3; ++z) out.push_back(NormalBox::b(x, z, 0));
  for (int v = 0; v < 3; ++v) out.push_back(NormalBox::c(v, 0));
  for (int x = 0; x < 3; ++x)
    for (int z = 0; z < 3; ++z) out.push_back(NormalBox::d(x, z, 0));
  for (int v = 0; v < 3; ++v) out.push_back(NormalBox::e(v, 0));
  for (int v = 0; v < 3; ++v) out.push_back(NormalBox::f(v, 0));
  return out;
}

namespace {

void push_a(Circuit& c, int x, int z, int w) {
  if (x == 0) {
    if (z == 2) c.add(Gate::h(w), 2);
    return;
  }
  if (x == 1) {
    c.add(Gate::s(w), z).add(Gate::h(w));
    return;
  }
  c.add(Gate::h(w), 2).add(Gate::s(w), (2 * z) % 3).add(Gate::h(w));
}

Circuit local_box_circuit(const NormalBox& bx, int n) {
  Circuit c(n);
  const int w = bx.wire, x = bx.i0, z = bx.i1;
  const Gate cz = Gate::cz(w, w + 1), cx = Gate::cx(w, w + 1), sw = Gate::swap(w, w + 1);
  switch (bx.kind) {
    case BoxKind::A: push_a(c, x, z, w); break;
    case BoxKind::B:
      if (x == 0 && z == 0) c.add(cz).add(sw);
      else if (x == 0 && z == 1) c.add(cz, 2).add(cx).add(sw);
      else if (x == 0 && z == 2) c.add(Gate::h(w), 2).add(cx).add(sw);
      else {
        push_a(c, x, z, w);
        c.add(cz).add(cx).add(sw);
      }
      break;
    case BoxKind::C: c.add(Gate::x(w), x); break;
    case BoxKind::D: {
      const Gate s0 = Gate::s(w), s1 = Gate::s(w + 1);
      switch (3 * x + z) {
        case 0: c.add(sw); break;
        case 1: c.add(cz, 2).add(sw); break;
        case 2: c.add(cz).add(sw); break;
        case 3: c.add(cx, 2).add(sw); break;
        case 4: c.add(s1).add(cx, 2).add(sw); break;
        case 5: c.add(s1, 2).add(cx, 2).add(sw); break;
        case 6: c.add(cx).add(sw); break;
        case 7: c.add(cx).add(s0, 2).add(cz, 2).add(sw); break;
        default: c.add(cx).add(s0).add(cz).add(sw); break;
      }
      break;
    }
    case BoxKind::E: c.add(Gate::s(w), x); break;
    case BoxKind::F: c.add(Gate::z(w), (2 * x) % 3); break;
  }
  return c;
}

}  // namespace

Circuit box_circuit(const NormalBox& box, int n) {
  if (!box.valid()) throw ContractViolation("invalid box " + box.str());
  if (n < 0) n = box.wire + box.width();
  if (box.wire + box.width() > n) throw ContractViolation("box does not fit on the wires");
  return local_box_circuit(box, n);
}

std::vector<ActionPair> box_action(const NormalBox& box) {
  const int x = box.i0, z = box.i1;
  std::vector<ActionPair> acts;
  auto p1 = [](int ax, int bz, int ph = 0) { return Pauli(ph, {std::uint8_t(mod3(ax))}, {std::uint8_t(mod3(bz))}); };
  auto p2 = [](int a0, int b0, int a1, int b1, int ph = 0) {
    return Pauli(ph, {std::uint8_t(mod3(a0)), std::uint8_t(mod3(a1))},
                 {std::uint8_t(mod3(b0)), std::uint8_t(mod3(b1))});
  };
  switch (box.kind) {
    case BoxKind::A:
      acts.push_back({p1(x, z), p1(0, 1)});
      acts.push_back({x == 0 ? p1(z, 0) : p1(0, -x), p1(1, 0)});
      break;
    case BoxKind::B:
      acts.push_back({p2(x, z, 0, 1), p2(0, 1, 0, 0)});
      acts.push_back({p2(2 * x, 2 * z + x * x - 1, 1, 0, x * z), p2(1, 0, 0, 0)});
      break;
    case BoxKind::C:
      acts.push_back({p1(0, 1, x), p1(0, 1)});
      acts.push_back({p1(1, 0), p1(1, 0)});
      break;
    case BoxKind::D:
      acts.push_back({p2(1, 0, x, z), p2(0, 0, 1, 0)});
      acts.push_back({p2(0, 1, 0, 0), p2(0, 0, 0, 1)});
      break;
    case BoxKind::E:
      acts.push_back({p1(1, x), p1(1, 0)});
      acts.push_back({p1(0, 1), p1(0, 1)});
      break;
    case BoxKind::F:
      acts.push_back({p1(1, 0, x), p1(1, 0)});
      acts.push_back({p1(0, 1), p1(0, 1)});
      break;
  }
  return acts;
}

// ---------------------------------------------------------------------------
// layout

std::vector<NormalBox> layer_boxes(const ZLayer& zl) {
  std::vector<NormalBox> out;
  out.push_back(NormalBox::a(zl.a.first, zl.a.second, zl.m));
  for (int j = zl.m - 1; j >= 0; --j) out.push_back(NormalBox::b(zl.b[j].first, zl.b[j].second, j));
  out.push_back(NormalBox::c(zl.c, 0));
  return out;
}

std::vector<NormalBox> layer_boxes(const XLayer& xl) {
  std::vector<NormalBox> out;
  for (int j = 0; j + 1 < xl.width; ++j) out.push_back(NormalBox::d(xl.d[j].first, xl.d[j].second, j));
  out.push_back(NormalBox::e(xl.e, xl.width - 1));
  out.push_back(NormalBox::f(xl.f, xl.width - 1));
  return out;
}

std::vector<NormalBox> normal_form_boxes(const NormalForm& nf) {
  std::vector<NormalBox> out;
  for (const auto& l : nf.layers) {
    auto zb = layer_boxes(l.z);
    auto xb = layer_boxes(l.x);
    out.insert(out.end(), zb.begin(), zb.end());
    out.insert(out.end(), xb.begin(), xb.end());
  }
  return out;
}

NormalForm normal_form_from_boxes(int n, int t, const std::vector<NormalBox>& boxes) {
  NormalForm nf;
  nf.n = n;
  nf.t = mod6(t);
  std::size_t pos = 0;
  auto next = [&](BoxKind k, int wire) -> const NormalBox& {
    if (pos >= boxes.size() || boxes[pos].kind != k || (wire >= 0 && boxes[pos].wire != wire))
      throw ContractViolation("box sequence is not in normal-form layout");
    return boxes[pos++];
  };
  for (int w = n; w >= 1; --w) {
    Layer l;
    l.z.width = w;
    const NormalBox& a = next(BoxKind::A, -1);
    if (a.wire >= w) throw ContractViolation("A box outside its layer");
    l.z.m = a.wire;
    l.z.a = {a.i0, a.i1};
    l.z.b.assign(l.z.m, {0, 0});
    for (int j = l.z.m - 1; j >= 0; --j) {
      const NormalBox& b = next(BoxKind::B, j);
      l.z.b[j] = {b.i0, b.i1};
    }
    l.z.c = next(BoxKind::C, 0).i0;
    l.x.width = w;
    for (int j = 0; j + 1 < w; ++j) {
      const NormalBox& d = next(BoxKind::D, j);
      l.x.d.push_back({d.i0, d.i1});
    }
    l.x.e = next(BoxKind::E, w - 1).i0;
    l.x.f = next(BoxKind::F, w - 1).i0;
    nf.layers.push_back(std::move(l));
  }
  if (pos != boxes.size()) throw ContractViolation("trailing boxes after the last layer");
  return nf;
}

bool well_formed(const NormalForm& nf) {
  if (nf.n < 0 || nf.t < 0 || nf.t >= 6 || static_cast<int>(nf.layers.size()) != nf.n) return false;
  try {
    auto boxes = normal_form_boxes(nf);
    for (const auto& b : boxes)
      if (!b.valid()) return false;
    if (boxes.size() > max_clean_boxes(nf.n)) return false;
    return normal_form_from_boxes(nf.n, nf.t, boxes) == nf;
  } catch (const std::exception&) {
    return false;
  }
}

std::size_t max_clean_boxes(int n) { return static_cast<std::size_t>(n) * n + 3 * static_cast<std::size_t>(n); }

Circuit normal_form_circuit(const NormalForm& nf) {
  Circuit c(nf.n);
  for (const auto& b : normal_form_boxes(nf)) c.append(box_circuit(b, nf.n));
  c.add(Gate::minus_omega(), nf.t);
  return c;
}

// ---------------------------------------------------------------------------
// synthesis

namespace {

Pauli through_box(const NormalBox& bx, Pauli p) {
  for (const auto& g : box_circuit(bx, p.n()).word) p = conjugate_gate(g, p);
  return p;
}

void through_boxes(const std::vector<NormalBox>& boxes, Tableau& t) {
  for (const auto& bx : boxes)
    for (const auto& g : box_circuit(bx, t.n).word) tableau_apply_gate(t, g);
}

}  // namespace

ZLayer synth_z_layer(const Pauli& p) {
  if (p.is_scalar()) throw std::invalid_argument("synth_z_layer: scalar Pauli has no Z-layer");
  ZLayer zl;
  zl.width = p.n();
  int m = p.n() - 1;
  while (p.a[m] == 0 && p.b[m] == 0) --m;
  zl.m = m;
  zl.a = {p.a[m], p.b[m]};
  Pauli cur = through_box(NormalBox::a(p.a[m], p.b[m], m), p);
  zl.b.assign(m, {0, 0});
  for (int j = m - 1; j >= 0; --j) {
    zl.b[j] = {cur.a[j], cur.b[j]};
    cur = through_box(NormalBox::b(cur.a[j], cur.b[j], j), cur);
  }
  zl.c = cur.c;
  cur = through_box(NormalBox::c(zl.c, 0), cur);
  if (cur != Pauli::z_on(p.n(), 0)) throw std::logic_error("Z-layer synthesis did not reach Z on wire 0");
  return zl;
}

XLayer synth_x_layer(const Pauli& q) {
  const int n = q.n();
  if (n == 0 || commutation_phase(Pauli::z_on(n, 0), q) != 1)
    throw std::invalid_argument("synth_x_layer: Pauli does not w-anticommute with Z on wire 0");
  XLayer xl;
  xl.width = n;
  Pauli cur = q;
  for (int j = 1; j < n; ++j) {
    xl.d.push_back({cur.a[j], cur.b[j]});
    cur = through_box(NormalBox::d(cur.a[j], cur.b[j], j - 1), cur);
  }
  xl.e = cur.b[n - 1];
  cur = through_box(NormalBox::e(xl.e, n - 1), cur);
  xl.f = cur.c;
  cur = through_box(NormalBox::f(xl.f, n - 1), cur);
  if (cur != Pauli::x_on(n, n - 1)) throw std::logic_error("X-layer synthesis did not reach X on the last wire");
  return xl;
}

NormalForm synthesize(const Tableau& target) {
  if (!target.valid()) throw std::invalid_argument("synthesize: invalid tableau");
  NormalForm nf;
  nf.n = target.n;
  // rest maps Paulis through the part of the inverse not yet undone
  Tableau rest = tableau_invert(target);
  for (int w = target.n; w >= 1; --w) {
    Layer l;
    l.z = synth_z_layer(rest.zimg[w - 1]);
    through_boxes(layer_boxes(l.z), rest);
    l.x = synth_x_layer(rest.ximg[w - 1]);
    through_boxes(layer_boxes(l.x), rest);
    if (rest.zimg[w - 1] != Pauli::z_on(w, w - 1) || rest.ximg[w - 1] != Pauli::x_on(w, w - 1))
      throw std::logic_error("layer did not fix the last wire");
    Tableau smaller;
    smaller.n = w - 1;
    for (int j = 0; j + 1 < w; ++j) {
      for (auto* p : {&rest.zimg[j], &rest.ximg[j]}) {
        if (p->a[w - 1] || p->b[w - 1]) throw std::logic_error("layer left support on the last wire");
        p->a.pop_back();
        p->b.pop_back();
      }
      smaller.zimg.push_back(rest.zimg[j]);
      smaller.ximg.push_back(rest.ximg[j]);
    }
    rest = std::move(smaller);
    nf.layers.push_back(std::move(l));
  }
  return nf;
}

int phase_against(const NormalForm& nf, const Circuit& reference) {
  NormalForm bare = nf;
  bare.t = 0;
  auto mine = interpret_column(normal_form_circuit(bare));
  auto ref = interpret_column(reference);
  std::size_t k = 0;
  while (k < mine.size() && mine[k].is_zero()) ++k;
  if (k == mine.size()) throw std::logic_error("normal form column vanished");
  for (int t = 0; t < 6; ++t) {
    CycloNumber ph = CycloNumber::unit_phase(t);
    if (ref[k] != ph * mine[k]) continue;
    for (std::size_t i = 0; i < mine.size(); ++i)
      if (ref[i] != ph * mine[i]) throw std::logic_error("reference differs from normal form beyond phase");
    return t;
  }
  throw std::logic_error("reference differs from normal form beyond a (-w)^t phase");
}

NormalForm synthesize_with_phase(const Circuit& c, int max_n) {
  if (c.n > max_n)
    throw std::invalid_argument("with-phase synthesis refused: n=" + std::to_string(c.n) +
                                " exceeds max-n=" + std::to_string(max_n));
  NormalForm nf = synthesize(tableau_of(c));
  nf.t = phase_against(nf, c);
  return nf;
}

BigInt count_normal_forms(int n) {
  BigInt r = 6;
  BigInt nine = 1;
  for (int k = 1; k <= n; ++k) {
    nine *= 9;
    r *= 3 * (nine - 1) * nine;
  }
  return r;
}

NormalForm random_normal_form(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d3(0, 2), d9(0, 8), d6(0, 5);
  NormalForm nf;
  nf.n = n;
  for (int w = n; w >= 1; --w) {
    Layer l;
    std::vector<int> digits(w);
    bool nonzero = false;
    while (!nonzero) {
      for (auto& dg : digits) {
        dg = d9(rng);
        nonzero = nonzero || dg != 0;
      }
    }
    int m = w - 1;
    while (digits[m] == 0) --m;
    l.z.width = w;
    l.z.m = m;
    l.z.a = {digits[m] / 3, digits[m] % 3};
    for (int j = 0; j < m; ++j) l.z.b.push_back({digits[j] / 3, digits[j] % 3});
    l.z.c = d3(rng);
    l.x.width = w;
    for (int j = 0; j + 1 < w; ++j) {
      int dg = d9(rng);
      l.x.d.push_back({dg / 3, dg % 3});
    }
    l.x.e = d3(rng);
    l.x.f = d3(rng);
    nf.layers.push_back(std::move(l));
  }
  nf.t = d6(rng);
  return nf;
}

// ---------------------------------------------------------------------------
// serialization

std::string normal_form_to_text(const NormalForm& nf) {
  std::ostringstream os;
  os << "n=" << nf.n << " t=" << nf.t << "\n";
  for (const auto& l : nf.layers) {
    os << "layer " << l.z.width << ":";
    for (const auto& b : layer_boxes(l.z)) os << ' ' << b.str();
    os << " |";
    for (const auto& b : layer_boxes(l.x)) os << ' ' << b.str();
    os << "\n";
  }
  return os.str();
}

std::string normal_form_to_json(const NormalForm& nf) {
  using nlohmann::json;
  json j;
  j["n"] = nf.n;
  j["t"] = nf.t;
  j["layers"] = json::array();
  auto pr = [](const std::pair<int, int>& p) { return json::array({p.first, p.second}); };
  for (const auto& l : nf.layers) {
    json lj;
    lj["width"] = l.z.width;
    lj["m"] = l.z.m;
    lj["A"] = pr(l.z.a);
    lj["B"] = json::array();
    for (const auto& b : l.z.b) lj["B"].push_back(pr(b));
    lj["C"] = l.z.c;
    lj["D"] = json::array();
    for (const auto& d : l.x.d) lj["D"].push_back(pr(d));
    lj["E"] = l.x.e;
    lj["F"] = l.x.f;
    j["layers"].push_back(lj);
  }
  return j.dump(2);
}

NormalForm normal_form_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  NormalForm nf;
  nf.n = j.at("n").get<int>();
  nf.t = j.at("t").get<int>();
  auto pr = [](const nlohmann::json& p) { return std::pair<int, int>{p.at(0).get<int>(), p.at(1).get<int>()}; };
  for (const auto& lj : j.at("layers")) {
    Layer l;
    l.z.width = l.x.width = lj.at("width").get<int>();
    l.z.m = lj.at("m").get<int>();
    l.z.a = pr(lj.at("A"));
    for (const auto& b : lj.at("B")) l.z.b.push_back(pr(b));
    l.z.c = lj.at("C").get<int>();
    for (const auto& d : lj.at("D")) l.x.d.push_back(pr(d));
    l.x.e = lj.at("E").get<int>();
    l.x.f = lj.at("F").get<int>();
    nf.layers.push_back(std::move(l));
  }
  if (!well_formed(nf)) throw std::invalid_argument("normal form document is not well formed");
  return nf;
}

}  // namespace qc
