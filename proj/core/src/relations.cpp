#include "qc/relations.hpp"

#include "word_search.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <thread>

namespace qc {

std::string label_name(Label l) {
  switch (l) {
    case Label::L1: return "1";
    case Label::L2: return "2";
    case Label::L3: return "3";
    case Label::L4: return "4";
    case Label::L5: return "5";
    default: return "-";
  }
}

bool gate_allowed(const Gate& g, const std::vector<Label>& labels) {
  auto at = [&](int w) { return w >= 0 && w < static_cast<int>(labels.size()) ? labels[w] : Label::None; };
  auto in = [](Label l, Label lo, Label hi) { return l != Label::None && l >= lo && l <= hi; };
  switch (g.kind) {
    case GateKind::MinusOmega:
    case GateKind::MinusOne:
    case GateKind::Omega:
      return true;
    case GateKind::H: return at(g.w0) == Label::L1;
    case GateKind::S: return in(at(g.w0), Label::L1, Label::L4);
    case GateKind::X: return at(g.w0) == Label::L2;
    case GateKind::Z: return in(at(g.w0), Label::L2, Label::L5);
    case GateKind::CZ: return in(at(g.w0), Label::L1, Label::L3) && at(g.w1) == Label::L1;
    default: return false;
  }
}

bool check_dirty_shape(const Circuit& word, const std::vector<Label>& labels) {
  return std::all_of(word.word.begin(), word.word.end(),
                     [&](const Gate& g) { return gate_allowed(g, labels); });
}

// ---------------------------------------------------------------------------

Circuit RewriteRule::lhs_circuit() const {
  Circuit c(wires);
  c.add(gate, bindings.count("power") ? bindings.at("power") : 1);
  for (const auto& b : lhs) c.append(box_circuit(b, wires));
  return c;
}

Circuit RewriteRule::rhs_circuit() const {
  Circuit c(wires);
  for (const auto& b : rhs) c.append(box_circuit(b, wires));
  c.append(dir);
  c.add(Gate::minus_omega(), t);
  return c;
}

std::string rule_key(const std::string& family, const std::vector<NormalBox>& ctx) {
  std::string k = family + ":";
  for (std::size_t i = 0; i < ctx.size(); ++i) k += (i ? "," : "") + ctx[i].str();
  return k;
}

std::string RewriteRule::key() const {
  if (family == "scalar") return "scalar:" + gate_name(gate.kind);
  return rule_key(family, lhs);
}

std::string matrix_hash(const CycloMatrix& m) {
  std::uint64_t h = 1469598103934665603ull;
  for (char ch : m.str()) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RuleCheck verify_rule(const RewriteRule& r) {
  RuleCheck out;
  try {
    CycloMatrix l = interpret(r.lhs_circuit());
    CycloMatrix rr = interpret(r.rhs_circuit());
    if (auto d = first_difference(l, rr)) {
      out.ok = false;
      out.witness = r.key() + ": entry (" + std::to_string(d->first) + "," + std::to_string(d->second) +
                    ") lhs " + l(d->first, d->second).str() + " rhs " + rr(d->first, d->second).str();
    }
  } catch (const std::exception& e) {
    out.ok = false;
    out.witness = r.key() + ": " + e.what();
  }
  return out;
}

// ---------------------------------------------------------------------------
// families

namespace {

enum class Ctx { ZWithA, ZLadder, C, D, E, F };

struct FamilySpec {
  std::string tag;
  int qutrits;
  Gate gate;
  Ctx ctx;
  std::vector<Label> labels;
  // context boxes for each binding
  std::vector<std::vector<NormalBox>> contexts;
};

std::vector<std::vector<NormalBox>> single(BoxKind k, int wire) {
  std::vector<std::vector<NormalBox>> out;
  for (const auto& b : all_boxes())
    if (b.kind == k) {
      NormalBox x = b;
      x.wire = wire;
      out.push_back({x});
    }
  return out;
}

std::vector<std::vector<NormalBox>> pairs(BoxKind k1, int w1, BoxKind k2, int w2) {
  std::vector<std::vector<NormalBox>> out;
  for (const auto& a : single(k1, w1))
    for (const auto& b : single(k2, w2)) out.push_back({a[0], b[0]});
  return out;
}

const std::vector<FamilySpec>& family_specs() {
  using L = Label;
  static const std::vector<FamilySpec> specs = [] {
    std::vector<FamilySpec> s;
    const Gate h0 = Gate::h(0), s0 = Gate::s(0), z0 = Gate::z(0), x0 = Gate::x(0);
    const Gate h1 = Gate::h(1), s1 = Gate::s(1), z1 = Gate::z(1), x1 = Gate::x(1);
    const Gate cz01 = Gate::cz(0, 1), cz12 = Gate::cz(1, 2);
    s.push_back({"H.A", 1, h0, Ctx::ZWithA, {L::L2}, single(BoxKind::A, 0)});
    s.push_back({"S.A", 1, s0, Ctx::ZWithA, {L::L2}, single(BoxKind::A, 0)});
    s.push_back({"S.C", 1, s0, Ctx::C, {L::L4}, single(BoxKind::C, 0)});
    s.push_back({"Z.C", 1, z0, Ctx::C, {L::L4}, single(BoxKind::C, 0)});
    s.push_back({"X.C", 1, x0, Ctx::C, {L::L4}, single(BoxKind::C, 0)});
    s.push_back({"S.E", 1, s0, Ctx::E, {L::L5}, single(BoxKind::E, 0)});
    s.push_back({"Z.E", 1, z0, Ctx::E, {L::L5}, single(BoxKind::E, 0)});
    s.push_back({"Z.F", 1, z0, Ctx::F, {L::None}, single(BoxKind::F, 0)});

    s.push_back({"CZ.A", 2, cz01, Ctx::ZWithA, {L::L2, L::L1}, single(BoxKind::A, 0)});
    s.push_back({"CZ.AB", 2, cz01, Ctx::ZWithA, {L::L2, L::L1}, pairs(BoxKind::A, 1, BoxKind::B, 0)});
    s.push_back({"HI.B", 2, h0, Ctx::ZLadder, {L::L2, L::L1}, single(BoxKind::B, 0)});
    s.push_back({"SI.B", 2, s0, Ctx::ZLadder, {L::L2, L::L1}, single(BoxKind::B, 0)});
    s.push_back({"IS.B", 2, s1, Ctx::ZLadder, {L::L2, L::L1}, single(BoxKind::B, 0)});
    s.push_back({"IX.B", 2, x1, Ctx::ZLadder, {L::L2, L::L1}, single(BoxKind::B, 0)});
    s.push_back({"IZ.B", 2, z1, Ctx::ZLadder, {L::L2, L::L1}, single(BoxKind::B, 0)});
    s.push_back({"CZ.C", 2, cz01, Ctx::C, {L::L3, L::L1}, single(BoxKind::C, 0)});
    s.push_back({"IH.D", 2, h1, Ctx::D, {L::L1, L::L4}, single(BoxKind::D, 0)});
    s.push_back({"IS.D", 2, s1, Ctx::D, {L::L1, L::L4}, single(BoxKind::D, 0)});
    s.push_back({"SI.D", 2, s0, Ctx::D, {L::L1, L::L4}, single(BoxKind::D, 0)});
    s.push_back({"ZI.D", 2, z0, Ctx::D, {L::L1, L::L4}, single(BoxKind::D, 0)});
    s.push_back({"CZ.D", 2, cz01, Ctx::D, {L::L1, L::L4}, single(BoxKind::D, 0)});

    s.push_back({"CZI.BB", 3, cz01, Ctx::ZLadder, {L::L2, L::L1, L::L1}, pairs(BoxKind::B, 1, BoxKind::B, 0)});
    s.push_back({"CZ.B", 3, cz12, Ctx::ZLadder, {L::L2, L::L1, L::L1}, single(BoxKind::B, 0)});
    s.push_back({"ICZ.DD", 3, cz12, Ctx::D, {L::L1, L::L1, L::L4}, pairs(BoxKind::D, 0, BoxKind::D, 1)});
    return s;
  }();
  return specs;
}

const FamilySpec& spec_of(const std::string& tag) {
  for (const auto& s : family_specs())
    if (s.tag == tag) return s;
  throw std::invalid_argument("unknown rule family " + tag);
}

Pauli preimage(const Circuit& c, Pauli p) {
  for (auto it = c.word.rbegin(); it != c.word.rend(); ++it) p = preimage_gate(*it, p);
  return p;
}

Pauli forward(const NormalBox& b, Pauli p) {
  for (const auto& g : box_circuit(b, p.n()).word) p = conjugate_gate(g, p);
  return p;
}

Circuit boxes_circuit(const std::vector<NormalBox>& boxes, int n) {
  Circuit c(n);
  for (const auto& b : boxes) c.append(box_circuit(b, n));
  return c;
}

std::vector<NormalBox> updated_boxes(const FamilySpec& fs, const std::vector<NormalBox>& ctx) {
  const int k = fs.qutrits;
  Circuit lhs(k);
  lhs.add(fs.gate).append(boxes_circuit(ctx, k));
  std::vector<NormalBox> out;
  switch (fs.ctx) {
    case Ctx::ZWithA: {
      Pauli p = preimage(lhs, Pauli::z_on(k, 0));
      p.c = 0;
      int m = k - 1;
      while (m >= 0 && p.a[m] == 0 && p.b[m] == 0) --m;
      if (m < 0) throw std::logic_error("preimage of Z became scalar");
      out.push_back(NormalBox::a(p.a[m], p.b[m], m));
      Pauli cur = forward(out.back(), p);
      for (int j = m - 1; j >= 0; --j) {
        out.push_back(NormalBox::b(cur.a[j], cur.b[j], j));
        cur = forward(out.back(), cur);
      }
      break;
    }
    case Ctx::ZLadder: {
      Pauli cur = preimage(lhs, Pauli::z_on(k, 0));
      for (const auto& b : ctx) {
        out.push_back(NormalBox::b(cur.a[b.wire], cur.b[b.wire], b.wire));
        cur = forward(out.back(), cur);
      }
      break;
    }
    case Ctx::C: {
      Pauli p = preimage(lhs, Pauli::z_on(k, 0));
      out.push_back(NormalBox::c(p.c, 0));
      break;
    }
    case Ctx::D: {
      Pauli cur = preimage(lhs, Pauli::x_on(k, k - 1));
      for (const auto& b : ctx) {
        out.push_back(NormalBox::d(cur.a[b.wire + 1], cur.b[b.wire + 1], b.wire));
        cur = forward(out.back(), cur);
      }
      break;
    }
    case Ctx::E: {
      Pauli q = preimage(lhs, Pauli::x_on(k, 0));
      out.push_back(NormalBox::e(q.b[0], 0));
      break;
    }
    case Ctx::F: {
      Pauli q = preimage(lhs, Pauli::x_on(k, 0));
      out.push_back(NormalBox::f(q.c, 0));
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// residual search

std::vector<Gate> gens_for(Label l, int w) {
  switch (l) {
    case Label::L1: return {Gate::h(w), Gate::s(w)};
    case Label::L2: return {Gate::s(w), Gate::x(w), Gate::z(w)};
    case Label::L3:
    case Label::L4: return {Gate::s(w), Gate::z(w)};
    case Label::L5: return {Gate::z(w)};
    default: return {};
  }
}

std::vector<Gate> shifted(const std::vector<Gate>& w, int by) {
  std::vector<Gate> out = w;
  for (auto& g : out) {
    if (g.w0 >= 0) g.w0 += by;
    if (g.w1 >= 0) g.w1 += by;
  }
  return out;
}

// sub-tableau on the listed wires when t acts trivially across the cut
std::optional<Tableau> restrict_to(const Tableau& t, const std::vector<int>& wires, bool others_identity) {
  Tableau sub;
  sub.n = static_cast<int>(wires.size());
  auto inside = [&](int w) { return std::find(wires.begin(), wires.end(), w) != wires.end(); };
  for (int j = 0; j < t.n; ++j) {
    for (const Pauli* p : {&t.zimg[j], &t.ximg[j]}) {
      for (int w = 0; w < t.n; ++w) {
        bool support = p->a[w] || p->b[w];
        if (support && inside(w) != inside(j)) return std::nullopt;
      }
      if (!inside(j) && others_identity) {
        Pauli expect = p == &t.zimg[j] ? Pauli::z_on(t.n, j) : Pauli::x_on(t.n, j);
        if (*p != expect) return std::nullopt;
      }
    }
  }
  for (int w : wires) {
    Pauli z(sub.n), x(sub.n);
    z.c = t.zimg[w].c;
    x.c = t.ximg[w].c;
    for (int i = 0; i < sub.n; ++i) {
      z.a[i] = t.zimg[w].a[wires[i]];
      z.b[i] = t.zimg[w].b[wires[i]];
      x.a[i] = t.ximg[w].a[wires[i]];
      x.b[i] = t.ximg[w].b[wires[i]];
    }
    sub.zimg.push_back(z);
    sub.ximg.push_back(x);
  }
  return sub;
}

Tableau tableau_of_word(int n, const std::vector<Gate>& w) { return tableau_of(Circuit(n, w)); }

std::optional<std::vector<Gate>> search_small(const Tableau& v, const std::vector<Label>& labels) {
  const int k = static_cast<int>(labels.size());
  std::vector<Gate> gens;
  for (int w = 0; w < k; ++w) {
    auto g = gens_for(labels[w], w);
    gens.insert(gens.end(), g.begin(), g.end());
  }
  if (k == 2 && labels[1] == Label::L1 &&
      (labels[0] == Label::L1 || labels[0] == Label::L2 || labels[0] == Label::L3))
    gens.push_back(Gate::cz(0, 1));
  if (gens.empty()) {
    if (v == Tableau::identity(k)) return std::vector<Gate>{};
    return std::nullopt;
  }
  return detail::oracle_for(k, gens).word(v);
}

const detail::WordOracle& two_wire_clifford() {
  return detail::oracle_for(2, {Gate::h(0), Gate::s(0), Gate::h(1), Gate::s(1), Gate::cz(0, 1)});
}

// packed Pauli -> packed Pauli^e on two wires
const std::vector<int>& z_power_table(const detail::WordOracle& o, int e) {
  static const std::array<std::vector<int>, 3> tabs = [&] {
    std::array<std::vector<int>, 3> t;
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 243; ++i) t[k].push_back(o.pack(pauli_pow(o.unpack(i), k)));
    return t;
  }();
  return tabs[e];
}

// labels {2,1,1}: word = R1 ; CZ(0,1)^k ; T ; R2 with R1, R2 on wires 1..2 and T on wire 0
std::optional<std::vector<Gate>> search_ladder3(const Tableau& v) {
  const auto& r2w = two_wire_clifford();
  std::optional<std::vector<Gate>> best;
  for (int s = 0; s < 3; ++s)
    for (int x = 0; x < 3; ++x)
      for (int z = 0; z < 3; ++z) {
        Circuit tc(3);
        tc.add(Gate::s(0), s).add(Gate::x(0), x).add(Gate::z(0), z);
        Tableau w = tableau_compose(v, tableau_invert(tableau_of(tc)));
        if (w.zimg[0] != Pauli::z_on(3, 0)) continue;
        const Pauli& xi = w.ximg[0];
        if (xi.a[0] != 1 || xi.b[0] != 0) continue;
        Pauli q(2);
        q.c = xi.c;
        for (int i = 0; i < 2; ++i) {
          q.a[i] = xi.a[i + 1];
          q.b[i] = xi.b[i + 1];
        }
        for (int kk = 0; kk < 3; ++kk) {
          if ((kk == 0) != q.is_scalar()) continue;
          std::vector<Gate> cand;
          if (kk == 0) {
            if (q.c != 0) continue;
            auto sub = restrict_to(w, {1, 2}, true);
            if (!sub) continue;
            auto r = r2w.word(*sub);
            if (!r) continue;
            cand = shifted(*r, 1);
          } else {
            Circuit czk(3);
            czk.add(Gate::cz(0, 1), kk);
            const int e = conjugate_gate(Gate::cz(0, 1), Pauli::x_on(2, 0)).b[1] * kk % 3;
            // R2 maps Z_1^e to q; Z_0 image sits in slot 0 of the key
            const int target = r2w.pack(q);
            const std::vector<int>& zpow = z_power_table(r2w, e);
            std::optional<std::vector<Gate>> local_best;
            int found = 0, best_r2 = -1;
            for (std::uint32_t key : r2w.order()) {
              const int d = r2w.distance(key);
              if (best_r2 >= 0 && d > best_r2 + 2) break;
              if (zpow[detail::WordOracle::slot(key, 0)] != target) continue;
              if (best_r2 < 0) best_r2 = d;
              Tableau r2full = tableau_of_word(3, shifted(r2w.word_for_key(key), 1));
              Tableau r1 = tableau_compose(tableau_compose(w, tableau_invert(r2full)),
                                           tableau_invert(tableau_of(czk)));
              auto sub = restrict_to(r1, {1, 2}, true);
              if (!sub) continue;
              auto r1w = r2w.word(*sub);
              if (!r1w) continue;
              std::vector<Gate> c = shifted(*r1w, 1);
              c.insert(c.end(), czk.word.begin(), czk.word.end());
              auto r2words = shifted(r2w.word_for_key(key), 1);
              c.insert(c.end(), r2words.begin(), r2words.end());
              if (!local_best || c.size() < local_best->size()) local_best = c;
              if (++found > 64) break;
            }
            if (!local_best) continue;
            cand = *local_best;
          }
          cand.insert(cand.end(), tc.word.begin(), tc.word.end());
          if (!best || cand.size() < best->size()) best = cand;
        }
      }
  return best;
}

// labels {1,1,4}: separable into wires {0,1} and wire 2
std::optional<std::vector<Gate>> search_split3(const Tableau& v) {
  auto top = restrict_to(v, {0, 1}, false);
  auto bottom = restrict_to(v, {2}, false);
  if (!top || !bottom) return std::nullopt;
  auto rw = two_wire_clifford().word(*top);
  auto bw = search_small(*bottom, {Label::L4});
  if (!rw || !bw) return std::nullopt;
  std::vector<Gate> out = *rw;
  auto b2 = shifted(*bw, 2);
  out.insert(out.end(), b2.begin(), b2.end());
  return out;
}

std::optional<std::vector<Gate>> find_residual(const Tableau& v, const std::vector<Label>& labels) {
  if (labels.size() <= 2) return search_small(v, labels);
  if (labels == std::vector<Label>{Label::L2, Label::L1, Label::L1}) return search_ladder3(v);
  if (labels == std::vector<Label>{Label::L1, Label::L1, Label::L4}) return search_split3(v);
  return std::nullopt;
}

std::map<std::string, int> bindings_of(const std::vector<NormalBox>& ctx) {
  std::map<std::string, int> b;
  static const char* names[] = {"a", "b", "c", "d"};
  int i = 0;
  for (const auto& bx : ctx) {
    b[names[i++]] = bx.i0;
    if (bx.two_index()) b[names[i++]] = bx.i1;
  }
  return b;
}

}  // namespace

const std::vector<FamilyInfo>& rule_families() {
  static const std::vector<FamilyInfo> info = [] {
    std::vector<FamilyInfo> v{{"scalar", 0, 2}};
    for (const auto& s : family_specs())
      v.push_back({s.tag, s.qutrits, static_cast<int>(s.contexts.size())});
    return v;
  }();
  return info;
}

RewriteRule derive_rule(const std::string& family, const std::vector<NormalBox>& ctx) {
  const FamilySpec& fs = spec_of(family);
  RewriteRule r;
  r.family = family;
  r.wires = fs.qutrits;
  r.gate = fs.gate;
  r.lhs = ctx;
  r.labels = fs.labels;
  r.bindings = bindings_of(ctx);
  r.rhs = updated_boxes(fs, ctx);
  const int k = fs.qutrits;
  Circuit lhs = r.lhs_circuit();
  Tableau v = tableau_compose(tableau_invert(tableau_of(boxes_circuit(r.rhs, k))), tableau_of(lhs));
  auto word = find_residual(v, r.labels);
  if (!word) throw std::runtime_error("no residual word for " + rule_key(family, ctx));
  r.dir = Circuit(k, *word);
  Circuit rhs0(k);
  rhs0.append(boxes_circuit(r.rhs, k)).append(r.dir);
  auto t = equal_up_to_phase(interpret(lhs), interpret(rhs0));
  if (!t) throw std::logic_error("residual does not match up to phase for " + rule_key(family, ctx));
  r.t = *t;
  return r;
}

// ---------------------------------------------------------------------------
// database

namespace {

std::vector<RewriteRule> scalar_rules() {
  std::vector<RewriteRule> out;
  for (auto [g, p] : {std::pair{Gate::minus_one(), 2}, std::pair{Gate::omega(), 3}}) {
    RewriteRule r;
    r.family = "scalar";
    r.wires = 0;
    r.gate = g;
    r.dir = Circuit(0);
    r.bindings["power"] = p;
    out.push_back(r);
  }
  return out;
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

NormalBox parse_box(const std::string& s) {
  if (s.size() < 4) throw std::invalid_argument("bad box '" + s + "'");
  NormalBox b;
  b.kind = static_cast<BoxKind>(s[0] - 'A');
  if (s[0] < 'A' || s[0] > 'F') throw std::invalid_argument("bad box '" + s + "'");
  b.i0 = s[1] - '0';
  std::size_t at = s.find('@');
  if (at == std::string::npos) throw std::invalid_argument("bad box '" + s + "'");
  b.i1 = b.two_index() ? s[2] - '0' : 0;
  b.wire = std::stoi(s.substr(at + 1));
  if (!b.valid()) throw std::invalid_argument("bad box '" + s + "'");
  return b;
}

}  // namespace

void RelationDB::reindex() {
  index_.clear();
  for (std::size_t i = 0; i < rules.size(); ++i) index_[rules[i].key()] = i;
}

const RewriteRule* RelationDB::find(const std::string& family, const std::vector<NormalBox>& ctx) const {
  auto it = index_.find(rule_key(family, ctx));
  return it == index_.end() ? nullptr : &rules[it->second];
}

std::map<std::string, int> RelationDB::family_counts() const {
  std::map<std::string, int> m;
  for (const auto& r : rules) ++m[r.family];
  return m;
}

RelationDB enumerate_rules(unsigned threads) {
  std::vector<std::pair<const FamilySpec*, std::vector<NormalBox>>> jobs;
  for (const auto& fs : family_specs())
    for (const auto& ctx : fs.contexts) jobs.push_back({&fs, ctx});
  // build shared search tables before fanning out
  two_wire_clifford();
  std::vector<RewriteRule> derived(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t i) {
    derived[i] = derive_rule(jobs[i].first->tag, jobs[i].second);
  });
  RelationDB db;
  db.rules = scalar_rules();
  db.rules.insert(db.rules.end(), derived.begin(), derived.end());
  db.reindex();
  return db;
}

const RelationDB& default_db() {
  static const RelationDB db = enumerate_rules();
  return db;
}

VerifyReport verify_db(const RelationDB& db, unsigned threads) {
  VerifyReport rep;
  rep.total = db.rules.size();
  std::vector<RuleCheck> checks(db.rules.size());
  std::vector<char> shape(db.rules.size(), 0);
  parallel_for(db.rules.size(), threads, [&](std::size_t i) {
    checks[i] = verify_rule(db.rules[i]);
    shape[i] = check_dirty_shape(db.rules[i].dir, db.rules[i].labels);
  });
  for (std::size_t i = 0; i < db.rules.size(); ++i) {
    ++rep.per_family[db.rules[i].family];
    if (checks[i].ok) ++rep.passed;
    else rep.failures.push_back(checks[i].witness);
    if (shape[i]) ++rep.shape_passed;
    else rep.failures.push_back(db.rules[i].key() + ": residual violates placement labels");
  }
  return rep;
}

std::string RelationDB::to_json() const {
  using nlohmann::json;
  json j;
  j["seed"] = seed;
  j["rules"] = json::array();
  for (const auto& r : rules) {
    json rj;
    rj["family"] = r.family;
    rj["bindings"] = r.bindings;
    rj["wires"] = r.wires;
    rj["gate"] = print_gate(r.gate);
    rj["lhs_boxes"] = json::array();
    for (const auto& b : r.lhs) rj["lhs_boxes"].push_back(b.str());
    rj["rhs_boxes"] = json::array();
    for (const auto& b : r.rhs) rj["rhs_boxes"].push_back(b.str());
    rj["dir"] = print_circuit(r.dir);
    rj["t"] = r.t;
    rj["labels"] = json::array();
    for (auto l : r.labels) rj["labels"].push_back(static_cast<int>(l));
    rj["lhs"] = print_circuit(r.lhs_circuit());
    rj["rhs"] = print_circuit(r.rhs_circuit());
    rj["hash"] = matrix_hash(interpret(r.lhs_circuit()));
    j["rules"].push_back(rj);
  }
  return j.dump(1);
}

RelationDB RelationDB::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  RelationDB db;
  db.seed = j.value("seed", std::uint64_t{0});
  for (const auto& rj : j.at("rules")) {
    RewriteRule r;
    r.family = rj.at("family").get<std::string>();
    r.bindings = rj.at("bindings").get<std::map<std::string, int>>();
    r.wires = rj.at("wires").get<int>();
    Circuit g = parse_circuit("n=" + std::to_string(std::max(r.wires, 1)) + "; " + rj.at("gate").get<std::string>());
    if (g.word.size() != 1) throw std::invalid_argument("rule gate must be a single gate");
    r.gate = g.word[0];
    for (const auto& b : rj.at("lhs_boxes")) r.lhs.push_back(parse_box(b.get<std::string>()));
    for (const auto& b : rj.at("rhs_boxes")) r.rhs.push_back(parse_box(b.get<std::string>()));
    r.dir = parse_circuit(rj.at("dir").get<std::string>());
    r.t = rj.at("t").get<int>();
    for (const auto& l : rj.at("labels")) r.labels.push_back(static_cast<Label>(l.get<int>()));
    db.rules.push_back(std::move(r));
  }
  db.reindex();
  return db;
}

// ---------------------------------------------------------------------------

bool first_wire_factor_is_pauli(const RewriteRule& r) {
  Tableau t = tableau_of(r.dir);
  auto top = restrict_to(t, {0}, false);
  if (!top) return false;
  // a Pauli fixes Z and X up to phase
  return top->zimg[0].a[0] == 0 && top->zimg[0].b[0] == 1 && top->ximg[0].a[0] == 1 &&
         top->ximg[0].b[0] == 0;
}

std::optional<int> last_wire_z_power(const RewriteRule& r) {
  const int last = r.wires - 1;
  Tableau t = tableau_of(r.dir);
  std::vector<int> rest;
  for (int w = 0; w < last; ++w) rest.push_back(w);
  auto bottom = restrict_to(t, {last}, false);
  if (!bottom || !restrict_to(t, rest, false)) return std::nullopt;
  for (int p = 0; p < 3; ++p) {
    Circuit zc(1);
    zc.add(Gate::z(0), p);
    if (tableau_of(zc) == *bottom) return p;
  }
  return std::nullopt;
}

}  // namespace qc
