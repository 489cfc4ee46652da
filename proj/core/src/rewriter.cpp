#include "qc/rewriter.hpp"

#include "word_search.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <unordered_map>

namespace qc {

bool DirtyItem::touches(int w) const {
  if (clean) return box.touches(w);
  return gate.w0 == w || gate.w1 == w;
}

bool DirtyNormalForm::is_clean() const {
  return std::all_of(items.begin(), items.end(), [](const DirtyItem& i) { return i.clean; });
}

std::size_t DirtyNormalForm::clean_count() const {
  return static_cast<std::size_t>(std::count_if(items.begin(), items.end(), [](const DirtyItem& i) { return i.clean; }));
}

std::size_t DirtyNormalForm::dirty_count() const { return items.size() - clean_count(); }

namespace {

Label entry_label(const NormalBox& b, int w) {
  switch (b.kind) {
    case BoxKind::A: return Label::L1;
    case BoxKind::B: return w == b.wire ? Label::L1 : Label::L2;
    case BoxKind::C: return Label::L2;
    case BoxKind::D: return w == b.wire ? Label::L3 : Label::L1;
    case BoxKind::E: return Label::L4;
    case BoxKind::F: return Label::L5;
  }
  return Label::None;
}

std::vector<int> gate_wires(const Gate& g) {
  std::vector<int> w;
  if (g.w0 >= 0) w.push_back(g.w0);
  if (g.w1 >= 0) w.push_back(g.w1);
  return w;
}

bool touches_any(const DirtyItem& it, const std::vector<int>& wires) {
  return std::any_of(wires.begin(), wires.end(), [&](int w) { return it.touches(w); });
}

int scalar_phase(const Gate& g) {
  switch (g.kind) {
    case GateKind::MinusOmega: return 1;
    case GateKind::MinusOne: return 3;
    case GateKind::Omega: return 4;
    default: return 0;
  }
}

struct Site {
  std::string family;
  int base = 0;
  std::size_t m1 = 0;
  std::optional<std::size_t> m2;
  bool blocked = false;
};

// family of the gate at pos given its first context box at m1
std::optional<Site> classify(const DirtyNormalForm& d, std::size_t pos, std::size_t m1) {
  const Gate& g = d.items[pos].gate;
  const NormalBox& b = d.items[m1].box;
  Site s;
  s.m1 = m1;
  auto want_second = [&](BoxKind kind, int wire) -> bool {
    std::vector<int> wires = gate_wires(g);
    for (int w = b.wire; w < b.wire + b.width(); ++w) wires.push_back(w);
    for (std::size_t q = m1 + 1; q < d.items.size(); ++q) {
      const DirtyItem& it = d.items[q];
      if (!touches_any(it, wires)) continue;
      if (!it.clean) {
        s.blocked = true;
        return true;
      }
      if (it.box.kind != kind || it.box.wire != wire) return false;
      s.m2 = q;
      return true;
    }
    return false;
  };
  if (g.kind == GateKind::CZ) {
    const int i = g.w0;
    switch (b.kind) {
      case BoxKind::A:
        if (b.wire == i) {
          s.family = "CZ.A";
          s.base = i;
        } else if (b.wire == i + 1 && want_second(BoxKind::B, i)) {
          s.family = "CZ.AB";
          s.base = i;
        } else {
          return std::nullopt;
        }
        return s;
      case BoxKind::B:
        if (b.wire == i + 1 && want_second(BoxKind::B, i)) {
          s.family = "CZI.BB";
          s.base = i;
        } else if (b.wire == i - 1) {
          s.family = "CZ.B";
          s.base = i - 1;
        } else {
          return std::nullopt;
        }
        return s;
      case BoxKind::C:
        if (i != 0 || b.wire != 0) return std::nullopt;
        s.family = "CZ.C";
        return s;
      case BoxKind::D:
        if (b.wire == i) {
          s.family = "CZ.D";
          s.base = i;
        } else if (b.wire == i - 1 && want_second(BoxKind::D, i)) {
          s.family = "ICZ.DD";
          s.base = i - 1;
        } else {
          return std::nullopt;
        }
        return s;
      default:
        return std::nullopt;
    }
  }
  std::string gname;
  switch (g.kind) {
    case GateKind::H: gname = "H"; break;
    case GateKind::S: gname = "S"; break;
    case GateKind::X: gname = "X"; break;
    case GateKind::Z: gname = "Z"; break;
    default: return std::nullopt;
  }
  const bool top = g.w0 == b.wire;
  s.base = b.wire;
  switch (b.kind) {
    case BoxKind::A: s.family = gname + ".A"; break;
    case BoxKind::B: s.family = top ? gname + "I.B" : "I" + gname + ".B"; break;
    case BoxKind::C: s.family = gname + ".C"; break;
    case BoxKind::D: s.family = top ? gname + "I.D" : "I" + gname + ".D"; break;
    case BoxKind::E: s.family = gname + ".E"; break;
    case BoxKind::F: s.family = gname + ".F"; break;
  }
  return s;
}

Gate shift_gate(Gate g, int by) {
  if (g.w0 >= 0) g.w0 += by;
  if (g.w1 >= 0) g.w1 += by;
  return g;
}

NormalBox shift_box(NormalBox b, int by) {
  b.wire += by;
  return b;
}

}  // namespace

Label DirtyNormalForm::label_at(std::size_t pos, int w) const {
  for (std::size_t q = pos; q < items.size(); ++q)
    if (items[q].clean && items[q].box.touches(w)) return entry_label(items[q].box, w);
  return Label::None;
}

Circuit DirtyNormalForm::circuit() const {
  Circuit c(n);
  for (const auto& it : items) {
    if (it.clean) c.append(box_circuit(it.box, n));
    else c.add(it.gate);
  }
  c.add(Gate::minus_omega(), t);
  return c;
}

Measure measure(const DirtyNormalForm& d) {
  Measure m;
  std::size_t dirty = 0;
  for (const auto& it : d.items) {
    if (it.clean) m.push_back(dirty);
    else ++dirty;
  }
  return m;
}

DirtyNormalForm identity_normal_form(int n) {
  if (n < 0) throw ContractViolation("negative wire count");
  static std::mutex mu;
  static std::map<int, DirtyNormalForm> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  DirtyNormalForm d;
  d.n = n;
  if (n > 0) {
    NormalForm nf = synthesize(Tableau::identity(n));
    d.t = phase_against(nf, Circuit(n));
    for (const auto& b : normal_form_boxes(nf)) d.items.push_back(DirtyItem::of_box(b));
  }
  cache[n] = d;
  return d;
}

void inject(const Gate& g, DirtyNormalForm& d) {
  if (g.is_scalar()) {
    d.t = mod6(d.t + scalar_phase(g));
    return;
  }
  switch (g.kind) {
    case GateKind::H:
    case GateKind::S:
    case GateKind::X:
    case GateKind::Z:
    case GateKind::CZ:
      break;
    default:
      throw ContractViolation("inject expects a primitive gate, got " + print_gate(g));
  }
  for (int w : gate_wires(g))
    if (w < 0 || w >= d.n) throw ContractViolation("gate wire out of range: " + print_gate(g));
  std::vector<Label> labels(d.n);
  for (int w = 0; w < d.n; ++w) labels[w] = d.label_at(0, w);
  if (!gate_allowed(g, labels)) throw ContractViolation("gate " + print_gate(g) + " not placeable at the front");
  d.items.insert(d.items.begin(), DirtyItem::of_gate(g));
}

std::optional<StepInfo> step(DirtyNormalForm& d, const RelationDB& db) {
  for (std::size_t p = 0; p < d.items.size(); ++p) {
    if (d.items[p].clean) continue;
    const Gate g = d.items[p].gate;
    const std::vector<int> wires = gate_wires(g);
    std::optional<std::size_t> m1;
    bool blocked = false;
    for (std::size_t q = p + 1; q < d.items.size(); ++q) {
      if (!touches_any(d.items[q], wires)) continue;
      if (!d.items[q].clean) blocked = true;
      else m1 = q;
      break;
    }
    if (blocked) continue;
    if (!m1) throw ClosureViolation("dirty gate " + print_gate(g) + " has no clean box ahead");
    auto site = classify(d, p, *m1);
    if (site && site->blocked) continue;
    if (!site) {
      throw ClosureViolation("no family for " + print_gate(g) + " before " + d.items[*m1].box.str());
    }
    std::vector<NormalBox> ctx{shift_box(d.items[site->m1].box, -site->base)};
    if (site->m2) ctx.push_back(shift_box(d.items[*site->m2].box, -site->base));
    const RewriteRule* rule = db.find(site->family, ctx);
    if (!rule) throw ClosureViolation("missing rule " + rule_key(site->family, ctx));

    StepInfo info;
    info.family = site->family;
    info.rule = rule->key();
    info.base = site->base;
    info.before = measure(d);

    const std::size_t last = site->m2 ? *site->m2 : site->m1;
    std::vector<DirtyItem> out;
    out.reserve(d.items.size() + rule->rhs.size() + rule->dir.word.size());
    for (std::size_t q = 0; q < d.items.size(); ++q) {
      if (q == p || q == site->m1 || (site->m2 && q == *site->m2)) {
        if (q != last) continue;
        for (const auto& b : rule->rhs) out.push_back(DirtyItem::of_box(shift_box(b, site->base)));
        for (const auto& dg : rule->dir.word) out.push_back(DirtyItem::of_gate(shift_gate(dg, site->base)));
        continue;
      }
      out.push_back(d.items[q]);
    }
    d.items = std::move(out);
    d.t = mod6(d.t + rule->t);
    info.after = measure(d);
    return info;
  }
  return std::nullopt;
}

namespace {

std::vector<Gate> label_gens(Label l, int w) {
  switch (l) {
    case Label::L1: return {Gate::h(w), Gate::s(w)};
    case Label::L2: return {Gate::s(w), Gate::x(w), Gate::z(w)};
    case Label::L3:
    case Label::L4: return {Gate::s(w), Gate::z(w)};
    case Label::L5: return {Gate::z(w)};
    default: return {};
  }
}

// search table for a window of one or two wires with the given labels
const detail::WordOracle* window_oracle(const std::vector<Label>& labels) {
  std::vector<Gate> gens;
  for (std::size_t w = 0; w < labels.size(); ++w) {
    auto g = label_gens(labels[w], static_cast<int>(w));
    gens.insert(gens.end(), g.begin(), g.end());
  }
  if (labels.size() == 2) {
    if (!gate_allowed(Gate::cz(0, 1), labels)) return nullptr;
    gens.push_back(Gate::cz(0, 1));
  }
  if (gens.empty()) return nullptr;
  return &detail::oracle_for(static_cast<int>(labels.size()), gens);
}

// lhs = (-w)^t rhs for two words with the same tableau
int column_phase(const Circuit& lhs, const Circuit& rhs) {
  auto a = interpret_column(lhs);
  auto b = interpret_column(rhs);
  std::size_t k = 0;
  while (k < b.size() && b[k].is_zero()) ++k;
  for (int t = 0; t < 6; ++t)
    if (a[k] == CycloNumber::unit_phase(t) * b[k]) return t;
  throw std::logic_error("run resynthesis lost the phase");
}

using RunMemo = std::unordered_map<std::string, std::pair<std::vector<Gate>, int>>;

RunMemo& run_memo() {
  thread_local RunMemo memo;
  return memo;
}

struct Edit {
  std::vector<std::size_t> run;
  std::vector<Gate> word;  // absolute wires
};

// one pass over the window {lo, ..., lo+width-1}
std::size_t tidy_window(DirtyNormalForm& d, int lo, int width) {
  std::vector<int> wires;
  for (int w = lo; w < lo + width; ++w) wires.push_back(w);
  auto inside = [&](const Gate& g) {
    return g.w0 >= lo && g.w0 < lo + width && (g.w1 < 0 || g.w1 < lo + width);
  };
  std::vector<Edit> edits;
  std::vector<std::size_t> run;
  auto flush = [&](std::size_t next) {
    const bool has_cz = std::any_of(run.begin(), run.end(), [&](std::size_t q) { return d.items[q].gate.arity() == 2; });
    if (run.size() < 2 || (width == 2 && !has_cz)) {
      run.clear();
      return;
    }
    std::vector<Label> labels;
    for (int w : wires) labels.push_back(d.label_at(next, w));
    const detail::WordOracle* oracle = window_oracle(labels);
    if (!oracle) {
      run.clear();
      return;
    }
    std::uint32_t key = oracle->identity_key();
    std::string sig;
    for (auto l : labels) sig += static_cast<char>('0' + static_cast<int>(l));
    for (std::size_t q : run) {
      const Gate g = shift_gate(d.items[q].gate, -lo);
      auto gi = oracle->generator_index(g);
      if (!gi) {
        run.clear();
        return;
      }
      key = oracle->step(key, *gi);
      sig += static_cast<char>('a' + *gi);
    }
    if (static_cast<std::size_t>(oracle->distance(key)) < run.size()) {
      auto& memo = run_memo();
      if (memo.size() > 200000) memo.clear();
      auto hit = memo.find(sig);
      if (hit == memo.end()) {
        Circuit local(width);
        for (std::size_t q : run) local.add(shift_gate(d.items[q].gate, -lo));
        std::vector<Gate> found = oracle->word_for_key(key);
        int t = column_phase(local, Circuit(width, found));
        hit = memo.emplace(sig, std::make_pair(found, t)).first;
      }
      d.t = mod6(d.t + hit->second.second);
      Edit e{run, {}};
      for (const auto& g : hit->second.first) e.word.push_back(shift_gate(g, lo));
      edits.push_back(std::move(e));
    }
    run.clear();
  };
  for (std::size_t q = 0; q < d.items.size(); ++q) {
    const DirtyItem& it = d.items[q];
    if (!touches_any(it, wires)) continue;
    if (!it.clean && inside(it.gate)) {
      run.push_back(q);
      continue;
    }
    flush(q);
  }
  flush(d.items.size());
  if (edits.empty()) return 0;

  std::size_t removed = 0;
  std::vector<char> drop(d.items.size(), 0);
  std::map<std::size_t, const std::vector<Gate>*> at;
  for (const auto& e : edits) {
    for (std::size_t q : e.run) drop[q] = 1;
    at[e.run.back()] = &e.word;
    removed += e.run.size() - e.word.size();
  }
  std::vector<DirtyItem> out;
  out.reserve(d.items.size());
  for (std::size_t q = 0; q < d.items.size(); ++q) {
    if (!drop[q]) {
      out.push_back(d.items[q]);
      continue;
    }
    auto it = at.find(q);
    if (it == at.end()) continue;
    for (const auto& g : *it->second) out.push_back(DirtyItem::of_gate(g));
  }
  d.items = std::move(out);
  return removed;
}

}  // namespace

std::size_t tidy(DirtyNormalForm& d) {
  std::size_t removed = 0;
  for (int w = 0; w + 1 < d.n; ++w) removed += tidy_window(d, w, 2);
  for (int w = 0; w < d.n; ++w) removed += tidy_window(d, w, 1);
  return removed;
}

NormalForm to_normal_form(const DirtyNormalForm& d) {
  if (!d.is_clean()) throw ContractViolation("dirty gates remain");
  std::vector<NormalBox> boxes;
  for (const auto& it : d.items) boxes.push_back(it.box);
  return normal_form_from_boxes(d.n, d.t, boxes);
}

std::size_t default_step_budget(std::size_t gates, int n, const RelationDB& db) {
  std::size_t fanout = 1;
  for (const auto& r : db.rules) fanout = std::max(fanout, r.dir.word.size());
  return std::max<std::size_t>(gates, 1) * std::max<std::size_t>(max_clean_boxes(n), 1) * fanout;
}

NormalForm normalize(const Circuit& c, const NormalizeOptions& opt) {
  validate(c);
  const RelationDB& db = opt.db ? *opt.db : default_db();
  Circuit flat = expand_all(c);
  DirtyNormalForm d = identity_normal_form(c.n);
  const std::size_t budget = opt.step_budget ? opt.step_budget : default_step_budget(flat.word.size(), c.n, db) * 64;
  std::size_t steps = 0;
  for (auto it = flat.word.rbegin(); it != flat.word.rend(); ++it) {
    inject(*it, d);
    while (true) {
      if (opt.tidy_runs) tidy(d);
      auto info = step(d, db);
      if (!info) break;
      if (opt.check_measure &&
          !std::lexicographical_compare(info->after.begin(), info->after.end(), info->before.begin(),
                                        info->before.end()))
        throw std::logic_error("measure did not decrease at rule " + info->rule);
      if (++steps > budget) throw std::logic_error("step budget exceeded");
      if (opt.trace) opt.trace->push_back(std::move(*info));
    }
  }
  return to_normal_form(d);
}

Equivalence equivalent(const Circuit& c1, const Circuit& c2, const RelationDB& db) {
  if (c1.n != c2.n) throw ContractViolation("circuits differ in wire count");
  NormalizeOptions opt;
  opt.db = &db;
  NormalForm a = normalize(c1, opt);
  NormalForm b = normalize(c2, opt);
  Equivalence e;
  e.same_boxes = a.same_boxes(b);
  e.delta_t = e.same_boxes ? mod6(a.t - b.t) : 0;
  return e;
}

}  // namespace qc
