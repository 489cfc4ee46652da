// One line per acceptance criterion; exit status is nonzero if any fails.
#include "oracle.hpp"
#include "qc/rewriter.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

using qc::Circuit;
using qc::CycloNumber;
using qc::Gate;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome gate_relations() {
  auto t0 = Clock::now();
  auto res = qc::verify_gate_relations();
  double dt = seconds_since(t0);
  std::size_t good = 0;
  for (const auto& r : res) good += r.ok;
  std::ostringstream os;
  os << good << "/" << res.size() << " relations hold in " << dt << "s";
  return {good == 18 && res.size() == 18 && dt < 1.0, os.str()};
}

Outcome rule_database() {
  auto t0 = Clock::now();
  auto db = qc::enumerate_rules();
  auto rep = qc::verify_db(db);
  double dt = seconds_since(t0);
  std::map<int, int> by;
  for (const auto& r : db.rules) by[r.wires]++;
  std::ostringstream os;
  os << db.rules.size() << " rules, " << rep.passed << " sound, " << rep.shape_passed << " well placed, by qutrits "
     << by[1] << "/" << by[2] << "/" << by[3] << " (+" << by[0] << " scalar), " << dt << "s";
  bool ok = db.rules.size() == 380 && rep.passed == 380 && rep.shape_passed == 380 && by[1] == 34 &&
            by[2] == 173 && by[3] == 171 && dt < 60.0;
  return {ok, os.str()};
}

Outcome single_qutrit_count() {
  auto t0 = Clock::now();
  // every phase-free one-qutrit form: one Z-layer (A, C) and one X-layer (E, F)
  std::vector<qc::CycloMatrix> mats;
  for (int x = 0; x < 3; ++x)
    for (int z = 0; z < 3; ++z) {
      if (x == 0 && z == 0) continue;
      for (int c = 0; c < 3; ++c)
        for (int e = 0; e < 3; ++e)
          for (int f = 0; f < 3; ++f) {
            auto nf = qc::normal_form_from_boxes(1, 0,
                                                 {qc::NormalBox::a(x, z, 0), qc::NormalBox::c(c, 0),
                                                  qc::NormalBox::e(e, 0), qc::NormalBox::f(f, 0)});
            if (qc::well_formed(nf)) mats.push_back(qc::interpret(qc::normal_form_circuit(nf)));
          }
    }
  std::size_t clashes = 0;
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j) clashes += qc::equal_up_to_phase(mats[i], mats[j]).has_value();
  auto counted = qc::count_normal_forms(1);
  double dt = seconds_since(t0);
  std::ostringstream os;
  os << "count=" << counted << ", " << mats.size() << " phase-free forms, " << clashes
     << " pairs equal up to phase, " << dt << "s";
  return {counted == 1296 && mats.size() == 216 && clashes == 0 && dt < 10.0, os.str()};
}

// the randomized suite shared by criteria 4 and 5
struct SuiteStats {
  int total = 0;
  int agree = 0;
  std::string first_bad;
  std::size_t steps = 0;
  std::size_t measure_violations = 0;
  std::size_t size_violations = 0;
  std::size_t budget_violations = 0;
  std::size_t worst_boxes = 0;
  double seconds = 0;
};

const SuiteStats& suite() {
  static const SuiteStats stats = [] {
    SuiteStats s;
    auto t0 = Clock::now();
    std::mt19937_64 rng(20240601);
    for (int n = 1; n <= 3; ++n)
      for (int rep = 0; rep < 200; ++rep) {
        std::size_t len = 1 + rng() % 40;
        Circuit c = qc::random_word(n, len, rng());
        ++s.total;
        std::vector<qc::StepInfo> trace;
        qc::NormalizeOptions opt;
        opt.trace = &trace;
        opt.check_measure = false;  // counted below instead
        std::size_t budget = qc::default_step_budget(qc::expand_all(c).word.size(), n);
        qc::NormalForm nf;
        try {
          nf = qc::normalize(c, opt);
        } catch (const std::exception& e) {
          if (s.first_bad.empty()) s.first_bad = qc::print_circuit(c) + " (" + e.what() + ")";
          continue;
        }
        s.steps += trace.size();
        s.budget_violations += trace.size() > budget;
        for (const auto& st : trace) {
          s.measure_violations +=
              !std::lexicographical_compare(st.after.begin(), st.after.end(), st.before.begin(), st.before.end());
          // one measure entry per clean box
          s.size_violations += st.after.size() > qc::max_clean_boxes(n);
        }
        std::size_t boxes = qc::normal_form_boxes(nf).size();
        s.worst_boxes = std::max(s.worst_boxes, boxes);
        s.size_violations += boxes > qc::max_clean_boxes(n);
        bool ok = nf == qc::synthesize_with_phase(c) &&
                  qc::interpret(qc::normal_form_circuit(nf)) == qc::interpret(c);
        s.agree += ok;
        if (!ok && s.first_bad.empty()) s.first_bad = qc::print_circuit(c);
      }
    s.seconds = seconds_since(t0);
    return s;
  }();
  return stats;
}

Outcome normalize_agrees() {
  const SuiteStats& s = suite();
  std::ostringstream os;
  os << s.agree << "/" << s.total << " circuits agree in boxes, phase and matrix, " << s.seconds << "s";
  if (!s.first_bad.empty()) os << ", first mismatch: " << s.first_bad;
  return {s.agree == s.total && s.seconds < 300.0, os.str()};
}

Outcome termination() {
  const SuiteStats& s = suite();
  std::ostringstream os;
  os << s.steps << " steps, " << s.measure_violations << " without a measure decrease, " << s.size_violations
     << " over the clean-box bound, " << s.budget_violations << " runs over the step budget; largest form "
     << s.worst_boxes << " boxes";
  return {s.total > 0 && s.measure_violations == 0 && s.size_violations == 0 && s.budget_violations == 0, os.str()};
}

Circuit with_insertions(const Circuit& c, std::mt19937_64& rng) {
  Circuit out(c.n);
  auto insert_one = [&](int w) {
    switch (rng() % 4) {
      case 0:
        out.add(Gate::h(w), 4);
        break;
      case 1:
        out.add(Gate::omega(), 3);
        break;
      case 2:
        out.add(Gate::minus_omega(), 6);
        break;
      default:
        // Z followed by the inverse of SP SP S
        out.add(Gate::z(w)).add(Gate::s(w), 2).add(Gate::sp(w));
        break;
    }
  };
  for (const auto& g : c.word) {
    if (rng() % 3 == 0) insert_one(static_cast<int>(rng() % c.n));
    out.add(g);
  }
  insert_one(0);
  return out;
}

Outcome equivalence_under_identities() {
  std::mt19937_64 rng(31337);
  int good = 0;
  for (int rep = 0; rep < 100; ++rep) {
    int n = 1 + static_cast<int>(rng() % 3);
    Circuit c = qc::random_word(n, 1 + rng() % 20, rng());
    Circuit d = with_insertions(c, rng);
    auto e = qc::equivalent(c, d);
    good += e.equal() && e.delta_t == 0;
  }
  std::ostringstream os;
  os << good << "/100 pairs reported equal with zero phase difference";
  return {good == 100, os.str()};
}

Outcome unit_phases() {
  // brute force: a + b w over 3^k is a unit phase iff its complex value is a sixth root of unity
  auto t0 = Clock::now();
  std::set<int> found;
  int checked = 0, disagree = 0;
  auto check = [&](const CycloNumber& x) {
    auto z = oracle::to_complex(x);
    std::optional<int> ref;
    for (int t = 0; t < 6; ++t)
      if (std::abs(z - std::polar(1.0, 5.0 * M_PI * t / 3.0)) < 1e-9) ref = t;
    bool norm_one = std::abs(std::norm(z) - 1.0) < 1e-9;
    auto got = qc::is_unit_phase(x);
    ++checked;
    if (got.has_value() != ref.has_value() || (got && *got != *ref) || (got && !norm_one)) ++disagree;
    if (got) found.insert(*got);
  };
  for (unsigned k = 0; k <= 2; ++k)
    for (int a = -9; a <= 9; ++a)
      for (int b = -9; b <= 9; ++b) check(CycloNumber(a, b, k));
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coef(-1000, 1000);
  for (int rep = 0; rep < 20000; ++rep) check(CycloNumber(coef(rng), coef(rng), static_cast<unsigned>(rng() % 6)));
  double dt = seconds_since(t0);
  std::ostringstream os;
  os << checked << " elements checked, " << disagree << " disagreements, " << found.size() << " unit phases, " << dt
     << "s";
  return {disagree == 0 && found.size() == 6 && dt < 1.0, os.str()};
}

Outcome symbolic_conjugation() {
  std::mt19937_64 rng(4242);
  int checked = 0, bad = 0;
  for (int n = 1; n <= 3; ++n)
    for (int rep = 0; rep < 20; ++rep) {
      Circuit c = qc::random_word(n, 30, rng());
      qc::Tableau t = qc::tableau_of(c);
      auto u = oracle::circuit_matrix(c);
      for (int w = 0; w < n; ++w)
        for (bool z : {true, false}) {
          qc::Pauli p = z ? qc::Pauli::z_on(n, w) : qc::Pauli::x_on(n, w);
          const qc::Pauli& img = z ? t.zimg[w] : t.ximg[w];
          auto lhs = oracle::mul(oracle::mul(u, oracle::pauli_matrix(p)), oracle::dagger(u));
          ++checked;
          bad += oracle::dist(lhs, oracle::pauli_matrix(img)) > 1e-8;
        }
    }
  std::ostringstream os;
  os << checked << " generator images checked, " << bad << " mismatches";
  return {bad == 0, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 gate relations", gate_relations},
      {"2 rule database", rule_database},
      {"3 single-qutrit count", single_qutrit_count},
      {"4 normalize agrees with synthesis", normalize_agrees},
      {"5 termination and size bound", termination},
      {"6 equivalence under identities", equivalence_under_identities},
      {"7 unit phases", unit_phases},
      {"8 symbolic conjugation", symbolic_conjugation},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %s: %s\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
