#include "qc/circuit.hpp"
#include "qc/normalform.hpp"
#include "qc/pauli.hpp"
#include "qc/relations.hpp"
#include "qc/rewriter.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  int max_n = 6;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string out;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

qc::Circuit load_circuit(const std::string& path) { return qc::parse_circuit(read_file(path)); }

class Output {
 public:
  explicit Output(const Config& cfg) {
    if (!cfg.out.empty()) {
      file_.open(cfg.out);
      if (!file_) throw InputError("cannot write " + cfg.out);
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

bool json_out(const Config& cfg) { return cfg.format == "json"; }

void require_small(const Config& cfg, int n, const char* what) {
  if (n > cfg.max_n)
    throw InputError(std::string(what) + " refused: n=" + std::to_string(n) + " exceeds --max-n " +
                     std::to_string(cfg.max_n));
}

std::string circuit_json(const qc::Circuit& c) {
  nlohmann::json j;
  j["n"] = c.n;
  j["gates"] = nlohmann::json::array();
  for (const auto& g : c.word) j["gates"].push_back(qc::print_gate(g));
  return j.dump();
}

std::string nf_out(const Config& cfg, const qc::NormalForm& nf) {
  std::string s = json_out(cfg) ? qc::normal_form_to_json(nf) : qc::normal_form_to_text(nf);
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

int cmd_parse(const Config& cfg, const std::string& path) {
  qc::Circuit c = load_circuit(path);
  Output out(cfg);
  out.os() << (json_out(cfg) ? circuit_json(c) : qc::print_circuit(c)) << "\n";
  return kOk;
}

int cmd_matrix(const Config& cfg, const std::string& path) {
  qc::Circuit c = load_circuit(path);
  require_small(cfg, c.n, "matrix");
  qc::CycloMatrix m = qc::interpret(c);
  Output out(cfg);
  if (json_out(cfg)) {
    nlohmann::json j;
    j["n"] = c.n;
    j["rows"] = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(r, k).str());
      j["rows"].push_back(row);
    }
    out.os() << j.dump() << "\n";
  } else {
    out.os() << m.str();
  }
  return kOk;
}

int cmd_tableau(const Config& cfg, const std::string& path) {
  qc::Circuit c = load_circuit(path);
  Output out(cfg);
  out.os() << qc::tableau_to_json(qc::tableau_of(c)) << "\n";
  return kOk;
}

int cmd_synth(const Config& cfg, const std::string& path) {
  qc::Tableau t;
  try {
    t = qc::tableau_from_json(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad tableau file: ") + e.what());
  }
  if (!t.valid()) throw InputError("tableau is not a Clifford action");
  Output out(cfg);
  out.os() << nf_out(cfg, qc::synthesize(t)) << "\n";
  return kOk;
}

std::string measure_str(const qc::Measure& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
  return s + "]";
}

int cmd_normalize(const Config& cfg, const std::string& path, bool check, bool trace) {
  qc::Circuit c = load_circuit(path);
  std::vector<qc::StepInfo> steps;
  qc::NormalizeOptions opt;
  if (trace) opt.trace = &steps;
  qc::NormalForm nf = qc::normalize(c, opt);
  // step log goes to stderr so stdout stays a clean normal form
  for (std::size_t i = 0; i < steps.size(); ++i)
    std::cerr << "step " << i + 1 << " " << steps[i].rule << " at wire " << steps[i].base << " "
              << measure_str(steps[i].before) << " -> " << measure_str(steps[i].after) << "\n";
  Output out(cfg);
  out.os() << nf_out(cfg, nf) << "\n";
  if (!check) return kOk;
  require_small(cfg, c.n, "check");
  qc::NormalForm ref = qc::synthesize_with_phase(c, cfg.max_n);
  const bool synth_ok = ref == nf;
  const bool matrix_ok = qc::interpret(qc::normal_form_circuit(nf)) == qc::interpret(c);
  std::cerr << "check synthesis: " << (synth_ok ? "agree" : "DISAGREE") << "\n"
            << "check matrix: " << (matrix_ok ? "agree" : "DISAGREE") << "\n";
  return synth_ok && matrix_ok ? kOk : kFail;
}

int cmd_equiv(const Config& cfg, const std::string& p1, const std::string& p2) {
  qc::Circuit a = load_circuit(p1), b = load_circuit(p2);
  if (a.n != b.n) throw InputError("wire counts differ: " + std::to_string(a.n) + " vs " + std::to_string(b.n));
  qc::Equivalence e = qc::equivalent(a, b);
  Output out(cfg);
  std::string verdict = e.equal() ? "equal" : e.same_boxes ? "equal-up-to-phase" : "inequivalent";
  if (json_out(cfg)) {
    nlohmann::json j;
    j["verdict"] = verdict;
    if (e.same_boxes) j["delta_t"] = e.delta_t;
    out.os() << j.dump() << "\n";
  } else {
    out.os() << verdict;
    if (e.same_boxes && !e.equal()) out.os() << " " << e.delta_t;
    out.os() << "\n";
  }
  return e.equal() ? kOk : kFail;
}

qc::RelationDB load_db(const std::string& path) {
  if (path.empty()) return qc::enumerate_rules();
  try {
    return qc::RelationDB::from_json(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad relation database: ") + e.what());
  }
}

int cmd_verify(const Config& cfg, const std::string& scope, const std::string& db_path) {
  Output out(cfg);
  bool ok = true;
  nlohmann::json report;
  if (scope == "rules18" || scope == "all") {
    int pass = 0;
    auto res = qc::verify_gate_relations();
    for (const auto& r : res) {
      pass += r.ok;
      if (!r.ok) out.os() << "FAIL " << r.name << "\n";
    }
    ok = ok && pass == static_cast<int>(res.size());
    out.os() << "gate relations: " << pass << "/" << res.size() << " pass\n";
    report["gate_relations"] = {{"passed", pass}, {"total", res.size()}};
  }
  if (scope == "boxrels" || scope == "all") {
    qc::RelationDB db = load_db(db_path);
    qc::VerifyReport rep = qc::verify_db(db);
    for (const auto& [fam, count] : rep.per_family) out.os() << "  " << fam << ": " << count << "\n";
    for (const auto& f : rep.failures) out.os() << "FAIL " << f << "\n";
    out.os() << "box relations: " << rep.passed << "/" << rep.total << " sound, " << rep.shape_passed << "/"
             << rep.total << " well placed (reference total 380)\n";
    ok = ok && rep.failures.empty();
    report["box_relations"] = {{"passed", rep.passed}, {"shape_passed", rep.shape_passed}, {"total", rep.total}};
  }
  if (json_out(cfg)) out.os() << report.dump() << "\n";
  return ok ? kOk : kFail;
}

int cmd_count(const Config& cfg, int n) {
  if (n < 0) throw InputError("n must be non-negative");
  Output out(cfg);
  out.os() << qc::count_normal_forms(n).str() << "\n";
  return kOk;
}

int cmd_random(const Config& cfg, int n, int len, bool normal) {
  if (n < 0 || len < 0) throw InputError("n and length must be non-negative");
  Output out(cfg);
  if (normal) {
    out.os() << nf_out(cfg, qc::random_normal_form(n, cfg.seed)) << "\n";
  } else {
    qc::Circuit c = qc::random_word(n, len, cfg.seed);
    out.os() << (json_out(cfg) ? circuit_json(c) : qc::print_circuit(c)) << "\n";
  }
  return kOk;
}

int cmd_derive(const Config& cfg) {
  qc::RelationDB db = qc::enumerate_rules();
  db.seed = cfg.seed;
  Output out(cfg);
  out.os() << db.to_json() << "\n";
  std::cerr << "derived " << db.rules.size() << " rules\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact qutrit Clifford circuits: normal forms, rewriting and equivalence"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--max-n", cfg.max_n, "largest n for matrix work")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", cfg.out, "write output to a file");

  std::string path, path2, scope = "all", db_path;
  bool check = false, normal = false, trace = false;
  int n = 1, len = 20;

  auto* parse = app.add_subcommand("parse", "parse and print a circuit");
  parse->add_option("file", path)->required();
  auto* matrix = app.add_subcommand("matrix", "print the exact matrix of a circuit");
  matrix->add_option("file", path)->required();
  auto* tableau = app.add_subcommand("tableau", "print the tableau of a circuit");
  tableau->add_option("file", path)->required();
  auto* synth = app.add_subcommand("synth", "normal form of a tableau file");
  synth->add_option("file", path)->required();
  auto* norm = app.add_subcommand("normalize", "normal form of a circuit by rewriting");
  norm->add_option("file", path)->required();
  norm->add_flag("--check", check, "cross-check against synthesis and the matrix");
  norm->add_flag("--trace", trace, "log every rewrite step to stderr");
  auto* equiv = app.add_subcommand("equiv", "compare two circuits");
  equiv->add_option("first", path)->required();
  equiv->add_option("second", path2)->required();
  auto* verify = app.add_subcommand("verify", "verify the relation sets");
  verify->add_option("scope", scope)->check(CLI::IsMember({"rules18", "boxrels", "all"}));
  verify->add_option("--db", db_path, "relation database file");
  auto* count = app.add_subcommand("count", "number of normal forms on n qutrits");
  count->add_option("n", n)->required();
  auto* random = app.add_subcommand("random", "random circuit or normal form");
  random->add_option("n", n)->required();
  random->add_option("--len", len, "word length");
  random->add_flag("--normal", normal, "emit a random normal form");
  auto* derive = app.add_subcommand("derive-relations", "derive the box relation database");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*parse) return cmd_parse(cfg, path);
    if (*matrix) return cmd_matrix(cfg, path);
    if (*tableau) return cmd_tableau(cfg, path);
    if (*synth) return cmd_synth(cfg, path);
    if (*norm) return cmd_normalize(cfg, path, check, trace);
    if (*equiv) return cmd_equiv(cfg, path, path2);
    if (*verify) return cmd_verify(cfg, scope, db_path);
    if (*count) return cmd_count(cfg, n);
    if (*random) return cmd_random(cfg, n, len, normal);
    if (*derive) return cmd_derive(cfg);
  } catch (const qc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const qc::ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kFail;
  }
  return kInput;
}
