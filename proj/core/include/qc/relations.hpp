#pragma once

#include "qc/circuit.hpp"
#include "qc/normalform.hpp"
#include "qc/pauli.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qc {

// Wire-position labels of a dirty normal form; None marks a position with no clean box ahead.
enum class Label : std::uint8_t { None = 0, L1 = 1, L2 = 2, L3 = 3, L4 = 4, L5 = 5 };

std::string label_name(Label l);

// dirty-gate placement clauses; labels[w] is the label of wire w
bool check_dirty_shape(const Circuit& word, const std::vector<Label>& labels);
bool gate_allowed(const Gate& g, const std::vector<Label>& labels);

struct RewriteRule {
  std::string family;
  int wires = 0;                   // local wire count
  Gate gate;                       // dirty gate, local wires
  std::vector<NormalBox> lhs;      // context boxes, circuit order
  std::vector<NormalBox> rhs;      // updated boxes
  Circuit dir;                     // residual dirty word
  int t = 0;                       // lhs = (-w)^t rhs
  std::vector<Label> labels;       // labels of the residual's wires
  std::map<std::string, int> bindings;

  Circuit lhs_circuit() const;
  Circuit rhs_circuit() const;  // includes (-w)^t
  std::string key() const;
};

// family tag plus the context indices; used to index the database
std::string rule_key(const std::string& family, const std::vector<NormalBox>& ctx);

struct RuleCheck {
  bool ok = true;
  std::string witness;
};

RuleCheck verify_rule(const RewriteRule& r);

// family list with the parameter count of each
struct FamilyInfo {
  std::string tag;
  int qutrits;
  int size;
};
const std::vector<FamilyInfo>& rule_families();

// one rule from a family tag and its context; throws if no residual exists
RewriteRule derive_rule(const std::string& family, const std::vector<NormalBox>& ctx);

class RelationDB {
 public:
  std::vector<RewriteRule> rules;
  std::uint64_t seed = 0;

  const RewriteRule* find(const std::string& family, const std::vector<NormalBox>& ctx) const;
  std::map<std::string, int> family_counts() const;
  void reindex();

  std::string to_json() const;
  static RelationDB from_json(const std::string& text);

 private:
  std::map<std::string, std::size_t> index_;
};

// threads = 0 picks hardware concurrency
RelationDB enumerate_rules(unsigned threads = 0);
// shared, built on first use
const RelationDB& default_db();

struct VerifyReport {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t shape_passed = 0;
  std::vector<std::string> failures;
  std::map<std::string, int> per_family;
};
VerifyReport verify_db(const RelationDB& db, unsigned threads = 0);

// separability facts about particular families
bool first_wire_factor_is_pauli(const RewriteRule& r);
std::optional<int> last_wire_z_power(const RewriteRule& r);

struct GateRelation {
  std::string name;
  std::string description;
  Circuit lhs;
  Circuit rhs;
};
const std::vector<GateRelation>& gate_relations();

struct RelationResult {
  std::string name;
  bool ok;
};
std::vector<RelationResult> verify_gate_relations();

// FNV-1a over the canonical matrix dump
std::string matrix_hash(const CycloMatrix& m);

}  // namespace qc
