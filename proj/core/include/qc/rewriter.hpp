#pragma once

#include "qc/circuit.hpp"
#include "qc/normalform.hpp"
#include "qc/relations.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qc {

struct DirtyItem {
  bool clean = true;
  NormalBox box;  // when clean
  Gate gate;      // when dirty, absolute wires

  static DirtyItem of_box(const NormalBox& b) { return {true, b, Gate{}}; }
  static DirtyItem of_gate(const Gate& g) { return {false, NormalBox{}, g}; }
  bool touches(int w) const;
};

struct DirtyNormalForm {
  int n = 0;
  int t = 0;
  std::vector<DirtyItem> items;  // circuit order

  bool is_clean() const;
  std::size_t clean_count() const;
  std::size_t dirty_count() const;
  // label of wire w at position pos (the next clean box on w after pos)
  Label label_at(std::size_t pos, int w) const;
  Circuit circuit() const;  // includes (-w)^t
};

using Measure = std::vector<std::size_t>;
// number of dirty gates before each clean box
Measure measure(const DirtyNormalForm& d);

DirtyNormalForm identity_normal_form(int n);

// places g at the front; scalars go to t; only W, H, S, CZ(i,i+1), X, Z accepted
void inject(const Gate& g, DirtyNormalForm& d);

struct StepInfo {
  std::string family;
  std::string rule;
  int base = 0;
  Measure before;
  Measure after;
};

// one rewrite at the leftmost applicable site; nullopt when clean
std::optional<StepInfo> step(DirtyNormalForm& d, const RelationDB& db = default_db());

// rewrites each maximal single-wire dirty run into a shortest word over the gates its label allows;
// returns the number of gates removed
std::size_t tidy(DirtyNormalForm& d);

NormalForm to_normal_form(const DirtyNormalForm& d);

struct NormalizeOptions {
  const RelationDB* db = nullptr;
  std::vector<StepInfo>* trace = nullptr;
  bool check_measure = true;
  bool tidy_runs = true;
  std::size_t step_budget = 0;  // 0 means 64 x default_step_budget
};

// injected gates x clean-box bound x longest residual
std::size_t default_step_budget(std::size_t gates, int n, const RelationDB& db = default_db());

NormalForm normalize(const Circuit& c, const NormalizeOptions& opt = {});

struct Equivalence {
  bool same_boxes = false;
  int delta_t = 0;  // c1 = (-w)^delta_t c2 when same_boxes
  bool equal() const { return same_boxes && delta_t == 0; }
};

Equivalence equivalent(const Circuit& c1, const Circuit& c2, const RelationDB& db = default_db());

// raised when a dirty gate meets a context with no rule
struct ClosureViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qc
