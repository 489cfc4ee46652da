#include "qc/relations.hpp"

namespace qc {

namespace {

Circuit make(int n, std::initializer_list<std::pair<Gate, int>> gates) {
  Circuit c(n);
  for (const auto& [g, p] : gates) c.add(g, p);
  return c;
}

GateRelation rel(std::string name, std::string desc, Circuit lhs, Circuit rhs) {
  return {std::move(name), std::move(desc), std::move(lhs), std::move(rhs)};
}

}  // namespace

const std::vector<GateRelation>& gate_relations() {
  static const std::vector<GateRelation> rels = [] {
    const Gate w = Gate::minus_omega();
    const Gate h0 = Gate::h(0), s0 = Gate::s(0), h1 = Gate::h(1), s1 = Gate::s(1);
    const Gate cz = Gate::cz(0, 1), sw = Gate::swap(0, 1);
    std::vector<GateRelation> v;
    v.push_back(rel("C1", "(-w)^6 = 1", make(0, {{w, 6}}), Circuit(0)));
    v.push_back(rel("C2", "H^4 = 1", make(1, {{h0, 4}}), Circuit(1)));
    v.push_back(rel("C3", "S^3 = 1", make(1, {{s0, 3}}), Circuit(1)));
    {
      Circuit hs2 = make(1, {{h0, 1}, {s0, 2}});
      Circuit lhs(1);
      lhs.append(hs2).append(hs2).append(hs2);
      v.push_back(rel("C4", "(H S^2)^3 = -w", lhs, make(1, {{w, 1}})));
    }
    v.push_back(rel("C5", "S S' = S' S", make(1, {{s0, 1}, {Gate::sp(0), 1}}),
                    make(1, {{Gate::sp(0), 1}, {s0, 1}})));
    v.push_back(rel("C6", "CZ^3 = 1", make(2, {{cz, 3}}), Circuit(2)));
    v.push_back(rel("C7", "S on the control commutes with CZ", make(2, {{s0, 1}, {cz, 1}}),
                    make(2, {{cz, 1}, {s0, 1}})));
    v.push_back(rel("C8", "S on the target commutes with CZ", make(2, {{s1, 1}, {cz, 1}}),
                    make(2, {{cz, 1}, {s1, 1}})));
    v.push_back(rel("C9", "H^2 on the control inverts CZ", make(2, {{h0, 2}, {cz, 1}}),
                    make(2, {{cz, 2}, {h0, 2}})));
    v.push_back(rel("C10", "X (x) I through CZ", make(2, {{Gate::x(0), 1}, {cz, 1}}),
                    make(2, {{cz, 1}, {Gate::x(0), 1}, {Gate::z(1), 1}})));
    v.push_back(rel("C11", "SWAP^2 = 1", make(2, {{sw, 2}}), Circuit(2)));
    v.push_back(rel("C12", "H moves across SWAP", make(2, {{h0, 1}, {sw, 1}}),
                    make(2, {{sw, 1}, {h1, 1}})));
    v.push_back(rel("C13", "S moves across SWAP", make(2, {{s0, 1}, {sw, 1}}),
                    make(2, {{sw, 1}, {s1, 1}})));
    v.push_back(rel("C14", "CZ commutes with SWAP", make(2, {{cz, 1}, {sw, 1}}),
                    make(2, {{sw, 1}, {cz, 1}})));
    v.push_back(rel("C15", "SWAP from controlled additions",
                    make(2, {{sw, 1}}),
                    make(2, {{Gate::cx(0, 1), 1}, {Gate::xc(0, 1), 2}, {Gate::cx(0, 1), 1}, {h0, 2}, {Gate::minus_one(), 1}})));
    {
      const Gate s01 = Gate::swap(0, 1), s12 = Gate::swap(1, 2);
      v.push_back(rel("C16", "SWAP braid", make(3, {{s01, 1}, {s12, 1}, {s01, 1}}),
                      make(3, {{s12, 1}, {s01, 1}, {s12, 1}})));
    }
    v.push_back(rel("C17", "CZ commutes with a remote CZ on a shared control",
                    make(3, {{Gate::cz(0, 1), 1}, {Gate::cz(0, 2), 1}}),
                    make(3, {{Gate::cz(0, 2), 1}, {Gate::cz(0, 1), 1}})));
    v.push_back(rel("C18", "overlapping CZ gates commute", make(3, {{Gate::cz(0, 1), 1}, {Gate::cz(1, 2), 1}}),
                    make(3, {{Gate::cz(1, 2), 1}, {Gate::cz(0, 1), 1}})));
    return v;
  }();
  return rels;
}

std::vector<RelationResult> verify_gate_relations() {
  std::vector<RelationResult> out;
  for (const auto& r : gate_relations()) {
    bool ok = false;
    try {
      ok = interpret(r.lhs) == interpret(r.rhs);
    } catch (const std::exception&) {
      ok = false;
    }
    out.push_back({r.name, ok});
  }
  return out;
}

}  // namespace qc
