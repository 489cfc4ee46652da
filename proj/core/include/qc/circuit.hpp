#pragma once

#include "qc/exactnum.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qc {

enum class GateKind : std::uint8_t {
  MinusOmega,
  H,
  S,
  CZ,
  MinusOne,
  Omega,
  SPrime,
  Z,
  X,
  Swap,
  CX,
  XC,
  RemoteCZ,
  RemoteCX,
  RemoteXC,
};

struct Gate {
  GateKind kind = GateKind::MinusOmega;
  int w0 = -1;
  int w1 = -1;

  static Gate minus_omega() { return {GateKind::MinusOmega, -1, -1}; }
  static Gate minus_one() { return {GateKind::MinusOne, -1, -1}; }
  static Gate omega() { return {GateKind::Omega, -1, -1}; }
  static Gate h(int w) { return {GateKind::H, w, -1}; }
  static Gate s(int w) { return {GateKind::S, w, -1}; }
  static Gate sp(int w) { return {GateKind::SPrime, w, -1}; }
  static Gate z(int w) { return {GateKind::Z, w, -1}; }
  static Gate x(int w) { return {GateKind::X, w, -1}; }
  // adjacent or remote, chosen from the wire distance
  static Gate cz(int i, int j);
  static Gate cx(int i, int j);
  static Gate xc(int i, int j);
  static Gate swap(int i, int j) { return {GateKind::Swap, i, j}; }

  int arity() const;
  bool is_scalar() const { return arity() == 0; }
  bool is_primitive() const;
  bool operator==(const Gate& o) const = default;
};

std::string gate_name(GateKind k);

struct Circuit {
  int n = 0;
  std::vector<Gate> word;

  Circuit() = default;
  explicit Circuit(int wires) : n(wires) {}
  Circuit(int wires, std::vector<Gate> w) : n(wires), word(std::move(w)) {}

  Circuit& add(const Gate& g, int power = 1);
  Circuit& append(const Circuit& c);
  bool valid() const;
  bool operator==(const Circuit& o) const = default;
};

// throws ContractViolation when a gate lies outside [0, n)
void validate(const Circuit& c);

// expansion into {-w, H, S, CZ}; wires keep their meaning
Circuit expand_derived(const Gate& g, int n);
Circuit expand_all(const Circuit& c);

// exact inverse word (each gate replaced by its inverse power, order reversed)
Circuit inverse(const Circuit& c);

// local matrix of a gate: 1x1, 3x3 or 9x9 (remote gates give their adjacent counterpart)
const CycloMatrix& local_matrix(GateKind k);

// apply a gate to every column of m (rows indexed by basis states, wire 0 most significant)
void apply_gate(const Gate& g, int n, CycloMatrix& m);
void apply_gate(const Gate& g, int n, std::vector<CycloNumber>& state);

CycloMatrix interpret(const Circuit& c);
// interpret after full expansion into primitives
CycloMatrix interpret_expanded(const Circuit& c);
// image of basis vector |0...0>
std::vector<CycloNumber> interpret_column(const Circuit& c, std::size_t column = 0);

struct ParseError : std::runtime_error {
  enum class Kind { Syntax, WireRange };
  Kind kind;
  int line;
  int column;
  std::string token;
  ParseError(Kind k, int ln, int col, std::string tok, const std::string& msg);
};

Circuit parse_circuit(std::string_view text);
std::string print_circuit(const Circuit& c);
std::string print_gate(const Gate& g);

Circuit random_word(int n, int length, std::uint64_t seed);

}  // namespace qc
