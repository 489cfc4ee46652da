#pragma once

#include "qc/circuit.hpp"
#include "qc/exactnum.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qc {

// w^c (x)_j X^{a_j} Z^{b_j}
struct Pauli {
  int c = 0;
  std::vector<std::uint8_t> a;
  std::vector<std::uint8_t> b;

  Pauli() = default;
  explicit Pauli(int n) : a(n, 0), b(n, 0) {}
  Pauli(int phase, std::vector<std::uint8_t> xs, std::vector<std::uint8_t> zs);

  static Pauli identity(int n) { return Pauli(n); }
  static Pauli z_on(int n, int wire, int power = 1);
  static Pauli x_on(int n, int wire, int power = 1);
  // single factor X^x Z^z on one wire
  static Pauli single(int n, int wire, int x, int z, int phase = 0);

  int n() const { return static_cast<int>(a.size()); }
  bool is_scalar() const;
  bool operator==(const Pauli& o) const = default;

  std::string str() const;
};

Pauli pauli_mul(const Pauli& p, const Pauli& q);
Pauli pauli_pow(const Pauli& p, int k);
// e with p q = w^e q p
int commutation_phase(const Pauli& p, const Pauli& q);
CycloMatrix pauli_matrix(const Pauli& p);
// parses strings produced by Pauli::str
Pauli parse_pauli(const std::string& s);

// forward action g p g^dagger
Pauli conjugate_gate(const Gate& g, const Pauli& p);
// inverse action g^dagger p g
Pauli preimage_gate(const Gate& g, const Pauli& p);

struct Tableau {
  int n = 0;
  std::vector<Pauli> zimg;
  std::vector<Pauli> ximg;

  static Tableau identity(int n);
  Pauli apply(const Pauli& p) const;
  bool valid() const;
  bool operator==(const Tableau& o) const = default;
};

Tableau tableau_of(const Circuit& c);
// t1 first, then t2
Tableau tableau_compose(const Tableau& t1, const Tableau& t2);
Tableau tableau_invert(const Tableau& t);
// append a gate on the output side
void tableau_apply_gate(Tableau& t, const Gate& g);

std::string tableau_to_json(const Tableau& t);
Tableau tableau_from_json(const std::string& text);

}  // namespace qc
