#pragma once

#include "qc/circuit.hpp"
#include "qc/pauli.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qc {

enum class BoxKind : std::uint8_t { A, B, C, D, E, F };

char box_letter(BoxKind k);

struct NormalBox {
  BoxKind kind = BoxKind::A;
  int i0 = 0;  // first index (or the only one)
  int i1 = 0;  // second index for A, B, D
  int wire = 0;  // top wire

  static NormalBox a(int x, int z, int w) { return {BoxKind::A, x, z, w}; }
  static NormalBox b(int x, int z, int w) { return {BoxKind::B, x, z, w}; }
  static NormalBox c(int v, int w) { return {BoxKind::C, v, 0, w}; }
  static NormalBox d(int x, int z, int w) { return {BoxKind::D, x, z, w}; }
  static NormalBox e(int v, int w) { return {BoxKind::E, v, 0, w}; }
  static NormalBox f(int v, int w) { return {BoxKind::F, v, 0, w}; }

  int width() const { return kind == BoxKind::B || kind == BoxKind::D ? 2 : 1; }
  bool two_index() const { return kind == BoxKind::A || kind == BoxKind::B || kind == BoxKind::D; }
  bool valid() const;
  bool touches(int w) const { return w >= wire && w < wire + width(); }
  bool operator==(const NormalBox& o) const = default;
  // e.g. "A12@3"
  std::string str() const;
};

// every box of every kind at wire 0
std::vector<NormalBox> all_boxes();

// circuit placed on n wires (n defaults to wire + width)
Circuit box_circuit(const NormalBox& box, int n = -1);

struct ActionPair {
  Pauli in;
  Pauli out;
};
// required and additional actions, on the box's local wires
std::vector<ActionPair> box_action(const NormalBox& box);

struct ZLayer {
  int width = 0;
  int m = 0;               // wire of the A box
  std::pair<int, int> a;   // A index
  std::vector<std::pair<int, int>> b;  // b[j] is the index of the B box on wires (j, j+1), j < m
  int c = 0;
  bool operator==(const ZLayer& o) const = default;
};

struct XLayer {
  int width = 0;
  std::vector<std::pair<int, int>> d;  // d[j] on wires (j, j+1)
  int e = 0;
  int f = 0;
  bool operator==(const XLayer& o) const = default;
};

struct Layer {
  ZLayer z;
  XLayer x;
  bool operator==(const Layer& o) const = default;
};

struct NormalForm {
  int n = 0;
  int t = 0;  // global phase (-w)^t
  std::vector<Layer> layers;  // widths n, n-1, ..., 1
  bool operator==(const NormalForm& o) const = default;
  bool same_boxes(const NormalForm& o) const { return n == o.n && layers == o.layers; }
};

std::vector<NormalBox> layer_boxes(const ZLayer& z);
std::vector<NormalBox> layer_boxes(const XLayer& x);
// all clean boxes in circuit order
std::vector<NormalBox> normal_form_boxes(const NormalForm& nf);
// rebuilds a normal form from its box sequence (inverse of normal_form_boxes)
NormalForm normal_form_from_boxes(int n, int t, const std::vector<NormalBox>& boxes);
bool well_formed(const NormalForm& nf);
std::size_t max_clean_boxes(int n);

Circuit normal_form_circuit(const NormalForm& nf);

ZLayer synth_z_layer(const Pauli& p);
XLayer synth_x_layer(const Pauli& q);

NormalForm synthesize(const Tableau& t);
// phase fixed against the circuit's exact action (column comparison); refuses n > max_n
NormalForm synthesize_with_phase(const Circuit& c, int max_n = 6);
// t with interpret(circuit(nf)) = (-w)^t * reference; the reference must match nf up to phase
int phase_against(const NormalForm& nf_without_phase, const Circuit& reference);

BigInt count_normal_forms(int n);
NormalForm random_normal_form(int n, std::uint64_t seed);

std::string normal_form_to_text(const NormalForm& nf);
std::string normal_form_to_json(const NormalForm& nf);
NormalForm normal_form_from_json(const std::string& text);

}  // namespace qc
