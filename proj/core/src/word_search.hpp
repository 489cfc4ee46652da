#pragma once

#include "qc/circuit.hpp"
#include "qc/pauli.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qc::detail {

// Breadth-first enumeration of the group generated by a gate set on one or two wires.
// Elements are tableaus (Clifford modulo global phase) packed into 32-bit keys.
class WordOracle {
 public:
  WordOracle(int wires, std::vector<Gate> gens);

  int wires() const { return wires_; }
  std::size_t size() const { return order_.size(); }

  std::uint32_t encode(const Tableau& t) const;
  Tableau decode(std::uint32_t key) const;
  bool contains(std::uint32_t key) const { return find(key) != npos; }
  int distance(std::uint32_t key) const;
  // shortest word, local wires
  std::optional<std::vector<Gate>> word(const Tableau& t) const;
  std::vector<Gate> word_for_key(std::uint32_t key) const;
  // keys in breadth-first order
  const std::vector<std::uint32_t>& order() const { return order_; }

  // key after appending generator index g
  std::uint32_t step(std::uint32_t key, std::size_t g) const;
  std::optional<std::size_t> generator_index(const Gate& g) const;
  std::uint32_t identity_key() const { return order_.front(); }

  int pack(const Pauli& p) const;
  Pauli unpack(int idx) const;
  // packed image of generator slot s (0: Z_0, 1: X_0, 2: Z_1, 3: X_1)
  static int slot(std::uint32_t key, int s) { return static_cast<int>((key >> (8 * s)) & 0xFF); }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find(std::uint32_t key) const;
  std::size_t insert(std::uint32_t key);
  void grow();

  int wires_;
  std::vector<Gate> gens_;
  std::vector<std::vector<int>> act_;  // act_[g][packed pauli]
  std::vector<std::uint32_t> keys_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> gen_;
  std::vector<std::uint8_t> dist_;
  std::vector<std::uint32_t> order_;
  std::size_t used_ = 0;
};

// shared oracle for a generator set (built once, thread safe)
const WordOracle& oracle_for(int wires, const std::vector<Gate>& gens);

}  // namespace qc::detail
