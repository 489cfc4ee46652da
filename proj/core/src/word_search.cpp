#include "word_search.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace qc::detail {

namespace {
constexpr std::uint32_t kEmpty = 0xFFFFFFFFu;

std::size_t hash_key(std::uint32_t k, std::size_t mask) {
  return static_cast<std::size_t>((static_cast<std::uint64_t>(k) * 0x9E3779B97F4A7C15ull) >> 20) & mask;
}
}  // namespace

int WordOracle::pack(const Pauli& p) const {
  int idx = 0, mul = 1;
  for (int j = 0; j < wires_; ++j) {
    idx += (p.a[j] + 3 * p.b[j]) * mul;
    mul *= 9;
  }
  return p.c + 3 * idx;
}

Pauli WordOracle::unpack(int idx) const {
  Pauli p(wires_);
  p.c = idx % 3;
  idx /= 3;
  for (int j = 0; j < wires_; ++j) {
    p.a[j] = static_cast<std::uint8_t>(idx % 3);
    p.b[j] = static_cast<std::uint8_t>((idx / 3) % 3);
    idx /= 9;
  }
  return p;
}

std::uint32_t WordOracle::encode(const Tableau& t) const {
  std::uint32_t key = 0;
  for (int j = 0; j < wires_; ++j) {
    key |= static_cast<std::uint32_t>(pack(t.zimg[j])) << (16 * j);
    key |= static_cast<std::uint32_t>(pack(t.ximg[j])) << (16 * j + 8);
  }
  return key;
}

Tableau WordOracle::decode(std::uint32_t key) const {
  Tableau t;
  t.n = wires_;
  for (int j = 0; j < wires_; ++j) {
    t.zimg.push_back(unpack(slot(key, 2 * j)));
    t.ximg.push_back(unpack(slot(key, 2 * j + 1)));
  }
  return t;
}

std::size_t WordOracle::find(std::uint32_t key) const {
  const std::size_t mask = keys_.size() - 1;
  for (std::size_t h = hash_key(key, mask);; h = (h + 1) & mask) {
    if (keys_[h] == key) return h;
    if (keys_[h] == kEmpty) return npos;
  }
}

void WordOracle::grow() {
  std::vector<std::uint32_t> ok = std::move(keys_), op = std::move(parent_);
  std::vector<std::uint8_t> og = std::move(gen_), od = std::move(dist_);
  const std::size_t cap = ok.size() * 2;
  keys_.assign(cap, kEmpty);
  parent_.assign(cap, 0);
  gen_.assign(cap, 0);
  dist_.assign(cap, 0);
  const std::size_t mask = cap - 1;
  for (std::size_t i = 0; i < ok.size(); ++i) {
    if (ok[i] == kEmpty) continue;
    std::size_t h = hash_key(ok[i], mask);
    while (keys_[h] != kEmpty) h = (h + 1) & mask;
    keys_[h] = ok[i];
    parent_[h] = op[i];
    gen_[h] = og[i];
    dist_[h] = od[i];
  }
}

std::size_t WordOracle::insert(std::uint32_t key) {
  if (2 * (used_ + 1) > keys_.size()) grow();
  const std::size_t mask = keys_.size() - 1;
  std::size_t h = hash_key(key, mask);
  while (keys_[h] != kEmpty) h = (h + 1) & mask;
  keys_[h] = key;
  ++used_;
  return h;
}

WordOracle::WordOracle(int wires, std::vector<Gate> gens) : wires_(wires), gens_(std::move(gens)) {
  if (wires_ < 1 || wires_ > 2) throw ContractViolation("WordOracle supports one or two wires");
  const int np = wires_ == 1 ? 27 : 243;
  for (const auto& g : gens_) {
    std::vector<int> tab(np);
    for (int i = 0; i < np; ++i) tab[i] = pack(conjugate_gate(g, unpack(i)));
    act_.push_back(std::move(tab));
  }
  keys_.assign(1024, kEmpty);
  parent_.assign(1024, 0);
  gen_.assign(1024, 0);
  dist_.assign(1024, 0);

  const std::uint32_t id = encode(Tableau::identity(wires_));
  std::size_t h = insert(id);
  parent_[h] = id;
  gen_[h] = 0xFF;
  dist_[h] = 0;
  order_.push_back(id);
  for (std::size_t qi = 0; qi < order_.size(); ++qi) {
    const std::uint32_t cur = order_[qi];
    const std::uint8_t d = dist_[find(cur)];
    for (std::size_t g = 0; g < act_.size(); ++g) {
      const std::uint32_t nk = step(cur, g);
      if (find(nk) != npos) continue;
      std::size_t hn = insert(nk);
      parent_[hn] = cur;
      gen_[hn] = static_cast<std::uint8_t>(g);
      dist_[hn] = static_cast<std::uint8_t>(d + 1);
      order_.push_back(nk);
    }
  }
}

std::uint32_t WordOracle::step(std::uint32_t key, std::size_t g) const {
  std::uint32_t nk = 0;
  for (int s = 0; s < 2 * wires_; ++s) nk |= static_cast<std::uint32_t>(act_[g][slot(key, s)]) << (8 * s);
  return nk;
}

std::optional<std::size_t> WordOracle::generator_index(const Gate& g) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i] == g) return i;
  return std::nullopt;
}

int WordOracle::distance(std::uint32_t key) const {
  std::size_t h = find(key);
  return h == npos ? -1 : dist_[h];
}

std::vector<Gate> WordOracle::word_for_key(std::uint32_t key) const {
  std::vector<Gate> w;
  std::size_t h = find(key);
  while (dist_[h] > 0) {
    w.push_back(gens_[gen_[h]]);
    h = find(parent_[h]);
  }
  std::reverse(w.begin(), w.end());
  return w;
}

std::optional<std::vector<Gate>> WordOracle::word(const Tableau& t) const {
  if (t.n != wires_) return std::nullopt;
  std::uint32_t key = encode(t);
  if (find(key) == npos) return std::nullopt;
  return word_for_key(key);
}

const WordOracle& oracle_for(int wires, const std::vector<Gate>& gens) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<WordOracle>> cache;
  std::string id = std::to_string(wires);
  for (const auto& g : gens) id += ";" + print_gate(g);
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[id];
  if (!slot) slot = std::make_unique<WordOracle>(wires, gens);
  return *slot;
}

}  // namespace qc::detail
