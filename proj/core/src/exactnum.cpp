#include "qc/exactnum.hpp"

#include <sstream>

namespace qc {

CycloNumber::CycloNumber(BigInt u, BigInt v, unsigned k) : u_(std::move(u)), v_(std::move(v)), k_(k) {
  canonicalize();
}

void CycloNumber::canonicalize() {
  if (u_ == 0 && v_ == 0) {
    k_ = 0;
    return;
  }
  while (k_ > 0 && u_ % 3 == 0 && v_ % 3 == 0) {
    u_ /= 3;
    v_ /= 3;
    --k_;
  }
}

bool CycloNumber::is_canonical() const {
  if (is_zero()) return k_ == 0;
  return k_ == 0 || !(u_ % 3 == 0 && v_ % 3 == 0);
}

CycloNumber CycloNumber::omega() { return {0, 1, 0}; }

CycloNumber CycloNumber::omega_pow(int e) {
  switch (mod3(e)) {
    case 0: return {1, 0, 0};
    case 1: return {0, 1, 0};
    default: return {-1, -1, 0};
  }
}

CycloNumber CycloNumber::unit_phase(int t) {
  // (-w)^t = (-1)^t w^t
  CycloNumber w = omega_pow(t);
  return (mod6(t) % 2 == 0) ? w : -w;
}

namespace {
BigInt pow3(unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 3;
  return r;
}
}  // namespace

CycloNumber CycloNumber::operator+(const CycloNumber& o) const {
  if (k_ == o.k_) return {u_ + o.u_, v_ + o.v_, k_};
  if (k_ > o.k_) {
    BigInt s = pow3(k_ - o.k_);
    return {u_ + o.u_ * s, v_ + o.v_ * s, k_};
  }
  BigInt s = pow3(o.k_ - k_);
  return {u_ * s + o.u_, v_ * s + o.v_, o.k_};
}

CycloNumber CycloNumber::operator-() const {
  CycloNumber r = *this;
  r.u_ = -r.u_;
  r.v_ = -r.v_;
  return r;
}

CycloNumber CycloNumber::operator-(const CycloNumber& o) const { return *this + (-o); }

CycloNumber CycloNumber::operator*(const CycloNumber& o) const {
  if (is_zero() || o.is_zero()) return {};
  BigInt vv = v_ * o.v_;
  return {u_ * o.u_ - vv, u_ * o.v_ + v_ * o.u_ - vv, k_ + o.k_};
}

CycloNumber CycloNumber::conj() const { return {u_ - v_, -v_, k_}; }

CycloNumber conj(const CycloNumber& x) { return x.conj(); }

BigInt CycloNumber::norm_numerator() const { return u_ * u_ - u_ * v_ + v_ * v_; }

CycloNumber CycloNumber::div3() const {
  if (is_zero()) return {};
  return {u_, v_, k_ + 1};
}

std::optional<CycloNumber> CycloNumber::inverse() const {
  if (is_zero()) return std::nullopt;
  BigInt nrm = norm_numerator();
  unsigned e = 0;
  while (nrm % 3 == 0) {
    nrm /= 3;
    ++e;
  }
  if (nrm != 1) return std::nullopt;
  // x^-1 = conj(x) * 9^k / 3^e
  CycloNumber c = conj();
  unsigned up = 2 * k_;
  BigInt u = c.u_, v = c.v_;
  unsigned kk = c.k_;
  if (up >= e) {
    BigInt s = pow3(up - e);
    return CycloNumber(u * s, v * s, kk);
  }
  return CycloNumber(u, v, kk + (e - up));
}

std::string CycloNumber::str() const {
  std::ostringstream os;
  os << '(' << u_ << ',' << v_ << ")/3^" << k_;
  return os.str();
}

std::optional<int> is_unit_phase(const CycloNumber& x) {
  if (x.k() != 0) return std::nullopt;
  for (int t = 0; t < 6; ++t)
    if (x == CycloNumber::unit_phase(t)) return t;
  return std::nullopt;
}

CycloMatrix::CycloMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

CycloMatrix CycloMatrix::identity(std::size_t dim) {
  CycloMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

CycloMatrix CycloMatrix::diag(const std::vector<CycloNumber>& d) {
  CycloMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CycloMatrix CycloMatrix::operator*(const CycloMatrix& o) const {
  if (cols_ != o.rows_) throw ContractViolation("matrix multiply: dimension mismatch");
  CycloMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t l = 0; l < cols_; ++l) {
      const CycloNumber& a = (*this)(i, l);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const CycloNumber& b = o(l, j);
        if (!b.is_zero()) r(i, j) += a * b;
      }
    }
  return r;
}

CycloMatrix CycloMatrix::operator+(const CycloMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ContractViolation("matrix add: dimension mismatch");
  CycloMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
  return r;
}

CycloMatrix CycloMatrix::operator*(const CycloNumber& s) const {
  CycloMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * s;
  return r;
}

bool CycloMatrix::operator==(const CycloMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

CycloMatrix CycloMatrix::dagger() const {
  CycloMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j).conj();
  return r;
}

CycloMatrix CycloMatrix::tensor(const CycloMatrix& o) const {
  CycloMatrix r(rows_ * o.rows_, cols_ * o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const CycloNumber& a = (*this)(i, j);
      if (a.is_zero()) continue;
      for (std::size_t p = 0; p < o.rows_; ++p)
        for (std::size_t q = 0; q < o.cols_; ++q) r(i * o.rows_ + p, j * o.cols_ + q) = a * o(p, q);
    }
  return r;
}

CycloMatrix tensor(const CycloMatrix& a, const CycloMatrix& b) { return a.tensor(b); }

bool CycloMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != CycloNumber(i == j ? 1 : 0)) return false;
  return true;
}

std::string CycloMatrix::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j).str();
    os << '\n';
  }
  return os.str();
}

std::optional<int> equal_up_to_phase(const CycloMatrix& a, const CycloMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ContractViolation("equal_up_to_phase: dimension mismatch");
  const auto& bd = b.data();
  std::size_t ref = bd.size();
  for (std::size_t i = 0; i < bd.size(); ++i)
    if (!bd[i].is_zero()) {
      ref = i;
      break;
    }
  if (ref == bd.size()) throw ContractViolation("equal_up_to_phase: reference matrix is zero");
  const auto& ad = a.data();
  for (int t = 0; t < 6; ++t) {
    CycloNumber ph = CycloNumber::unit_phase(t);
    if (ad[ref] != ph * bd[ref]) continue;
    for (std::size_t i = 0; i < bd.size(); ++i)
      if (ad[i] != ph * bd[i]) return std::nullopt;
    return t;
  }
  return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> first_difference(const CycloMatrix& a,
                                                                     const CycloMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::make_pair(std::size_t{0}, std::size_t{0});
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return std::make_pair(i, j);
  return std::nullopt;
}

}  // namespace qc
