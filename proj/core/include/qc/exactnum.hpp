#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qc {

using BigInt = boost::multiprecision::cpp_int;

struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// (u + v*w) / 3^k with w = exp(2 pi i / 3).
class CycloNumber {
 public:
  CycloNumber() = default;
  CycloNumber(long long u) : u_(u) {}  // NOLINT(google-explicit-constructor)
  CycloNumber(BigInt u, BigInt v, unsigned k = 0);

  static CycloNumber omega();
  static CycloNumber omega_pow(int e);
  // (-w)^t
  static CycloNumber unit_phase(int t);

  const BigInt& u() const { return u_; }
  const BigInt& v() const { return v_; }
  unsigned k() const { return k_; }

  bool is_zero() const { return u_ == 0 && v_ == 0; }
  bool is_canonical() const;

  CycloNumber operator+(const CycloNumber& o) const;
  CycloNumber operator-(const CycloNumber& o) const;
  CycloNumber operator-() const;
  CycloNumber operator*(const CycloNumber& o) const;
  CycloNumber& operator+=(const CycloNumber& o) { return *this = *this + o; }
  CycloNumber& operator*=(const CycloNumber& o) { return *this = *this * o; }
  bool operator==(const CycloNumber& o) const {
    return k_ == o.k_ && u_ == o.u_ && v_ == o.v_;
  }
  bool operator!=(const CycloNumber& o) const { return !(*this == o); }

  CycloNumber conj() const;
  // a^2 - ab + b^2 over 9^k, returned as (numerator, k)
  BigInt norm_numerator() const;
  // divide by 3
  CycloNumber div3() const;
  // exact inverse when it exists in the ring
  std::optional<CycloNumber> inverse() const;

  std::string str() const;

 private:
  void canonicalize();
  BigInt u_ = 0;
  BigInt v_ = 0;
  unsigned k_ = 0;
};

CycloNumber conj(const CycloNumber& x);

// t with x == (-w)^t, or nothing when |x| != 1
std::optional<int> is_unit_phase(const CycloNumber& x);

class CycloMatrix {
 public:
  CycloMatrix() = default;
  CycloMatrix(std::size_t rows, std::size_t cols);

  static CycloMatrix identity(std::size_t dim);
  static CycloMatrix diag(const std::vector<CycloNumber>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  CycloNumber& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const CycloNumber& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<CycloNumber>& data() const { return data_; }

  CycloMatrix operator*(const CycloMatrix& o) const;
  CycloMatrix operator+(const CycloMatrix& o) const;
  CycloMatrix operator*(const CycloNumber& s) const;
  bool operator==(const CycloMatrix& o) const;
  bool operator!=(const CycloMatrix& o) const { return !(*this == o); }

  CycloMatrix dagger() const;
  CycloMatrix tensor(const CycloMatrix& o) const;
  bool is_identity() const;

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<CycloNumber> data_;
};

CycloMatrix tensor(const CycloMatrix& a, const CycloMatrix& b);

// t with a == (-w)^t b; throws if b is all zero
std::optional<int> equal_up_to_phase(const CycloMatrix& a, const CycloMatrix& b);

// first entry where a != b, as (row, col)
std::optional<std::pair<std::size_t, std::size_t>> first_difference(const CycloMatrix& a,
                                                                     const CycloMatrix& b);

inline int mod3(long long x) { return static_cast<int>(((x % 3) + 3) % 3); }
inline int mod6(long long x) { return static_cast<int>(((x % 6) + 6) % 6); }

}  // namespace qc
