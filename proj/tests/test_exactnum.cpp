#include "oracle.hpp"
#include "qc/exactnum.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using qc::CycloMatrix;
using qc::CycloNumber;

namespace {

CycloNumber random_number(std::mt19937_64& rng, int span = 20, unsigned max_k = 3) {
  std::uniform_int_distribution<int> coef(-span, span);
  std::uniform_int_distribution<unsigned> den(0, max_k);
  return CycloNumber(coef(rng), coef(rng), den(rng));
}

bool close(oracle::cd a, oracle::cd b) { return std::abs(a - b) < 1e-9 * (1 + std::abs(a)); }

}  // namespace

TEST(Exactnum, OmegaIsPrimitiveCubeRoot) {
  const CycloNumber w = CycloNumber::omega();
  EXPECT_NE(w, CycloNumber(1));
  EXPECT_EQ(w * w * w, CycloNumber(1));
  EXPECT_EQ(CycloNumber(1) + w + w * w, CycloNumber(0));
  EXPECT_EQ(CycloNumber::omega_pow(2), w * w);
  EXPECT_EQ(CycloNumber::omega_pow(-1), w * w);
}

TEST(Exactnum, MinusOmegaHasOrderSix) {
  CycloNumber x(1);
  for (int t = 1; t <= 6; ++t) {
    x = x * CycloNumber::unit_phase(1);
    if (t < 6) {
      EXPECT_NE(x, CycloNumber(1)) << t;
    }
  }
  EXPECT_EQ(x, CycloNumber(1));
  EXPECT_EQ(CycloNumber::unit_phase(3), CycloNumber(-1));
  EXPECT_EQ(CycloNumber::unit_phase(4), CycloNumber::omega());
}

TEST(Exactnum, CanonicalFormRemovesCommonThrees) {
  CycloNumber a(9, 3, 2);
  EXPECT_EQ(a, CycloNumber(3, 1, 1));
  EXPECT_TRUE(a.is_canonical());
  EXPECT_EQ(CycloNumber(0, 0, 5).k(), 0u);
  EXPECT_EQ(CycloNumber(3, 3, 1), CycloNumber(1, 1, 0));
  EXPECT_EQ(CycloNumber(3, 1, 1).div3(), CycloNumber(3, 1, 2));
}

TEST(Exactnum, RingAxiomsHoldOnRandomElements) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    auto a = random_number(rng), b = random_number(rng), c = random_number(rng);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, CycloNumber(0));
    EXPECT_TRUE((a * b).is_canonical());
    EXPECT_TRUE((a + b).is_canonical());
  }
}

TEST(Exactnum, ArithmeticAgreesWithComplexModel) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    auto a = random_number(rng), b = random_number(rng);
    auto ca = oracle::to_complex(a), cb = oracle::to_complex(b);
    EXPECT_TRUE(close(oracle::to_complex(a + b), ca + cb));
    EXPECT_TRUE(close(oracle::to_complex(a * b), ca * cb));
    EXPECT_TRUE(close(oracle::to_complex(a.conj()), std::conj(ca)));
  }
}

TEST(Exactnum, ConjugationIsAnInvolutiveAutomorphism) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    auto a = random_number(rng), b = random_number(rng);
    EXPECT_EQ(a.conj().conj(), a);
    EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
    EXPECT_EQ((a + b).conj(), a.conj() + b.conj());
  }
  EXPECT_EQ(CycloNumber::omega().conj(), CycloNumber::omega_pow(2));
}

TEST(Exactnum, NormIsMultiplicative) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 300; ++i) {
    auto a = random_number(rng, 20, 0), b = random_number(rng, 20, 0);
    EXPECT_EQ((a * b).norm_numerator(), a.norm_numerator() * b.norm_numerator());
    // |a|^2 = a * conj(a) is rational
    auto n = a * a.conj();
    EXPECT_EQ(n.v(), 0);
  }
}

TEST(Exactnum, InverseExistsExactlyForRingUnits) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 6; ++t) {
    auto u = CycloNumber::unit_phase(t);
    auto inv = u.inverse();
    ASSERT_TRUE(inv);
    EXPECT_EQ(*inv * u, CycloNumber(1));
  }
  // 1 + 2w has norm 3, a unit once 1/3 is adjoined
  auto h = CycloNumber(1, 2);
  ASSERT_TRUE(h.inverse());
  EXPECT_EQ(*h.inverse() * h, CycloNumber(1));
  EXPECT_FALSE(CycloNumber(2).inverse());
  EXPECT_FALSE(CycloNumber(0).inverse());
  for (int i = 0; i < 200; ++i) {
    auto a = random_number(rng);
    if (auto inv = a.inverse()) {
      EXPECT_EQ(*inv * a, CycloNumber(1));
    }
  }
}

TEST(Exactnum, ExactlySixUnitPhases) {
  std::set<int> seen;
  for (int t = 0; t < 6; ++t) {
    auto r = qc::is_unit_phase(CycloNumber::unit_phase(t));
    ASSERT_TRUE(r);
    EXPECT_EQ(*r, t);
    seen.insert(*r);
  }
  EXPECT_EQ(seen.size(), 6u);
  EXPECT_FALSE(qc::is_unit_phase(CycloNumber(1, 2)));
  EXPECT_FALSE(qc::is_unit_phase(CycloNumber(1, 2, 1)));  // |.|^2 = 1/3
  EXPECT_FALSE(qc::is_unit_phase(CycloNumber(0)));
}

TEST(Exactnum, StringForm) {
  EXPECT_EQ(CycloNumber(1).str(), "(1,0)/3^0");
  EXPECT_EQ(CycloNumber(1, 2, 1).str(), "(1,2)/3^1");
}

TEST(Exactnum, MatrixProductAndTensorMatchComplexModel) {
  std::mt19937_64 rng(16);
  for (int rep = 0; rep < 20; ++rep) {
    CycloMatrix a(3, 3), b(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        a(i, j) = random_number(rng, 5, 1);
        b(i, j) = random_number(rng, 5, 1);
      }
    auto ca = oracle::to_complex(a), cb = oracle::to_complex(b);
    EXPECT_LT(oracle::dist(oracle::to_complex(a * b), oracle::mul(ca, cb)), 1e-9);
    EXPECT_LT(oracle::dist(oracle::to_complex(a.tensor(b)), oracle::kron(ca, cb)), 1e-9);
    EXPECT_LT(oracle::dist(oracle::to_complex(a.dagger()), oracle::dagger(ca)), 1e-9);
    EXPECT_EQ((a * b).dagger(), b.dagger() * a.dagger());
  }
}

TEST(Exactnum, EqualUpToPhase) {
  CycloMatrix m = CycloMatrix::diag({CycloNumber(1), CycloNumber::omega(), CycloNumber(0, 0, 0) + CycloNumber(1, 2, 1)});
  for (int t = 0; t < 6; ++t) {
    auto r = qc::equal_up_to_phase(m * CycloNumber::unit_phase(t), m);
    ASSERT_TRUE(r);
    EXPECT_EQ(*r, t);
  }
  CycloMatrix other = m;
  other(2, 2) = CycloNumber(1);
  EXPECT_FALSE(qc::equal_up_to_phase(other, m));
  EXPECT_FALSE(qc::equal_up_to_phase(m * CycloNumber(2), m));
  EXPECT_THROW(qc::equal_up_to_phase(m, CycloMatrix(3, 3)), qc::ContractViolation);
  auto diff = qc::first_difference(other, m);
  ASSERT_TRUE(diff);
  EXPECT_EQ(*diff, std::make_pair(std::size_t{2}, std::size_t{2}));
  EXPECT_FALSE(qc::first_difference(m, m));
}

TEST(Exactnum, ModHelpers) {
  EXPECT_EQ(qc::mod3(-1), 2);
  EXPECT_EQ(qc::mod3(7), 1);
  EXPECT_EQ(qc::mod6(-1), 5);
  EXPECT_EQ(qc::mod6(12), 0);
}
