#include <gtest/gtest.h>

#include <cmath>

#include <antibidiag/matrix.hpp>
#include <antibidiag/sampling.hpp>

#include "oracles.hpp"

using namespace antibidiag;

namespace {

const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r6 = std::sqrt(6.0);

template <class T>
std::vector<std::vector<T>> rows_of(const Matrix<T>& m) {
  std::vector<std::vector<T>> r(m.n(), std::vector<T>(m.n()));
  for (std::size_t i = 1; i <= m.n(); ++i)
    for (std::size_t j = 1; j <= m.n(); ++j) r[i - 1][j - 1] = m(i, j);
  return r;
}

void expect_near(const Matrix<double>& m, const std::vector<std::vector<double>>& expected, double tol) {
  ASSERT_EQ(m.n(), expected.size());
  for (std::size_t i = 1; i <= m.n(); ++i)
    for (std::size_t j = 1; j <= m.n(); ++j) EXPECT_NEAR(m(i, j), expected[i - 1][j - 1], tol) << i << "," << j;
}

const CoefficientVector<double> kWorkedA({2, r2, r3});

}  // namespace

TEST(BuildAntibidiagonal, WorkedInstance) {
  const auto a = build_antibidiagonal(kWorkedA);
  EXPECT_EQ(a.tag(), MatrixTag::AntiBidiagonal);
  expect_near(a.entries(), {{0, 0, r3}, {0, 2, r2}, {r3, r2, 0}}, 0);
}

TEST(BuildAntibidiagonal, SmallestInstances) {
  expect_near(build_antibidiagonal(CoefficientVector<double>({1.5})).entries(), {{1.5}}, 0);
  expect_near(build_antibidiagonal(CoefficientVector<double>({1.5, 2.5})).entries(), {{0, 2.5}, {2.5, 1.5}}, 0);
}

TEST(BuildAntibidiagonal, MatchesPatternWalk) {
  CounterRng rng(21);
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto a = random_positive_rational_a(rng, n);
    const auto m = build_antibidiagonal(CoefficientVector<Rational>(a));
    EXPECT_EQ(rows_of(m.entries()), oracle::antibidiagonal_by_hand(a)) << "n=" << n;
    EXPECT_TRUE(is_symmetric(m.entries()));
  }
}

TEST(BuildJacobiSpecial, WorkedAndSmall) {
  expect_near(build_jacobi_special(kWorkedA).entries(), {{2, r2, 0}, {r2, 0, r3}, {0, r3, 0}}, 0);
  expect_near(build_jacobi_special(CoefficientVector<double>({4})).entries(), {{4}}, 0);
  expect_near(build_jacobi_special(CoefficientVector<double>({1, 3})).entries(), {{1, 3}, {3, 0}}, 0);
}

TEST(BuildAntidiagonalUnit, SmallOrders) {
  EXPECT_EQ(build_antidiagonal_unit<Rational>(1).entries(), (Matrix<Rational>{{1}}));
  EXPECT_EQ(build_antidiagonal_unit<Rational>(2).entries(), (Matrix<Rational>{{0, 1}, {1, 0}}));
  EXPECT_EQ(build_antidiagonal_unit<Rational>(3).entries(), (Matrix<Rational>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));
}

TEST(CoefficientVectorType, Validation) {
  try {
    CoefficientVector<double>({1, 0, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveEntry);
  }
  try {
    CoefficientVector<double>(std::vector<double>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
  }
}

TEST(StructuredMatrixType, TagInvariants) {
  EXPECT_THROW(StructuredMatrix<double>(Matrix<double>{{1, 1}, {1, 0}}, MatrixTag::AntiBidiagonal), Error);
  EXPECT_THROW(StructuredMatrix<double>(Matrix<double>{{1, 2, 1}, {2, 0, 1}, {1, 1, 0}}, MatrixTag::Jacobi), Error);
  EXPECT_THROW(StructuredMatrix<double>(Matrix<double>{{0, 2}, {1, 0}}, MatrixTag::Jacobi), Error);
  EXPECT_NO_THROW(StructuredMatrix<double>(Matrix<double>{{0, 2}, {2, 0}}, MatrixTag::Jacobi));
}

TEST(Minor, UnitMatrixInstances) {
  const auto j3 = build_antidiagonal_unit<Rational>(3);
  EXPECT_EQ(minor(j3, {1, 2}, {2, 3}), -1);
  EXPECT_EQ(minor(j3, {1, 2, 3}, {1, 2, 3}), -1);
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = 1; j <= 3; ++j) EXPECT_EQ(minor(j3, {i}, {j}), j3(i, j));
}

TEST(Minor, DeterminantMatchesLaplace) {
  CounterRng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = std::size_t(rng.uniform_int(1, 6));
    Matrix<Rational> m(n);
    Matrix<double> f(n);
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) {
        m(i, j) = Rational(rng.uniform_int(-5, 5), rng.uniform_int(1, 4));
        f(i, j) = to_double(m(i, j));
      }
    const Rational exact = oracle::det(rows_of(m));
    EXPECT_EQ(determinant(m), exact);
    EXPECT_NEAR(determinant(f), to_double(exact), 1e-9 * (1 + std::fabs(to_double(exact))));
  }
}

TEST(Matmul, UnitTimesAntibidiagonalIsUpperBidiagonal) {
  const auto j3 = build_antidiagonal_unit<double>(3);
  const auto ja = matmul(j3, build_antibidiagonal(kWorkedA));
  expect_near(ja.entries(), {{r3, r2, 0}, {0, 2, r2}, {0, 0, r3}}, 1e-15);
}

TEST(Matmul, IdentityAndSquare) {
  const auto a = build_antibidiagonal(kWorkedA);
  const StructuredMatrix<double> id(Matrix<double>::identity(3), MatrixTag::General);
  EXPECT_EQ(matmul(id, a).entries(), a.entries());
  const auto sq = matmul(a, a);
  EXPECT_EQ(sq.tag(), MatrixTag::Jacobi);
  expect_near(sq.entries(), {{3, r6, 0}, {r6, 6, 2 * r2}, {0, 2 * r2, 5}}, 1e-12);
}

TEST(Matmul, RandomStructureClaims) {
  CounterRng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = std::size_t(rng.uniform_int(1, 12));
    const CoefficientVector<double> a(random_positive_a(rng, n));
    const auto am = build_antibidiagonal(a);
    const auto ja = multiply(build_antidiagonal_unit<double>(n).entries(), am.entries());
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) {
        EXPECT_GE(ja(i, j), 0);
        if (j != i && j != i + 1) { EXPECT_EQ(ja(i, j), 0); }
      }
    const auto sq = matmul(am, am);
    EXPECT_EQ(sq.tag(), MatrixTag::Jacobi);
    for (std::size_t i = 1; i <= n; ++i) {
      EXPECT_GT(sq(i, i), 0);
      if (i < n) { EXPECT_GT(sq(i, i + 1), 0); }
    }
  }
}

TEST(SignNormalize, AlreadyPositive) {
  const auto r = sign_normalize(build_antibidiagonal(kWorkedA));
  EXPECT_EQ(r.a, kWorkedA);
  EXPECT_EQ(r.sign_flips, (std::vector<int>{1, 1, 1}));
  EXPECT_FALSE(r.global_negate);
}

TEST(SignNormalize, OneNegatedCoefficient) {
  Matrix<double> m = build_antibidiagonal(kWorkedA).entries();
  m(1, 3) = -m(1, 3);
  m(3, 1) = -m(3, 1);
  const auto r = sign_normalize(m);
  EXPECT_EQ(r.a, kWorkedA);
  EXPECT_FALSE(r.global_negate);
  EXPECT_EQ(conjugate_signs(m, r.sign_flips), build_antibidiagonal(kWorkedA).entries());
  // Some sign vector over all 2^3 does the job; the one found is among them.
  int solutions = 0;
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<int> eps{mask & 1 ? -1 : 1, mask & 2 ? -1 : 1, mask & 4 ? -1 : 1};
    solutions += conjugate_signs(m, eps) == build_antibidiagonal(kWorkedA).entries();
  }
  EXPECT_GT(solutions, 0);
}

TEST(SignNormalize, GlobalNegation) {
  const auto r = sign_normalize(negated(build_antibidiagonal(kWorkedA).entries()));
  EXPECT_EQ(r.a, kWorkedA);
  EXPECT_EQ(r.sign_flips, (std::vector<int>{1, 1, 1}));
  EXPECT_TRUE(r.global_negate);
}

TEST(SignNormalize, RandomConjugationsRecoverExactly) {
  CounterRng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = std::size_t(rng.uniform_int(1, 10));
    const CoefficientVector<Rational> a(random_positive_rational_a(rng, n));
    std::vector<int> eps(n);
    for (auto& e : eps) e = rng.uniform_int(0, 1) ? 1 : -1;
    Matrix<Rational> m = conjugate_signs(build_antibidiagonal(a).entries(), eps);
    const bool flip = rng.uniform_int(0, 1) == 1;
    if (flip) m = negated(m);
    const auto r = sign_normalize(m);
    EXPECT_EQ(r.a, a);
    EXPECT_EQ(r.global_negate, flip);
  }
}

TEST(SignNormalize, RejectsZeroAndPattern) {
  try {
    (void)sign_normalize(Matrix<double>{{0, 0}, {0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StructuralZero);
  }
  EXPECT_THROW((void)sign_normalize(Matrix<double>{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}), Error);
}

TEST(IndexSetType, Validation) {
  EXPECT_THROW(IndexSet({2, 1}), Error);
  EXPECT_THROW(IndexSet({0, 1}), Error);
  EXPECT_THROW(IndexSet(std::vector<std::size_t>{}), Error);
}
