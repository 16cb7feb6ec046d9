#include <gtest/gtest.h>

#include <cmath>

#include <antibidiag/poly.hpp>
#include <antibidiag/sampling.hpp>

#include "oracles.hpp"

using namespace antibidiag;

namespace {
const std::vector<double> kWorked{3, -2, 1};
const std::vector<Rational> kWorkedQ{Rational(3), Rational(-2), Rational(1)};
}  // namespace

TEST(FromRoots, WorkedCubic) {
  const auto p = from_roots(kWorkedQ);
  const std::vector<Rational> expected{6, -5, -2, 1};
  EXPECT_EQ(p.coeffs(), expected);
  EXPECT_EQ(p.coeffs(), oracle::expand_roots(kWorkedQ));
}

TEST(FromRoots, DegreeOneAndEmpty) {
  EXPECT_EQ(from_roots(std::vector<double>{4.5}).coeffs(), (std::vector<double>{-4.5, 1}));
  const auto one = from_roots(std::vector<double>{});
  EXPECT_EQ(one.degree(), 0u);
  EXPECT_EQ(one.coeffs(), std::vector<double>{1});
}

TEST(FromRoots, DuplicatesRejected) {
  try {
    (void)from_roots(std::vector<double>{1, 2, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateRoots);
  }
  EXPECT_THROW((void)from_roots(std::vector<Rational>{Rational(1, 2), Rational(2, 4)}), Error);
}

TEST(FromRoots, CoefficientsAreSignedSymmetricSums) {
  CounterRng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = std::size_t(rng.uniform_int(1, 10));
    const auto roots = random_rational_spectrum(rng, n);
    const auto p = from_roots(roots);
    for (std::size_t k = 0; k <= n; ++k) {
      const Rational sigma = elementary_symmetric(roots, n - k);
      EXPECT_EQ(p[k], (n - k) % 2 == 0 ? sigma : Rational(-sigma));
      EXPECT_EQ(sigma, oracle::symmetric_sum(roots, n - k));
    }
    for (const auto& r : roots) EXPECT_EQ(eval(p, r), 0);
  }
}

TEST(FromRoots, FloatEvalAtRootsVanishes) {
  CounterRng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto roots = random_spectrum(rng, std::size_t(rng.uniform_int(1, 12)));
    const auto p = from_roots(roots);
    for (double r : roots) {
      double scale = 0;
      for (std::size_t k = 0; k <= p.degree(); ++k) scale += std::fabs(p[k]) * std::pow(std::fabs(r), double(k));
      EXPECT_LE(std::fabs(eval(p, r)), 1e-10 * scale);
    }
  }
}

TEST(ElementarySymmetric, WorkedValues) {
  EXPECT_EQ(elementary_symmetric(kWorked, 1), 2);
  EXPECT_EQ(elementary_symmetric(kWorked, 2), -5);
  EXPECT_EQ(elementary_symmetric(kWorked, 3), -6);
  EXPECT_EQ(elementary_symmetric(kWorked, 0), 1);
  EXPECT_EQ(elementary_symmetric(std::vector<double>{}, 0), 1);
  EXPECT_EQ(elementary_symmetric(std::vector<double>{5}, 1), 5);
  EXPECT_EQ(oracle::symmetric_sum(kWorked, 2), -5);
}

TEST(ElementarySymmetric, OrderBeyondSizeRejected) {
  try {
    (void)elementary_symmetric(kWorked, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
  }
}

TEST(ReflectNegate, WorkedCubic) {
  const auto p = from_roots(kWorkedQ);
  const auto r = reflect_negate(p);
  EXPECT_EQ(r.coeffs(), (std::vector<Rational>{-6, -5, 2, 1}));
  EXPECT_EQ(r.coeffs(), oracle::expand_roots(std::vector<Rational>{-3, 2, -1}));
}

TEST(ReflectNegate, EvenUnchangedAndLinear) {
  const MonicPoly<double> even({-3, 0, 1}, Parity::Even);
  EXPECT_EQ(reflect_negate(even), even);
  const MonicPoly<double> lin({-2.5, 1});
  EXPECT_EQ(reflect_negate(lin).coeffs(), (std::vector<double>{2.5, 1}));
}

TEST(ReflectNegate, Involution) {
  CounterRng rng(9);
  for (int i = 0; i < 50; ++i) {
    const auto p = from_roots(random_rational_spectrum(rng, std::size_t(rng.uniform_int(0, 8))));
    EXPECT_EQ(reflect_negate(reflect_negate(p)), p);
  }
}

TEST(Eval, WorkedValues) {
  const auto p = from_roots(kWorked);
  EXPECT_EQ(eval(p, 0.0), 6);
  EXPECT_EQ(eval(p, 1.0), 0);
  EXPECT_EQ(eval(MonicPoly<double>(), 7.0), 1);
}

TEST(Monic, ParityTagEnforced) {
  EXPECT_THROW((MonicPoly<Rational>({Rational(1), Rational(1), Rational(1)}, Parity::Even)), Error);
  const MonicPoly<double> even({-2, 1e-17, 1}, Parity::Even);
  EXPECT_EQ(even[1], 0);
  EXPECT_EQ(even[0], -2);
  const MonicPoly<double> odd({1e-17, -3, 0, 1}, Parity::Odd);
  EXPECT_EQ(odd[0], 0);
  EXPECT_THROW((MonicPoly<double>({1, 2})), Error);
  EXPECT_THROW(MonicPoly<double>(std::vector<double>{}), Error);
}

TEST(RootsBracketed, ClosedFormPair) {
  const MonicPoly<double> p({-3, 0, 1});
  const auto roots = roots_bracketed(p, std::vector<Bracket<double>>{{-2, 0}, {0, 2}});
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_NEAR(roots[0], -std::sqrt(3.0), 1e-13);
  EXPECT_NEAR(roots[1], std::sqrt(3.0), 1e-13);
}

TEST(RootsBracketed, Linear) {
  const double c = 0.7;
  const MonicPoly<double> p({-c, 1});
  const auto roots = roots_bracketed(p, std::vector<Bracket<double>>{{c - 1, c + 1}});
  EXPECT_NEAR(roots[0], c, 1e-13);
}

TEST(RootsBracketed, NoSignChange) {
  const MonicPoly<double> p({-3, 0, 1});
  try {
    (void)roots_bracketed(p, std::vector<Bracket<double>>{{1, 1.5}, {1.6, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoSignChange);
  }
}

TEST(RootsBracketed, BracketCountAndBackend) {
  const MonicPoly<double> p({-3, 0, 1});
  EXPECT_THROW((void)roots_bracketed(p, std::vector<Bracket<double>>{{1, 2}}), Error);
  try {
    (void)roots_bracketed(MonicPoly<Rational>({Rational(-1), Rational(1)}),
                          std::vector<Bracket<Rational>>{{Rational(0), Rational(2)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BackendUnsupported);
  }
}

TEST(RootsBracketed, RecoversRandomRootsFromGershgorinStyleBrackets) {
  CounterRng rng(12);
  const TolerancePolicy policy;
  for (int trial = 0; trial < 100; ++trial) {
    auto roots = random_spectrum(rng, std::size_t(rng.uniform_int(1, 12)));
    std::sort(roots.begin(), roots.end());
    const auto p = from_roots(roots);
    const double bound = root_bound(p);
    std::vector<Bracket<double>> brackets;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const double lo = i == 0 ? -bound : (roots[i - 1] + roots[i]) / 2;
      const double hi = i + 1 == roots.size() ? bound : (roots[i] + roots[i + 1]) / 2;
      brackets.push_back({lo, hi});
    }
    const auto found = roots_bracketed(p, brackets, policy);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      // Rounding the coefficients moves a root by up to eps * sum|c_k||r|^k / |p'(r)|.
      double mass = 0, slope = 1;
      for (std::size_t k = 0; k <= p.degree(); ++k) mass += std::fabs(p[k]) * std::pow(std::fabs(roots[i]), double(k));
      for (std::size_t j = 0; j < roots.size(); ++j)
        if (j != i) slope *= roots[i] - roots[j];
      const double conditioning = 8 * p.degree() * 0x1p-52 * mass / std::fabs(slope);
      EXPECT_NEAR(found[i], roots[i], 10 * policy.root_tol * std::max(1.0, std::fabs(roots[i])) + conditioning);
    }
  }
}

TEST(RootList, StrictlyIncreasing) {
  EXPECT_NO_THROW(RootList<double>({-1, 0, 2}));
  EXPECT_THROW(RootList<double>({0, 0}), Error);
}
