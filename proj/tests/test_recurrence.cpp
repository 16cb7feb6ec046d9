#include <gtest/gtest.h>

#include <cmath>

#include <antibidiag/recurrence.hpp>
#include <antibidiag/sampling.hpp>

#include "oracles.hpp"

using namespace antibidiag;

namespace {

template <class T>
std::vector<std::vector<T>> rows_of(const Matrix<T>& m, std::size_t first = 1) {
  std::vector<std::vector<T>> r;
  for (std::size_t i = first; i <= m.n(); ++i) {
    std::vector<T> row;
    for (std::size_t j = first; j <= m.n(); ++j) row.push_back(m(i, j));
    r.push_back(row);
  }
  return r;
}

}  // namespace

TEST(ForwardP, OneByOne) {
  const auto p = forward_p(CoefficientVector<double>({2.5}));
  EXPECT_EQ(p[0].coeffs(), std::vector<double>{1});
  EXPECT_EQ(p[1].coeffs(), (std::vector<double>{-2.5, 1}));
}

TEST(ForwardP, WorkedCubic) {
  const SquaredCoefficients<Rational> s{Rational(2), {Rational(2), Rational(3)}};
  const auto p = forward_p(s);
  EXPECT_EQ(p.top().coeffs(), (std::vector<Rational>{6, -5, -2, 1}));
  const auto f = forward_p(CoefficientVector<double>({2, std::sqrt(2.0), std::sqrt(3.0)}));
  const std::vector<double> expected{6, -5, -2, 1};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(f.top()[k], expected[k], 1e-14);
}

TEST(ForwardQ, BaseCases) {
  const auto q = forward_q(CoefficientVector<double>({2, 1, 3}));
  EXPECT_EQ(q[0].coeffs(), std::vector<double>{1});
  EXPECT_EQ(q[1].coeffs(), (std::vector<double>{0, 1}));
  const auto q1 = forward_q(CoefficientVector<double>({2.5}));
  EXPECT_EQ(q1.top().coeffs(), (std::vector<double>{-2.5, 1}));
}

TEST(ForwardQ, SystemTags) {
  const CoefficientVector<double> a({1, 2});
  EXPECT_EQ(forward_p(a).source, PolySystem::P);
  EXPECT_EQ(forward_q(a).source, PolySystem::Q);
}

TEST(Recurrences, BothSystemsAgreeExactly) {
  CounterRng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = std::size_t(rng.uniform_int(1, 12));
    const CoefficientVector<Rational> a(random_positive_rational_a(rng, n));
    EXPECT_EQ(forward_p(a).top(), forward_q(a).top());
  }
}

TEST(Recurrences, MatchCofactorDeterminant) {
  CounterRng rng(62);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = std::size_t(rng.uniform_int(1, 6));
    const auto values = random_positive_rational_a(rng, n);
    const CoefficientVector<Rational> a(values);
    const auto p = forward_p(a);
    const auto q = forward_q(a);
    // p_k is the characteristic polynomial of the pattern built from a_1..a_k.
    for (std::size_t k = 1; k <= n; ++k) {
      const std::vector<Rational> head(values.begin(), values.begin() + std::ptrdiff_t(k));
      EXPECT_EQ(p[k].coeffs(), oracle::char_poly(oracle::antibidiagonal_by_hand(head)));
    }
    // q_k is the characteristic polynomial of the trailing k x k block of B.
    const auto b = build_jacobi_special(a).entries();
    for (std::size_t k = 1; k <= n; ++k)
      EXPECT_EQ(q[k].coeffs(), oracle::char_poly(rows_of(b, n - k + 1))) << "n=" << n << " k=" << k;
  }
}

TEST(Recurrences, QParity) {
  CounterRng rng(63);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = std::size_t(rng.uniform_int(2, 12));
    const auto q = forward_q(CoefficientVector<Rational>(random_positive_rational_a(rng, n)));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t c = 0; c <= k; ++c)
        if ((k - c) % 2 == 1) { EXPECT_EQ(q[k][c], 0) << "k=" << k << " c=" << c; }
  }
}

TEST(SquaredForm, Layout) {
  const auto s = squared_form(CoefficientVector<Rational>({Rational(3), Rational(1, 2), Rational(2)}));
  EXPECT_EQ(s.a1, 3);
  EXPECT_EQ(s.a_squared, (std::vector<Rational>{Rational(1, 4), Rational(4)}));
  EXPECT_EQ(s.size(), 3u);
  const SquaredCoefficients<double> bad{1.0, {2.0, -1.0}};
  EXPECT_THROW(bad.validate(), Error);
}
