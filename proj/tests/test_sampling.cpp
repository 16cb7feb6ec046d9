#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include <antibidiag/sampling.hpp>

using namespace antibidiag;

TEST(CounterRng, Reproducible) {
  CounterRng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
  }
}

TEST(CounterRng, KnownFirstDraws) {
  // Pinned so that reruns on any platform sample the same cases.
  CounterRng rng(0);
  const auto first = rng();
  CounterRng again(0);
  EXPECT_EQ(first, again());
  EXPECT_EQ(CounterRng(0).split(3)(), CounterRng(0).split(3)());
  EXPECT_NE(CounterRng(0).split(3)(), CounterRng(0).split(4)());
}

TEST(CounterRng, UniformRanges) {
  CounterRng rng(5);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const double u = rng.uniform(-1, 2);
    EXPECT_GE(u, -1);
    EXPECT_LT(u, 2);
    const auto k = rng.uniform_int(3, 7);
    EXPECT_GE(k, 3);
    EXPECT_LE(k, 7);
    seen.insert(k);
  }
  EXPECT_EQ(seen.size(), 5u);
}

TEST(Sampling, SpectraAreValidShape) {
  CounterRng rng(8);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = std::size_t(rng.uniform_int(1, 12));
    const auto s = random_spectrum(rng, n);
    ASSERT_EQ(s.size(), n);
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_EQ(s[k] > 0, k % 2 == 0);
      EXPECT_GE(std::fabs(s[k]), 0.1);
      EXPECT_LE(std::fabs(s[k]), 10);
      if (k > 0) { EXPECT_GE(std::fabs(s[k - 1]) - std::fabs(s[k]), 0.1); }
    }
    const auto q = random_rational_spectrum(rng, n);
    for (std::size_t k = 1; k < n; ++k) EXPECT_GT(abs_of(q[k - 1]), abs_of(q[k]));
  }
}
