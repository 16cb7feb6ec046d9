#ifndef ANTIBIDIAG_SAMPLING_HPP
#define ANTIBIDIAG_SAMPLING_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <vector>

#include "scalar.hpp"

namespace antibidiag {

/// Counter-based generator: output k of stream s under seed is a fixed
/// SplitMix64 hash of (seed, s, k), so draws are reproducible on any
/// platform and streams can be split off without shared state.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return hash(seed_ ^ (stream_ * 0xD1B54A32D192ED03ULL), counter_++); }

  /// Independent generator for sub-stream `id`.
  CounterRng split(std::uint64_t id) const { return CounterRng(hash(seed_, stream_ + 0x5851F42D4C957F2DULL), id); }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * double((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi], rejection-sampled.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = std::uint64_t(hi - lo) + 1;
    if (span == 0) return std::int64_t((*this)());
    const std::uint64_t limit = max() - max() % span;
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return lo + std::int64_t(x % span);
  }

 private:
  static std::uint64_t hash(std::uint64_t key, std::uint64_t counter) {
    std::uint64_t z = key + 0x9E3779B97F4A7C15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

inline std::vector<double> alternate_signs(std::vector<double> moduli) {
  std::sort(moduli.rbegin(), moduli.rend());
  for (std::size_t k = 1; k < moduli.size(); k += 2) moduli[k] = -moduli[k];
  return moduli;
}

/// Moduli uniform in [lo, hi] with consecutive gaps >= min_gap, alternating
/// signs, largest first.
inline std::vector<double> random_spectrum(CounterRng& rng, std::size_t n, double lo = 0.1, double hi = 10.0,
                                           double min_gap = 0.1) {
  std::vector<double> m(n);
  while (true) {
    for (auto& x : m) x = rng.uniform(lo, hi);
    std::sort(m.rbegin(), m.rend());
    bool ok = true;
    for (std::size_t k = 1; k < n && ok; ++k) ok = m[k - 1] - m[k] >= min_gap;
    if (ok) break;
  }
  return alternate_signs(std::move(m));
}

/// Distinct rational moduli num/den with den in [1, max_den], value in (0, max_value].
inline std::vector<Rational> random_rational_spectrum(CounterRng& rng, std::size_t n, int max_den = 9,
                                                      int max_value = 20) {
  std::set<Rational> moduli;
  while (moduli.size() < n) {
    const auto den = rng.uniform_int(1, max_den);
    const auto num = rng.uniform_int(1, max_value * den);
    moduli.insert(Rational(num, den));
  }
  std::vector<Rational> out(moduli.rbegin(), moduli.rend());
  for (std::size_t k = 1; k < out.size(); k += 2) out[k] = -out[k];
  return out;
}

inline std::vector<double> random_positive_a(CounterRng& rng, std::size_t n, double lo = 0.25, double hi = 4.0) {
  std::vector<double> a(n);
  for (auto& x : a) x = rng.uniform(lo, hi);
  return a;
}

inline std::vector<Rational> random_positive_rational_a(CounterRng& rng, std::size_t n, int max_den = 7,
                                                        int max_value = 6) {
  std::vector<Rational> a(n);
  for (auto& x : a) {
    const auto den = rng.uniform_int(1, max_den);
    x = Rational(rng.uniform_int(1, max_value * den), den);
  }
  return a;
}

/// Strictly decreasing positive tuple in [lo, hi] with gaps >= min_gap.
inline std::vector<double> random_positive_tuple(CounterRng& rng, std::size_t n, double lo = 0.1, double hi = 10.0,
                                                 double min_gap = 0.1) {
  auto s = random_spectrum(rng, n, lo, hi, min_gap);
  for (auto& x : s) x = std::fabs(x);
  return s;
}

}  // namespace antibidiag

#endif  // ANTIBIDIAG_SAMPLING_HPP
