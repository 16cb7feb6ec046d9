#ifndef ANTIBIDIAG_VERIFY_HPP
#define ANTIBIDIAG_VERIFY_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "inverse.hpp"
#include "matrix.hpp"
#include "recurrence.hpp"
#include "sampling.hpp"
#include "spectral.hpp"

namespace antibidiag::verify {

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  bool skipped = false;
  std::string detail;  // first failure, if any
  double seconds = 0;

  bool passed() const { return skipped || failures == 0; }
};

struct SuiteConfig {
  std::uint64_t seed = 20240601;
  std::vector<std::size_t> sizes;  // problem orders to sample from
  TolerancePolicy policy;
  std::size_t cases = 100;         // per property, unless a property pins its own count
};

namespace detail {

inline std::vector<std::size_t> within(const std::vector<std::size_t>& sizes, std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> out;
  for (auto n : sizes)
    if (n >= lo && n <= hi) out.push_back(n);
  return out;
}

// Runs `body(rng, n)` for `cases` draws of n from `sizes`; body returns an
// empty string on success or a failure description.
inline PropertyResult run_cases(std::string name, const SuiteConfig& cfg, std::uint64_t stream,
                                const std::vector<std::size_t>& sizes, std::size_t cases,
                                const std::function<std::string(CounterRng&, std::size_t)>& body) {
  PropertyResult r;
  r.name = std::move(name);
  const auto t0 = std::chrono::steady_clock::now();
  if (sizes.empty() || cases == 0) {
    r.skipped = true;
    r.detail = "no applicable sizes";
    return r;
  }
  CounterRng root(cfg.seed, stream);
  for (std::size_t c = 0; c < cases; ++c) {
    CounterRng rng = root.split(c);
    const std::size_t n = sizes[c % sizes.size()];
    std::string failure;
    try {
      failure = body(rng, n);
    } catch (const std::exception& e) {
      failure = e.what();
    }
    ++r.cases;
    if (!failure.empty()) {
      if (r.failures == 0) r.detail = "case " + std::to_string(c) + " (n=" + std::to_string(n) + "): " + failure;
      ++r.failures;
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::string describe(const std::vector<double>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace detail

/// Eigenvalues of the special Jacobi matrix built from solve(lambda) match
/// lambda to `rel_tol`; every trace also carries a full interlacing chain.
inline PropertyResult roundtrip(const SuiteConfig& cfg, std::size_t cases, double rel_tol = 1e-8) {
  return detail::run_cases("roundtrip", cfg, 1, detail::within(cfg.sizes, 1, 64), cases,
                           [&](CounterRng& rng, std::size_t n) -> std::string {
                             const auto lambdas = random_spectrum(rng, n);
                             const auto r = solve_roundtrip(validate_spectrum(lambdas), cfg.policy);
                             if (!(r.max_error <= rel_tol))
                               return "relative error " + format_scalar(r.max_error) + " for " +
                                      detail::describe(lambdas);
                             return {};
                           });
}

/// Strict interlacing of consecutive q-levels in every reconstruction.
inline PropertyResult interlacing_chain(const SuiteConfig& cfg, std::size_t cases) {
  return detail::run_cases("interlacing_chain", cfg, 1, detail::within(cfg.sizes, 1, 64), cases,
                           [&](CounterRng& rng, std::size_t n) -> std::string {
                             const auto lambdas = random_spectrum(rng, n);
                             const auto t = solve(validate_spectrum(lambdas), cfg.policy);
                             if (!t.interlacing_ok) return "interlacing broken for " + detail::describe(lambdas);
                             if (t.interlacing.size() != n) return "incomplete certificate chain";
                             for (const auto& level : t.interlacing)
                               if (!level.interlaces_parent)
                                 return "level " + std::to_string(level.degree) + " fails";
                             return {};
                           });
}

/// Exact rational solve, then forward_q on the solved squares reproduces the
/// coefficients of prod (lambda - lambda_j).
inline PropertyResult exact_uniqueness(const SuiteConfig& cfg, std::size_t cases) {
  return detail::run_cases("exact_uniqueness", cfg, 2, detail::within(cfg.sizes, 1, 32), cases,
                           [&](CounterRng& rng, std::size_t n) -> std::string {
                             const auto lambdas = random_rational_spectrum(rng, n);
                             const auto t = solve(validate_spectrum(lambdas));
                             const auto forward = forward_q(t.coefficients);
                             if (!(forward.top() == from_roots(lambdas)))
                               return "forward_q does not reproduce q_n";
                             for (std::size_t k = 0; k < n; ++k)
                               if (!(forward[k] == t.q[k])) return "q_" + std::to_string(k) + " differs";
                             return {};
                           });
}

/// p_n and q_n coincide exactly for random positive rational a.
inline PropertyResult recurrence_equivalence(const SuiteConfig& cfg, std::size_t cases) {
  return detail::run_cases("recurrence_equivalence", cfg, 3, detail::within(cfg.sizes, 1, 32), cases,
                           [&](CounterRng& rng, std::size_t n) -> std::string {
                             const CoefficientVector<Rational> a(random_positive_rational_a(rng, n));
                             if (!(forward_p(a).top() == forward_q(a).top())) return "p_n != q_n";
                             return {};
                           });
}

/// The reconstructed anti-bidiagonal matrix conforms to the signature
/// 1, -1, -1, 1, 1, ... at every minor order; for n <= class_plus_max_n some
/// power (A^2)^m with m <= n - 1 is totally positive.
inline PropertyResult sign_regularity(const SuiteConfig& cfg, std::size_t cases, std::size_t class_plus_max_n = 4) {
  return detail::run_cases("sign_regularity", cfg, 4, detail::within(cfg.sizes, 2, 5), cases,
                           [&](CounterRng& rng, std::size_t n) -> std::string {
                             const auto lambdas = random_spectrum(rng, n);
                             const auto t = solve(validate_spectrum(lambdas), cfg.policy);
                             const auto a_mat = build_antibidiagonal(*t.a);
                             const auto rep = classify_sign_regular(a_mat, n, signature_sequence(n), cfg.policy);
                             if (!rep.conforming())
                               return "order " + std::to_string(rep.achieved_class + 1) + " violates the signature";
                             if (n <= class_plus_max_n) {
                               const auto m = check_class_plus(a_mat, n - 1, cfg.policy);
                               if (!m) return "(A^2)^m not totally positive for any m <= n-1";
                             }
                             return {};
                           });
}

/// Same check in exact arithmetic on random positive rational a.
inline PropertyResult sign_regularity_exact(const SuiteConfig& cfg, std::size_t cases) {
  return detail::run_cases("sign_regularity_exact", cfg, 5, detail::within(cfg.sizes, 2, 5), cases,
                           [&](CounterRng& rng, std::size_t n) -> std::string {
                             const CoefficientVector<Rational> a(random_positive_rational_a(rng, n));
                             const auto a_mat = build_antibidiagonal(a);
                             const auto rep = classify_sign_regular(a_mat, n, signature_sequence(n));
                             if (!rep.conforming()) return "exact signature violation";
                             if (n <= 4 && !check_class_plus(a_mat, n - 1)) return "no totally positive power";
                             return {};
                           });
}

/// sigma_3 > sigma_1 sigma_2 on valid spectra.
inline PropertyResult sigma_inequality(const SuiteConfig& cfg, std::size_t cases) {
  return detail::run_cases("sigma_inequality", cfg, 6, detail::within(cfg.sizes, 3, 64), cases,
                           [&](CounterRng& rng, std::size_t n) -> std::string {
                             const auto lambdas = random_spectrum(rng, n);
                             const auto r = check_sigma_inequality(validate_spectrum(lambdas));
                             if (!r.holds) return "sigma_3 <= sigma_1 sigma_2 for " + detail::describe(lambdas);
                             return {};
                           });
}

/// A^2 from jacobi_sqrt is tridiagonal with positive codiagonal and spectrum mus.
inline PropertyResult square_root(const SuiteConfig& cfg, std::size_t cases, double rel_tol = 1e-8) {
  return detail::run_cases("square_root", cfg, 7, detail::within(cfg.sizes, 1, 64), cases,
                           [&](CounterRng& rng, std::size_t n) -> std::string {
                             const auto mus = random_positive_tuple(rng, n);
                             const auto r = jacobi_sqrt(PositiveTuple<double>(mus), cfg.policy);
                             const auto& b = r.jacobi.entries();
                             const double bound = 1e-10 * max_norm(b);
                             for (std::size_t i = 1; i <= n; ++i)
                               for (std::size_t j = 1; j <= n; ++j) {
                                 const std::size_t d = i > j ? i - j : j - i;
                                 if (d > 1 && std::fabs(b(i, j)) > bound) return "off-tridiagonal mass";
                                 if (d == 1 && !(b(i, j) > 0)) return "non-positive codiagonal";
                               }
                             const auto eig = eigensolve_tridiagonal(r.jacobi, cfg.policy);
                             for (std::size_t k = 0; k < n; ++k) {
                               const double expected = mus[n - 1 - k];
                               if (std::fabs(eig[k] - expected) > rel_tol * expected)
                                 return "eigenvalue " + format_scalar(eig[k]) + " vs " + format_scalar(expected);
                             }
                             return {};
                           });
}

/// Exact Cauchy-Binet on random structured pairs drawn from
/// {J, A, B, JA, A^2, random integer matrix}.
inline PropertyResult cauchy_binet(const SuiteConfig& cfg, std::size_t cases) {
  return detail::run_cases("cauchy_binet", cfg, 8, detail::within(cfg.sizes, 1, 5), cases,
                           [&](CounterRng& rng, std::size_t n) -> std::string {
                             const CoefficientVector<Rational> a(random_positive_rational_a(rng, n));
                             const auto pick = [&](std::int64_t which) -> Matrix<Rational> {
                               switch (which) {
                                 case 0: return build_antidiagonal_unit<Rational>(n).entries();
                                 case 1: return build_antibidiagonal(a).entries();
                                 case 2: return build_jacobi_special(a).entries();
                                 case 3:
                                   return multiply(build_antidiagonal_unit<Rational>(n).entries(),
                                                   build_antibidiagonal(a).entries());
                                 case 4:
                                   return multiply(build_antibidiagonal(a).entries(),
                                                   build_antibidiagonal(a).entries());
                                 default: {
                                   Matrix<Rational> m(n);
                                   for (std::size_t i = 1; i <= n; ++i)
                                     for (std::size_t j = 1; j <= n; ++j) m(i, j) = rng.uniform_int(-5, 5);
                                   return m;
                                 }
                               }
                             };
                             const auto x = pick(rng.uniform_int(0, 5));
                             const auto y = pick(rng.uniform_int(0, 5));
                             const std::size_t k = std::size_t(rng.uniform_int(1, std::int64_t(n)));
                             std::vector<std::size_t> all(n);
                             for (std::size_t i = 0; i < n; ++i) all[i] = i + 1;
                             const auto choose = [&] {
                               auto pool = all;
                               for (std::size_t i = 0; i < k; ++i)
                                 std::swap(pool[i], pool[i + std::size_t(rng.uniform_int(0, std::int64_t(n - i - 1)))]);
                               pool.resize(k);
                               std::sort(pool.begin(), pool.end());
                               return IndexSet(pool);
                             };
                             const IndexSet rows = choose();
                             const IndexSet cols = choose();
                             const auto r = cauchy_binet_check(x, y, rows, cols);
                             if (!r.equal) return "lhs " + format_scalar(r.lhs) + " != rhs " + format_scalar(r.rhs);
                             return {};
                           });
}

/// Sign normalization recovers a from diag(eps) (+-A) diag(eps).
inline PropertyResult sign_normalization(const SuiteConfig& cfg, std::size_t cases) {
  return detail::run_cases("sign_normalization", cfg, 9, detail::within(cfg.sizes, 1, 32), cases,
                           [&](CounterRng& rng, std::size_t n) -> std::string {
                             const CoefficientVector<Rational> a(random_positive_rational_a(rng, n));
                             std::vector<int> eps(n);
                             for (auto& e : eps) e = rng.uniform_int(0, 1) ? 1 : -1;
                             Matrix<Rational> m = conjugate_signs(build_antibidiagonal(a).entries(), eps);
                             const bool flip = rng.uniform_int(0, 1) == 1;
                             if (flip) m = negated(m);
                             const auto r = sign_normalize(m);
                             if (!(r.a == a)) return "coefficients not recovered";
                             if (r.global_negate != flip) return "global negation not detected";
                             Matrix<Rational> back = conjugate_signs(m, r.sign_flips);
                             if (r.global_negate) back = negated(back);
                             if (!(back == build_antibidiagonal(a).entries())) return "similarity does not reproduce A";
                             return {};
                           });
}

/// Eigenvalues of the special Jacobi matrix annihilate p_n (scaled residual).
inline PropertyResult eigensolver_residual(const SuiteConfig& cfg, std::size_t cases) {
  return detail::run_cases("eigensolver_residual", cfg, 10, detail::within(cfg.sizes, 1, 10), cases,
                           [&](CounterRng& rng, std::size_t n) -> std::string {
                             const CoefficientVector<double> a(random_positive_a(rng, n));
                             const auto p = forward_p(a).top();
                             const auto eig = eigensolve_tridiagonal(build_jacobi_special(a), cfg.policy);
                             for (double x : eig) {
                               // scale: sum of |c_k| |x|^k bounds the terms Horner combines
                               double scale = 0;
                               for (std::size_t k = 0; k <= p.degree(); ++k)
                                 scale += std::fabs(p[k]) * std::pow(std::fabs(x), double(k));
                               if (std::fabs(eval(p, x)) > 1e-8 * (1 + scale))
                                 return "|p_n(" + format_scalar(x) + ")| too large";
                             }
                             return {};
                           });
}

/// Anti-bidiagonal and special Jacobi matrices share their spectrum.
inline PropertyResult problem_equivalence(const SuiteConfig& cfg, std::size_t cases, double rel_tol = 1e-8) {
  return detail::run_cases("problem_equivalence", cfg, 11, detail::within(cfg.sizes, 1, 10), cases,
                           [&](CounterRng& rng, std::size_t n) -> std::string {
                             const CoefficientVector<double> a(random_positive_a(rng, n));
                             const auto ea = eigensolve_tridiagonal(tridiagonal_by_path(build_antibidiagonal(a)),
                                                                    cfg.policy);
                             const auto eb = eigensolve_tridiagonal(build_jacobi_special(a), cfg.policy);
                             for (std::size_t k = 0; k < n; ++k)
                               if (std::fabs(ea[k] - eb[k]) > rel_tol * std::max(1.0, std::fabs(eb[k])))
                                 return "eigenvalue " + format_scalar(ea[k]) + " vs " + format_scalar(eb[k]);
                             return {};
                           });
}

inline std::vector<PropertyResult> run_all(const SuiteConfig& cfg) {
  std::vector<PropertyResult> out;
  out.push_back(roundtrip(cfg, cfg.cases));
  out.push_back(interlacing_chain(cfg, cfg.cases));
  out.push_back(exact_uniqueness(cfg, cfg.cases));
  out.push_back(recurrence_equivalence(cfg, cfg.cases));
  out.push_back(sign_regularity(cfg, cfg.cases));
  out.push_back(sign_regularity_exact(cfg, std::min<std::size_t>(cfg.cases, 10)));
  out.push_back(sigma_inequality(cfg, cfg.cases));
  out.push_back(square_root(cfg, cfg.cases));
  out.push_back(cauchy_binet(cfg, cfg.cases));
  out.push_back(sign_normalization(cfg, cfg.cases));
  out.push_back(eigensolver_residual(cfg, cfg.cases));
  out.push_back(problem_equivalence(cfg, cfg.cases));
  return out;
}

}  // namespace antibidiag::verify

#endif  // ANTIBIDIAG_VERIFY_HPP
