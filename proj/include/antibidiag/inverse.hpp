#ifndef ANTIBIDIAG_INVERSE_HPP
#define ANTIBIDIAG_INVERSE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "recurrence.hpp"
#include "scalar.hpp"
#include "spectral.hpp"

namespace antibidiag {

/// lambda_1 > -lambda_2 > lambda_3 > ... > (-1)^(n-1) lambda_n > 0.
template <Scalar T>
class Spectrum {
 public:
  std::size_t size() const noexcept { return lambdas_.size(); }
  const T& operator()(std::size_t j) const { return lambdas_.at(j - 1); }
  const std::vector<T>& values() const noexcept { return lambdas_; }

  template <Scalar U>
  friend Spectrum<U> validate_spectrum(std::vector<U> lambdas);

 private:
  explicit Spectrum(std::vector<T> l) : lambdas_(std::move(l)) {}
  std::vector<T> lambdas_;
};

/// Checks the alternating, strictly decreasing modulus pattern and names the
/// first inequality that fails.
template <Scalar T>
Spectrum<T> validate_spectrum(std::vector<T> lambdas) {
  if (lambdas.empty()) throw Error(ErrorCode::EmptyInput, "spectrum is empty");
  if constexpr (!is_exact_v<T>) {
    for (std::size_t k = 0; k < lambdas.size(); ++k)
      if (!std::isfinite(lambdas[k]))
        throw Error(ErrorCode::NonFinite, "lambda_" + std::to_string(k + 1) + " is not finite");
  }
  if (!(lambdas[0] > 0))
    throw Error(ErrorCode::NonPositiveLead, "lambda_1 = " + format_scalar(lambdas[0]) + " must be positive");
  for (std::size_t k = 2; k <= lambdas.size(); ++k) {
    const T& cur = lambdas[k - 1];
    const bool want_positive = k % 2 == 1;
    if (want_positive ? !(cur > 0) : !(cur < 0))
      throw Error(ErrorCode::NotAlternating, "lambda_" + std::to_string(k) + " = " + format_scalar(cur) +
                                                 " must be " + (want_positive ? "positive" : "negative"));
    if (!(abs_of(lambdas[k - 2]) > abs_of(cur)))
      throw Error(ErrorCode::NotStrictlyDecreasingModulus,
                  "|lambda_" + std::to_string(k - 1) + "| = " + format_scalar(abs_of(lambdas[k - 2])) +
                      " must exceed |lambda_" + std::to_string(k) + "| = " + format_scalar(abs_of(cur)));
  }
  return Spectrum<T>(std::move(lambdas));
}

/// Smallest of |lambda_k| - |lambda_{k+1}| and |lambda_n|.
template <Scalar T>
T min_modulus_gap(const Spectrum<T>& s) {
  T gap = abs_of(s(s.size()));
  for (std::size_t k = 1; k < s.size(); ++k) gap = std::min(gap, T(abs_of(s(k)) - abs_of(s(k + 1))));
  return gap;
}

/// mu_1 > mu_2 > ... > mu_n > 0.
template <Scalar T>
class PositiveTuple {
 public:
  explicit PositiveTuple(std::vector<T> mus) : mus_(std::move(mus)) {
    if (mus_.empty()) throw Error(ErrorCode::EmptyInput, "tuple is empty");
    for (std::size_t k = 0; k < mus_.size(); ++k) {
      if (!(mus_[k] > 0))
        throw Error(ErrorCode::NonPositive, "mu_" + std::to_string(k + 1) + " = " + format_scalar(mus_[k]));
      if (k > 0 && !(mus_[k - 1] > mus_[k]))
        throw Error(ErrorCode::NotDecreasing, "mu_" + std::to_string(k) + " must exceed mu_" + std::to_string(k + 1));
    }
  }
  std::size_t size() const noexcept { return mus_.size(); }
  const std::vector<T>& values() const noexcept { return mus_; }

 private:
  std::vector<T> mus_;
};

template <Scalar T>
struct SigmaInequality {
  T sigma1;
  T sigma2;
  T sigma3;
  bool holds = false;  // sigma3 > sigma1 * sigma2
};

/// Takes the raw tuple so boundary (invalid) cases can be probed too.
template <Scalar T>
SigmaInequality<T> check_sigma_inequality(const std::vector<T>& lambdas) {
  if (lambdas.size() < 3) throw Error(ErrorCode::TooSmall, "sigma inequality needs n >= 3");
  SigmaInequality<T> r{elementary_symmetric(lambdas, 1), elementary_symmetric(lambdas, 2),
                       elementary_symmetric(lambdas, 3), false};
  r.holds = r.sigma3 > r.sigma1 * r.sigma2;
  return r;
}

template <Scalar T>
SigmaInequality<T> check_sigma_inequality(const Spectrum<T>& s) {
  return check_sigma_inequality(s.values());
}

/// Roots of q_k and whether they interlace the roots of q_{k+1}.
struct InterlaceLevel {
  std::size_t degree = 0;
  std::vector<double> roots;
  bool interlaces_parent = true;
};

template <Scalar T>
struct ReconstructionTrace {
  std::vector<T> spectrum;
  CharPolySequence<T> q;                      // q[k] has degree k; q[n] = prod (lambda - lambda_j)
  SquaredCoefficients<T> coefficients;        // a_1, a_2^2 .. a_n^2
  std::optional<CoefficientVector<T>> a;      // floating backend only
  std::vector<InterlaceLevel> interlacing;    // floating backend only, q_n down to q_1
  bool interlacing_ok = true;
  double parity_defect = 0;                   // largest relative forbidden coefficient before clearing
  double sigma2_crosscheck = 0;               // max relative gap vs sigma_2 differences of roots
  std::vector<std::string> warnings;

  std::size_t n() const noexcept { return spectrum.size(); }
};

struct SolveOptions {
  bool certify = true;             // extract interlacing certificates (floating backend)
  bool strict_interlacing = false; // raise InterlaceViolation instead of warning
};

namespace detail {

template <Scalar T>
T max_abs(const std::vector<T>& v) {
  T m = 0;
  for (const T& x : v) m = std::max(m, abs_of(x));
  return m;
}

// residual / c, made monic with the given parity; records the relative size
// of any coefficient the parity forbids.
template <Scalar T>
MonicPoly<T> normalize_level(std::vector<T> residual, const T& c, Parity parity, double& defect) {
  const std::size_t deg = residual.size() - 1;
  for (T& x : residual) x /= c;
  if constexpr (!is_exact_v<T>) {
    const double rel = parity_defect<T>(residual, parity) / std::max(1.0, max_abs(residual));
    defect = std::max(defect, rel);
  }
  residual[deg] = 1;
  return MonicPoly<T>(std::move(residual), parity);
}

template <Scalar T>
T checked_square(const T& value, std::size_t k) {
  if (!(value > 0))
    throw Error(ErrorCode::NonPositiveA, "a_" + std::to_string(k) + "^2 = " + format_scalar(value) +
                                             " is not positive (input violates the spectrum conditions or the "
                                             "reconstruction broke down)");
  return value;
}

template <Scalar T>
void certify(ReconstructionTrace<T>& trace, const TolerancePolicy& policy, const SolveOptions& opts) {
  const std::size_t n = trace.n();
  std::vector<double> parent(trace.spectrum.begin(), trace.spectrum.end());
  std::sort(parent.begin(), parent.end());
  trace.interlacing.push_back({n, parent, true});
  std::vector<std::vector<double>> roots_by_degree(n + 1);
  roots_by_degree[n] = parent;
  for (std::size_t k = n - 1; k >= 1; --k) {
    InterlaceLevel level{k, {}, false};
    std::vector<Bracket<double>> brackets;
    for (std::size_t i = 0; i + 1 < parent.size(); ++i) brackets.push_back({parent[i], parent[i + 1]});
    try {
      const RootList<double> roots = roots_bracketed(trace.q[k], brackets, policy);
      level.roots = roots.values();
      level.interlaces_parent = interlaces(roots, RootList<double>(parent));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoSignChange && e.code() != ErrorCode::DuplicateRoots) throw;
    }
    if (!level.interlaces_parent) {
      trace.interlacing_ok = false;
      const std::string msg = "roots of q_" + std::to_string(k) + " do not interlace those of q_" + std::to_string(k + 1);
      if (opts.strict_interlacing) throw Error(ErrorCode::InterlaceViolation, msg);
      trace.warnings.push_back(msg);
      trace.interlacing.push_back(level);
      break;
    }
    roots_by_degree[k] = level.roots;
    parent = level.roots;
    trace.interlacing.push_back(std::move(level));
  }
  // a_{j+2}^2 = sigma_2(q_{m-1}) - sigma_2(q_m) with m = n - j, for the
  // zero-diagonal levels m <= n - 1.
  if (trace.interlacing_ok) {
    for (std::size_t m = n - 1; m >= 2; --m) {
      const auto sigma2 = [](const std::vector<double>& r) { return r.size() < 2 ? 0.0 : elementary_symmetric(r, 2); };
      const double s_hi = sigma2(roots_by_degree[m]);
      const double s_lo = sigma2(roots_by_degree[m - 1]);
      const double expected = trace.coefficients.sq(n - m + 2);
      trace.sigma2_crosscheck = std::max(trace.sigma2_crosscheck, std::fabs((s_lo - s_hi) - expected) / expected);
    }
  }
}

}  // namespace detail

/// Reconstructs the unique positive a_1..a_n whose anti-bidiagonal (and
/// special Jacobi) matrix has the given spectrum.
///
/// Works down the q-chain: q_n from the roots, q_{n-1} from the odd/even
/// split of q_n divided by 2 a_1, then each lower level from the residual of
/// the three-term recurrence, whose leading coefficient is the next a_k^2.
template <Scalar T>
ReconstructionTrace<T> solve(const Spectrum<T>& spectrum, const TolerancePolicy& policy = {},
                             const SolveOptions& opts = {}) {
  const std::size_t n = spectrum.size();
  const std::vector<T>& lambdas = spectrum.values();
  ReconstructionTrace<T> trace;
  trace.spectrum = lambdas;
  std::vector<MonicPoly<T>> q(n + 1);

  q[n] = from_roots(lambdas, policy);
  const T sigma1 = elementary_symmetric(lambdas, 1);
  trace.coefficients.a1 = detail::checked_square(sigma1, 1);

  if (n >= 2) {
    // q_{n-1} = ((-1)^n q_n(-lambda) - q_n(lambda)) / (2 a_1): only the
    // coefficients of parity n - 1 survive, each as -c_k / a_1.
    std::vector<T> c(n, T(0));
    for (std::size_t k = 0; k < n; ++k)
      if ((n - k) % 2 == 1) c[k] = -q[n][k] / sigma1;
    c[n - 1] = 1;
    q[n - 1] = MonicPoly<T>(std::move(c), parity_of_degree(n - 1));

    const T sigma2 = elementary_symmetric(lambdas, 2);
    const T sigma3 = n >= 3 ? elementary_symmetric(lambdas, 3) : T(0);
    const T a2sq = detail::checked_square(T(sigma3 / sigma1 - sigma2), 2);
    trace.coefficients.a_squared.push_back(a2sq);

    // q_{n-2} = ((lambda - a_1) q_{n-1} - q_n) / a_2^2
    std::vector<T> r = detail::three_term(q[n - 1], sigma1, T(1), q[n]);
    r.resize(n - 1);
    if constexpr (is_exact_v<T>) {
      if (r[n - 2] != a2sq) throw Error(ErrorCode::TerminalMismatch, "a_2^2 disagrees with the q_n residual");
    } else {
      const double rel = std::fabs(r[n - 2] - a2sq) / a2sq;
      trace.parity_defect = std::max(trace.parity_defect, rel);
    }
    q[n - 2] = detail::normalize_level(std::move(r), a2sq, parity_of_degree(n - 2), trace.parity_defect);

    // Lower levels: a_{j+2}^2 is the leading coefficient of lambda q_{n-j-1} - q_{n-j}.
    for (std::size_t j = 1; j + 2 <= n; ++j) {
      const std::size_t k = n - j - 1;  // degree of q_{n-j-1}
      std::vector<T> res = detail::three_term(q[k], T(0), T(1), q[k + 1]);
      res.resize(k);  // the top two coefficients cancel
      const T asq = detail::checked_square(res[k - 1], j + 2);
      trace.coefficients.a_squared.push_back(asq);
      q[k - 1] = detail::normalize_level(std::move(res), asq, parity_of_degree(k - 1), trace.parity_defect);
    }
  }

  // The chain must close on q_1 = lambda, q_0 = 1 (or q_1 = lambda - a_1 when n = 1).
  const MonicPoly<T> expected_q1 = n == 1 ? MonicPoly<T>(std::vector<T>{-sigma1, T(1)}) : MonicPoly<T>::identity();
  if (!(q[1] == expected_q1) || !(q[0] == MonicPoly<T>()))
    throw Error(ErrorCode::TerminalMismatch, "q_1 / q_0 do not close the recurrence");
  if constexpr (!is_exact_v<T>) {
    if (trace.parity_defect > policy.eq_abs + policy.eq_rel)
      throw Error(ErrorCode::TerminalMismatch,
                  "parity defect " + format_scalar(trace.parity_defect) + " exceeds tolerance");
  }

  trace.q = CharPolySequence<T>{std::move(q), PolySystem::Q};
  if constexpr (scalar_traits<T>::has_sqrt) {
    std::vector<T> a{trace.coefficients.a1};
    for (const T& s : trace.coefficients.a_squared) a.push_back(std::sqrt(s));
    trace.a = CoefficientVector<T>(std::move(a));
    if (opts.certify) detail::certify(trace, policy, opts);
    if (to_double(min_modulus_gap(spectrum)) < 1e-6)
      trace.warnings.push_back("minimum modulus gap below 1e-6; floating reconstruction is ill-conditioned, "
                               "consider --backend rational");
  }
  return trace;
}

template <Scalar T>
struct RoundtripResult {
  ReconstructionTrace<T> trace;
  std::vector<T> recovered;  // eigenvalues ordered like the input (by decreasing modulus)
  T max_error = 0;           // max relative error against the input
};

/// Orders eigenvalues like a spectrum: decreasing modulus.
template <Scalar T>
std::vector<T> order_by_modulus(std::vector<T> values) {
  std::sort(values.begin(), values.end(), [](const T& x, const T& y) { return abs_of(x) > abs_of(y); });
  return values;
}

template <Scalar T>
RoundtripResult<T> solve_roundtrip(const Spectrum<T>& spectrum, const TolerancePolicy& policy = {},
                                   const SolveOptions& opts = {}) {
  if constexpr (is_exact_v<T>) {
    throw Error(ErrorCode::BackendUnsupported, "roundtrip eigensolve needs the float64 backend");
  } else {
    RoundtripResult<T> r{solve(spectrum, policy, opts), {}, 0};
    const RootList<T> eig = eigensolve_tridiagonal(build_jacobi_special(*r.trace.a), policy);
    r.recovered = order_by_modulus(eig.values());
    for (std::size_t j = 1; j <= spectrum.size(); ++j)
      r.max_error = std::max(r.max_error, std::fabs(r.recovered[j - 1] - spectrum(j)) / std::fabs(spectrum(j)));
    return r;
  }
}

template <Scalar T>
struct SquareRootResult {
  std::vector<T> spectrum;
  CoefficientVector<T> a;
  StructuredMatrix<T> antibidiagonal;
  StructuredMatrix<T> jacobi;  // antibidiagonal squared
};

/// Jacobi matrix with spectrum mus that has a positive anti-bidiagonal
/// square root: lambda_j = (-1)^(j-1) sqrt(mu_j), A = solve(lambda), B = A^2.
template <Scalar T>
SquareRootResult<T> jacobi_sqrt(const PositiveTuple<T>& mus, const TolerancePolicy& policy = {}) {
  if constexpr (!scalar_traits<T>::has_sqrt) {
    throw Error(ErrorCode::BackendUnsupported, "square roots need the float64 backend");
  } else {
    std::vector<T> lambdas;
    for (std::size_t j = 0; j < mus.size(); ++j) {
      const T root = std::sqrt(mus.values()[j]);
      lambdas.push_back(j % 2 == 0 ? root : -root);
    }
    const Spectrum<T> spectrum = validate_spectrum(lambdas);
    const auto trace = solve(spectrum, policy, SolveOptions{false, false});
    auto a_mat = build_antibidiagonal(*trace.a);
    auto b_mat = matmul(a_mat, a_mat, policy);
    if (b_mat.tag() != MatrixTag::Jacobi)
      throw Error(ErrorCode::NotTridiagonal, "A^2 is not a Jacobi matrix within tolerance");
    return {lambdas, *trace.a, std::move(a_mat), std::move(b_mat)};
  }
}

}  // namespace antibidiag

#endif  // ANTIBIDIAG_INVERSE_HPP
