#ifndef ANTIBIDIAG_SPECTRAL_HPP
#define ANTIBIDIAG_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "scalar.hpp"

namespace antibidiag {

// ---------------------------------------------------------------------------
// Symmetric tridiagonal eigenvalues by Sturm-count bisection
// ---------------------------------------------------------------------------

struct TridiagonalBands {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples rows i and i+1 (0-based)
};

/// Extracts the bands of a symmetric tridiagonal matrix. Entries outside the
/// band must vanish up to eq_abs times the max-norm.
template <Scalar T>
TridiagonalBands tridiagonal_bands(const StructuredMatrix<T>& t, const TolerancePolicy& policy = {}) {
  if constexpr (is_exact_v<T>) {
    throw Error(ErrorCode::BackendUnsupported, "eigenvalues need the float64 backend");
  } else {
    const auto& m = t.entries();
    const std::size_t n = m.n();
    if (n == 0) throw Error(ErrorCode::EmptyInput, "empty matrix");
    const double zero_tol = policy.eq_abs * std::max(1.0, max_norm(m));
    TridiagonalBands b;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) {
        const std::size_t d = i > j ? i - j : j - i;
        if (d > 1 && std::fabs(m(i, j)) > zero_tol)
          throw Error(ErrorCode::NotTridiagonal,
                      "entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside the band");
        if (d == 1 && std::fabs(m(i, j) - m(j, i)) > zero_tol)
          throw Error(ErrorCode::NotTridiagonal, "matrix is not symmetric");
      }
    for (std::size_t i = 1; i <= n; ++i) b.diag.push_back(m(i, i));
    for (std::size_t i = 1; i < n; ++i) b.off.push_back(m(i, i + 1));
    return b;
  }
}

/// Number of eigenvalues strictly below x, read off the signs of the shifted
/// LDL^T pivots. Zero pivots are replaced by -pivmin.
inline std::size_t sturm_count(const TridiagonalBands& b, double x, double pivmin) {
  std::size_t count = 0;
  double q = b.diag[0] - x;
  if (std::fabs(q) < pivmin) q = -pivmin;
  if (q < 0) ++count;
  for (std::size_t i = 1; i < b.diag.size(); ++i) {
    q = (b.diag[i] - x) - b.off[i - 1] * b.off[i - 1] / q;
    if (std::fabs(q) < pivmin) q = -pivmin;
    if (q < 0) ++count;
  }
  return count;
}

inline double pivot_floor(const TridiagonalBands& b) {
  double scale = 1.0;
  for (double d : b.diag) scale = std::max(scale, std::fabs(d));
  for (double e : b.off) scale = std::max(scale, std::fabs(e));
  return 1e-300 * scale;
}

/// Gershgorin enclosure [lo, hi] of the spectrum, widened by a relative hair
/// so the Sturm counts at the ends are exactly 0 and n.
inline std::pair<double, double> gershgorin_bounds(const TridiagonalBands& b) {
  const std::size_t n = b.diag.size();
  double lo = b.diag[0], hi = b.diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0;
    if (i > 0) r += std::fabs(b.off[i - 1]);
    if (i + 1 < n) r += std::fabs(b.off[i]);
    lo = std::min(lo, b.diag[i] - r);
    hi = std::max(hi, b.diag[i] + r);
  }
  const double pad = 1e-12 * std::max({1.0, std::fabs(lo), std::fabs(hi)});
  return {lo - pad, hi + pad};
}

template <Scalar T>
RootList<T> eigensolve_tridiagonal(const StructuredMatrix<T>& t, const TolerancePolicy& policy = {}) {
  if constexpr (is_exact_v<T>) {
    throw Error(ErrorCode::BackendUnsupported, "eigenvalues need the float64 backend");
  } else {
    const TridiagonalBands b = tridiagonal_bands(t, policy);
    const std::size_t n = b.diag.size();
    if (n == 1) return RootList<T>({b.diag[0]});
    const double pivmin = pivot_floor(b);
    const auto [glo, ghi] = gershgorin_bounds(b);
    constexpr int kMaxIterations = 200;
    std::vector<double> eig(n);
    for (std::size_t k = 0; k < n; ++k) {
      // k-th smallest: count(lo) <= k < count(hi)
      double lo = k > 0 ? std::max(glo, eig[k - 1]) : glo;
      double hi = ghi;
      for (int it = 0; it < kMaxIterations && hi - lo > policy.root_tol; ++it) {
        const double mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;
        if (sturm_count(b, mid, pivmin) <= k)
          lo = mid;
        else
          hi = mid;
      }
      eig[k] = lo + (hi - lo) / 2;
    }
    return RootList<T>(std::move(eig));
  }
}

/// Strict interlacing: outer_1 < inner_1 < outer_2 < ... < inner_k < outer_{k+1}.
template <Scalar T>
bool interlaces(const RootList<T>& inner, const RootList<T>& outer) {
  if (outer.size() != inner.size() + 1)
    throw Error(ErrorCode::SizeMismatch, "interlacing needs |outer| == |inner| + 1");
  for (std::size_t i = 0; i < inner.size(); ++i)
    if (!(outer[i] < inner[i] && inner[i] < outer[i + 1])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Sign regularity
// ---------------------------------------------------------------------------

struct SignatureSequence {
  std::vector<int> epsilons;

  SignatureSequence() = default;
  explicit SignatureSequence(std::vector<int> e) : epsilons(std::move(e)) {
    for (int v : epsilons)
      if (v != 1 && v != -1) throw Error(ErrorCode::SizeMismatch, "signature entries must be +1 or -1");
  }
  std::size_t size() const noexcept { return epsilons.size(); }
  int operator()(std::size_t j) const { return epsilons.at(j - 1); }
  friend bool operator==(const SignatureSequence&, const SignatureSequence&) = default;
};

/// Signature of the antidiagonal unit matrix (and of every positive
/// anti-bidiagonal matrix): eps_j = (-1)^floor(j/2), i.e. 1, -1, -1, 1, 1, ...
inline SignatureSequence signature_sequence(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::SizeMismatch, "order must be positive");
  std::vector<int> e(n);
  for (std::size_t j = 1; j <= n; ++j) e[j - 1] = (j / 2) % 2 == 0 ? 1 : -1;
  return SignatureSequence(std::move(e));
}

inline SignatureSequence all_positive_signature(std::size_t n) { return SignatureSequence(std::vector<int>(n, 1)); }

inline double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return r;
}

inline constexpr double kMinorBudget = 1e7;

inline void guard_minor_count(std::size_t n, std::size_t d) {
  double total = 0;
  for (std::size_t j = 1; j <= d; ++j) total += binomial(n, j) * binomial(n, j);
  if (total > kMinorBudget)
    throw Error(ErrorCode::TooLarge, "enumerating " + std::to_string(total) + " minors exceeds the budget");
}

/// Calls f(subset) for every j-subset of {1..n} in colexicographic order;
/// stops early when f returns false.
template <class F>
void for_each_subset_colex(std::size_t n, std::size_t j, F&& f) {
  if (j == 0 || j > n) return;
  std::vector<std::size_t> c(j);
  for (std::size_t i = 0; i < j; ++i) c[i] = i + 1;
  while (true) {
    if (!f(IndexSet(c))) return;
    std::size_t i = 0;
    while (i < j && c[i] + 1 == (i + 1 < j ? c[i + 1] : n + 1)) ++i;
    if (i == j) return;
    ++c[i];
    for (std::size_t t = 0; t < i; ++t) c[t] = t + 1;
  }
}

namespace detail {

// Product of the j largest Euclidean row norms: a Hadamard-type scale for
// minors of order j.
template <Scalar T>
std::vector<double> minor_scales(const Matrix<T>& m) {
  std::vector<double> norms;
  for (std::size_t i = 1; i <= m.n(); ++i) {
    double s = 0;
    for (std::size_t j = 1; j <= m.n(); ++j) {
      const double v = to_double(m(i, j));
      s += v * v;
    }
    norms.push_back(std::sqrt(s));
  }
  std::sort(norms.rbegin(), norms.rend());
  std::vector<double> scale(m.n() + 1, 1.0);
  for (std::size_t j = 1; j <= m.n(); ++j) scale[j] = scale[j - 1] * norms[j - 1];
  return scale;
}

// Sign of a minor. Floats inside the ambiguity band are re-evaluated exactly
// on the rational image of the stored entries.
template <Scalar T>
int reliable_minor_sign(const Matrix<T>& m, const IndexSet& rows, const IndexSet& cols, const T& value,
                        double band) {
  if constexpr (is_exact_v<T>) {
    return sign_of(value);
  } else {
    if (std::fabs(value) > band) return sign_of(value);
    const Matrix<T> sub = submatrix(m, rows, cols);
    Matrix<Rational> exact(sub.n());
    for (std::size_t i = 1; i <= sub.n(); ++i)
      for (std::size_t j = 1; j <= sub.n(); ++j) exact(i, j) = from_double<Rational>(sub(i, j));
    return sign_of(determinant(exact));
  }
}

}  // namespace detail

struct MinorWitness {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  double value = 0;       // the minor
  double normalized = 0;  // eps_j * minor / scale(j); most negative is worst
};

struct OrderVerdict {
  std::size_t order = 0;
  int epsilon = 1;
  bool conforming = true;
  bool strict = true;
  bool principal_conforming = true;
  bool principal_strict = true;
  std::size_t minors_checked = 0;
  std::optional<MinorWitness> worst;
};

struct SignRegularityReport {
  std::size_t n = 0;
  std::vector<OrderVerdict> orders;
  std::size_t achieved_class = 0;  // largest d' with every order <= d' conforming
  bool strict = false;             // every checked order strictly conforming
  bool principal_conforming = false;
  std::optional<std::size_t> power_class_plus;

  bool conforming() const {
    return std::all_of(orders.begin(), orders.end(), [](const auto& o) { return o.conforming; });
  }
};

struct ClassifyOptions {
  bool full_report = false;  // otherwise stop an order at its first violation
};

/// Checks eps_j * M[rows, cols] >= 0 for every minor of order j <= d, and the
/// principal-only variant alongside. Floating comparisons allow
/// -eq_abs * scale(j); the rational backend is exact.
template <Scalar T>
SignRegularityReport classify_sign_regular(const Matrix<T>& m, std::size_t d, const SignatureSequence& sig,
                                           const TolerancePolicy& policy = {}, ClassifyOptions opts = {}) {
  const std::size_t n = m.n();
  if (d == 0 || d > n) throw Error(ErrorCode::SizeMismatch, "class must satisfy 1 <= d <= n");
  if (sig.size() < d) throw Error(ErrorCode::SizeMismatch, "signature shorter than the class");
  guard_minor_count(n, d);
  const std::vector<double> scale = detail::minor_scales(m);

  SignRegularityReport report;
  report.n = n;
  for (std::size_t j = 1; j <= d; ++j) {
    OrderVerdict v;
    v.order = j;
    v.epsilon = sig(j);
    const double band = policy.eq_abs * scale[j];
    bool stop = false;
    for_each_subset_colex(n, j, [&](const IndexSet& rows) {
      for_each_subset_colex(n, j, [&](const IndexSet& cols) {
        const T value = minor(m, rows, cols);
        ++v.minors_checked;
        const double signed_value = v.epsilon * to_double(value);
        bool conforms = false;
        bool strict = false;
        if constexpr (is_exact_v<T>) {
          conforms = v.epsilon * sign_of(value) >= 0;
          strict = v.epsilon * sign_of(value) > 0;
        } else {
          conforms = signed_value >= -band;
          strict = v.epsilon * detail::reliable_minor_sign(m, rows, cols, value, band) > 0;
        }
        const double normalized = scale[j] > 0 ? signed_value / scale[j] : signed_value;
        if (!v.worst || normalized < v.worst->normalized)
          v.worst = MinorWitness{rows.values(), cols.values(), to_double(value), normalized};
        v.conforming = v.conforming && conforms;
        v.strict = v.strict && strict;
        if (rows == cols) {
          v.principal_conforming = v.principal_conforming && conforms;
          v.principal_strict = v.principal_strict && strict;
        }
        if (!conforms && !opts.full_report) stop = true;
        return !stop;
      });
      return !stop;
    });
    report.orders.push_back(std::move(v));
  }
  report.achieved_class = 0;
  for (const auto& v : report.orders) {
    if (!v.conforming) break;
    report.achieved_class = v.order;
  }
  report.strict = std::all_of(report.orders.begin(), report.orders.end(),
                              [](const auto& v) { return v.conforming && v.strict; });
  report.principal_conforming = std::all_of(report.orders.begin(), report.orders.end(),
                                            [](const auto& v) { return v.principal_conforming; });
  return report;
}

template <Scalar T>
SignRegularityReport classify_sign_regular(const StructuredMatrix<T>& m, std::size_t d, const SignatureSequence& sig,
                                           const TolerancePolicy& policy = {}, ClassifyOptions opts = {}) {
  return classify_sign_regular(m.entries(), d, sig, policy, opts);
}

/// Every minor strictly positive.
template <Scalar T>
bool is_totally_positive(const Matrix<T>& m, const TolerancePolicy& policy = {}) {
  const std::size_t n = m.n();
  guard_minor_count(n, n);
  const std::vector<double> scale = detail::minor_scales(m);
  for (std::size_t j = 1; j <= n; ++j) {
    bool ok = true;
    for_each_subset_colex(n, j, [&](const IndexSet& rows) {
      for_each_subset_colex(n, j, [&](const IndexSet& cols) {
        const T value = minor(m, rows, cols);
        ok = detail::reliable_minor_sign(m, rows, cols, value, policy.eq_abs * scale[j]) > 0;
        return ok;
      });
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

inline std::size_t default_max_power(std::size_t n) { return 2 * n; }

/// Smallest m <= max_power with (A^2)^m totally positive.
template <Scalar T>
std::optional<std::size_t> check_class_plus(const StructuredMatrix<T>& a, std::size_t max_power,
                                            const TolerancePolicy& policy = {}) {
  if (a.tag() != MatrixTag::AntiBidiagonal)
    throw Error(ErrorCode::SizeMismatch, "class-plus search expects an anti-bidiagonal matrix");
  guard_minor_count(a.n(), a.n());
  if (max_power == 0) return std::nullopt;
  const Matrix<T> square = multiply(a.entries(), a.entries());
  Matrix<T> power = square;
  for (std::size_t m = 1; m <= max_power; ++m) {
    if (is_totally_positive(power, policy)) return m;
    if (m < max_power) power = multiply(power, square);
  }
  return std::nullopt;
}

template <Scalar T>
struct CauchyBinetResult {
  T lhs;
  T rhs;
  bool equal = false;
};

/// Compares (XY)[rows, cols] with sum over beta of X[rows, beta] * Y[beta, cols].
template <Scalar T>
CauchyBinetResult<T> cauchy_binet_check(const Matrix<T>& x, const Matrix<T>& y, const IndexSet& rows,
                                        const IndexSet& cols, const TolerancePolicy& policy = {}) {
  if (x.n() != y.n()) throw Error(ErrorCode::SizeMismatch, "factors of different orders");
  if (rows.size() != cols.size()) throw Error(ErrorCode::SizeMismatch, "|rows| != |cols|");
  const std::size_t n = x.n();
  if (binomial(n, rows.size()) > kMinorBudget) throw Error(ErrorCode::TooLarge, "too many intermediate minors");
  CauchyBinetResult<T> r{minor(multiply(x, y), rows, cols), T(0), false};
  double magnitude = 0;
  for_each_subset_colex(n, rows.size(), [&](const IndexSet& beta) {
    const T term = minor(x, rows, beta) * minor(y, beta, cols);
    magnitude += std::fabs(to_double(term));
    r.rhs += term;
    return true;
  });
  if constexpr (is_exact_v<T>) {
    r.equal = r.lhs == r.rhs;
  } else {
    r.equal = std::fabs(r.lhs - r.rhs) <= policy.eq_abs + policy.eq_rel * std::max(magnitude, std::fabs(r.lhs));
  }
  return r;
}

template <Scalar T>
CauchyBinetResult<T> cauchy_binet_check(const StructuredMatrix<T>& x, const StructuredMatrix<T>& y,
                                        const IndexSet& rows, const IndexSet& cols,
                                        const TolerancePolicy& policy = {}) {
  return cauchy_binet_check(x.entries(), y.entries(), rows, cols, policy);
}

/// Symmetric permutation that turns a matrix whose off-diagonal graph is a
/// path into a tridiagonal one (the anti-bidiagonal pattern is such a path).
template <Scalar T>
StructuredMatrix<T> tridiagonal_by_path(const StructuredMatrix<T>& m) {
  const auto& e = m.entries();
  const std::size_t n = e.n();
  if (!is_symmetric(e)) throw Error(ErrorCode::NotTridiagonal, "matrix is not symmetric");
  std::vector<std::vector<std::size_t>> adj(n + 1);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      if (e(i, j) != 0) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
  std::size_t start = 1;
  for (std::size_t v = 1; v <= n; ++v) {
    if (adj[v].size() > 2) throw Error(ErrorCode::NotTridiagonal, "graph is not a path");
    if (adj[v].size() <= 1) start = v;
  }
  std::vector<std::size_t> order{start};
  std::vector<bool> seen(n + 1, false);
  seen[start] = true;
  while (order.size() < n) {
    std::size_t next = 0;
    for (std::size_t w : adj[order.back()])
      if (!seen[w]) next = w;
    if (next == 0) throw Error(ErrorCode::NotTridiagonal, "graph is not a connected path");
    seen[next] = true;
    order.push_back(next);
  }
  Matrix<T> t(n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) t(i, j) = e(order[i - 1], order[j - 1]);
  return StructuredMatrix<T>(std::move(t), MatrixTag::General);
}

/// Principal block rows/cols first..last of a matrix, tagged general.
template <Scalar T>
StructuredMatrix<T> principal_block(const StructuredMatrix<T>& m, std::size_t first, std::size_t last) {
  if (first < 1 || last > m.n() || first > last) throw Error(ErrorCode::IndexOutOfRange, "block bounds");
  Matrix<T> b(last - first + 1);
  for (std::size_t i = first; i <= last; ++i)
    for (std::size_t j = first; j <= last; ++j) b(i - first + 1, j - first + 1) = m(i, j);
  return StructuredMatrix<T>(std::move(b), MatrixTag::General);
}

}  // namespace antibidiag

#endif  // ANTIBIDIAG_SPECTRAL_HPP
