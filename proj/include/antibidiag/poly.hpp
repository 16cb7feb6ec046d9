#ifndef ANTIBIDIAG_POLY_HPP
#define ANTIBIDIAG_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "scalar.hpp"

namespace antibidiag {

enum class Parity { None, Even, Odd };

inline Parity parity_of_degree(std::size_t k) noexcept { return k % 2 == 0 ? Parity::Even : Parity::Odd; }

inline std::string_view parity_name(Parity p) noexcept {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    default: return "none";
  }
}

// True when coefficient k must vanish under parity p.
inline bool parity_forbids(Parity p, std::size_t k) noexcept {
  return (p == Parity::Even && k % 2 == 1) || (p == Parity::Odd && k % 2 == 0);
}

/// Largest |coefficient| at an index that the parity tag forbids.
template <Scalar T>
T parity_defect(std::span<const T> coeffs, Parity p) {
  T worst = 0;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (parity_forbids(p, k)) worst = std::max(worst, abs_of(coeffs[k]));
  return worst;
}

/// Dense monic polynomial, coefficients ordered constant term first.
///
/// A parity tag is checked exactly in the rational backend. In the floating
/// backend the forbidden coefficients are analytically zero and are cleared
/// on construction.
template <Scalar T>
class MonicPoly {
 public:
  MonicPoly() : coeffs_{T(1)}, parity_(Parity::Even) {}

  explicit MonicPoly(std::vector<T> coeffs, Parity parity = Parity::None)
      : coeffs_(std::move(coeffs)), parity_(parity) {
    if (coeffs_.empty() || coeffs_.back() != T(1))
      throw Error(ErrorCode::SizeMismatch, "monic polynomial needs leading coefficient 1");
    if (parity_ != Parity::None && parity_forbids(parity_, degree()))
      throw Error(ErrorCode::SizeMismatch, "parity tag contradicts the degree");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (!parity_forbids(parity_, k)) continue;
      if constexpr (is_exact_v<T>) {
        if (coeffs_[k] != 0)
          throw Error(ErrorCode::SizeMismatch, "coefficient " + std::to_string(k) + " breaks the parity tag");
      } else {
        coeffs_[k] = 0;
      }
    }
  }

  /// The polynomial lambda.
  static MonicPoly identity() { return MonicPoly({T(0), T(1)}, Parity::Odd); }

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  Parity parity() const noexcept { return parity_; }
  const std::vector<T>& coeffs() const noexcept { return coeffs_; }
  const T& operator[](std::size_t k) const { return coeffs_.at(k); }

  friend bool operator==(const MonicPoly& a, const MonicPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<T> coeffs_;
  Parity parity_;
};

/// Strictly increasing list of simple real roots.
template <Scalar T>
class RootList {
 public:
  RootList() = default;
  explicit RootList(std::vector<T> values) : values_(std::move(values)) {
    for (std::size_t i = 1; i < values_.size(); ++i)
      if (!(values_[i - 1] < values_[i]))
        throw Error(ErrorCode::DuplicateRoots, "root list must be strictly increasing");
  }

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  const T& operator[](std::size_t i) const { return values_.at(i); }
  const std::vector<T>& values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

 private:
  std::vector<T> values_;
};

template <Scalar T>
T elementary_symmetric(std::span<const T> roots, std::size_t j) {
  if (j > roots.size())
    throw Error(ErrorCode::IndexOutOfRange,
                "sigma_" + std::to_string(j) + " of a " + std::to_string(roots.size()) + "-tuple");
  std::vector<T> e(j + 1, T(0));
  e[0] = 1;
  for (const T& r : roots)
    for (std::size_t k = j; k >= 1; --k) e[k] += r * e[k - 1];
  return e[j];
}

template <Scalar T>
T elementary_symmetric(const std::vector<T>& roots, std::size_t j) {
  return elementary_symmetric(std::span<const T>(roots), j);
}

/// Monic polynomial with the given (pairwise distinct) roots.
template <Scalar T>
MonicPoly<T> from_roots(std::span<const T> roots, const TolerancePolicy& policy = {}) {
  std::vector<T> sorted(roots.begin(), roots.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    bool separated = true;
    if constexpr (is_exact_v<T>) {
      separated = sorted[i] != sorted[i - 1];
    } else {
      separated = sorted[i] - sorted[i - 1] > 10 * policy.root_tol;
    }
    if (!separated) throw Error(ErrorCode::DuplicateRoots, "roots " + format_scalar(sorted[i]) + " coincide");
  }
  std::vector<T> c{T(1)};
  for (const T& r : roots) {
    std::vector<T> next(c.size() + 1, T(0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  c.back() = 1;
  return MonicPoly<T>(std::move(c));
}

template <Scalar T>
MonicPoly<T> from_roots(const std::vector<T>& roots, const TolerancePolicy& policy = {}) {
  return from_roots(std::span<const T>(roots), policy);
}

/// (-1)^deg p(-lambda): the monic polynomial whose roots are negated.
template <Scalar T>
MonicPoly<T> reflect_negate(const MonicPoly<T>& p) {
  std::vector<T> c = p.coeffs();
  const std::size_t n = p.degree();
  for (std::size_t k = 0; k <= n; ++k)
    if ((n - k) % 2 == 1) c[k] = -c[k];
  return MonicPoly<T>(std::move(c), p.parity());
}

template <Scalar T>
T eval(const MonicPoly<T>& p, const T& x) {
  const auto& c = p.coeffs();
  T acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * x + c[k];
  return acc;
}

/// Cauchy bound: every real root lies in [-bound, bound].
template <Scalar T>
T root_bound(const MonicPoly<T>& p) {
  T m = 0;
  for (std::size_t k = 0; k < p.degree(); ++k) m = std::max(m, abs_of(p[k]));
  return T(1) + m;
}

template <Scalar T>
struct Bracket {
  T lo;
  T hi;
};

/// One root per bracket by bisection; requires a sign change across each bracket.
template <Scalar T>
RootList<T> roots_bracketed(const MonicPoly<T>& p, std::span<const Bracket<T>> brackets,
                            const TolerancePolicy& policy = {}) {
  if constexpr (is_exact_v<T>) {
    throw Error(ErrorCode::BackendUnsupported, "bracketed root extraction needs the float64 backend");
  } else {
    if (brackets.size() != p.degree())
      throw Error(ErrorCode::SizeMismatch, std::to_string(brackets.size()) + " brackets for degree " +
                                               std::to_string(p.degree()));
    std::vector<Bracket<T>> order(brackets.begin(), brackets.end());
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (!(order[i].lo < order[i].hi)) throw Error(ErrorCode::SizeMismatch, "empty bracket");
      if (i > 0 && order[i].lo < order[i - 1].hi) throw Error(ErrorCode::SizeMismatch, "overlapping brackets");
    }
    constexpr int kMaxIterations = 200;
    std::vector<T> roots;
    roots.reserve(order.size());
    for (const auto& br : order) {
      T lo = br.lo, hi = br.hi;
      T flo = eval(p, lo), fhi = eval(p, hi);
      if (flo == 0) {
        roots.push_back(lo);
        continue;
      }
      if (fhi == 0) {
        roots.push_back(hi);
        continue;
      }
      if (sign_of(flo) == sign_of(fhi))
        throw Error(ErrorCode::NoSignChange,
                    "no sign change on [" + format_scalar(lo) + ", " + format_scalar(hi) + "]");
      for (int it = 0; it < kMaxIterations && hi - lo > policy.root_tol; ++it) {
        const T mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;
        const T fmid = eval(p, mid);
        if (fmid == 0) {
          lo = hi = mid;
          break;
        }
        if (sign_of(fmid) == sign_of(flo)) {
          lo = mid;
          flo = fmid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(lo + (hi - lo) / 2);
    }
    return RootList<T>(std::move(roots));
  }
}

template <Scalar T>
RootList<T> roots_bracketed(const MonicPoly<T>& p, const std::vector<Bracket<T>>& brackets,
                            const TolerancePolicy& policy = {}) {
  return roots_bracketed(p, std::span<const Bracket<T>>(brackets), policy);
}

}  // namespace antibidiag

#endif  // ANTIBIDIAG_POLY_HPP
