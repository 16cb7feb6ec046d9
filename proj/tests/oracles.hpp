#ifndef ANTIBIDIAG_TESTS_ORACLES_HPP
#define ANTIBIDIAG_TESTS_ORACLES_HPP

// Brute-force reference computations. None of these call into the library's
// algorithms; they only share the scalar types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

/// Dense polynomial, coefficients low to high.
template <class T>
using Poly = std::vector<T>;

template <class T>
Poly<T> poly_add(const Poly<T>& x, const Poly<T>& y) {
  Poly<T> r(std::max(x.size(), y.size()), T(0));
  for (std::size_t i = 0; i < x.size(); ++i) r[i] += x[i];
  for (std::size_t i = 0; i < y.size(); ++i) r[i] += y[i];
  return r;
}

template <class T>
Poly<T> poly_scale(const Poly<T>& x, const T& s) {
  Poly<T> r(x);
  for (auto& c : r) c *= s;
  return r;
}

template <class T>
Poly<T> poly_mul(const Poly<T>& x, const Poly<T>& y) {
  Poly<T> r(x.size() + y.size() - 1, T(0));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
  return r;
}

template <class T>
Poly<T> trim(Poly<T> p) {
  while (p.size() > 1 && p.back() == T(0)) p.pop_back();
  return p;
}

/// prod (x - r) expanded one factor at a time.
template <class T>
Poly<T> expand_roots(const std::vector<T>& roots) {
  Poly<T> p{T(1)};
  for (const T& r : roots) p = poly_mul(p, Poly<T>{T(-r), T(1)});
  return p;
}

/// Sum over all j-subsets of the product of their elements.
template <class T>
T symmetric_sum(const std::vector<T>& v, std::size_t j) {
  const std::size_t n = v.size();
  T total(0);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::size_t(__builtin_popcount(mask)) != j) continue;
    T prod(1);
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) prod *= v[i];
    total += prod;
  }
  return total;
}

/// Square matrix of polynomial entries, 0-based.
template <class T>
using PolyMatrix = std::vector<std::vector<Poly<T>>>;

/// Laplace expansion along the first row.
template <class T>
Poly<T> cofactor_det(const PolyMatrix<T>& m) {
  const std::size_t n = m.size();
  if (n == 0) return {T(1)};
  if (n == 1) return m[0][0];
  Poly<T> total{T(0)};
  for (std::size_t c = 0; c < n; ++c) {
    bool zero = true;
    for (const auto& x : m[0][c]) zero = zero && x == T(0);
    if (zero) continue;
    PolyMatrix<T> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly<T>> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      sub.push_back(row);
    }
    Poly<T> term = poly_mul(m[0][c], cofactor_det(sub));
    if (c % 2 == 1) term = poly_scale(term, T(-1));
    total = poly_add(total, term);
  }
  return trim(total);
}

/// det(x I - M) for a dense 0-based matrix.
template <class T>
Poly<T> char_poly(const std::vector<std::vector<T>>& m) {
  const std::size_t n = m.size();
  PolyMatrix<T> pm(n, std::vector<Poly<T>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pm[i][j] = i == j ? Poly<T>{T(-m[i][j]), T(1)} : Poly<T>{T(-m[i][j])};
  return cofactor_det(pm);
}

/// Determinant by Laplace expansion.
template <class T>
T det(const std::vector<std::vector<T>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return T(1);
  if (n == 1) return m[0][0];
  T total(0);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == T(0)) continue;
    std::vector<std::vector<T>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<T> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      sub.push_back(row);
    }
    const T term = m[0][c] * det(sub);
    total += c % 2 == 0 ? term : T(-term);
  }
  return total;
}

template <class T>
std::vector<std::vector<T>> matmul(const std::vector<std::vector<T>>& x, const std::vector<std::vector<T>>& y) {
  const std::size_t n = x.size();
  std::vector<std::vector<T>> r(n, std::vector<T>(n, T(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) r[i][j] += x[i][k] * y[k][j];
  return r;
}

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations, ascending.
inline std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0, total = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        total += a[i][j] * a[i][j];
        if (i != j) off += a[i][j] * a[i][j];
      }
    if (off <= 1e-30 * total) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
  std::sort(eig.begin(), eig.end());
  return eig;
}

/// The anti-bidiagonal pattern filled in by walking the antidiagonals:
/// a_1 at the centre of the main antidiagonal, then outward alternately on
/// the adjacent antidiagonal and the main one.
template <class T>
std::vector<std::vector<T>> antibidiagonal_by_hand(const std::vector<T>& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<T>> m(n, std::vector<T>(n, T(0)));
  // Main antidiagonal (0-based i + j == n - 1) carries a_k with n - k even,
  // the adjacent one (i + j == n) carries a_k with n - k odd; within each,
  // larger k sits nearer the corner (row 0 on the main, row 1 on the adjacent).
  for (std::size_t k = 1; k <= n; ++k) {
    std::size_t i, j;
    if ((n - k) % 2 == 0) {
      i = (n - k) / 2;
      j = n - 1 - i;
    } else {
      i = (n - k + 1) / 2;
      j = n - i;
    }
    m[i][j] = a[k - 1];
    m[j][i] = a[k - 1];
  }
  return m;
}

}  // namespace oracle

#endif  // ANTIBIDIAG_TESTS_ORACLES_HPP
