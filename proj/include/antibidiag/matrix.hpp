#ifndef ANTIBIDIAG_MATRIX_HPP
#define ANTIBIDIAG_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <queue>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "scalar.hpp"

namespace antibidiag {

/// Dense square matrix with 1-based (row, column) access.
template <Scalar T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), data_(n * n, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) : Matrix(rows.size()) {
    std::size_t i = 1;
    for (const auto& row : rows) {
      if (row.size() != n_) throw Error(ErrorCode::SizeMismatch, "ragged matrix literal");
      std::size_t j = 1;
      for (const T& v : row) (*this)(i, j++) = v;
      ++i;
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 1; i <= n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t n() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[(i - 1) * n_ + (j - 1)]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[(i - 1) * n_ + (j - 1)]; }

  friend bool operator==(const Matrix& a, const Matrix& b) { return a.n_ == b.n_ && a.data_ == b.data_; }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

template <Scalar T>
T max_norm(const Matrix<T>& m) {
  T best = 0;
  for (std::size_t i = 1; i <= m.n(); ++i)
    for (std::size_t j = 1; j <= m.n(); ++j) best = std::max(best, abs_of(m(i, j)));
  return best;
}

template <Scalar T>
bool is_symmetric(const Matrix<T>& m) {
  for (std::size_t i = 1; i <= m.n(); ++i)
    for (std::size_t j = i + 1; j <= m.n(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

enum class MatrixTag { AntiBidiagonal, Jacobi, AntidiagonalUnit, General };

inline std::string_view tag_name(MatrixTag tag) noexcept {
  switch (tag) {
    case MatrixTag::AntiBidiagonal: return "anti_bidiagonal";
    case MatrixTag::Jacobi: return "jacobi";
    case MatrixTag::AntidiagonalUnit: return "antidiagonal_unit";
    default: return "general";
  }
}

namespace detail {

// Off-tridiagonal entries are zero up to `zero_tol`, codiagonal strictly above it.
template <Scalar T>
bool looks_jacobi(const Matrix<T>& m, const T& zero_tol) {
  const std::size_t n = m.n();
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t d = i > j ? i - j : j - i;
      if (d > 1 && abs_of(m(i, j)) > zero_tol) return false;
      if (d == 1 && !(m(i, j) > zero_tol)) return false;
    }
  return true;
}

inline bool on_antibidiagonal(std::size_t n, std::size_t i, std::size_t j) {
  return i + j == n + 1 || i + j == n + 2;
}

}  // namespace detail

/// Dense matrix carrying its structural class. Construction checks that the
/// entries honor the tag.
template <Scalar T>
class StructuredMatrix {
 public:
  StructuredMatrix() = default;
  /// `rel_zero_tol` (floating backend) scales the max-norm when judging the
  /// zeros of a Jacobi pattern.
  StructuredMatrix(Matrix<T> entries, MatrixTag tag, double rel_zero_tol = 1e-10)
      : entries_(std::move(entries)), tag_(tag) {
    check(rel_zero_tol);
  }

  std::size_t n() const noexcept { return entries_.n(); }
  MatrixTag tag() const noexcept { return tag_; }
  const Matrix<T>& entries() const noexcept { return entries_; }
  const T& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

  friend bool operator==(const StructuredMatrix& a, const StructuredMatrix& b) {
    return a.tag_ == b.tag_ && a.entries_ == b.entries_;
  }

 private:
  void check(double rel_zero_tol) const {
    const std::size_t n = entries_.n();
    switch (tag_) {
      case MatrixTag::AntiBidiagonal:
        if (!is_symmetric(entries_)) throw Error(ErrorCode::SizeMismatch, "anti-bidiagonal matrix must be symmetric");
        for (std::size_t i = 1; i <= n; ++i)
          for (std::size_t j = 1; j <= n; ++j)
            if (!detail::on_antibidiagonal(n, i, j) && entries_(i, j) != 0)
              throw Error(ErrorCode::SizeMismatch, "entry off the two central antidiagonals");
        break;
      case MatrixTag::Jacobi: {
        if (!is_symmetric(entries_)) throw Error(ErrorCode::SizeMismatch, "Jacobi matrix must be symmetric");
        T tol = 0;
        if constexpr (!is_exact_v<T>) tol = max_norm(entries_) * rel_zero_tol;
        if (!detail::looks_jacobi(entries_, tol))
          throw Error(ErrorCode::NotTridiagonal, "Jacobi matrix must be tridiagonal with positive codiagonal");
        break;
      }
      case MatrixTag::AntidiagonalUnit:
        for (std::size_t i = 1; i <= n; ++i)
          for (std::size_t j = 1; j <= n; ++j)
            if (entries_(i, j) != (i + j == n + 1 ? T(1) : T(0)))
              throw Error(ErrorCode::SizeMismatch, "not the antidiagonal unit matrix");
        break;
      case MatrixTag::General:
        break;
    }
  }

  Matrix<T> entries_;
  MatrixTag tag_ = MatrixTag::General;
};

/// Strictly positive a_1..a_n, accessed 1-based.
template <Scalar T>
class CoefficientVector {
 public:
  CoefficientVector() = default;
  explicit CoefficientVector(std::vector<T> values) : values_(std::move(values)) {
    if (values_.empty()) throw Error(ErrorCode::EmptyInput, "coefficient vector needs n >= 1");
    for (std::size_t j = 0; j < values_.size(); ++j)
      if (!(values_[j] > 0))
        throw Error(ErrorCode::NonPositiveEntry,
                    "a_" + std::to_string(j + 1) + " = " + format_scalar(values_[j]) + " is not positive");
  }

  std::size_t size() const noexcept { return values_.size(); }
  const T& operator()(std::size_t j) const { return values_.at(j - 1); }
  const std::vector<T>& values() const noexcept { return values_; }

  friend bool operator==(const CoefficientVector& a, const CoefficientVector& b) { return a.values_ == b.values_; }

 private:
  std::vector<T> values_;
};

/// Strictly increasing 1-based row or column selection.
class IndexSet {
 public:
  IndexSet(std::initializer_list<std::size_t> idx) : IndexSet(std::vector<std::size_t>(idx)) {}
  explicit IndexSet(std::vector<std::size_t> idx) : idx_(std::move(idx)) {
    if (idx_.empty()) throw Error(ErrorCode::SizeMismatch, "index set must be nonempty");
    if (idx_.front() == 0) throw Error(ErrorCode::IndexOutOfRange, "indices are 1-based");
    for (std::size_t k = 1; k < idx_.size(); ++k)
      if (idx_[k - 1] >= idx_[k]) throw Error(ErrorCode::SizeMismatch, "index set must be strictly increasing");
  }

  std::size_t size() const noexcept { return idx_.size(); }
  std::size_t operator[](std::size_t k) const { return idx_[k]; }
  std::size_t back() const { return idx_.back(); }
  const std::vector<std::size_t>& values() const noexcept { return idx_; }
  auto begin() const noexcept { return idx_.begin(); }
  auto end() const noexcept { return idx_.end(); }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::size_t> idx_;
};

/// Position (row <= column) of a_k inside the anti-bidiagonal matrix of order n.
inline std::pair<std::size_t, std::size_t> antibidiagonal_position(std::size_t n, std::size_t k) {
  // a_k with k == n (mod 2) sits on the main antidiagonal at row (n + 2 - k) / 2,
  // the others on the adjacent one at row (n + 3 - k) / 2.
  if ((n - k) % 2 == 0) {
    const std::size_t i = (n + 2 - k) / 2;
    return {i, n + 1 - i};
  }
  const std::size_t i = (n + 3 - k) / 2;
  return {i, n + 2 - i};
}

template <Scalar T>
StructuredMatrix<T> build_antibidiagonal(const CoefficientVector<T>& a) {
  const std::size_t n = a.size();
  Matrix<T> m(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const auto [i, j] = antibidiagonal_position(n, k);
    m(i, j) = a(k);
    m(j, i) = a(k);
  }
  return StructuredMatrix<T>(std::move(m), MatrixTag::AntiBidiagonal);
}

/// Tridiagonal matrix with diagonal (a_1, 0, ..., 0) and codiagonal (a_2, ..., a_n).
template <Scalar T>
StructuredMatrix<T> build_jacobi_special(const CoefficientVector<T>& a) {
  const std::size_t n = a.size();
  Matrix<T> m(n);
  m(1, 1) = a(1);
  for (std::size_t k = 1; k < n; ++k) {
    m(k, k + 1) = a(k + 1);
    m(k + 1, k) = a(k + 1);
  }
  return StructuredMatrix<T>(std::move(m), MatrixTag::Jacobi);
}

template <Scalar T>
StructuredMatrix<T> build_antidiagonal_unit(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::SizeMismatch, "order must be positive");
  Matrix<T> m(n);
  for (std::size_t i = 1; i <= n; ++i) m(i, n + 1 - i) = 1;
  return StructuredMatrix<T>(std::move(m), MatrixTag::AntidiagonalUnit);
}

/// Determinant: fraction-free Bareiss for exact scalars, partial-pivot LU for floats.
template <Scalar T>
T determinant(Matrix<T> m) {
  const std::size_t n = m.n();
  if (n == 0) return T(1);
  T sign = 1;
  if constexpr (is_exact_v<T>) {
    T prev = 1;
    for (std::size_t k = 1; k < n; ++k) {
      if (m(k, k) == 0) {
        std::size_t p = k + 1;
        while (p <= n && m(p, k) == 0) ++p;
        if (p > n) return T(0);
        for (std::size_t j = 1; j <= n; ++j) std::swap(m(k, j), m(p, j));
        sign = -sign;
      }
      for (std::size_t i = k + 1; i <= n; ++i) {
        for (std::size_t j = k + 1; j <= n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        m(i, k) = 0;
      }
      prev = m(k, k);
    }
    return sign * m(n, n);
  } else {
    T det = 1;
    for (std::size_t k = 1; k <= n; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i <= n; ++i)
        if (abs_of(m(i, k)) > abs_of(m(p, k))) p = i;
      if (m(p, k) == 0) return T(0);
      if (p != k) {
        for (std::size_t j = 1; j <= n; ++j) std::swap(m(k, j), m(p, j));
        sign = -sign;
      }
      det *= m(k, k);
      for (std::size_t i = k + 1; i <= n; ++i) {
        const T f = m(i, k) / m(k, k);
        for (std::size_t j = k + 1; j <= n; ++j) m(i, j) -= f * m(k, j);
      }
    }
    return sign * det;
  }
}

template <Scalar T>
Matrix<T> submatrix(const Matrix<T>& m, const IndexSet& rows, const IndexSet& cols) {
  if (rows.size() != cols.size()) throw Error(ErrorCode::SizeMismatch, "minor needs |rows| == |cols|");
  if (rows.back() > m.n() || cols.back() > m.n()) throw Error(ErrorCode::IndexOutOfRange, "index beyond order");
  Matrix<T> s(rows.size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b) s(a + 1, b + 1) = m(rows[a], cols[b]);
  return s;
}

template <Scalar T>
T minor(const Matrix<T>& m, const IndexSet& rows, const IndexSet& cols) {
  return determinant(submatrix(m, rows, cols));
}

template <Scalar T>
T minor(const StructuredMatrix<T>& m, const IndexSet& rows, const IndexSet& cols) {
  return minor(m.entries(), rows, cols);
}

template <Scalar T>
Matrix<T> multiply(const Matrix<T>& x, const Matrix<T>& y) {
  if (x.n() != y.n()) throw Error(ErrorCode::SizeMismatch, "matmul of different orders");
  const std::size_t n = x.n();
  Matrix<T> r(n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t k = 1; k <= n; ++k) {
      if (x(i, k) == 0) continue;
      for (std::size_t j = 1; j <= n; ++j) r(i, j) += x(i, k) * y(k, j);
    }
  return r;
}

/// Dense product; tagged jacobi when the result is symmetric tridiagonal with
/// positive codiagonal (zeros judged against eq_abs times the max-norm).
template <Scalar T>
StructuredMatrix<T> matmul(const StructuredMatrix<T>& x, const StructuredMatrix<T>& y,
                           const TolerancePolicy& policy = {}) {
  Matrix<T> r = multiply(x.entries(), y.entries());
  T zero_tol = 0;
  if constexpr (!is_exact_v<T>) zero_tol = policy.eq_abs * max_norm(r);
  const bool jacobi = is_symmetric(r) && detail::looks_jacobi(r, zero_tol);
  return StructuredMatrix<T>(std::move(r), jacobi ? MatrixTag::Jacobi : MatrixTag::General, policy.eq_abs);
}

/// diag(eps) * M * diag(eps).
template <Scalar T>
Matrix<T> conjugate_signs(const Matrix<T>& m, const std::vector<int>& eps) {
  if (eps.size() != m.n()) throw Error(ErrorCode::SizeMismatch, "sign vector length");
  Matrix<T> r = m;
  for (std::size_t i = 1; i <= m.n(); ++i)
    for (std::size_t j = 1; j <= m.n(); ++j)
      if (eps[i - 1] * eps[j - 1] < 0) r(i, j) = -r(i, j);
  return r;
}

template <Scalar T>
Matrix<T> negated(const Matrix<T>& m) {
  Matrix<T> r = m;
  for (std::size_t i = 1; i <= m.n(); ++i)
    for (std::size_t j = 1; j <= m.n(); ++j) r(i, j) = -r(i, j);
  return r;
}

template <Scalar T>
struct SignNormalization {
  CoefficientVector<T> a;
  std::vector<int> sign_flips;
  bool global_negate = false;
};

/// Recovers the positive coefficient vector of a symmetric matrix with the
/// anti-bidiagonal sparsity pattern and arbitrary signs:
/// (negate ? -1 : 1) * diag(eps) * M * diag(eps) == build_antibidiagonal(a).
template <Scalar T>
SignNormalization<T> sign_normalize(const Matrix<T>& m) {
  const std::size_t n = m.n();
  if (n == 0) throw Error(ErrorCode::EmptyInput, "empty matrix");
  if (!is_symmetric(m)) throw Error(ErrorCode::SizeMismatch, "matrix is not symmetric");
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      if (!detail::on_antibidiagonal(n, i, j) && m(i, j) != 0)
        throw Error(ErrorCode::SizeMismatch, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                 ") lies off the anti-bidiagonal pattern");

  std::vector<std::pair<std::size_t, std::size_t>> pos(n + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    pos[k] = antibidiagonal_position(n, k);
    if (m(pos[k].first, pos[k].second) == 0)
      throw Error(ErrorCode::StructuralZero, "a_" + std::to_string(k) + " position holds zero");
  }

  // a_1 is the only diagonal entry; diagonal similarity cannot change its sign.
  const bool negate = m(pos[1].first, pos[1].first) < 0;

  // The off-diagonal pattern is a spanning tree on 1..n, so a BFS fixes eps.
  std::vector<std::vector<std::pair<std::size_t, int>>> adj(n + 1);
  for (std::size_t k = 2; k <= n; ++k) {
    const auto [i, j] = pos[k];
    int s = sign_of(m(i, j));
    if (negate) s = -s;
    adj[i].push_back({j, s});
    adj[j].push_back({i, s});
  }
  std::vector<int> eps(n + 1, 0);
  std::queue<std::size_t> frontier;
  eps[1] = 1;
  frontier.push(1);
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (const auto& [v, s] : adj[u]) {
      if (eps[v] != 0) continue;
      eps[v] = eps[u] * s;
      frontier.push(v);
    }
  }
  std::vector<T> a(n);
  for (std::size_t k = 1; k <= n; ++k) a[k - 1] = abs_of(m(pos[k].first, pos[k].second));
  return {CoefficientVector<T>(std::move(a)), std::vector<int>(eps.begin() + 1, eps.end()), negate};
}

template <Scalar T>
SignNormalization<T> sign_normalize(const StructuredMatrix<T>& m) {
  return sign_normalize(m.entries());
}

}  // namespace antibidiag

#endif  // ANTIBIDIAG_MATRIX_HPP
