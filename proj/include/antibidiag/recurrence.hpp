#ifndef ANTIBIDIAG_RECURRENCE_HPP
#define ANTIBIDIAG_RECURRENCE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "scalar.hpp"

namespace antibidiag {

/// a_1 together with a_2^2 .. a_n^2. This is all the recurrences need, and it
/// stays rational when the a_j themselves are not.
template <Scalar T>
struct SquaredCoefficients {
  T a1;
  std::vector<T> a_squared;  // a_2^2 .. a_n^2

  std::size_t size() const noexcept { return 1 + a_squared.size(); }
  /// a_k^2 for 2 <= k <= n.
  const T& sq(std::size_t k) const { return a_squared.at(k - 2); }

  void validate() const {
    if (!(a1 > 0)) throw Error(ErrorCode::NonPositiveEntry, "a_1 = " + format_scalar(a1) + " is not positive");
    for (std::size_t k = 2; k <= size(); ++k)
      if (!(sq(k) > 0))
        throw Error(ErrorCode::NonPositiveEntry, "a_" + std::to_string(k) + "^2 = " + format_scalar(sq(k)) +
                                                     " is not positive");
  }

  friend bool operator==(const SquaredCoefficients&, const SquaredCoefficients&) = default;
};

template <Scalar T>
SquaredCoefficients<T> squared_form(const CoefficientVector<T>& a) {
  SquaredCoefficients<T> s{a(1), {}};
  for (std::size_t k = 2; k <= a.size(); ++k) s.a_squared.push_back(a(k) * a(k));
  return s;
}

enum class PolySystem { P, Q };

template <Scalar T>
struct CharPolySequence {
  std::vector<MonicPoly<T>> polys;  // polys[k] has degree k
  PolySystem source = PolySystem::P;

  std::size_t n() const noexcept { return polys.size() - 1; }
  const MonicPoly<T>& operator[](std::size_t k) const { return polys.at(k); }
  const MonicPoly<T>& top() const { return polys.back(); }
};

namespace detail {

// (lambda - shift) * hi - c * lo as a raw coefficient vector.
template <Scalar T>
std::vector<T> three_term(const MonicPoly<T>& hi, const T& shift, const T& c, const MonicPoly<T>& lo) {
  std::vector<T> r(hi.degree() + 2, T(0));
  for (std::size_t k = 0; k <= hi.degree(); ++k) {
    r[k + 1] += hi[k];
    r[k] -= shift * hi[k];
  }
  for (std::size_t k = 0; k <= lo.degree(); ++k) r[k] -= c * lo[k];
  return r;
}

}  // namespace detail

/// p_0 = 1, p_1 = lambda - a_1, p_k = lambda p_{k-1} - a_k^2 p_{k-2}:
/// characteristic polynomials of the leading anti-bidiagonal (equivalently
/// leading Jacobi) sections.
template <Scalar T>
CharPolySequence<T> forward_p(const SquaredCoefficients<T>& s) {
  s.validate();
  const std::size_t n = s.size();
  CharPolySequence<T> out{{}, PolySystem::P};
  out.polys.reserve(n + 1);
  out.polys.emplace_back();
  out.polys.emplace_back(std::vector<T>{-s.a1, T(1)});
  for (std::size_t k = 2; k <= n; ++k)
    out.polys.emplace_back(detail::three_term(out.polys[k - 1], T(0), s.sq(k), out.polys[k - 2]));
  return out;
}

template <Scalar T>
CharPolySequence<T> forward_p(const CoefficientVector<T>& a) {
  return forward_p(squared_form(a));
}

/// q_k = det(lambda I - B_n(n-k+1 : n)), built upward from the trailing
/// corner: q_0 = 1, q_1 = lambda, q_k = lambda q_{k-1} - a_{n-k+2}^2 q_{k-2}
/// for k < n, and q_n = (lambda - a_1) q_{n-1} - a_2^2 q_{n-2}.
template <Scalar T>
CharPolySequence<T> forward_q(const SquaredCoefficients<T>& s) {
  s.validate();
  const std::size_t n = s.size();
  CharPolySequence<T> out{{}, PolySystem::Q};
  out.polys.reserve(n + 1);
  out.polys.emplace_back();
  if (n == 1) {
    out.polys.emplace_back(std::vector<T>{-s.a1, T(1)});
    return out;
  }
  out.polys.push_back(MonicPoly<T>::identity());
  for (std::size_t k = 2; k < n; ++k)
    out.polys.emplace_back(detail::three_term(out.polys[k - 1], T(0), s.sq(n - k + 2), out.polys[k - 2]),
                           parity_of_degree(k));
  out.polys.emplace_back(detail::three_term(out.polys[n - 1], s.a1, s.sq(2), out.polys[n - 2]));
  return out;
}

template <Scalar T>
CharPolySequence<T> forward_q(const CoefficientVector<T>& a) {
  return forward_q(squared_form(a));
}

}  // namespace antibidiag

#endif  // ANTIBIDIAG_RECURRENCE_HPP
