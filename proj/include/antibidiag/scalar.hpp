#ifndef ANTIBIDIAG_SCALAR_HPP
#define ANTIBIDIAG_SCALAR_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <concepts>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace antibidiag {

/// Hardware binary64 backend.
using Float64 = double;
/// Exact backend: gcd-normalized fraction of arbitrary-precision integers,
/// sign carried on the numerator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Float64> {
  static constexpr bool exact = false;
  static constexpr bool has_sqrt = true;
  static constexpr std::string_view name = "float64";
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr bool has_sqrt = false;
  static constexpr std::string_view name = "rational";
};

template <class T>
concept Scalar = requires { scalar_traits<T>::exact; };

template <class T>
inline constexpr bool is_exact_v = scalar_traits<T>::exact;

/// Comparison tolerances for the floating backend. The rational backend
/// ignores them and compares exactly.
struct TolerancePolicy {
  double eq_abs = 1e-10;
  double eq_rel = 1e-10;
  double root_tol = 1e-13;

  bool valid() const noexcept { return eq_abs > 0 && eq_rel > 0 && root_tol > 0; }
};

template <Scalar T>
T abs_of(const T& x) {
  if constexpr (is_exact_v<T>) {
    return x < 0 ? T(-x) : x;
  } else {
    return std::fabs(x);
  }
}

template <Scalar T>
int sign_of(const T& x) {
  return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

template <Scalar T>
bool approx_equal(const T& x, const T& y, const TolerancePolicy& policy = {}) {
  if constexpr (is_exact_v<T>) {
    return x == y;
  } else {
    const double diff = std::fabs(x - y);
    return diff <= policy.eq_abs + policy.eq_rel * std::max(std::fabs(x), std::fabs(y));
  }
}

template <Scalar T>
double to_double(const T& x) {
  if constexpr (is_exact_v<T>) {
    return x.template convert_to<double>();
  } else {
    return x;
  }
}

/// Exact image of a double in the target backend (doubles are dyadic rationals).
template <Scalar T>
T from_double(double x) {
  if constexpr (is_exact_v<T>) {
    if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "non-finite value has no rational image");
    int exp = 0;
    const double mant = std::frexp(x, &exp);
    // 53 significant bits fit exactly in an int64 after scaling.
    const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    Rational r(scaled);
    exp -= 53;
    if (exp > 0) {
      r *= Rational(BigInt(1) << exp);
    } else if (exp < 0) {
      r /= Rational(BigInt(1) << -exp);
    }
    return r;
  } else {
    return x;
  }
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Decimal literal [+-]digits[.digits][(e|E)[+-]digits] as an exact rational.
inline std::optional<Rational> parse_decimal_exact(std::string_view s) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
  BigInt digits = 0;
  int frac_digits = 0;
  bool any = false;
  bool in_frac = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      any = true;
      if (in_frac) ++frac_digits;
    } else if (c == '.' && !in_frac) {
      in_frac = true;
    } else {
      break;
    }
  }
  if (!any) return std::nullopt;
  long exponent = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    const char* first = s.data() + i;
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    i = s.size();
  }
  if (i != s.size()) return std::nullopt;
  exponent -= frac_digits;
  if (exponent > 4000 || exponent < -4000) return std::nullopt;
  Rational r(digits);
  const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::labs(exponent)));
  if (exponent > 0) r *= Rational(scale);
  if (exponent < 0) r /= Rational(scale);
  return negative ? Rational(-r) : r;
}

}  // namespace detail

/// Parses a decimal literal or a "p/q" rational literal. Returns nullopt on
/// malformed input or a zero denominator.
template <Scalar T>
std::optional<T> parse_scalar(std::string_view text) {
  text = detail::trim(text);
  if (text.empty()) return std::nullopt;
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    const auto num = detail::parse_decimal_exact(detail::trim(text.substr(0, slash)));
    const auto den = detail::parse_decimal_exact(detail::trim(text.substr(slash + 1)));
    if (!num || !den || *den == 0) return std::nullopt;
    const Rational q = *num / *den;
    if constexpr (is_exact_v<T>) {
      return q;
    } else {
      return q.convert_to<double>();
    }
  }
  if constexpr (is_exact_v<T>) {
    return detail::parse_decimal_exact(text);
  } else {
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
      // from_chars rejects a leading '+'
      if (text.front() == '+') return parse_scalar<T>(text.substr(1));
      return std::nullopt;
    }
    return value;
  }
}

/// Shortest round-trip decimal for floats, "p/q" (or "p") for rationals.
template <Scalar T>
std::string format_scalar(const T& x) {
  if constexpr (is_exact_v<T>) {
    const BigInt den = boost::multiprecision::denominator(x);
    if (den == 1) return boost::multiprecision::numerator(x).str();
    return boost::multiprecision::numerator(x).str() + "/" + den.str();
  } else {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
  }
}

}  // namespace antibidiag

#endif  // ANTIBIDIAG_SCALAR_HPP
