#pragma once

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>
#include <type_traits>

namespace itolab {

/// Exact rational scalar. GMP keeps every value in canonical form, so equality
/// is structural and arithmetic is closed and lossless.
using Rational = mpq_class;

/// The two scalar modes. A computation is instantiated for exactly one of them,
/// so exact and floating values cannot mix inside a single expression.
template <class S>
concept Scalar = std::same_as<S, Rational> || std::same_as<S, double>;

enum class ScalarMode { kRational, kFloat64 };

std::string_view to_string(ScalarMode mode);
ScalarMode parse_mode(std::string_view text);

template <Scalar S>
constexpr ScalarMode mode_of() {
  if constexpr (std::same_as<S, Rational>) {
    return ScalarMode::kRational;
  } else {
    return ScalarMode::kFloat64;
  }
}

template <Scalar S>
constexpr bool is_exact() {
  return mode_of<S>() == ScalarMode::kRational;
}

template <Scalar S>
S from_int(long value) {
  return S(value);
}

template <Scalar S>
S ratio(long num, long den) {
  if constexpr (is_exact<S>()) {
    Rational r(num, den);
    r.canonicalize();
    return r;
  } else {
    return static_cast<double>(num) / static_cast<double>(den);
  }
}

inline Rational abs_value(const Rational& x) { return abs(x); }
inline double abs_value(double x) { return std::fabs(x); }

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

/// Rationals render as "p/q" (always with a denominator); doubles with 17
/// significant digits, which round-trips every finite IEEE-754 binary64 value.
std::string format_scalar(const Rational& x);
std::string format_scalar(double x);

/// Accepts "p/q", integers and decimal literals ("0.25" parses to 1/4 exactly
/// in rational mode). Throws Error(kParse) on malformed input.
template <Scalar S>
S parse_scalar(std::string_view text);

template <>
Rational parse_scalar<Rational>(std::string_view text);
template <>
double parse_scalar<double>(std::string_view text);

}  // namespace itolab
