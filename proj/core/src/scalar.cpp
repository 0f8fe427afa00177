#include "itolab/scalar.hpp"

#include <cstdio>
#include <string>

#include "itolab/error.hpp"

namespace itolab {

std::string_view to_string(ScalarMode mode) {
  return mode == ScalarMode::kRational ? "rational" : "float64";
}

ScalarMode parse_mode(std::string_view text) {
  if (text == "rational") return ScalarMode::kRational;
  if (text == "float64") return ScalarMode::kFloat64;
  fail(ErrorCode::kParse, "unknown scalar mode '" + std::string(text) + "'");
}

std::string format_scalar(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string format_scalar(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  std::string digits(s);
  if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
  return mpz_class(digits, 10);
}

Rational parse_decimal(std::string_view text) {
  // [sign] digits [. digits] [e|E [sign] digits]
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    auto exp_text = text.substr(e + 1);
    if (!is_integer_literal(exp_text)) fail(ErrorCode::kParse, "bad exponent in '" + std::string(text) + "'");
    exponent = std::stol(std::string(exp_text));
  }
  std::string digits;
  bool negative = false;
  std::size_t i = 0;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    i = 1;
  }
  long frac_digits = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (; i < mantissa.size(); ++i) {
    char c = mantissa[i];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++frac_digits;
    } else {
      fail(ErrorCode::kParse, "malformed number '" + std::string(text) + "'");
    }
  }
  if (!seen_digit) fail(ErrorCode::kParse, "malformed number '" + std::string(text) + "'");
  Rational value{mpz_class(digits, 10)};
  long scale = exponent - frac_digits;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  if (scale < 0) {
    value /= Rational(pow10);
  } else {
    value *= Rational(pow10);
  }
  if (negative) value = -value;
  value.canonicalize();
  return value;
}

}  // namespace

template <>
Rational parse_scalar<Rational>(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den)) {
      fail(ErrorCode::kParse, "malformed rational '" + std::string(text) + "'");
    }
    mpz_class d = parse_integer(den);
    if (d == 0) fail(ErrorCode::kParse, "zero denominator in '" + std::string(text) + "'");
    Rational r(parse_integer(num), d);
    r.canonicalize();
    return r;
  }
  if (is_integer_literal(text)) return Rational(parse_integer(text));
  return parse_decimal(text);
}

template <>
double parse_scalar<double>(std::string_view text) {
  if (text.find('/') != std::string_view::npos) return parse_scalar<Rational>(text).get_d();
  std::string s(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(ErrorCode::kParse, "malformed number '" + s + "'");
  }
  if (used != s.size()) fail(ErrorCode::kParse, "malformed number '" + s + "'");
  return value;
}

}  // namespace itolab
