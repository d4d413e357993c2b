#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace mincoupling {

// Expression templates are off so that std::min, auto and friends see plain
// values.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

// Accepts "a/b", plain integers and finite decimals ("0.125", "-2.5").
// Decimals are converted exactly: "0.1" is 1/10.
namespace detail {

// cpp_int reads a leading 0 as an octal prefix, so strip leading zeros.
inline BigInt decimal_integer(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  return first == std::string_view::npos ? BigInt(0) : BigInt{std::string(digits.substr(first))};
}

}  // namespace detail

inline Rational parse_rational(std::string_view text) {
  std::string_view s = detail::trim(text);
  const std::string original(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) {
      throw ParseError("not a rational: '" + original + "'");
    }
    const BigInt d = detail::decimal_integer(den);
    if (d == 0) throw ParseError("zero denominator: '" + original + "'");
    value = Rational(detail::decimal_integer(num), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !detail::all_digits(whole)) ||
        (!frac.empty() && !detail::all_digits(frac))) {
      throw ParseError("not a decimal: '" + original + "'");
    }
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    const BigInt digits = detail::decimal_integer(std::string(whole) + std::string(frac));
    value = Rational(digits, scale);
  } else {
    if (!detail::all_digits(s)) throw ParseError("not a number: '" + original + "'");
    value = Rational(detail::decimal_integer(s));
  }
  return negative ? Rational(-value) : value;
}

// Canonical text form: "num/den" in lowest terms, or "num" when den == 1.
inline std::string to_string(const Rational& r) {
  const BigInt& den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return a / boost::multiprecision::gcd(a, b) * b;
}

}  // namespace mincoupling
