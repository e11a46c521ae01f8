#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace extremal {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rational_num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int rational_den(const Rational& q) { return boost::multiprecision::denominator(q); }

// Floor toward -infinity. The canonical denominator is positive.
inline Int rational_floor(const Rational& q) {
  Int n = rational_num(q);
  Int d = rational_den(q);
  Int t = n / d;
  if (n < 0 && t * d != n) --t;
  return t;
}

inline Int rational_ceil(const Rational& q) {
  Int n = rational_num(q);
  Int d = rational_den(q);
  Int t = n / d;
  if (n > 0 && t * d != n) ++t;
  return t;
}

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("rational_from_double: non-finite value");
  if (v == 0.0) return Rational(0);
  int exp = 0;
  double m = std::frexp(v, &exp);  // v = m * 2^exp with |m| in [0.5, 1)
  auto mant = static_cast<long long>(std::ldexp(m, 53));  // exact, 53-bit mantissa
  Rational r(mant);
  int shift = exp - 53;
  if (shift > 0) {
    r *= Rational(Int(1) << shift);
  } else if (shift < 0) {
    r /= Rational(Int(1) << -shift);
  }
  return r;
}

inline std::string to_fraction_string(const Rational& q) {
  Int n = rational_num(q);
  Int d = rational_den(q);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

namespace detail {

inline std::optional<Int> parse_integer(std::string_view s) {
  if (s.empty()) return std::nullopt;
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = (s[0] == '-');
    i = 1;
  }
  if (i == s.size()) return std::nullopt;
  Int v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    v = v * 10 + (s[i] - '0');
  }
  return neg ? Int(-v) : v;
}

}  // namespace detail

// Accepts "p/q", plain integers, and decimal notation with an optional
// exponent ("0.25", "-3", "1e-3"). Every accepted form is converted exactly.
inline std::optional<Rational> parse_rational(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) return std::nullopt;

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = detail::parse_integer(s.substr(0, slash));
    auto den = detail::parse_integer(s.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    if (*den < 0) {
      *num = -*num;
      *den = -*den;
    }
    return Rational(*num, *den);
  }

  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = (s[0] == '-');
    i = 1;
  }
  std::string digits;
  long frac_len = 0;
  bool seen_digit = false, seen_dot = false;
  long exp10 = 0;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) ++frac_len;
    } else if (c == '.') {
      if (seen_dot) return std::nullopt;
      seen_dot = true;
    } else if (c == 'e' || c == 'E') {
      auto e = detail::parse_integer(s.substr(i + 1));
      if (!e || *e > 4096 || *e < -4096) return std::nullopt;
      exp10 = e->convert_to<long>();
      i = s.size() - 1;
      break;
    } else {
      return std::nullopt;
    }
  }
  if (!seen_digit) return std::nullopt;

  Rational r(detail::parse_integer(digits).value_or(Int(0)));
  long net = exp10 - frac_len;
  if (net > 0) {
    r *= Rational(boost::multiprecision::pow(Int(10), static_cast<unsigned>(net)));
  } else if (net < 0) {
    r /= Rational(boost::multiprecision::pow(Int(10), static_cast<unsigned>(-net)));
  }
  return neg ? Rational(-r) : r;
}

}  // namespace extremal
