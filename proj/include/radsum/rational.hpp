#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace radsum {

using BigInt = boost::multiprecision::cpp_int;

// Always normalized: gcd(|num|, den) = 1, den > 0.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }
inline double to_double(double x) { return x; }

inline Rational pow2_rational(int e) {
  if (e >= 0) return Rational(BigInt(1) << e);
  return Rational(BigInt(1), BigInt(1) << (-e));
}

// floor(a / b) for b > 0
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (q * b != a && (a < 0)) --q;
  return q;
}

inline BigInt floor_rational(const Rational& r) {
  return floor_div(numerator(r), denominator(r));
}

inline BigInt ceil_rational(const Rational& r) {
  return -floor_rational(-r);
}

// Accepts "p/q" or a plain decimal literal ("3", "-0.25", "+.5").
inline Rational parse_rational(std::string_view tok) {
  auto bad = [&] { throw std::invalid_argument("bad number token: '" + std::string(tok) + "'"); };
  if (tok.empty()) bad();
  if (auto slash = tok.find('/'); slash != std::string_view::npos) {
    std::string_view ns = tok.substr(0, slash), ds = tok.substr(slash + 1);
    if (ns.empty() || ds.empty() || ds.find('/') != std::string_view::npos) bad();
    try {
      BigInt num{std::string(ns)}, den{std::string(ds)};
      if (den == 0) bad();
      return Rational(num, den);
    } catch (const std::runtime_error&) {
      bad();
    }
  }
  bool neg = false;
  std::size_t i = 0;
  if (tok[i] == '+' || tok[i] == '-') neg = (tok[i++] == '-');
  BigInt num = 0, den = 1;
  bool any_digit = false, seen_dot = false;
  for (; i < tok.size(); ++i) {
    char c = tok[i];
    if (c == '.') {
      if (seen_dot) bad();
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      num = num * 10 + (c - '0');
      if (seen_dot) den *= 10;
      any_digit = true;
    } else {
      bad();
    }
  }
  if (!any_digit) bad();
  return Rational(neg ? -num : num, den);
}

template <class T>
T parse_number(std::string_view tok);

template <>
inline Rational parse_number<Rational>(std::string_view tok) {
  return parse_rational(tok);
}

template <>
inline double parse_number<double>(std::string_view tok) {
  if (tok.find('/') != std::string_view::npos) return to_double(parse_rational(tok));
  try {
    std::size_t pos = 0;
    double v = std::stod(std::string(tok), &pos);
    if (pos != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number token: '" + std::string(tok) + "'");
  }
}

inline std::string rat_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

inline std::string num_str(const Rational& r) { return rat_str(r); }
inline std::string num_str(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace radsum
