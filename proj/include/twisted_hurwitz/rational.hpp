#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace twisted_hurwitz {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// 2^e for any integer e (negative exponents give 1/2^|e|).
inline Rational pow2(int e) {
  Integer p = 1;
  p <<= (e < 0 ? -e : e);
  return e < 0 ? Rational(Integer(1), p) : Rational(p);
}

inline Integer factorial(int n) {
  Integer r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

/// (2n)!! = 2 * 4 * ... * 2n = 2^n n!
inline Integer double_factorial_even(int n) {
  Integer r = 1;
  for (int k = 1; k <= n; ++k) r *= 2 * k;
  return r;
}

inline std::string numerator_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str();
}

inline std::string denominator_string(const Rational& q) {
  return boost::multiprecision::denominator(q).str();
}

/// "p/q", or just "p" when the value is an integer.
inline std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) return numerator_string(q);
  return numerator_string(q) + "/" + denominator_string(q);
}

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
}

}  // namespace twisted_hurwitz
