#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "twisted_hurwitz/rational.hpp"

namespace twisted_hurwitz {

/// Exact value sum_r q_r * sqrt(r) over square-free radicands r >= 1.
class RadicalScalar {
 public:
  RadicalScalar() = default;
  RadicalScalar(const Rational& q) { add_term(1, q); }       // NOLINT(google-explicit-constructor)
  RadicalScalar(long long q) : RadicalScalar(Rational(q)) {}  // NOLINT(google-explicit-constructor)

  /// coefficient * sqrt(n) for any n >= 0, square part extracted.
  static RadicalScalar sqrt(std::uint64_t n, const Rational& coefficient = 1) {
    RadicalScalar r;
    if (n == 0 || coefficient == 0) return r;
    auto [outside, inside] = split_square(n);
    r.add_term(inside, coefficient * Rational(Integer(outside)));
    return r;
  }

  /// n = outside^2 * inside with inside square-free.
  static std::pair<std::uint64_t, std::uint64_t> split_square(std::uint64_t n) {
    std::uint64_t outside = 1, inside = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      for (int k = 0; k < e / 2; ++k) outside *= p;
      if (e % 2) inside *= p;
    }
    inside *= n;
    return {outside, inside};
  }

  const std::map<std::uint64_t, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }

  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1); }

  Rational rational_value() const {
    if (!is_rational()) throw std::domain_error("radical scalar is not rational: " + to_string());
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
  }

  RadicalScalar& operator+=(const RadicalScalar& o) {
    for (const auto& [r, q] : o.terms_) add_term(r, q);
    return *this;
  }

  friend RadicalScalar operator+(RadicalScalar a, const RadicalScalar& b) { return a += b; }

  friend RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b) {
    RadicalScalar out;
    for (const auto& [ra, qa] : a.terms_)
      for (const auto& [rb, qb] : b.terms_) {
        // sqrt(ra) sqrt(rb) = sqrt(ra rb); ra, rb square-free so the square part is gcd-driven
        auto [outside, inside] = split_square(ra * rb);
        out.add_term(inside, qa * qb * Rational(Integer(outside)));
      }
    return out;
  }

  RadicalScalar& operator*=(const RadicalScalar& o) { return *this = *this * o; }

  friend bool operator==(const RadicalScalar&, const RadicalScalar&) = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [r, q] : terms_) {
      if (!s.empty()) s += " + ";
      s += twisted_hurwitz::to_string(q);
      if (r != 1) s += "*sqrt(" + std::to_string(r) + ")";
    }
    return s;
  }

 private:
  void add_term(std::uint64_t radicand, const Rational& q) {
    if (q == 0) return;
    auto& slot = terms_[radicand];
    slot += q;
    if (slot == 0) terms_.erase(radicand);
  }

  std::map<std::uint64_t, Rational> terms_;
};

}  // namespace twisted_hurwitz
