#pragma once

// Bosonic Fock space with Heisenberg generators alpha_n, the z-graded
// cut-and-join operator M, and the twisted Hurwitz numbers read off from its
// matrix elements.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "twisted_hurwitz/rational.hpp"

namespace twisted_hurwitz {

class Partition {
 public:
  Partition() = default;
  Partition(std::vector<int> parts) : parts_(std::move(parts)) {  // NOLINT(google-explicit-constructor)
    for (int p : parts_)
      if (p < 1) throw std::invalid_argument("partition parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
  }
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  bool empty() const { return parts_.empty(); }

  int multiplicity(int k) const { return static_cast<int>(std::count(parts_.begin(), parts_.end(), k)); }

  /// prod_k (multiplicity of k)!
  Integer aut_count() const {
    Integer out = 1;
    for (std::size_t i = 0; i < parts_.size();) {
      std::size_t j = i;
      while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
      out *= factorial(static_cast<int>(j - i));
      i = j;
    }
    return out;
  }

  Integer part_product() const {
    Integer out = 1;
    for (int p : parts_) out *= p;
    return out;
  }

  Partition with_part(int k) const {
    auto p = parts_;
    p.push_back(k);
    return Partition(std::move(p));
  }

  /// Precondition: multiplicity(k) > 0.
  Partition without_part(int k) const {
    auto p = parts_;
    auto it = std::find(p.begin(), p.end(), k);
    if (it == p.end()) throw std::invalid_argument("part not present");
    p.erase(it);
    return Partition(std::move(p));
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ")";
    return os.str();
  }

  friend auto operator<=>(const Partition&, const Partition&) = default;
  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// All partitions of n, parts in non-increasing order, reverse lexicographic.
inline std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw std::invalid_argument("negative partition size");
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left, int max_part) -> void {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int k = std::min(left, max_part); k >= 1; --k) {
      cur.push_back(k);
      self(self, left - k, k);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// Polynomial in z; entry e is the coefficient of z^e, no trailing zeros.
class ZPolynomial {
 public:
  ZPolynomial() = default;
  ZPolynomial(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) coefficients_.push_back(c);
  }
  static ZPolynomial monomial(int e, const Rational& c) {
    ZPolynomial p;
    if (c != 0) {
      p.coefficients_.assign(e + 1, Rational(0));
      p.coefficients_[e] = c;
    }
    return p;
  }

  bool is_zero() const { return coefficients_.empty(); }
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  Rational coefficient(int e) const {
    return e >= 0 && e < static_cast<int>(coefficients_.size()) ? coefficients_[e] : Rational(0);
  }
  const std::vector<Rational>& coefficients() const { return coefficients_; }

  ZPolynomial& operator+=(const ZPolynomial& o) {
    if (o.coefficients_.size() > coefficients_.size()) coefficients_.resize(o.coefficients_.size(), Rational(0));
    for (std::size_t i = 0; i < o.coefficients_.size(); ++i) coefficients_[i] += o.coefficients_[i];
    trim();
    return *this;
  }
  friend ZPolynomial operator+(ZPolynomial a, const ZPolynomial& b) { return a += b; }
  friend ZPolynomial operator-(ZPolynomial a, const ZPolynomial& b) { return a += b * Rational(-1); }

  friend ZPolynomial operator*(const ZPolynomial& a, const ZPolynomial& b) {
    ZPolynomial out;
    if (a.is_zero() || b.is_zero()) return out;
    out.coefficients_.assign(a.coefficients_.size() + b.coefficients_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coefficients_.size(); ++i)
      for (std::size_t j = 0; j < b.coefficients_.size(); ++j)
        out.coefficients_[i + j] += a.coefficients_[i] * b.coefficients_[j];
    out.trim();
    return out;
  }
  friend ZPolynomial operator*(ZPolynomial a, const Rational& c) {
    for (auto& x : a.coefficients_) x *= c;
    a.trim();
    return a;
  }

  /// Multiply by z^e.
  ZPolynomial shifted(int e) const {
    ZPolynomial out;
    if (is_zero()) return out;
    out.coefficients_.assign(e, Rational(0));
    out.coefficients_.insert(out.coefficients_.end(), coefficients_.begin(), coefficients_.end());
    return out;
  }

  friend bool operator==(const ZPolynomial&, const ZPolynomial&) = default;

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t e = 0; e < coefficients_.size(); ++e) {
      if (coefficients_[e] == 0) continue;
      if (!s.empty()) s += " + ";
      s += twisted_hurwitz::to_string(coefficients_[e]);
      if (e == 1) s += "*z";
      if (e > 1) s += "*z^" + std::to_string(e);
    }
    return s;
  }

 private:
  void trim() {
    while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
  }
  std::vector<Rational> coefficients_;
};

/// Finite combination sum_mu p_mu(z) b_mu; zero coefficients are never stored.
class FockVector {
 public:
  FockVector() = default;

  static FockVector basis(const Partition& mu, const ZPolynomial& coefficient = Rational(1)) {
    FockVector v;
    v.add(mu, coefficient);
    return v;
  }
  static FockVector vacuum() { return basis(Partition{}); }

  const std::map<Partition, ZPolynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ZPolynomial coefficient(const Partition& mu) const {
    auto it = terms_.find(mu);
    return it == terms_.end() ? ZPolynomial() : it->second;
  }

  void add(const Partition& mu, const ZPolynomial& p) {
    if (p.is_zero()) return;
    auto it = terms_.find(mu);
    if (it == terms_.end()) {
      terms_.emplace(mu, p);
      return;
    }
    it->second += p;
    if (it->second.is_zero()) terms_.erase(it);
  }

  FockVector& operator+=(const FockVector& o) {
    for (const auto& [mu, p] : o.terms_) add(mu, p);
    return *this;
  }
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a += b * ZPolynomial(Rational(-1)); }
  friend FockVector operator*(const FockVector& v, const ZPolynomial& c) {
    FockVector out;
    for (const auto& [mu, p] : v.terms_) out.add(mu, p * c);
    return out;
  }

  int max_energy() const {
    int e = 0;
    for (const auto& [mu, p] : terms_) e = std::max(e, mu.size());
    return e;
  }

  friend bool operator==(const FockVector&, const FockVector&) = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [mu, p] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + p.to_string() + ")*b" + mu.to_string();
    }
    return s;
  }

 private:
  std::map<Partition, ZPolynomial> terms_;
};

/// alpha_{-k} inserts a part k; alpha_k (k > 0) removes one with factor k * multiplicity.
inline FockVector apply_alpha(int n, const FockVector& v) {
  if (n == 0) throw std::invalid_argument("alpha_0 is not part of the action");
  FockVector out;
  for (const auto& [mu, p] : v.terms()) {
    if (n < 0) {
      out.add(mu.with_part(-n), p);
      continue;
    }
    const int m = mu.multiplicity(n);
    if (m == 0) continue;
    out.add(mu.without_part(n), p * Rational(n * m));
  }
  return out;
}

/// <b_mu|b_mu> = prod mu_i * |Aut(mu)|; distinct basis vectors are orthogonal.
inline Rational basis_norm(const Partition& mu) { return Rational(mu.part_product() * mu.aut_count()); }

inline ZPolynomial inner_product(const FockVector& u, const FockVector& v) {
  ZPolynomial out;
  for (const auto& [mu, p] : u.terms()) {
    auto q = v.coefficient(mu);
    if (!q.is_zero()) out += p * q * basis_norm(mu);
  }
  return out;
}

/// M = 2 (sum_k (k-1) z alpha_{-k} alpha_k
///        + 1/2 sum_k sum_{i+j=k} (alpha_{-j} alpha_{-i} alpha_k + alpha_{-k} alpha_i alpha_j)),
/// inner sum over ordered pairs i, j >= 1.
inline FockVector apply_M(const FockVector& v, int energy_cap) {
  if (energy_cap < 1) throw std::invalid_argument("energy cap must be positive");
  if (v.max_energy() > energy_cap)
    throw std::invalid_argument("Fock vector exceeds the energy cap " + std::to_string(energy_cap));
  FockVector out;
  for (int k = 1; k <= energy_cap; ++k) {
    const FockVector removed = apply_alpha(k, v);
    if (k > 1 && !removed.is_zero())
      out += apply_alpha(-k, removed) * ZPolynomial::monomial(1, Rational(2 * (k - 1)));
    for (int i = 1; i < k; ++i) {
      const int j = k - i;
      if (!removed.is_zero()) out += apply_alpha(-j, apply_alpha(-i, removed));
      out += apply_alpha(-k, apply_alpha(i, apply_alpha(j, v)));
    }
  }
  return out;
}

/// <b_mu| M^power |b_nu>; zero when |mu| != |nu|.
inline ZPolynomial matrix_element(const Partition& mu, const Partition& nu, int power) {
  if (power < 0) throw std::invalid_argument("negative power");
  if (mu.size() != nu.size()) return {};
  FockVector v = FockVector::basis(nu);
  const int cap = std::max(1, nu.size());
  for (int i = 0; i < power && !v.is_zero(); ++i) v = apply_M(v, cap);
  return inner_product(FockVector::basis(mu), v);
}

/// Whether the z^c weight carries an extra 2^(g-1). Each application of M
/// already contributes a factor 2 per branch point, so the literal display
/// counts it twice; see the README.
enum class FockPrefactor { kOperatorCarriesBranchFactor, kLiteralDisplay };

class ZParityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

/// sum_c coef_{z^c}(p) 2^((g-c+1)/2) / 2^(c+1) [* 2^(g-1)]
inline Rational z_weighted_sum(const ZPolynomial& p, int g, FockPrefactor prefactor) {
  Rational total = 0;
  for (int c = 0; c <= p.degree(); ++c) {
    const Rational coef = p.coefficient(c);
    if (coef == 0) continue;
    if ((g - c + 1) % 2 != 0)
      throw ZParityViolation("nonzero z^" + std::to_string(c) + " coefficient at g=" + std::to_string(g) +
                             " has odd g-c+1");
    total += coef * pow2((g - c + 1) / 2 - (c + 1));
  }
  if (prefactor == FockPrefactor::kLiteralDisplay) total *= pow2(g - 1);
  return total;
}

}  // namespace detail

struct DoubleHurwitzValue {
  Rational value;
  /// Set when |mu| != |nu| and the value is 0 for that reason.
  bool size_mismatch = false;
};

/// Twisted double Hurwitz number h~^bullet_g(mu, nu) from <b_mu|M^(g-1)|b_nu>.
inline DoubleHurwitzValue twisted_double_disconnected(
    const Partition& mu, const Partition& nu, int g,
    FockPrefactor prefactor = FockPrefactor::kOperatorCarriesBranchFactor) {
  if (g < 1) throw std::invalid_argument("genus must be positive");
  if (mu.size() != nu.size()) return {0, true};
  const ZPolynomial element = matrix_element(mu, nu, g - 1);
  return {detail::z_weighted_sum(element, g, prefactor) / Rational(mu.part_product() * nu.part_product()), false};
}

/// Disconnected elliptic twisted Hurwitz number as a sum of diagonal matrix elements.
inline Rational elliptic_disconnected(int d, int g,
                                      FockPrefactor prefactor = FockPrefactor::kOperatorCarriesBranchFactor) {
  if (d < 1 || g < 1) throw std::invalid_argument("need d >= 1 and g >= 1");
  Rational total = 0;
  for (const auto& mu : partitions_of(d)) {
    const ZPolynomial element = matrix_element(mu, mu, g - 1);
    total += detail::z_weighted_sum(element, g, prefactor) / Rational(mu.aut_count() * mu.part_product());
  }
  return total;
}

/// Same number as a weighted sum of twisted double Hurwitz numbers h~^bullet_g(mu, mu).
inline Rational elliptic_from_doubles(int d, int g,
                                      FockPrefactor prefactor = FockPrefactor::kOperatorCarriesBranchFactor) {
  if (d < 1 || g < 1) throw std::invalid_argument("need d >= 1 and g >= 1");
  Rational total = 0;
  for (const auto& mu : partitions_of(d))
    total += Rational(mu.part_product(), mu.aut_count()) * twisted_double_disconnected(mu, mu, g, prefactor).value;
  return total;
}

}  // namespace twisted_hurwitz
