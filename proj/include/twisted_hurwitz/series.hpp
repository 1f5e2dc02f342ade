#pragma once

#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "twisted_hurwitz/radical.hpp"

namespace twisted_hurwitz {

/// Multivariate series in edge variables q_1..q_r (exponents >= 0) and vertex
/// variables x_1..x_s (Laurent), truncated at total q-degree `q_cap`.
class TruncatedSeries {
 public:
  /// Exponent vector: r q-exponents followed by s x-exponents.
  using Monomial = std::vector<int>;

  TruncatedSeries(int edge_vars, int vertex_vars, int q_cap)
      : edge_vars_(edge_vars), vertex_vars_(vertex_vars), q_cap_(q_cap) {
    if (edge_vars < 0 || vertex_vars < 0 || q_cap < 0) throw std::invalid_argument("bad series shape");
  }

  static TruncatedSeries one(int edge_vars, int vertex_vars, int q_cap) {
    TruncatedSeries s(edge_vars, vertex_vars, q_cap);
    s.add(Monomial(edge_vars + vertex_vars, 0), RadicalScalar(1));
    return s;
  }

  int edge_vars() const { return edge_vars_; }
  int vertex_vars() const { return vertex_vars_; }
  int q_cap() const { return q_cap_; }
  const std::map<Monomial, RadicalScalar>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  int q_degree(const Monomial& m) const { return std::accumulate(m.begin(), m.begin() + edge_vars_, 0); }

  /// Adds c * monomial; monomials beyond the cap are dropped.
  void add(const Monomial& m, const RadicalScalar& c) {
    if (static_cast<int>(m.size()) != edge_vars_ + vertex_vars_) throw std::invalid_argument("monomial arity");
    for (int k = 0; k < edge_vars_; ++k)
      if (m[k] < 0) throw std::invalid_argument("negative q exponent");
    if (q_degree(m) > q_cap_ || c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  RadicalScalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? RadicalScalar() : it->second;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.edge_vars_ != b.edge_vars_ || a.vertex_vars_ != b.vertex_vars_)
      throw std::invalid_argument("series over different variables");
    TruncatedSeries out(a.edge_vars_, a.vertex_vars_, std::min(a.q_cap_, b.q_cap_));
    Monomial m(a.edge_vars_ + a.vertex_vars_);
    for (const auto& [ma, ca] : a.terms_) {
      const int da = a.q_degree(ma);
      for (const auto& [mb, cb] : b.terms_) {
        if (da + b.q_degree(mb) > out.q_cap_) continue;
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        out.add(m, ca * cb);
      }
    }
    return out;
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out(a.edge_vars_, a.vertex_vars_, std::min(a.q_cap_, b.q_cap_));
    for (const auto& [m, c] : a.terms_) out.add(m, c);
    for (const auto& [m, c] : b.terms_) out.add(m, c);
    return out;
  }

  /// Keeps only monomials whose q_k exponent equals `exponent`.
  TruncatedSeries restrict_edge_degree(int k, int exponent) const {
    TruncatedSeries out(edge_vars_, vertex_vars_, q_cap_);
    for (const auto& [m, c] : terms_)
      if (m[k] == exponent) out.add(m, c);
    return out;
  }

  /// Coefficient of x_1^0 ... x_s^0, as a series in the q's only.
  TruncatedSeries x_constant_term() const {
    TruncatedSeries out(edge_vars_, vertex_vars_, q_cap_);
    for (const auto& [m, c] : terms_) {
      bool constant = true;
      for (int i = edge_vars_; i < edge_vars_ + vertex_vars_ && constant; ++i) constant = m[i] == 0;
      if (constant) out.add(m, c);
    }
    return out;
  }

 private:
  int edge_vars_;
  int vertex_vars_;
  int q_cap_;
  std::map<Monomial, RadicalScalar> terms_;
};

}  // namespace twisted_hurwitz
