#pragma once

// Edge propagators, Feynman integrals I_{Gamma,Omega} and the generating
// series of twisted Hurwitz numbers assembled from them (genus g > 2).

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twisted_hurwitz/graph_enum.hpp"
#include "twisted_hurwitz/radical.hpp"
#include "twisted_hurwitz/rational.hpp"
#include "twisted_hurwitz/series.hpp"

namespace twisted_hurwitz {

/// c_w: (w-1) w with both endpoints 2-valent, sqrt(w-1) w with one, w with none.
inline RadicalScalar propagator_coefficient(int w, int valence_low, int valence_high) {
  if (w < 1) throw std::invalid_argument("propagator weight must be positive");
  for (int v : {valence_low, valence_high})
    if (v != 2 && v != 3) throw std::invalid_argument("endpoint valence must be 2 or 3");
  const int two_valent = (valence_low == 2) + (valence_high == 2);
  switch (two_valent) {
    case 2:
      return RadicalScalar(Rational((w - 1) * w));
    case 1:
      return RadicalScalar::sqrt(static_cast<std::uint64_t>(w - 1), Rational(w));
    default:
      return RadicalScalar(Rational(w));
  }
}

/// Endpoints of edge k ordered by Omega: (x_{k1}, x_{k2}) with x_{k1} < x_{k2}.
inline std::pair<int, int> ordered_endpoints(const FeynmanGraph& graph, const VertexOrder& order, int k) {
  const auto pos = positions(order);
  auto [a, b] = graph.edges.at(k);
  if (a == b) throw std::invalid_argument("propagators are defined for loop-free graphs");
  return pos[a] < pos[b] ? std::pair(a, b) : std::pair(b, a);
}

/// P(q_k) = sum_w c_w (x1/x2)^w + sum_{a>=1} (sum_{w | a} c_w ((x1/x2)^w + (x2/x1)^w)) q_k^a,
/// truncated at q-degree `cap`; the q-free part keeps weights w <= cap
/// (edge weights never exceed the cover degree).
inline TruncatedSeries propagator(const FeynmanGraph& graph, const VertexOrder& order, int k, int cap) {
  if (cap < 1) throw std::invalid_argument("propagator cap must be positive");
  const int r = graph.edge_count();
  const int s = graph.vertex_count;
  const auto [low, high] = ordered_endpoints(graph, order, k);
  const int val_low = graph.valence(low), val_high = graph.valence(high);
  TruncatedSeries p(r, s, cap);
  TruncatedSeries::Monomial m(r + s, 0);
  auto term = [&](int w, int q_exp, bool forward) {
    std::fill(m.begin(), m.end(), 0);
    m[k] = q_exp;
    m[r + low] = forward ? w : -w;
    m[r + high] = forward ? -w : w;
    p.add(m, propagator_coefficient(w, val_low, val_high));
  };
  for (int w = 1; w <= cap; ++w) term(w, 0, true);
  for (int a = 1; a <= cap; ++a)
    for (int w = 1; w <= a; ++w)
      if (a % w == 0) {
        term(w, a, true);
        term(w, a, false);
      }
  return p;
}

/// Coefficient of q^a x^0 in prod_k P(q_k). The square roots attached to
/// 2-valent vertices pair up under balancing, so the result must be rational;
/// anything else is reported as an error.
inline RadicalScalar feynman_integral(const FeynmanGraph& graph, const VertexOrder& order,
                                      const std::vector<int>& multidegree) {
  const int r = graph.edge_count();
  if (static_cast<int>(multidegree.size()) != r) throw std::invalid_argument("multidegree length != edge count");
  int total = 0;
  for (int a : multidegree) {
    if (a < 0) throw std::invalid_argument("negative multidegree entry");
    total += a;
  }
  if (total < 1) throw std::invalid_argument("multidegree must be nonzero");
  TruncatedSeries product = TruncatedSeries::one(r, graph.vertex_count, total);
  for (int k = 0; k < r; ++k) {
    product = product * propagator(graph, order, k, total).restrict_edge_degree(k, multidegree[k]);
    if (product.empty()) return {};
  }
  TruncatedSeries::Monomial target(r + graph.vertex_count, 0);
  for (int k = 0; k < r; ++k) target[k] = multidegree[k];
  RadicalScalar value = product.coefficient(target);
  if (!value.is_rational()) throw std::logic_error("Feynman integral is not rational: " + value.to_string());
  return value;
}

inline RadicalScalar feynman_integral(const GraphClass& graph_class, const VertexOrder& order,
                                      const std::vector<int>& multidegree) {
  return feynman_integral(graph_class.representative, order, multidegree);
}

/// All a in N^parts with sum a = total, lexicographic.
inline std::vector<std::vector<int>> weak_compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(parts, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == parts - 1) {
      a[i] = left;
      out.push_back(a);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      a[i] = v;
      self(self, i + 1, left - v);
    }
  };
  if (parts > 0) rec(rec, 0, total);
  return out;
}

/// The graph-class prefactor in front of sum_Omega I_{Gamma,Omega}. Two displays
/// are possible: 2^(g-1) K #Aut versus 2^(g-1) K / #Aut as the overall factor,
/// and K / 2^(g-1) for the per-graph coefficient identity, with
/// K = (2^g' - [c = 0]) / 2^(c+1) and g' = (g - c + 1) / 2. Calibration against
/// the symmetric-group count selects one.
enum class NormalizationReading {
  kNumeratorOverAut,    // 2^(g-1) K / #Aut(Gamma)
  kNumeratorTimesAut,   // 2^(g-1) K * #Aut(Gamma)
  kDenominatorOverAut,  // K / (2^(g-1) #Aut(Gamma))
  kDenominatorTimesAut  // K * #Aut(Gamma) / 2^(g-1)
};

inline constexpr std::array<NormalizationReading, 4> kAllReadings = {
    NormalizationReading::kNumeratorOverAut, NormalizationReading::kNumeratorTimesAut,
    NormalizationReading::kDenominatorOverAut, NormalizationReading::kDenominatorTimesAut};

inline std::string to_string(NormalizationReading r) {
  switch (r) {
    case NormalizationReading::kNumeratorOverAut:
      return "2^(g-1)*K/#Aut";
    case NormalizationReading::kNumeratorTimesAut:
      return "2^(g-1)*K*#Aut";
    case NormalizationReading::kDenominatorOverAut:
      return "K/(2^(g-1)*#Aut)";
    case NormalizationReading::kDenominatorTimesAut:
      return "K*#Aut/2^(g-1)";
  }
  return "?";
}

inline NormalizationReading parse_reading(const std::string& s) {
  for (auto r : kAllReadings)
    if (to_string(r) == s) return r;
  throw std::invalid_argument("unknown normalization reading '" + s + "'");
}

inline Rational graph_prefactor(NormalizationReading reading, int g, int c, std::uint64_t aut) {
  const int g_prime = (g - c + 1) / 2;
  const Rational k = Rational((Integer(1) << g_prime) - (c == 0 ? 1 : 0), Integer(1) << (c + 1));
  const Rational aut_q = Rational(Integer(aut));
  switch (reading) {
    case NormalizationReading::kNumeratorOverAut:
      return pow2(g - 1) * k / aut_q;
    case NormalizationReading::kNumeratorTimesAut:
      return pow2(g - 1) * k * aut_q;
    case NormalizationReading::kDenominatorOverAut:
      return k / (pow2(g - 1) * aut_q);
    case NormalizationReading::kDenominatorTimesAut:
      return k * aut_q / pow2(g - 1);
  }
  return 0;
}

/// One graph class's contribution before the prefactor.
struct GraphTerm {
  GraphClass graph_class;
  int two_valent = 0;
  /// sum over orders Omega and multidegrees |a| = d of I_{Gamma,Omega,a}
  Rational integral_sum;
};

/// Graph classes with (g-1-c) 3-valent and c 2-valent vertices, no loops,
/// paired with sum_Omega [q^d] I_{Gamma,Omega}(q).
inline std::vector<GraphTerm> generating_series_terms(int d, int g) {
  if (g <= 2) throw std::invalid_argument("Feynman pipeline defined only for g > 2");
  if (d < 1) throw std::invalid_argument("degree d must be positive");
  std::vector<GraphTerm> out;
  for (int c = 0; c <= g - 1; ++c) {
    if ((g - 1 - c) % 2 != 0) continue;
    for (const auto& cls : enumerate_graphs(g - 1 - c, c, /*allow_loops=*/false)) {
      GraphTerm term{cls, c, 0};
      const auto compositions = weak_compositions(d, cls.representative.edge_count());
      for (const auto& order : vertex_orderings(cls.representative))
        for (const auto& a : compositions)
          term.integral_sum += feynman_integral(cls.representative, order, a).rational_value();
      out.push_back(std::move(term));
    }
  }
  return out;
}

inline Rational assemble(const std::vector<GraphTerm>& terms, int g, NormalizationReading reading) {
  Rational total = 0;
  for (const auto& t : terms)
    total += graph_prefactor(reading, g, t.two_valent, t.graph_class.automorphism_count) * t.integral_sum;
  return total;
}

/// Coefficient of q^d in the Feynman-graph expansion of sum_d h~_{d,g} q^d.
inline Rational generating_series_coefficient(int d, int g,
                                              NormalizationReading reading = NormalizationReading::kNumeratorOverAut) {
  return assemble(generating_series_terms(d, g), g, reading);
}

struct CalibrationResult {
  NormalizationReading reading = NormalizationReading::kNumeratorOverAut;
  /// Every reading that reproduced all anchors.
  std::vector<NormalizationReading> matching;
  std::vector<std::pair<int, int>> anchors;
};

inline const std::vector<std::pair<int, int>>& default_calibration_anchors() {
  static const std::vector<std::pair<int, int>> anchors = {{1, 3}, {2, 3}, {1, 4}, {2, 4}};
  return anchors;
}

/// Picks the prefactor reading that matches `reference(d, g)` on every anchor.
/// Throws when no reading matches.
inline CalibrationResult calibrate_normalization(const std::function<Rational(int, int)>& reference,
                                                 const std::vector<std::pair<int, int>>& anchors =
                                                     default_calibration_anchors()) {
  CalibrationResult result;
  result.anchors = anchors;
  std::vector<std::pair<std::vector<GraphTerm>, Rational>> data;
  for (auto [d, g] : anchors) data.emplace_back(generating_series_terms(d, g), reference(d, g));
  for (auto reading : kAllReadings) {
    bool ok = true;
    for (std::size_t i = 0; i < anchors.size() && ok; ++i)
      ok = assemble(data[i].first, anchors[i].second, reading) == data[i].second;
    if (ok) result.matching.push_back(reading);
  }
  if (result.matching.empty()) throw std::runtime_error("no normalization reading reproduces the anchors");
  result.reading = result.matching.front();
  return result;
}

}  // namespace twisted_hurwitz
