#pragma once

// Quotient covers of the tropical elliptic curve E, their multiplicities,
// explicit enumeration of the twisted covers lying over them, and the
// tropical twisted Hurwitz number.
//
// E is a circle with branch points p_1 < ... < p_{g-1} and a base point p_0
// between p_{g-1} and p_1. A quotient cover has exactly one vertex over each
// branch point; vertex v sits over p_{v+1}. Every edge runs rightward (in the
// direction of increasing branch-point index) from its source vertex to its
// target vertex, wrapping through p_0 `crossings` times.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "twisted_hurwitz/graph_enum.hpp"
#include "twisted_hurwitz/rational.hpp"

namespace twisted_hurwitz {

struct CoverEdge {
  int source = 0;
  int target = 0;
  int weight = 1;
  int crossings = 0;

  friend auto operator<=>(const CoverEdge& a, const CoverEdge& b) {
    // Group by unordered endpoints first so parallel edges sit together.
    const auto key = [](const CoverEdge& e) {
      return std::tuple(std::min(e.source, e.target), std::max(e.source, e.target), e.source, e.weight,
                        e.crossings);
    };
    return key(a) <=> key(b);
  }
  friend bool operator==(const CoverEdge&, const CoverEdge&) = default;
};

struct QuotientCover {
  int vertex_count = 0;
  std::vector<CoverEdge> edges;

  FeynmanGraph graph() const {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& e : edges) pairs.emplace_back(e.source, e.target);
    return FeynmanGraph(vertex_count, pairs);
  }

  /// Vertices are indexed by branch point, so Omega is the identity order.
  VertexOrder order() const {
    VertexOrder o(vertex_count);
    std::iota(o.begin(), o.end(), 0);
    return o;
  }

  std::vector<int> weights() const {
    std::vector<int> w;
    for (const auto& e : edges) w.push_back(e.weight);
    return w;
  }

  std::vector<int> crossings() const {
    std::vector<int> k;
    for (const auto& e : edges) k.push_back(e.crossings);
    return k;
  }

  /// Multidegree entries weight * crossings; they sum to the degree.
  std::vector<int> multidegree() const {
    std::vector<int> a;
    for (const auto& e : edges) a.push_back(e.weight * e.crossings);
    return a;
  }

  int valence(int v) const {
    int n = 0;
    for (const auto& e : edges) n += (e.source == v) + (e.target == v);
    return n;
  }

  int two_valent_count() const {
    int c = 0;
    for (int v = 0; v < vertex_count; ++v) c += valence(v) == 2;
    return c;
  }

  /// Degree counted at p_0.
  int degree() const {
    int d = 0;
    for (const auto& e : edges) d += e.weight * e.crossings;
    return d;
  }

  /// Number of times edge e runs over the open segment that starts at
  /// vertex position `segment` (segment vertex_count-1 contains p_0).
  static int segment_cover_count(const CoverEdge& e, int segment, int vertex_count) {
    const int n = vertex_count;
    const int length = e.source < e.target ? (e.target - e.source) + e.crossings * n
                                           : (e.target - e.source + n) + (e.crossings - 1) * n;
    int count = 0;
    for (int j = 0; j < length; ++j) count += (e.source + j) % n == segment;
    return count;
  }

  /// Local degree over a segment; harmonic covers give the same value everywhere.
  int local_degree(int segment) const {
    int d = 0;
    for (const auto& e : edges) d += e.weight * segment_cover_count(e, segment, vertex_count);
    return d;
  }

  /// Incoming weight minus outgoing weight at v.
  int imbalance(int v) const {
    int s = 0;
    for (const auto& e : edges) {
      if (e.target == v) s += e.weight;
      if (e.source == v) s -= e.weight;
    }
    return s;
  }

  /// Empty when the cover is a valid quotient cover; otherwise the reason.
  std::string validation_error() const {
    if (vertex_count < 1) return "no vertices";
    for (const auto& e : edges) {
      if (e.source < 0 || e.target < 0 || e.source >= vertex_count || e.target >= vertex_count)
        return "edge endpoint out of range";
      if (e.weight < 1) return "edge weight must be positive";
      if (e.crossings < 0) return "negative crossing count";
      if (e.source >= e.target && e.crossings < 1) return "wrapping edge must cross the base point";
    }
    for (int v = 0; v < vertex_count; ++v) {
      const int val = valence(v);
      if (val != 2 && val != 3) return "vertex valence must be 2 or 3";
      if (imbalance(v) != 0) return "balancing fails at x" + std::to_string(v + 1);
    }
    if (!graph().is_connected()) return "source graph is disconnected";
    return {};
  }

  friend bool operator==(const QuotientCover&, const QuotientCover&) = default;
};

/// |Aut| of a quotient cover: vertices are pinned to branch points, so only
/// identical parallel edges (same direction, weight, crossings) permute.
inline std::uint64_t cover_automorphism_count(const QuotientCover& cover) {
  std::map<CoverEdge, int> classes;
  for (const auto& e : cover.edges) ++classes[e];
  std::uint64_t n = 1;
  for (auto [e, m] : classes)
    for (int k = 2; k <= m; ++k) n *= k;
  return n;
}

struct CoverMultiplicity {
  Rational value;
  int four_valent_count = 0;
  int quotient_genus = 0;
};

/// Quotient-side multiplicity
///   (2^g' - [c = 0]) 2^(2g'-3) / |Aut| * prod_{2-valent V} (w_V - 1) * prod_e w(e)
/// with c the number of 2-valent vertices and g' = (g - c + 1) / 2.
inline CoverMultiplicity cover_multiplicity(const QuotientCover& cover, int g) {
  if (cover.vertex_count != g - 1) throw std::invalid_argument("cover has g-1 vertices for genus g");
  CoverMultiplicity m;
  m.four_valent_count = cover.two_valent_count();
  const int twice = g - m.four_valent_count + 1;
  if (twice % 2 != 0 || twice < 0) throw std::invalid_argument("g - c + 1 must be even and non-negative");
  m.quotient_genus = twice / 2;
  Rational value = Rational(Integer(1) << m.quotient_genus) - (m.four_valent_count == 0 ? 1 : 0);
  value *= pow2(2 * m.quotient_genus - 3);
  value /= cover_automorphism_count(cover);
  for (int v = 0; v < cover.vertex_count; ++v) {
    if (cover.valence(v) != 2) continue;
    const auto it = std::find_if(cover.edges.begin(), cover.edges.end(),
                                 [v](const CoverEdge& e) { return e.source == v || e.target == v; });
    value *= it->weight - 1;
  }
  for (const auto& e : cover.edges) value *= e.weight;
  m.value = value;
  return m;
}

namespace detail {

/// Every edge shape (endpoints, direction, weight, crossings) that fits in a
/// degree-d cover; weights never exceed the degree.
inline std::vector<CoverEdge> edge_shapes(int vertex_count, int d, bool allow_loops) {
  std::vector<CoverEdge> out;
  for (int a = 0; a < vertex_count; ++a) {
    for (int b = a; b < vertex_count; ++b) {
      for (int w = 1; w <= d; ++w) {
        if (a == b) {
          if (!allow_loops) continue;
          for (int k = 1; k * w <= d; ++k) out.push_back({a, a, w, k});
          continue;
        }
        for (int k = 0; k * w <= d; ++k) out.push_back({a, b, w, k});
        for (int k = 1; k * w <= d; ++k) out.push_back({b, a, w, k});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// One representative per isomorphism class of connected quotient covers of
/// degree d with g-1 vertices. Covers of multiplicity zero (a 2-valent
/// vertex of weight 1) are dropped unless requested.
inline std::vector<QuotientCover> enumerate_quotient_covers(int d, int g, bool include_zero_multiplicity = false) {
  if (d < 1) throw std::invalid_argument("degree d must be positive");
  if (g < 2) throw std::invalid_argument("tropical pipeline needs g >= 2 (at least one branch point)");
  const int n = g - 1;
  // Loops only survive balancing at a lone 2-valent vertex, i.e. g = 2.
  const auto shapes = detail::edge_shapes(n, d, g == 2);
  std::vector<QuotientCover> out;
  std::vector<int> valence(n, 0);
  QuotientCover current;
  current.vertex_count = n;
  auto rec = [&](auto&& self, std::size_t start, int degree) -> void {
    if (degree == d && std::all_of(valence.begin(), valence.end(), [](int v) { return v == 2 || v == 3; })) {
      if (current.validation_error().empty()) {
        if (include_zero_multiplicity || cover_multiplicity(current, g).value != 0) out.push_back(current);
      }
    }
    for (std::size_t k = start; k < shapes.size(); ++k) {
      const auto& e = shapes[k];
      const int next = degree + e.weight * e.crossings;
      if (next > d) continue;
      valence[e.source] += 1;
      valence[e.target] += 1;
      if (valence[e.source] <= 3 && valence[e.target] <= 3) {
        current.edges.push_back(e);
        self(self, k, next);
        current.edges.pop_back();
      }
      valence[e.source] -= 1;
      valence[e.target] -= 1;
    }
  };
  rec(rec, 0, 0);
  return out;
}

/// Sum of quotient-cover multiplicities; equals the twisted Hurwitz number.
inline Rational count_tropical(int d, int g) {
  Rational total = 0;
  for (const auto& cover : enumerate_quotient_covers(d, g)) total += cover_multiplicity(cover, g).value;
  return total;
}

// ---------------------------------------------------------------------------
// Twisted covers over a fixed quotient.
//
// A lift doubles every edge (e', e'' swapped by the involution) and every
// vertex of valence != 2 (v+, v-); 2-valent vertices become fixed 4-valent
// vertices. A lift is encoded by one bit per edge end at a doubled vertex:
// the sheet that e' attaches to. Isomorphisms of lifts commuting with the
// involution and the projection form G = Aut(quotient) x (Z/2)^E x (Z/2)^V2,
// acting by permuting edges, swapping e' <-> e'' and swapping v+ <-> v-.
// Orbits are isomorphism classes of twisted covers; stabilizers are their
// automorphism groups.

inline constexpr int kLiftEdgeCap = 12;

struct TwistedLift {
  /// sheet[e][0] / sheet[e][1]: sheet of e' at the source / target end; -1 at a fixed vertex.
  std::vector<std::array<int, 2>> sheet;
  std::uint64_t automorphism_count = 1;
  bool connected = true;
};

namespace detail {

struct LiftSpace {
  const QuotientCover* cover;
  std::vector<bool> doubled;            // per vertex
  std::vector<int> doubled_index;       // vertex -> index among doubled vertices
  std::vector<std::array<int, 2>> bit;  // per edge end -> bit index or -1
  int bits = 0;
  int doubled_count = 0;
  std::vector<std::vector<int>> edge_perms;  // Aut(quotient) as edge permutations

  explicit LiftSpace(const QuotientCover& c) : cover(&c) {
    const int n = c.vertex_count;
    doubled.resize(n);
    doubled_index.assign(n, -1);
    for (int v = 0; v < n; ++v) {
      doubled[v] = c.valence(v) != 2;
      if (doubled[v]) doubled_index[v] = doubled_count++;
    }
    for (const auto& e : c.edges) {
      std::array<int, 2> b{-1, -1};
      if (doubled[e.source]) b[0] = bits++;
      if (doubled[e.target]) b[1] = bits++;
      bit.push_back(b);
    }
    build_edge_perms();
  }

  void build_edge_perms() {
    const auto& edges = cover->edges;
    const int r = static_cast<int>(edges.size());
    std::vector<std::vector<int>> classes;
    std::vector<bool> used(r, false);
    for (int i = 0; i < r; ++i) {
      if (used[i]) continue;
      std::vector<int> cls;
      for (int j = i; j < r; ++j)
        if (!used[j] && edges[j] == edges[i]) {
          used[j] = true;
          cls.push_back(j);
        }
      classes.push_back(cls);
    }
    edge_perms.clear();
    std::vector<int> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    auto rec = [&](auto&& self, std::size_t ci) -> void {
      if (ci == classes.size()) {
        edge_perms.push_back(perm);
        return;
      }
      std::vector<int> images = classes[ci];
      do {
        for (std::size_t k = 0; k < images.size(); ++k) perm[classes[ci][k]] = images[k];
        self(self, ci + 1);
      } while (std::next_permutation(images.begin(), images.end()));
    };
    rec(rec, 0);
  }

  std::uint64_t group_order() const {
    return edge_perms.size() << (cover->edges.size() + static_cast<std::size_t>(doubled_count));
  }

  std::uint32_t act(std::uint32_t x, const std::vector<int>& perm, std::uint32_t edge_flips,
                    std::uint32_t vertex_flips) const {
    std::uint32_t y = 0;
    for (std::size_t e = 0; e < cover->edges.size(); ++e) {
      const auto& edge = cover->edges[e];
      const int ends[2] = {edge.source, edge.target};
      for (int end = 0; end < 2; ++end) {
        const int b = bit[e][end];
        if (b < 0) continue;
        std::uint32_t value = (x >> b) & 1u;
        value ^= (edge_flips >> e) & 1u;
        value ^= (vertex_flips >> doubled_index[ends[end]]) & 1u;
        y |= value << bit[perm[e]][end];
      }
    }
    return y;
  }

  bool connected(std::uint32_t x) const {
    // node 2v + s for doubled vertices, 2v for fixed ones
    const int n = cover->vertex_count;
    std::vector<int> parent(2 * n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    auto node = [&](int v, int s) { return doubled[v] ? 2 * v + s : 2 * v; };
    for (std::size_t e = 0; e < cover->edges.size(); ++e) {
      const auto& edge = cover->edges[e];
      const int s0 = bit[e][0] >= 0 ? static_cast<int>((x >> bit[e][0]) & 1u) : 0;
      const int s1 = bit[e][1] >= 0 ? static_cast<int>((x >> bit[e][1]) & 1u) : 0;
      unite(node(edge.source, s0), node(edge.target, s1));
      unite(node(edge.source, 1 - s0), node(edge.target, 1 - s1));
    }
    int root = -1;
    for (int v = 0; v < n; ++v) {
      for (int s = 0; s < (doubled[v] ? 2 : 1); ++s) {
        const int r = find(node(v, s));
        if (root < 0) root = r;
        if (r != root) return false;
      }
    }
    return true;
  }

  std::vector<std::array<int, 2>> decode(std::uint32_t x) const {
    std::vector<std::array<int, 2>> out;
    for (const auto& b : bit)
      out.push_back({b[0] >= 0 ? static_cast<int>((x >> b[0]) & 1u) : -1,
                     b[1] >= 0 ? static_cast<int>((x >> b[1]) & 1u) : -1});
    return out;
  }
};

}  // namespace detail

/// All isomorphism classes of lifts (connected or not), each with |Aut|.
/// Ordered by smallest encoding in the orbit.
inline std::vector<TwistedLift> enumerate_lifts(const QuotientCover& cover) {
  if (cover.edges.size() > static_cast<std::size_t>(kLiftEdgeCap))
    throw std::length_error("lift enumeration size cap exceeded (more than 12 edges)");
  const detail::LiftSpace space(cover);
  const std::uint32_t states = 1u << space.bits;
  const std::uint32_t edge_masks = 1u << cover.edges.size();
  const std::uint32_t vertex_masks = 1u << space.doubled_count;
  std::vector<bool> visited(states, false);
  std::vector<TwistedLift> out;
  for (std::uint32_t x = 0; x < states; ++x) {
    if (visited[x]) continue;
    std::uint64_t orbit = 0;
    for (const auto& perm : space.edge_perms)
      for (std::uint32_t f = 0; f < edge_masks; ++f)
        for (std::uint32_t h = 0; h < vertex_masks; ++h) {
          const std::uint32_t y = space.act(x, perm, f, h);
          if (!visited[y]) {
            visited[y] = true;
            ++orbit;
          }
        }
    TwistedLift lift;
    lift.sheet = space.decode(x);
    lift.automorphism_count = space.group_order() / orbit;
    lift.connected = space.connected(x);
    out.push_back(std::move(lift));
  }
  return out;
}

struct PreimageCheck {
  Rational lifted_sum;  // sum of 1/|Aut| over connected lifts
  Rational formula;     // (2^g' - [c = 0]) / (2^(c+1) |Aut(quotient)|)
  bool holds = false;
};

/// Compares the explicit lift count with the closed preimage formula. g' is
/// the first Betti number of the quotient; when g is given it must also
/// satisfy 2g' = g - c + 1.
inline PreimageCheck check_preimage_formula(const QuotientCover& cover, std::optional<int> g = std::nullopt) {
  const FeynmanGraph graph = cover.graph();
  const int g_prime = genus(graph);
  const int c = cover.two_valent_count();
  if (g && 2 * g_prime != *g - c + 1) throw std::invalid_argument("quotient genus inconsistent with g");
  PreimageCheck check;
  for (const auto& lift : enumerate_lifts(cover))
    if (lift.connected) check.lifted_sum += Rational(1, lift.automorphism_count);
  check.formula = Rational((Integer(1) << g_prime) - (c == 0 ? 1 : 0),
                           (Integer(1) << (c + 1)) * cover_automorphism_count(cover));
  check.holds = check.lifted_sum == check.formula;
  return check;
}

inline bool verify_preimage_formula(const QuotientCover& cover, std::optional<int> g = std::nullopt) {
  return check_preimage_formula(cover, g).holds;
}

struct TwistedCover {
  std::size_t quotient_index = 0;
  QuotientCover quotient;
  TwistedLift lift;
  /// 2^(g-1) / |Aut| * prod_{4-valent V} (w_V - 1) * prod_{quotient edges} w(e)
  Rational multiplicity;
};

/// Connected twisted covers of degree d and genus g with nonzero multiplicity,
/// grouped by quotient in enumerate_quotient_covers order.
inline std::vector<TwistedCover> enumerate_twisted_covers(int d, int g) {
  std::vector<TwistedCover> out;
  const auto quotients = enumerate_quotient_covers(d, g);
  for (std::size_t q = 0; q < quotients.size(); ++q) {
    const auto& cover = quotients[q];
    Rational weight_part = pow2(g - 1);
    for (int v = 0; v < cover.vertex_count; ++v) {
      if (cover.valence(v) != 2) continue;
      for (const auto& e : cover.edges)
        if (e.source == v || e.target == v) {
          weight_part *= e.weight - 1;
          break;
        }
    }
    for (const auto& e : cover.edges) weight_part *= e.weight;
    for (auto& lift : enumerate_lifts(cover)) {
      if (!lift.connected) continue;
      TwistedCover tc;
      tc.quotient_index = q;
      tc.quotient = cover;
      tc.multiplicity = weight_part / lift.automorphism_count;
      tc.lift = std::move(lift);
      out.push_back(std::move(tc));
    }
  }
  return out;
}

/// DOT rendering of a quotient cover: edges oriented source -> target and
/// annotated with weight w and base-point crossings k.
inline std::string to_dot(const QuotientCover& cover, const std::string& name = "cover",
                          const std::string& caption = {}) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  if (!caption.empty()) os << "  label=\"" << caption << "\";\n";
  for (int v = 0; v < cover.vertex_count; ++v)
    os << "  x" << v + 1 << " [label=\"x" << v + 1 << " @ p" << v + 1 << "\"];\n";
  for (std::size_t k = 0; k < cover.edges.size(); ++k) {
    const auto& e = cover.edges[k];
    os << "  x" << e.source + 1 << " -> x" << e.target + 1 << " [label=\"q" << k + 1 << " w=" << e.weight
       << " k=" << e.crossings << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace twisted_hurwitz
