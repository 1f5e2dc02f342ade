#pragma once

// Connected multigraphs with only 2- and 3-valent vertices ("Feynman graphs"),
// their isomorphism classes and automorphism group sizes.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twisted_hurwitz/rational.hpp"

namespace twisted_hurwitz {

struct FeynmanGraph {
  int vertex_count = 0;
  /// Unordered endpoint pairs stored as (min, max), 0-based; edge k is q_{k+1},
  /// vertex v is x_{v+1}. A pair (v, v) is a loop.
  std::vector<std::pair<int, int>> edges;

  FeynmanGraph() = default;
  FeynmanGraph(int vertices, std::vector<std::pair<int, int>> edge_list)
      : vertex_count(vertices), edges(std::move(edge_list)) {
    for (auto& [a, b] : edges) {
      if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count)
        throw std::invalid_argument("edge endpoint out of range");
      if (a > b) std::swap(a, b);
    }
  }

  int edge_count() const { return static_cast<int>(edges.size()); }

  /// A loop contributes 2.
  int valence(int v) const {
    int n = 0;
    for (auto [a, b] : edges) n += (a == v) + (b == v);
    return n;
  }

  int loop_count() const {
    return static_cast<int>(std::count_if(edges.begin(), edges.end(), [](auto e) { return e.first == e.second; }));
  }

  bool is_connected() const {
    if (vertex_count == 0) return false;
    std::vector<int> parent(vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int components = vertex_count;
    for (auto [a, b] : edges) {
      const int ra = find(a), rb = find(b);
      if (ra != rb) {
        parent[ra] = rb;
        --components;
      }
    }
    return components == 1;
  }

  friend bool operator==(const FeynmanGraph&, const FeynmanGraph&) = default;
};

/// First Betti number r - s + 1.
inline int genus(const FeynmanGraph& graph) {
  if (!graph.is_connected()) throw std::invalid_argument("genus requires a connected graph");
  return graph.edge_count() - graph.vertex_count + 1;
}

struct GraphClass {
  FeynmanGraph representative;
  /// Vertex permutations x parallel-edge permutations x loop flips.
  std::uint64_t automorphism_count = 1;
};

namespace detail {

inline std::vector<std::pair<int, int>> relabeled(const FeynmanGraph& graph, const std::vector<int>& perm) {
  std::vector<std::pair<int, int>> out;
  out.reserve(graph.edges.size());
  for (auto [a, b] : graph.edges) {
    int x = perm[a], y = perm[b];
    if (x > y) std::swap(x, y);
    out.emplace_back(x, y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Calls f(perm) for each vertex permutation preserving valences.
template <typename F>
void for_each_valence_preserving_perm(const FeynmanGraph& graph, F&& f) {
  std::vector<int> valence(graph.vertex_count);
  for (int v = 0; v < graph.vertex_count; ++v) valence[v] = graph.valence(v);
  std::vector<int> perm(graph.vertex_count);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int v = 0; v < graph.vertex_count && ok; ++v) ok = valence[perm[v]] == valence[v];
    if (ok) f(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace detail

/// Minimal sorted edge list over all valence-preserving relabelings.
inline std::vector<std::pair<int, int>> canonical_form(const FeynmanGraph& graph) {
  std::vector<std::pair<int, int>> best;
  bool first = true;
  detail::for_each_valence_preserving_perm(graph, [&](const std::vector<int>& perm) {
    auto candidate = detail::relabeled(graph, perm);
    if (first || candidate < best) {
      best = std::move(candidate);
      first = false;
    }
  });
  return best;
}

/// |Aut(graph)| as a multigraph: vertex maps preserving edge multiplicities,
/// times permutations among parallel edges, times a flip per loop.
inline std::uint64_t automorphism_count(const FeynmanGraph& graph) {
  const auto sorted = detail::relabeled(graph, [&] {
    std::vector<int> id(graph.vertex_count);
    std::iota(id.begin(), id.end(), 0);
    return id;
  }());
  std::uint64_t vertex_maps = 0;
  detail::for_each_valence_preserving_perm(graph, [&](const std::vector<int>& perm) {
    if (detail::relabeled(graph, perm) == sorted) ++vertex_maps;
  });
  std::map<std::pair<int, int>, int> multiplicity;
  for (auto e : graph.edges) ++multiplicity[e];
  std::uint64_t edge_maps = 1;
  for (auto [e, m] : multiplicity)
    for (int k = 2; k <= m; ++k) edge_maps *= k;
  return vertex_maps * edge_maps * (std::uint64_t{1} << graph.loop_count());
}

/// One representative per isomorphism class of connected multigraphs whose
/// first `three_valent` vertices have valence 3 and remaining `two_valent`
/// vertices valence 2. Output is sorted by canonical form.
inline std::vector<GraphClass> enumerate_graphs(int three_valent, int two_valent, bool allow_loops) {
  if (three_valent < 0 || two_valent < 0 || three_valent + two_valent < 1)
    throw std::invalid_argument("need at least one vertex");
  if ((3 * three_valent + 2 * two_valent) % 2 != 0)
    throw std::invalid_argument("odd degree sum: no graph with this valence profile exists");
  const int s = three_valent + two_valent;
  const int r = (3 * three_valent + 2 * two_valent) / 2;
  std::vector<int> target(s);
  for (int v = 0; v < s; ++v) target[v] = v < three_valent ? 3 : 2;

  std::vector<std::pair<int, int>> slots;
  for (int a = 0; a < s; ++a)
    for (int b = a; b < s; ++b)
      if (a != b || allow_loops) slots.emplace_back(a, b);

  std::set<std::vector<std::pair<int, int>>> seen;
  std::vector<GraphClass> out;
  std::vector<int> valence(s, 0);
  std::vector<std::pair<int, int>> chosen;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (static_cast<int>(chosen.size()) == r) {
      if (valence != target) return;
      FeynmanGraph graph(s, chosen);
      if (!graph.is_connected()) return;
      auto canon = canonical_form(graph);
      if (!seen.insert(canon).second) return;
      FeynmanGraph rep(s, canon);
      out.push_back({rep, automorphism_count(rep)});
      return;
    }
    for (std::size_t k = start; k < slots.size(); ++k) {
      auto [a, b] = slots[k];
      valence[a] += 1;
      valence[b] += 1;
      if (valence[a] <= target[a] && valence[b] <= target[b]) {
        chosen.push_back(slots[k]);
        self(self, k);
        chosen.pop_back();
      }
      valence[a] -= 1;
      valence[b] -= 1;
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(),
            [](const GraphClass& x, const GraphClass& y) { return x.representative.edges < y.representative.edges; });
  return out;
}

/// An order Omega on the vertices, listed from smallest to largest.
using VertexOrder = std::vector<int>;

/// position[v] = rank of vertex v in the order.
inline std::vector<int> positions(const VertexOrder& order) {
  std::vector<int> pos(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = static_cast<int>(k);
  return pos;
}

/// All s! orders, lexicographic.
inline std::vector<VertexOrder> vertex_orderings(const FeynmanGraph& graph) {
  VertexOrder order(graph.vertex_count);
  std::iota(order.begin(), order.end(), 0);
  std::vector<VertexOrder> out;
  do {
    out.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

/// Graphviz rendering; vertices x1..xs, edges q1..qr plus optional annotations.
inline std::string to_dot(const FeynmanGraph& graph, const std::vector<std::string>& edge_annotations = {},
                          const std::string& name = "G") {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (int v = 0; v < graph.vertex_count; ++v)
    os << "  x" << v + 1 << " [label=\"x" << v + 1 << "\"];\n";
  for (int k = 0; k < graph.edge_count(); ++k) {
    auto [a, b] = graph.edges[k];
    os << "  x" << a + 1 << " -- x" << b + 1 << " [label=\"q" << k + 1;
    if (k < static_cast<int>(edge_annotations.size()) && !edge_annotations[k].empty())
      os << " " << edge_annotations[k];
    os << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace twisted_hurwitz
