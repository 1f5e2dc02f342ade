#include <gtest/gtest.h>

#include <numeric>
#include <regex>
#include <set>
#include <vector>

#include "twisted_hurwitz/graph_enum.hpp"

using namespace twisted_hurwitz;

namespace {

// Labeled objects: edge labels 1..r each assigned an unordered vertex pair,
// valences as prescribed (3-valent vertices first), connected.
std::uint64_t labeled_graph_count(int three, int two, bool loops) {
  const int s = three + two;
  const int r = (3 * three + 2 * two) / 2;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < s; ++a)
    for (int b = a; b < s; ++b)
      if (a != b || loops) pairs.emplace_back(a, b);
  if (pairs.empty()) return 0;
  std::uint64_t count = 0;
  std::vector<int> choice(r, 0);
  while (true) {
    std::vector<int> val(s, 0);
    std::vector<std::pair<int, int>> edges;
    for (int k : choice) {
      val[pairs[k].first] += 1;
      val[pairs[k].second] += 1;
      edges.push_back(pairs[k]);
    }
    bool ok = true;
    for (int v = 0; v < s; ++v) ok &= val[v] == (v < three ? 3 : 2);
    if (ok && FeynmanGraph(s, edges).is_connected()) ++count;
    int pos = 0;
    while (pos < r && ++choice[pos] == static_cast<int>(pairs.size())) choice[pos++] = 0;
    if (pos == r) break;
  }
  return count;
}

std::uint64_t fact(int n) { return n <= 1 ? 1 : n * fact(n - 1); }

}  // namespace

TEST(EnumerateGraphs, TwoTrivalentVertices) {
  const auto with_loops = enumerate_graphs(2, 0, true);
  ASSERT_EQ(with_loops.size(), 2u);
  std::multiset<std::uint64_t> auts;
  for (const auto& c : with_loops) auts.insert(c.automorphism_count);
  // theta: 2 vertex swaps x 3! edge permutations; dumbbell: swap x 2 loop flips
  EXPECT_EQ(auts, (std::multiset<std::uint64_t>{8, 12}));

  const auto no_loops = enumerate_graphs(2, 0, false);
  ASSERT_EQ(no_loops.size(), 1u);
  EXPECT_EQ(no_loops[0].representative.edges, (std::vector<std::pair<int, int>>{{0, 1}, {0, 1}, {0, 1}}));
  EXPECT_EQ(no_loops[0].automorphism_count, 12u);
}

TEST(EnumerateGraphs, SingleLoop) {
  const auto classes = enumerate_graphs(0, 1, true);
  ASSERT_EQ(classes.size(), 1u);
  EXPECT_EQ(classes[0].representative.loop_count(), 1);
  EXPECT_EQ(genus(classes[0].representative), 1);
  EXPECT_TRUE(enumerate_graphs(0, 1, false).empty());
}

TEST(EnumerateGraphs, OddDegreeSumIsAnError) {
  EXPECT_THROW(enumerate_graphs(1, 0, true), std::invalid_argument);
  EXPECT_THROW(enumerate_graphs(3, 2, false), std::invalid_argument);
  EXPECT_THROW(enumerate_graphs(0, 0, false), std::invalid_argument);
}

TEST(EnumerateGraphs, OrbitSumMatchesLabeledCount) {
  for (auto [three, two] : {std::pair{2, 0}, std::pair{0, 1}, std::pair{0, 2}, std::pair{0, 3}, std::pair{2, 1},
                            std::pair{2, 2}, std::pair{4, 0}, std::pair{0, 4}, std::pair{2, 3}})
    for (bool loops : {true, false}) {
      const int r = (3 * three + 2 * two) / 2;
      if (r > 6 && loops) continue;
      Rational orbit_sum = 0;
      for (const auto& c : enumerate_graphs(three, two, loops)) {
        const std::uint64_t group = fact(three) * fact(two) * fact(r) << c.representative.loop_count();
        orbit_sum += Rational(Integer(group), Integer(c.automorphism_count));
      }
      EXPECT_EQ(orbit_sum, Rational(Integer(labeled_graph_count(three, two, loops))))
          << three << "," << two << " loops=" << loops;
    }
}

TEST(EnumerateGraphs, ValenceProfileAndQuotientGenus) {
  for (int g = 3; g <= 6; ++g)
    for (int c = 0; c <= g - 1; ++c) {
      if ((g - 1 - c) % 2) continue;
      for (const auto& cls : enumerate_graphs(g - 1 - c, c, false)) {
        const auto& graph = cls.representative;
        EXPECT_TRUE(graph.is_connected());
        EXPECT_EQ(graph.loop_count(), 0);
        for (int v = 0; v < graph.vertex_count; ++v) EXPECT_EQ(graph.valence(v), v < g - 1 - c ? 3 : 2);
        EXPECT_EQ(2 * genus(graph), g - c + 1);
      }
    }
}

TEST(EnumerateGraphs, AutomorphismsAreInvariantUnderRelabeling) {
  for (const auto& cls : enumerate_graphs(4, 0, true)) {
    const auto& graph = cls.representative;
    EXPECT_EQ(automorphism_count(graph), cls.automorphism_count);
    std::vector<int> perm = {1, 0, 3, 2};
    std::vector<std::pair<int, int>> moved;
    for (auto [a, b] : graph.edges) moved.emplace_back(perm[a], perm[b]);
    const FeynmanGraph relabeled(graph.vertex_count, moved);
    EXPECT_EQ(automorphism_count(relabeled), cls.automorphism_count);
    EXPECT_EQ(canonical_form(relabeled), canonical_form(graph));
  }
}

TEST(Genus, Examples) {
  EXPECT_EQ(genus(FeynmanGraph(2, {{0, 1}, {0, 1}, {0, 1}})), 2);
  EXPECT_EQ(genus(FeynmanGraph(1, {{0, 0}})), 1);
  EXPECT_EQ(genus(FeynmanGraph(2, {{0, 1}})), 0);
  EXPECT_THROW(genus(FeynmanGraph(2, {{0, 0}})), std::invalid_argument);
}

TEST(VertexOrderings, Counts) {
  EXPECT_EQ(vertex_orderings(FeynmanGraph(1, {})).size(), 1u);
  EXPECT_EQ(vertex_orderings(FeynmanGraph(2, {{0, 1}})).size(), 2u);
  const auto orders = vertex_orderings(FeynmanGraph(4, {}));
  EXPECT_EQ(orders.size(), 24u);
  EXPECT_EQ(std::set<VertexOrder>(orders.begin(), orders.end()).size(), 24u);
}

TEST(Dot, ListsEveryVertexAndEdge) {
  const FeynmanGraph theta(2, {{0, 1}, {0, 1}, {0, 1}});
  const std::string dot = to_dot(theta, {"w=1", "", "w=2"});
  const std::regex edge(R"(x(\d+) -- x(\d+) \[label=\"q(\d+)[^\"]*\"\];)");
  int edges = 0;
  for (auto it = std::sregex_iterator(dot.begin(), dot.end(), edge); it != std::sregex_iterator(); ++it) ++edges;
  EXPECT_EQ(edges, 3);
  EXPECT_NE(dot.find("q3 w=2"), std::string::npos);
  EXPECT_EQ(dot.rfind("graph G {", 0), 0u);
}
