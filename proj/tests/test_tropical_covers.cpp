#include <gtest/gtest.h>

#include <map>
#include <set>
#include <vector>

#include "twisted_hurwitz/factorization_count.hpp"
#include "twisted_hurwitz/tropical_covers.hpp"

using namespace twisted_hurwitz;

namespace {

// Theta quotient of genus 2: two weight-1 edges x1 -> x2 and a weight-2 edge
// x2 -> x1 running over the base point once.
QuotientCover genus_two_figure() { return QuotientCover{2, {{0, 1, 1, 0}, {0, 1, 1, 0}, {1, 0, 2, 1}}}; }

std::multiset<Rational> multiplicities(const std::vector<QuotientCover>& covers, int g) {
  std::multiset<Rational> out;
  for (const auto& c : covers) out.insert(cover_multiplicity(c, g).value);
  return out;
}

}  // namespace

TEST(QuotientCovers, Degree2Genus3) {
  const auto covers = enumerate_quotient_covers(2, 3);
  EXPECT_EQ(multiplicities(covers, 3), (std::multiset<Rational>{4, 6, 6}));
  int with_two_valent = 0;
  for (const auto& c : covers) {
    const auto m = cover_multiplicity(c, 3);
    if (m.four_valent_count == 2) {
      ++with_two_valent;
      EXPECT_EQ(m.quotient_genus, 1);
      EXPECT_EQ(m.value, Rational(4));
      EXPECT_EQ(cover_automorphism_count(c), 1u);
    }
  }
  EXPECT_EQ(with_two_valent, 1);
  EXPECT_EQ(count_tropical(2, 3), Rational(16));
}

TEST(TwistedCovers, Degree2Genus3HasFiveCovers) {
  const auto covers = enumerate_twisted_covers(2, 3);
  ASSERT_EQ(covers.size(), 5u);
  std::multiset<Rational> mult;
  std::map<std::size_t, Rational> per_quotient;
  Rational total = 0;
  for (const auto& tc : covers) {
    mult.insert(tc.multiplicity);
    per_quotient[tc.quotient_index] += tc.multiplicity;
    total += tc.multiplicity;
    EXPECT_TRUE(tc.lift.connected);
  }
  EXPECT_EQ(mult, (std::multiset<Rational>{4, 4, 4, 2, 2}));
  EXPECT_EQ(total, Rational(16));
  const auto quotients = enumerate_quotient_covers(2, 3);
  for (const auto& [q, sum] : per_quotient) EXPECT_EQ(sum, cover_multiplicity(quotients[q], 3).value);
}

TEST(QuotientCovers, DegreeOneNeedsNoTwoValentVertices) {
  for (int g = 2; g <= 5; ++g) {
    for (const auto& c : enumerate_quotient_covers(1, g, true)) {
      const auto m = cover_multiplicity(c, g);
      if (m.four_valent_count > 0) {
        EXPECT_EQ(m.value, Rational(0));
      }
    }
    EXPECT_EQ(count_tropical(1, g), Rational(0));
  }
}

TEST(QuotientCovers, WeightOneTwoValentVertexHasZeroMultiplicity) {
  // One 2-valent vertex, a single weight-1 loop once around the circle.
  const QuotientCover loop{1, {{0, 0, 1, 1}}};
  EXPECT_EQ(cover_multiplicity(loop, 2).value, Rational(0));
  const QuotientCover heavy{1, {{0, 0, 2, 1}}};
  EXPECT_GT(cover_multiplicity(heavy, 2).value, Rational(0));
}

TEST(QuotientCovers, RejectsGenusBelowTwo) {
  EXPECT_THROW(enumerate_quotient_covers(2, 1), std::invalid_argument);
  EXPECT_THROW(count_tropical(2, 1), std::invalid_argument);
}

TEST(QuotientCovers, StructuralInvariants) {
  for (int d = 1; d <= 3; ++d)
    for (int g = 2; g <= 5; ++g)
      for (const auto& cover : enumerate_quotient_covers(d, g, true)) {
        EXPECT_EQ(cover.validation_error(), "");
        EXPECT_EQ(cover.vertex_count, g - 1);
        EXPECT_EQ(cover.degree(), d);
        for (int v = 0; v < cover.vertex_count; ++v) {
          EXPECT_EQ(cover.imbalance(v), 0);
          const int val = cover.valence(v);
          EXPECT_TRUE(val == 2 || val == 3);
          if (val == 2) {
            std::set<int> weights;
            for (const auto& e : cover.edges)
              if (e.source == v || e.target == v) weights.insert(e.weight);
            EXPECT_EQ(weights.size(), 1u);
          }
        }
        for (int seg = 0; seg < cover.vertex_count; ++seg) EXPECT_EQ(cover.local_degree(seg), d);
        const auto m = cover_multiplicity(cover, g);
        EXPECT_EQ(2 * m.quotient_genus, g - m.four_valent_count + 1);
        EXPECT_GE(m.quotient_genus, 0);
        if (g > 2) {
          for (const auto& e : cover.edges) EXPECT_NE(e.source, e.target);
        }
      }
}

TEST(QuotientCovers, OnlyPositiveMultiplicitiesByDefault) {
  for (int d = 1; d <= 3; ++d)
    for (int g = 2; g <= 4; ++g)
      for (const auto& cover : enumerate_quotient_covers(d, g)) EXPECT_GT(cover_multiplicity(cover, g).value, 0);
}

TEST(QuotientCovers, CoverMultiplicityMatchesTwistedSide) {
  for (int d = 1; d <= 3; ++d)
    for (int g = 2; g <= 5; ++g) {
      Rational twisted = 0;
      for (const auto& tc : enumerate_twisted_covers(d, g)) twisted += tc.multiplicity;
      EXPECT_EQ(twisted, count_tropical(d, g)) << d << "," << g;
    }
}

TEST(Correspondence, TropicalEqualsSymmetricGroup) {
  for (int d = 1; d <= 3; ++d)
    for (int g = 2; g <= 4; ++g) EXPECT_EQ(count_tropical(d, g), count_twisted(d, g, true).value) << d << "," << g;
}

TEST(PreimageFormula, GenusTwoFigure) {
  const auto cover = genus_two_figure();
  EXPECT_EQ(cover.validation_error(), "");
  EXPECT_EQ(cover_automorphism_count(cover), 2u);
  std::multiset<Rational> contributions;
  for (const auto& lift : enumerate_lifts(cover))
    if (lift.connected) contributions.insert(Rational(1, lift.automorphism_count));
  EXPECT_EQ(contributions, (std::multiset<Rational>{Rational(1, 2), Rational(1, 4)}));
  const auto check = check_preimage_formula(cover, 3);
  EXPECT_EQ(check.lifted_sum, Rational(3, 4));
  EXPECT_EQ(check.formula, Rational(3, 4));
  EXPECT_TRUE(check.holds);
}

TEST(PreimageFormula, TreeQuotientHasOnlyDisconnectedLift) {
  const QuotientCover tree{2, {{0, 1, 1, 1}}};
  const auto lifts = enumerate_lifts(tree);
  for (const auto& l : lifts) EXPECT_FALSE(l.connected);
  const auto check = check_preimage_formula(tree);
  EXPECT_EQ(check.formula, Rational(0));
  EXPECT_EQ(check.lifted_sum, Rational(0));
}

TEST(PreimageFormula, TwoValentVerticesMakeEveryLiftConnected) {
  for (int d = 2; d <= 3; ++d)
    for (int g = 2; g <= 5; ++g)
      for (const auto& cover : enumerate_quotient_covers(d, g, true)) {
        if (cover.two_valent_count() == 0) continue;
        for (const auto& lift : enumerate_lifts(cover)) EXPECT_TRUE(lift.connected);
      }
}

TEST(PreimageFormula, HoldsOnEveryEnumeratedCover) {
  for (int d = 1; d <= 3; ++d)
    for (int g = 2; g <= 5; ++g)
      for (const auto& cover : enumerate_quotient_covers(d, g, true)) {
        ASSERT_LE(cover.edges.size(), static_cast<std::size_t>(kLiftEdgeCap));
        EXPECT_TRUE(verify_preimage_formula(cover, g)) << d << "," << g;
      }
}

TEST(PreimageFormula, SizeCap) {
  QuotientCover big{1, {}};
  for (int k = 0; k < kLiftEdgeCap + 1; ++k) big.edges.push_back({0, 0, 1, 1});
  EXPECT_THROW(enumerate_lifts(big), std::length_error);
}

TEST(Dot, QuotientCoverAnnotations) {
  const std::string dot = to_dot(genus_two_figure(), "fig", "theta");
  EXPECT_EQ(dot.rfind("digraph fig {", 0), 0u);
  EXPECT_NE(dot.find("x2 -> x1 [label=\"q3 w=2 k=1\"]"), std::string::npos);
}
