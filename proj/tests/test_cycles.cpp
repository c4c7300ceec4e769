#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace spliceq;

namespace {

std::vector<PlumbingGraph> sample_graphs(std::uint64_t seed, int count) {
  support::Rng rng(seed);
  std::vector<PlumbingGraph> out;
  for (const auto& name : support::fixture_names()) out.push_back(support::load(name));
  for (int i = 0; i < count; ++i) out.push_back(i % 2 ? support::random_string(rng, 6) : support::random_star(rng, 2, 8));
  return out;
}

const NewtonStaircase* only_base_point(const MultiplicityReport& m) {
  const NewtonStaircase* found = nullptr;
  for (const auto& s : m.staircases)
    if (s.base_point) {
      if (found) return nullptr;
      found = &s;
    }
  return found;
}

}  // namespace

TEST(Cycles, MonomialCycles) {
  const LatticeContext three(support::string_graph({-3}));
  const auto ends = monomial_ends(three);
  ASSERT_EQ(ends.size(), 2u);
  EXPECT_EQ(monomial_cycle(three, MonomialExponent{0, 0}), three.zero());
  EXPECT_EQ(monomial_cycle(three, MonomialExponent{1, 2}), three.unit(0));
  EXPECT_EQ(monomial_cycle(three, std::map<std::string, std::int64_t>{{ends[1].name, 3}}), three.unit(0));
  EXPECT_THROW(monomial_cycle(three, std::map<std::string, std::int64_t>{{"nope", 1}}), UnknownEnd);
  const LatticeContext s(support::string_graph({-2, -3}));
  EXPECT_EQ(monomial_cycle(s, MonomialExponent{1, 1}), s.from_rationals({Rational(4, 5), Rational(3, 5)}));
}

TEST(Cycles, PrincipalExamples) {
  const LatticeContext left(support::load("ex61_left"));
  const LatticeContext right(support::load("ex61_right"));
  EXPECT_TRUE(is_principal(left, left.zero()).principal);
  EXPECT_TRUE(is_principal(left, left.laufer_zmin()).principal);
  EXPECT_FALSE(is_principal(left, left.dual(left.index_of("E1"))).principal);
  EXPECT_FALSE(is_principal(right, right.dual(right.index_of("E1"))).principal);
  EXPECT_FALSE(is_principal(right, right.laufer_zmin()).principal);
  // E_1^* + k E_i^* stays outside for the ends E_i of the right graph.
  for (auto e : right.ends())
    for (std::int64_t k = 0; k <= 3; ++k)
      EXPECT_FALSE(is_principal(right, right.dual(right.index_of("E1")) + k * right.dual(e)).principal);
  EXPECT_THROW(is_principal(left, -left.unit(0)), InputOutsideCone);
}

TEST(Cycles, PrincipalCertificatesVerify) {
  support::Rng rng(61);
  for (const auto& g : sample_graphs(62, 10)) {
    const LatticeContext ctx(g);
    for (int i = 0; i < 6; ++i) {
      const auto x = support::random_dual_point(ctx, rng, 0, 2);
      const auto cert = is_principal(ctx, x);
      if (!cert.principal) {
        ASSERT_TRUE(cert.refuting_vertex.has_value());
        EXPECT_FALSE(cert.witnesses[*cert.refuting_vertex].has_value());
        continue;
      }
      std::optional<QCycle> meet;
      for (std::size_t v = 0; v < ctx.size(); ++v) {
        ASSERT_TRUE(cert.witnesses[v].has_value());
        const auto d = monomial_cycle(ctx, *cert.witnesses[v]);
        const auto diff = d - x;
        EXPECT_TRUE(diff.is_integral());
        EXPECT_TRUE(diff.is_effective());
        EXPECT_EQ(diff.coord(v), Rational(0));
        meet = meet ? inf(*meet, d) : d;
      }
      EXPECT_EQ(*meet, x);
    }
  }
}

TEST(Cycles, PrincipalCyclesFormASemigroup) {
  support::Rng rng(63);
  for (const auto& g : sample_graphs(64, 8)) {
    const LatticeContext ctx(g);
    std::vector<QCycle> principal;
    for (int i = 0; i < 12 && principal.size() < 4; ++i) {
      const auto x = support::random_dual_point(ctx, rng, 0, 2);
      if (is_principal(ctx, x).principal) principal.push_back(x);
    }
    for (std::size_t i = 0; i < principal.size(); ++i)
      for (std::size_t j = i; j < principal.size(); ++j)
        EXPECT_TRUE(is_principal(ctx, principal[i] + principal[j]).principal);
  }
}

TEST(Cycles, MaximalCycleExamples) {
  for (std::int64_t p = 2; p <= 7; ++p) {
    const LatticeContext ctx(support::string_graph({-p}));
    EXPECT_EQ(zmax(ctx), ctx.unit(0));
  }
  const LatticeContext m8(support::load("ex_m8"));
  EXPECT_EQ(zmax(m8), m8.laufer_zmin());
  EXPECT_EQ(m8.pair(zmax(m8), zmax(m8)), Rational(-2));
  const LatticeContext right(support::load("ex61_right"));
  EXPECT_EQ(zmax(right), 2 * right.laufer_zmin());
}

// inf over nonzero integral monomial cycles inside a box much larger than the
// reduction box.
TEST(Cycles, MaximalCycleMatchesLargeBoxInfimum) {
  for (const auto& g : sample_graphs(65, 8)) {
    const LatticeContext ctx(g);
    const auto ends = monomial_ends(ctx);
    if (ends.size() > 4) continue;
    std::vector<std::int64_t> box;
    double points = 1;
    for (const auto& e : ends) {
      box.push_back(2 * ctx.order_e(e.vertex));
      points *= static_cast<double>(box.back() + 1);
    }
    if (points > 2e6) continue;
    std::optional<QCycle> best;
    MonomialExponent a(ends.size(), 0);
    for (;;) {
      std::size_t i = 0;
      while (i < a.size() && a[i] == box[i]) a[i++] = 0;
      if (i == a.size()) break;
      ++a[i];
      const auto d = monomial_cycle(ctx, a);
      if (d.is_integral()) best = best ? inf(*best, d) : d;
    }
    ASSERT_TRUE(best.has_value());
    EXPECT_EQ(zmax(ctx), *best);
  }
}

TEST(Cycles, MaximalCycleDominatesFundamentalCycle) {
  for (const auto& g : sample_graphs(66, 16)) {
    const LatticeContext ctx(g);
    const auto z = zmax(ctx);
    EXPECT_TRUE(z.geq(ctx.laufer_zmin()));
    EXPECT_TRUE(z.is_integral());
  }
}

TEST(Cycles, MonomialCondition) {
  for (const auto& name : support::fixture_names())
    EXPECT_TRUE(monomial_condition(LatticeContext(support::load(name))).satisfied) << name;
  const auto strings = monomial_condition(LatticeContext(support::string_graph({-2, -3, -4})));
  EXPECT_TRUE(strings.satisfied);
  EXPECT_TRUE(strings.branches.empty());
}

TEST(Cycles, EndMultiplesArePrincipalWhenConditionHolds) {
  for (const auto& g : sample_graphs(67, 16)) {
    const LatticeContext ctx(g);
    if (!monomial_condition(ctx).satisfied) continue;
    for (std::size_t v = 0; v < ctx.size(); ++v)
      if (ctx.valency(v) != 2) {
        EXPECT_TRUE(is_principal(ctx, ctx.order_e(v) * ctx.dual(v)).principal);
      }
    EXPECT_TRUE(is_principal(ctx, zmax(ctx)).principal);
  }
}

TEST(Cycles, StaircaseGeometry) {
  const std::vector<LatticePoint2> pts{{3, 0}, {1, 1}, {0, 3}, {2, 2}, {1, 2}};
  const auto mins = minimal_points(pts);
  EXPECT_EQ(mins, (std::vector<LatticePoint2>{{0, 3}, {1, 1}, {3, 0}}));
  const auto hull = newton_boundary(mins);
  EXPECT_EQ(hull, mins);
  EXPECT_EQ(doubled_area(hull), 1 * (3 + 1) + 2 * (1 + 0));
  // A point above the segment is dropped from the hull.
  const auto hull2 = newton_boundary({{0, 2}, {1, 2}, {2, 0}});
  EXPECT_EQ(hull2, (std::vector<LatticePoint2>{{0, 2}, {2, 0}}));
  EXPECT_EQ(doubled_area(hull2), 4);
  EXPECT_EQ(doubled_area(newton_boundary({{0, 0}})), 0);
}

TEST(Cycles, BasePointsOfExamples) {
  {
    const LatticeContext ctx(support::load("ex_m8"));
    const auto m = multiplicity(ctx);
    EXPECT_EQ(m.total, 3);
    EXPECT_EQ(m.neg_zmax_square, 2);
    const auto* bp = only_base_point(m);
    ASSERT_NE(bp, nullptr);
    EXPECT_EQ(bp->kind, DoublePointKind::Edge);
    EXPECT_EQ(std::set<std::string>({ctx.id(bp->first_vertex), ctx.id(bp->second_vertex)}), (std::set<std::string>{"m1", "m2"}));
    EXPECT_EQ(bp->minimal_points, (std::vector<LatticePoint2>{{0, 1}, {1, 0}}));
    EXPECT_EQ(bp->doubled_area, 1);
  }
  {
    const LatticeContext ctx(support::load("ex61_left"));
    const auto m = multiplicity(ctx);
    const auto* bp = only_base_point(m);
    ASSERT_NE(bp, nullptr);
    EXPECT_EQ(bp->kind, DoublePointKind::EndCurve);
    EXPECT_EQ(ctx.id(bp->second_vertex), "E0");
    // E_0 is the only curve with (Z_min, E_i) < 0.
    for (std::size_t v = 0; v < ctx.size(); ++v)
      EXPECT_EQ(ctx.pair_unit(ctx.laufer_zmin(), v) < 0, ctx.id(v) == "E0");
  }
  {
    const LatticeContext ctx(support::load("ex61_right"));
    const auto m = multiplicity(ctx);
    for (const auto& s : m.staircases) EXPECT_FALSE(s.base_point);
    EXPECT_EQ(m.total, 4);
  }
}

TEST(Cycles, MultiplicityOfSingleVertex) {
  for (std::int64_t p = 2; p <= 7; ++p) {
    const LatticeContext ctx(support::string_graph({-p}));
    const auto m = multiplicity(ctx);
    EXPECT_EQ(m.total, p);
    for (const auto& s : m.staircases) EXPECT_FALSE(s.base_point);
  }
}

TEST(Cycles, MultiplicityOfKnownSingularities) {
  // Rational double points and the (2,3,7) hypersurface are double points.
  for (const auto& [name, g] : support::ade_trees()) EXPECT_EQ(multiplicity(LatticeContext(g)).total, 2) << name;
  EXPECT_EQ(multiplicity(LatticeContext(support::load("sigma_2_3_7"))).total, 2);
}

TEST(Cycles, MultiplicityAtLeastMinusZmaxSquare) {
  for (const auto& g : sample_graphs(68, 12)) {
    const LatticeContext ctx(g);
    const auto m = multiplicity(ctx);
    EXPECT_GE(m.total, m.neg_zmax_square);
    for (const auto& s : m.staircases) {
      EXPECT_GE(s.doubled_area, 0);
      EXPECT_EQ(s.base_point, s.doubled_area > 0 || !(s.minimal_points.size() == 1 && s.minimal_points[0] == LatticePoint2{0, 0}));
    }
  }
}
