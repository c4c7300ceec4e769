#include <gtest/gtest.h>

#include "spliceq/oracle.hpp"
#include "support.hpp"

using namespace spliceq;

TEST(Oracle, StringCountExamples) {
  const LatticeContext one(support::string_graph({-2}));
  EXPECT_EQ(oracle::string_hilbert_count(one, one.zero(), 5), 0);
  EXPECT_EQ(oracle::string_hilbert_count(one, one.unit(0), 5), 1);
  const LatticeContext s(support::string_graph({-2, -3}));
  EXPECT_EQ(oracle::string_hilbert_count(s, s.dual(0), 10), 0);
  EXPECT_THROW(oracle::string_ends(LatticeContext(support::load("e8"))), oracle::NotAString);
}

TEST(Oracle, NaiveRegionExamples) {
  const LatticeContext one(support::string_graph({-2}));
  EXPECT_EQ(oracle::naive_series_region(one, one.unit(0), oracle::RegionMode::NotGeq), 1);
  EXPECT_EQ(oracle::naive_series_region(one, one.zero(), oracle::RegionMode::NotGeq), 0);
  EXPECT_EQ(oracle::naive_series_region(one, one.zero(), oracle::RegionMode::EffNotGeq, 2 * one.unit(0)), 4);
}

TEST(Oracle, TruncatedSumMatchesStringCountAndNaiveBox) {
  support::Rng rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const LatticeContext ctx(support::random_string(rng, 5, -5, 150));
    const auto x = support::random_lprime(ctx, rng, 3);
    const auto engine = sum_trunc(ctx, x);
    EXPECT_EQ(engine, oracle::string_hilbert_count(ctx, x, oracle::string_box_bound(ctx, x)));
    EXPECT_EQ(engine, oracle::naive_series_region(ctx, x, oracle::RegionMode::NotGeq));
  }
}

TEST(Oracle, TruncatedSumMatchesNaiveBoxOnStars) {
  support::Rng rng(72);
  for (int trial = 0; trial < 40; ++trial) {
    const LatticeContext ctx(support::random_star(rng, 2, 7, -4, 60));
    const auto x = support::random_lprime(ctx, rng, 2);
    EXPECT_EQ(sum_trunc(ctx, x), oracle::naive_series_region(ctx, x, oracle::RegionMode::NotGeq));
    const auto l = support::random_effective_integral(ctx, rng, 1);
    EXPECT_EQ(h0_quotient_dim(ctx, x, l), oracle::naive_series_region(ctx, x, oracle::RegionMode::EffNotGeq, l));
  }
}

TEST(Oracle, TruncatedSumMatchesNaiveBoxOnFixtures) {
  support::Rng rng(73);
  for (const auto& name : {"single_m2", "ex61_left", "sigma_2_3_7"}) {
    const LatticeContext ctx(support::load(name));
    for (int i = 0; i < 5; ++i) {
      const auto x = support::random_lprime(ctx, rng, 2);
      EXPECT_EQ(sum_trunc(ctx, x), oracle::naive_series_region(ctx, x, oracle::RegionMode::NotGeq)) << name;
    }
  }
}

TEST(Oracle, FundamentalCycleMatchesExhaustiveSearch) {
  support::Rng rng(74);
  std::vector<PlumbingGraph> graphs{support::load("single_m2"), support::load("ex61_left"), support::load("sigma_2_3_7")};
  for (int i = 0; i < 30; ++i) graphs.push_back(i % 2 ? support::random_string(rng, 5) : support::random_star(rng, 1, 5));
  for (const auto& g : graphs) {
    const LatticeContext ctx(g);
    EXPECT_EQ(ctx.laufer_zmin(), oracle::brute_zmin(ctx, 10)) << serialize_graph(g);
  }
}

TEST(Oracle, PrincipalTestMatchesCycleCondition) {
  support::Rng rng(75);
  std::vector<PlumbingGraph> graphs{support::load("single_m2"), support::load("ex61_left"), support::string_graph({-3})};
  for (int i = 0; i < 16; ++i) graphs.push_back(i % 2 ? support::random_string(rng, 4, -4, 30) : support::random_star(rng, 1, 5, -3, 30));
  for (const auto& g : graphs) {
    const LatticeContext ctx(g);
    std::vector<QCycle> samples{ctx.zero(), ctx.laufer_zmin()};
    for (std::size_t v = 0; v < ctx.size(); ++v) samples.push_back(ctx.dual(v));
    for (int i = 0; i < 4; ++i) samples.push_back(support::random_dual_point(ctx, rng, 0, 1));
    for (const auto& x : samples)
      EXPECT_EQ(is_principal(ctx, x).principal, oracle::principal_by_cycle_condition(ctx, x)) << serialize_graph(g);
  }
}
