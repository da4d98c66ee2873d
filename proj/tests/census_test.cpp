#include <gtest/gtest.h>

#include <algorithm>

#include "e2/census.hpp"

namespace e2 {
namespace {

TEST(Region, FastMatchesNaive) {
  for (i64 X : {1, 7, 100, 2500}) {
    EXPECT_EQ(enumerate_region(X), enumerate_region_naive(X)) << X;
    const RegionFilter fam{true, true, false};
    EXPECT_EQ(enumerate_region(X, fam), enumerate_region_naive(X, fam)) << X;
  }
}

TEST(Region, SmallExample) {
  // |b(a^2 - 4b)| <= 4
  const auto pts = enumerate_region(4);
  for (const auto& c : pts) EXPECT_LE(abs128(conductor_polynomial(c)), 4);
  EXPECT_NE(std::find(pts.begin(), pts.end(), CurveParams{0, 1}), pts.end());
  EXPECT_NE(std::find(pts.begin(), pts.end(), CurveParams{1, 1}), pts.end());
  EXPECT_EQ(std::find(pts.begin(), pts.end(), CurveParams{2, -1}), pts.end());
}

TEST(Region, FamilyFilterPartitions) {
  const i64 X = 5000;
  const auto all = enumerate_region(X);
  const auto fam = enumerate_region(X, {true, false, false});
  std::size_t expected = 0;
  for (const auto& c : all) expected += in_family(c);
  EXPECT_EQ(fam.size(), expected);
}

TEST(Census, DeterministicAcrossWorkers) {
  CensusConfig cfg;
  cfg.grid = {1000, 20000};
  cfg.workers = 1;
  const auto one = run_census(cfg);
  cfg.workers = 4;
  const auto four = run_census(cfg);
  ASSERT_EQ(one.rows.size(), four.rows.size());
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    EXPECT_EQ(one.rows[i].count, four.rows[i].count);
    EXPECT_EQ(one.rows[i].tail_index, four.rows[i].tail_index);
    EXPECT_EQ(one.rows[i].tail_szpiro, four.rows[i].tail_szpiro);
  }
  EXPECT_EQ(one.index_histogram, four.index_histogram);
  EXPECT_EQ(one.anomaly_examples, four.anomaly_examples);
}

TEST(Census, CondPolyCountsMatchNaiveLoop) {
  CensusConfig cfg;
  cfg.grid = {300, 3000, 30000};
  const auto rep = run_census(cfg);
  for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
    u64 naive = 0;
    for (const auto& c : enumerate_region_naive(cfg.grid[i], {true, false, false}))
      naive += !nonminimal_at_large_prime(c.a, c.b);
    EXPECT_EQ(rep.rows[i].count, naive) << cfg.grid[i];
  }
}

TEST(Census, FrozenCondPolyCounts) {
  CensusConfig cfg;
  cfg.grid = {10000, 100000, 1000000, 10000000};
  cfg.workers = 2;
  const auto rep = run_census(cfg);
  EXPECT_EQ(rep.rows[0].count, 240u);
  EXPECT_EQ(rep.rows[1].count, 1404u);
  EXPECT_EQ(rep.rows[2].count, 8095u);
  EXPECT_EQ(rep.rows[3].count, 46116u);
}

TEST(Census, CountsMonotoneAndTailsBounded) {
  CensusConfig cfg;
  cfg.grid = {1000, 10000, 100000};
  cfg.order_by = OrderBy::Conductor;
  cfg.index_cap = 100;
  const auto all = run_census(cfg);  // CondPoly family: every minimal curve counts
  for (std::size_t i = 0; i < all.rows.size(); ++i) {
    EXPECT_LE(all.rows[i].tail_index, all.rows[i].count);
    EXPECT_LE(all.rows[i].tail_szpiro, all.rows[i].count);
    if (i) {
      EXPECT_GE(all.rows[i].count, all.rows[i - 1].count);
    }
  }
  for (Family f : {Family::CubeFree, Family::Kappa}) {
    cfg.family = f;
    const auto sub = run_census(cfg);
    for (std::size_t i = 0; i < sub.rows.size(); ++i) {
      EXPECT_LE(sub.rows[i].count, all.rows[i].count) << to_string(f);
      EXPECT_EQ(sub.rows[i].tail_index, all.rows[i].tail_index);
      EXPECT_EQ(sub.rows[i].tail_szpiro, all.rows[i].tail_szpiro);
    }
  }
}

TEST(Census, ConductorOrderingAgreesWithDirectFilter) {
  const i64 X = 2000;
  const u64 cap = 50;
  CensusConfig cfg;
  cfg.grid = {X};
  cfg.order_by = OrderBy::Conductor;
  cfg.index_cap = cap;
  const auto rep = run_census(cfg);
  u64 direct = 0;
  for (const auto& c : enumerate_region(X * static_cast<i64>(cap), {true, true, false}))
    direct += conductor(c) <= static_cast<u64>(X);
  EXPECT_EQ(rep.rows[0].count, direct);
}

TEST(Census, ConfigValidation) {
  CensusConfig cfg;
  cfg.grid = {};
  EXPECT_THROW(run_census(cfg), std::invalid_argument);
  cfg.grid = {100, 10};
  EXPECT_THROW(run_census(cfg), std::invalid_argument);
  cfg.grid = {100};
  cfg.family = Family::Kappa;
  cfg.kappa = 3;
  EXPECT_THROW(run_census(cfg), std::invalid_argument);
  cfg.kappa = 2;
  cfg.workers = 0;
  EXPECT_THROW(run_census(cfg), std::invalid_argument);
  EXPECT_THROW(parse_order_by("size"), std::invalid_argument);
}

TEST(Census, AvgSzpiroBounds) {
  // (1, 5): conductor 95, minimal discriminant 16 * 25 * 19
  const CurveParams c = make_curve(1, 5);
  const long double s = avg_szpiro_with_conductor(c, conductor(c, ConductorPolicy::LargePrimesOnly));
  EXPECT_GT(s, 0);
  EXPECT_NEAR(log_min_disc_fast(c), std::log(7600.0L), 1e-12L);
}

}  // namespace
}  // namespace e2
