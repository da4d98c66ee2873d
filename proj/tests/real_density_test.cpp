#include <gtest/gtest.h>

#include <cmath>

#include "e2/real_density.hpp"

namespace e2 {
namespace {

TEST(Pieces, ClosedFormMatchesQuadrature) {
  EXPECT_NEAR(piece_unit_closed_form(), piece_unit_quadrature(1e-14L).value, 1e-12L);
  EXPECT_NEAR(piece_tail_closed_form(), piece_tail_quadrature(1e-14L).value, 1e-11L);
}

TEST(Pieces, UnitPieceAgainstTgamma) {
  const double g = std::tgamma(0.25);
  const double expected = (std::sqrt(2.0) + g * g / (4 * std::sqrt(M_PI))) / 3;
  EXPECT_NEAR(static_cast<double>(piece_unit_closed_form()), expected, 1e-13);
}

TEST(Area, FrozenValueAtOne) {
  EXPECT_NEAR(area_closed_form(1), 11.9363526175826L, 1e-12L);
}

TEST(Area, ScalesAsThreeQuarterPower) {
  for (long double z : {2.0L, 17.0L, 1e6L})
    EXPECT_NEAR(area_closed_form(z) / area_closed_form(1), std::pow(z, 0.75L), 1e-12L * std::pow(z, 0.75L));
  EXPECT_THROW(area_closed_form(0), std::invalid_argument);
}

TEST(Area, QuadratureMatchesClosedForm) {
  for (long double z : {1.0L, 50.0L, 1e4L}) {
    const long double exact = area_closed_form(z);
    EXPECT_NEAR(area_quadrature(z, 1e-10L), exact, 1e-8L * exact) << z;
  }
}

TEST(Area, TruncatedRegionIsSmaller) {
  const long double z = 1e4L;
  const long double full = area_quadrature(z, 1e-10L);
  const long double cut = area_quadrature(z, 1e-10L, true);
  EXPECT_LT(cut, full);
  EXPECT_GT(cut, 0.5L * full);
}

TEST(MonteCarlo, AgreesWithTruncatedQuadrature) {
  const long double z = 1e4L;
  const auto mc = area_monte_carlo(z, 2'000'000, 12345, 2);
  const long double q = area_quadrature(z, 1e-10L, true);
  EXPECT_LT(std::fabs(mc.estimate - q), 4 * mc.stderr_) << mc.estimate << " vs " << q;
}

TEST(MonteCarlo, DeterministicAcrossWorkerCounts) {
  const auto one = area_monte_carlo(500, 100'000, 9, 1);
  const auto four = area_monte_carlo(500, 100'000, 9, 4);
  EXPECT_EQ(one.estimate, four.estimate);
  EXPECT_THROW(area_monte_carlo(500, 10, 9), std::invalid_argument);
}

TEST(Region, Membership) {
  EXPECT_TRUE(region_contains(0, 1, {1, false}));
  EXPECT_FALSE(region_contains(0, 2, {1, false}));
  EXPECT_FALSE(region_contains(0, 1, {100, true}));
  EXPECT_TRUE(region_contains(0, 4, {100, true}));
}

TEST(Lattice, CountMatchesBruteForce) {
  const auto odd_b = CongruenceClass::from_predicate(2, [](i64, i64 b) { return b % 2 == 1; });
  EXPECT_DOUBLE_EQ(static_cast<double>(odd_b.density()), 0.5);
  for (i64 X : {100, 2000}) {
    u64 brute = 0;
    for (i64 a = -200; a <= 200; ++a)
      for (i64 b = -X; b <= X; ++b) {
        const i64 c = a * a - 4 * b;
        if (std::abs(b) < 4 || std::abs(c) < 4 || std::abs(b * c) > X) continue;
        brute += odd_b.contains(a, b);
      }
    EXPECT_EQ(lattice_count_with_error(odd_b, X).count, brute) << X;
  }
}

TEST(Lattice, CountTracksPrediction) {
  // the relative error shrinks roughly like X^{-1/4}
  const auto all = CongruenceClass::everything();
  const auto small = lattice_count_with_error(all, 10'000);
  const auto large = lattice_count_with_error(all, 1'000'000);
  EXPECT_LT(large.error / large.predicted, 0.1L);
  EXPECT_LT(large.error / large.predicted, 0.5L * small.error / small.predicted);
}

}  // namespace
}  // namespace e2
