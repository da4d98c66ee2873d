#include <gtest/gtest.h>

#include <cmath>

#include "e2/local_density.hpp"

namespace e2 {
namespace {

using RC = ReductionClass;

TEST(Density, ClosedFormsAtFive) {
  EXPECT_EQ(density_kodaira(5, {RC::III}), Rational(4, 125));
  EXPECT_EQ(density_kodaira(5, {RC::I0Star}), Rational(4, 625));
  EXPECT_EQ(density_kodaira(5, {RC::IIIStar}), Rational(4, 15625));
  EXPECT_EQ(density_kodaira(5, {RC::Semistable, 1}), Rational(32, 125));
  EXPECT_EQ(density_good(5), Rational(16, 25));
}

TEST(Density, ExhaustiveCountMatchesClosedForm) {
  for (u64 p : {5ULL, 7ULL}) {
    for (const DensityClass cls : {DensityClass{RC::III}, DensityClass{RC::I0Star}, DensityClass{RC::Semistable, 1},
                                   DensityClass{RC::Semistable, 2}})
      EXPECT_EQ(density_empirical(p, cls.min_level(), cls, 2), density_kodaira(p, cls)) << p << " " << cls.name();
  }
  EXPECT_EQ(density_empirical(5, 4, {RC::IIIStar}), density_kodaira(5, {RC::IIIStar}));
}

TEST(Density, StableUnderRefinement) {
  const DensityClass iii{RC::III};
  EXPECT_EQ(density_empirical(5, 3, iii), density_empirical(5, 2, iii));
}

TEST(Density, Errors) {
  EXPECT_THROW(density_kodaira(3, {RC::III}), std::invalid_argument);
  EXPECT_THROW(density_kodaira(9, {RC::III}), std::invalid_argument);
  EXPECT_THROW(density_empirical(5, 1, {RC::III}), std::invalid_argument);
  EXPECT_THROW(density_kodaira(5, {RC::Semistable, 0}), std::invalid_argument);
}

TEST(Density, ParseClass) {
  EXPECT_EQ(parse_density_class("III").kind, RC::III);
  EXPECT_EQ(parse_density_class("I0*").kind, RC::I0Star);
  EXPECT_EQ(parse_density_class("IIIstar").kind, RC::IIIStar);
  const auto s = parse_density_class("semistable3");
  EXPECT_EQ(s.kind, RC::Semistable);
  EXPECT_EQ(s.k, 3);
  EXPECT_EQ(s.name(), "semistable3");
  EXPECT_THROW(parse_density_class("semistable0"), std::invalid_argument);
  EXPECT_THROW(parse_density_class("IV"), std::invalid_argument);
}

TEST(GoodReductionMass, AtTwoAndThree) {
  const auto m = good_reduction_density_23();
  EXPECT_EQ(m.at_2, Rational(9, 128));
  EXPECT_EQ(m.at_3, Rational(4, 9));
  EXPECT_EQ(m.combined, m.at_2 * m.at_3);
  EXPECT_EQ(m.combined, Rational(1, 32));
}

TEST(EulerFactor, SeriesMatchesLocalSums) {
  for (u64 p : {5ULL, 7ULL, 11ULL, 101ULL})
    for (Family f : {Family::CubeFree, Family::Kappa, Family::CondPoly}) {
      const long double x = std::pow(static_cast<long double>(p), -0.25L);
      EXPECT_NEAR(index_sum_series(f).eval(x), local_index_sum(p, f), 1e-15L) << p << " " << to_string(f);
    }
}

TEST(EulerFactor, CondPolyIsOneMinusPToMinusSix) {
  EXPECT_NEAR(euler_factor(5, Family::CondPoly), 1 - 1 / 15625.0L, 1e-18L);
}

TEST(EulerFactor, KappaDisplayedForm) {
  for (u64 p : {5ULL, 13ULL}) {
    const long double P = static_cast<long double>(p);
    const long double expected = 1 + 1 / (P * P) + std::pow(P, 1.5L) * (P - 1) / std::pow(P, 4.0L) +
                                 2 * (P - 1) * (P - 1) / (P * P * P * (std::pow(P, 0.25L) - 1));
    EXPECT_NEAR(euler_factor(p, Family::Kappa), expected, 1e-15L);
  }
}

TEST(EulerProduct, SeriesTailIndependentOfCutoff) {
  for (Family f : {Family::CubeFree, Family::Kappa, Family::CondPoly}) {
    const auto series = euler_factor_series(f);
    const long double a = euler_product_series(series, 1e-12L, 10'000).value;
    const long double b = euler_product_series(series, 1e-12L, 300'000).value;
    EXPECT_NEAR(a, b, 1e-10L * a) << to_string(f);
  }
}

TEST(EulerProduct, TruncationApproachesFromBelow) {
  // p^{-5/4} terms dominate; their sum beyond N is about 4 N^{-1/4} / log N.
  for (Family f : {Family::CubeFree, Family::Kappa}) {
    const long double full = euler_product(f, 1e-12L).value;
    const long double truncated = euler_product_truncated(euler_factor_series(f), 2'000'000);
    const long double gap = std::log(full / truncated);
    EXPECT_GT(gap, 0) << to_string(f);
    EXPECT_LT(gap, 0.03L) << to_string(f);
  }
}

TEST(EulerProduct, CondPolyProductExact) {
  // prod_{p >= 5} (1 - p^{-6}) = (1/zeta(6)) / ((1 - 2^-6)(1 - 3^-6))
  const long double zeta6 = std::pow(M_PIl, 6) / 945;
  const long double expected = 1 / zeta6 / ((1 - 1.0L / 64) * (1 - 1.0L / 729));
  EXPECT_NEAR(euler_product(Family::CondPoly, 1e-14L).value, expected, 1e-14L);
}

TEST(EulerProduct, PlainMethodRespectsBound) {
  EXPECT_NEAR(euler_product(Family::CondPoly, 1e-8L, ProductMethod::Plain).value,
              euler_product(Family::CondPoly, 1e-12L).value, 1e-7L);
  EXPECT_THROW(euler_product_plain(euler_factor_series(Family::CubeFree), 1e-12L, 1000), std::runtime_error);
}

TEST(EulerProduct, PrimeZeta) {
  // P(2) = 0.452247420041065...
  EXPECT_NEAR(detail::prime_zeta(2), 0.452247420041065498506543364832L, 1e-15L);
}

}  // namespace
}  // namespace e2
