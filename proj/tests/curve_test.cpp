#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "e2/curve.hpp"

namespace e2 {
namespace {

using K = KodairaSymbol::Kind;

TEST(Invariants, DiscriminantAndConductorPolynomial) {
  EXPECT_EQ(discriminant(make_curve(0, 1)), -64);
  EXPECT_EQ(discriminant(make_curve(6, 1)), 512);
  EXPECT_EQ(discriminant(make_curve(5, 5)), 2000);
  EXPECT_EQ(conductor_polynomial(make_curve(0, 1)), -4);
  EXPECT_EQ(conductor_polynomial(make_curve(6, 1)), 32);
  EXPECT_EQ(conductor_polynomial(make_curve(5, 5)), 25);
}

TEST(Invariants, CInvariants) {
  const auto [c4, c6] = c_invariants(make_curve(0, 1));
  EXPECT_EQ(c4, -48);
  EXPECT_EQ(c6, 0);
  const auto [d4, d6] = c_invariants(make_curve(5, 5));
  EXPECT_EQ(d4, 160);
  EXPECT_EQ(d6, -800);
  EXPECT_EQ(d4 * d4 * d4 - d6 * d6, 1728 * 2000);
}

TEST(Invariants, CInvariantIdentityOnRandomCurves) {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<i64> d(-100'000, 100'000);
  for (int i = 0; i < 10'000; ++i) {
    const i64 a = d(gen), b = d(gen);
    if (b == 0 || i128{a} * a == 4 * i128{b}) continue;
    const CurveParams c{a, b};
    const auto [c4, c6] = c_invariants(c);
    ASSERT_EQ(c4 * c4 * c4 - c6 * c6, 1728 * discriminant(c));
  }
}

TEST(Invariants, RejectsSingular) {
  EXPECT_THROW(make_curve(1, 0), InvalidCurve);
  EXPECT_THROW(make_curve(2, 1), InvalidCurve);
  EXPECT_THROW(c_invariants({1, 0}), InvalidCurve);
}

TEST(Isogeny, ImageAndConductorPolynomialRatio) {
  EXPECT_EQ(isogeny(make_curve(1, 5)), (CurveParams{-2, -19}));
  EXPECT_EQ(isogeny(make_curve(0, 7)), (CurveParams{0, -28}));
  EXPECT_EQ(conductor_polynomial({-2, -19}), -1520);
  EXPECT_EQ(conductor_polynomial({-2, -19}), 16 * conductor_polynomial({1, 5}));
}

TEST(KodairaLargeP, Examples) {
  EXPECT_EQ(kodaira_symbol_large_p(make_curve(1, 1), 5).symbol.kind, K::Good);
  const auto iii = kodaira_symbol_large_p(make_curve(5, 5), 5);
  EXPECT_EQ(iii.symbol.kind, K::III);
  EXPECT_EQ(iii.v_c4, 1);
  EXPECT_EQ(iii.v_disc, 3);
  const auto i2 = kodaira_symbol_large_p(make_curve(1, 5), 5);
  EXPECT_EQ(i2.symbol, KodairaSymbol::i(2));
  EXPECT_EQ(i2.conductor_exponent, 1);
  EXPECT_EQ(kodaira_symbol_large_p(make_curve(5, 25), 5).symbol.kind, K::I0Star);
  EXPECT_EQ(kodaira_symbol_large_p(make_curve(25, 125), 5).symbol.kind, K::IIIStar);
  // v(a) = 1, v(b) = 3 gives v(c4) = 2, v(disc) = 8
  EXPECT_EQ(kodaira_symbol_large_p(make_curve(5, 125), 5).symbol, KodairaSymbol::i_star(2));
}

TEST(KodairaLargeP, Errors) {
  EXPECT_THROW(kodaira_symbol_large_p(make_curve(1, 1), 3), std::invalid_argument);
  EXPECT_THROW(kodaira_symbol_large_p(make_curve(1, 1), 9), std::invalid_argument);
  EXPECT_THROW(kodaira_symbol_large_p(make_curve(25, 625), 5), OracleDisagreement);
}

TEST(Tate, Examples) {
  const auto iii = tate_algorithm(make_curve(5, 5), 5);
  EXPECT_EQ(iii.symbol.kind, K::III);
  EXPECT_EQ(iii.conductor_exponent, 2);
  const auto i2 = tate_algorithm(make_curve(1, 5), 5);
  EXPECT_EQ(i2.symbol, KodairaSymbol::i(2));
  EXPECT_EQ(i2.conductor_exponent, 1);
}

TEST(Tate, KnownConductors) {
  EXPECT_EQ(conductor_tate(make_curve(0, -1)), 32u);  // y^2 = x^3 - x
  EXPECT_EQ(conductor_tate(make_curve(0, 4)), 32u);   // its 2-isogenous curve
  EXPECT_EQ(conductor_tate(make_curve(0, 1)), 64u);   // y^2 = x^3 + x
}

TEST(Tate, NonMinimalModelReducesToMinimal) {
  // (25, 625 * 3) is (1, 3) scaled by u = 5.
  const auto lr = tate_algorithm(make_curve(25, 1875), 5);
  const auto base = tate_algorithm(make_curve(1, 3), 5);
  EXPECT_EQ(lr.symbol, base.symbol);
  EXPECT_EQ(lr.v_disc - lr.v_disc_min, 12);
  EXPECT_EQ(conductor_tate(make_curve(25, 1875)), conductor_tate(make_curve(1, 3)));
}

TEST(Tate, AgreesWithTableOnBox) {
  for (i64 a = -40; a <= 40; ++a)
    for (i64 b = -40; b <= 40; ++b) {
      if (b == 0 || a * a == 4 * b) continue;
      for (u64 p : {5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL}) {
        const auto t = tate_algorithm({a, b}, p);
        const auto k = kodaira_symbol_large_p({a, b}, p);
        ASSERT_EQ(t.symbol, k.symbol) << a << "," << b << " p=" << p;
        ASSERT_EQ(t.conductor_exponent, k.conductor_exponent);
      }
    }
}

TEST(Tate, ConductorIsIsogenyInvariant) {
  for (i64 a = -30; a <= 30; ++a)
    for (i64 b = -30; b <= 30; ++b) {
      if (b == 0 || a * a == 4 * b) continue;
      ASSERT_EQ(conductor_tate({a, b}), conductor_tate(isogeny({a, b}))) << a << "," << b;
    }
}

TEST(GoodReduction, Predicates) {
  EXPECT_TRUE(good_reduction_at_2(make_curve(6, 1)));
  EXPECT_TRUE(good_reduction_at_2(make_curve(1, 16)));
  EXPECT_FALSE(good_reduction_at_2(make_curve(2, 3)));
  EXPECT_TRUE(good_reduction_at_3(make_curve(3, 1)));
  EXPECT_TRUE(good_reduction_at_3(make_curve(1, 2)));
  EXPECT_FALSE(good_reduction_at_3(make_curve(1, 1)));
}

TEST(GoodReduction, PredicateVersusTateAtTwo) {
  // Recorded behaviour: the congruence test at 2 accepts (6, 1), for which
  // Tate's algorithm finds additive reduction and a conductor of 32.
  const auto lr = tate_algorithm(make_curve(6, 1), 2);
  EXPECT_TRUE(good_reduction_at_2(make_curve(6, 1)));
  EXPECT_TRUE(lr.symbol.additive());
  EXPECT_EQ(conductor_tate(make_curve(6, 1)), 32u);
  // Every curve Tate calls good at 2 passes the congruence test.
  int tate_good = 0;
  for (i64 a = -64; a <= 64; ++a)
    for (i64 b = -64; b <= 64; ++b) {
      if (b == 0 || a * a == 4 * b) continue;
      if (tate_algorithm({a, b}, 2).conductor_exponent != 0) continue;
      ++tate_good;
      ASSERT_TRUE(good_reduction_at_2({a, b})) << a << "," << b;
    }
  EXPECT_GT(tate_good, 0);
}

TEST(GoodReduction, TateAtThreeMatchesPredicateOnMinimalModels) {
  for (i64 a = -60; a <= 60; ++a)
    for (i64 b = -60; b <= 60; ++b) {
      if (b == 0 || a * a == 4 * b) continue;
      if (a % 9 == 0 && b % 81 == 0) continue;
      ASSERT_EQ(tate_algorithm({a, b}, 3).conductor_exponent == 0, good_reduction_at_3({a, b})) << a << "," << b;
    }
}

TEST(Conductor, FamilyPolicy) {
  EXPECT_THROW(conductor(make_curve(5, 5)), NotInFamily);
  EXPECT_EQ(conductor(make_curve(5, 5), ConductorPolicy::LargePrimesOnly), 25u);
  EXPECT_EQ(conductor(make_curve(5, 5), ConductorPolicy::TateFallback), conductor_tate(make_curve(5, 5)));
}

TEST(Conductor, IndexTimesConductorIsConductorPolynomial) {
  int seen = 0;
  for (i64 a = -300; a <= 300; ++a)
    for (i64 b = -300; b <= 300; ++b) {
      if (b == 0 || a * a == 4 * b) continue;
      const CurveParams c{a, b};
      if (!in_family(c)) continue;
      ++seen;
      const u64 cond = conductor(c);
      ASSERT_EQ(i128{index(c)} * cond, abs128(conductor_polynomial(c)));
      // p >= 5 part agrees with Tate
      u64 tate_part = conductor_tate(c);
      while (tate_part % 2 == 0) tate_part /= 2;
      while (tate_part % 3 == 0) tate_part /= 3;
      ASSERT_EQ(cond, tate_part) << a << "," << b;
    }
  EXPECT_GT(seen, 1000);
}

TEST(Conductor, InFamilyConductorOneComesFromBadReductionAtTwoOrThree) {
  // No elliptic curve over Q has conductor 1, so a family curve whose
  // conductor away from 6 is 1 must be bad at 2 or 3 per Tate.
  int flagged = 0;
  for (i64 a = -200; a <= 200; ++a)
    for (i64 b = -200; b <= 200; ++b) {
      if (b == 0 || a * a == 4 * b) continue;
      const CurveParams c{a, b};
      if (!in_family(c) || conductor(c) != 1) continue;
      ++flagged;
      ASSERT_GT(conductor_tate(c), 1u);
    }
  EXPECT_GT(flagged, 0);
}

TEST(Index, LocalContributions) {
  // III at 5: (5, 5 * 2) with a^2 - 4b = -15
  EXPECT_EQ(index_away_from_6(make_curve(5, 10)), 1u);
  // I0* at 5 contributes 5^2
  const CurveParams c = make_curve(5, 25 * 2);
  EXPECT_EQ(tate_algorithm(c, 5).symbol.kind, K::I0Star);
  EXPECT_EQ(index_away_from_6(c) % 25, 0u);
  // square-free C on multiplicative primes
  EXPECT_EQ(index_away_from_6(make_curve(1, 5)), 1u);   // I2 at 5 but 5 || C
  EXPECT_EQ(index_away_from_6(make_curve(1, 25)), 5u);  // I4 at 5: 5^2 / 5
  EXPECT_EQ(index_away_from_6(make_curve(1, 7)), 1u);  // C = 7 * (-27)
}

TEST(Szpiro, Examples) {
  const CurveParams c = make_curve(5, 5);
  EXPECT_NEAR(static_cast<double>(szpiro_ratio(c, ConductorPolicy::LargePrimesOnly)),
              std::log(2000.0) / std::log(25.0), 1e-12);
  EXPECT_NEAR(std::log(2000.0) / std::log(25.0), 2.3614, 1e-4);
  EXPECT_THROW(szpiro_ratio(make_curve(6, 1)), std::domain_error);  // family conductor 1
}

TEST(Szpiro, AverageIsSymmetricUnderDoubleIsogeny) {
  // phi(phi(E)) = E_{4a, 16b}, a twist-and-scale of E.
  for (i64 a = -20; a <= 20; ++a)
    for (i64 b = -20; b <= 20; ++b) {
      if (b == 0 || a * a == 4 * b) continue;
      const CurveParams c{a, b};
      const CurveParams cc = isogeny(isogeny(c));
      ASSERT_EQ(cc, (CurveParams{4 * a, 16 * b}));
      const long double lc = std::log(static_cast<long double>(conductor_tate(c)));
      if (lc == 0) continue;
      const long double lhs = log_minimal_discriminant(c) + log_minimal_discriminant(isogeny(c));
      const long double rhs = log_minimal_discriminant(isogeny(c)) + log_minimal_discriminant(cc);
      ASSERT_NEAR(static_cast<double>(lhs / lc), static_cast<double>(rhs / lc), 1e-9) << a << "," << b;
    }
}

TEST(Invariants, ComputeInvariantsBundle) {
  const CurveParams c = make_curve(6, 5);
  ASSERT_TRUE(in_family(c));
  const auto inv = compute_invariants(c);
  EXPECT_EQ(inv.disc, discriminant(c));
  EXPECT_EQ(inv.cond_poly, 80);
  EXPECT_EQ(inv.conductor, 5u);
  EXPECT_EQ(inv.index, 16u);
}

}  // namespace
}  // namespace e2
