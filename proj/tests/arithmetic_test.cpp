#include <gtest/gtest.h>

#include <random>

#include "e2/arithmetic.hpp"

namespace e2 {
namespace {

std::vector<PrimePower> trial_division(u64 n) {
  std::vector<PrimePower> out;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

TEST(Factorize, MatchesTrialDivisionOnSmallRange) {
  const SpfSieve sieve(100'000);
  for (i64 n = -20'000; n <= 20'000; ++n) {
    if (n == 0) continue;
    const auto f = factorize(n, sieve);
    ASSERT_EQ(f.factors, trial_division(static_cast<u64>(std::abs(n)))) << n;
    ASSERT_EQ(f.sign, n < 0 ? -1 : 1);
  }
}

TEST(Factorize, BeyondSieveUsesRho) {
  const SpfSieve sieve(1000);
  std::mt19937_64 gen(7);
  for (int i = 0; i < 300; ++i) {
    const i64 n = static_cast<i64>(gen() % 1'000'000'000'000ULL) + 2;
    ASSERT_EQ(factorize(n, sieve).factors, trial_division(static_cast<u64>(n))) << n;
  }
  // semiprime with two 31-bit factors
  const i64 p = 2147483647, q = 2147483629;
  const auto f = factorize(p * q, sieve);
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].prime, static_cast<u64>(q));
  EXPECT_EQ(f.factors[1].prime, static_cast<u64>(p));
}

TEST(Factorize, RejectsZero) { EXPECT_THROW(factorize(0), std::invalid_argument); }

TEST(IsPrime, AgreesWithTrialDivision) {
  for (u64 n = 0; n < 50'000; ++n) {
    const bool expected = n >= 2 && trial_division(n).size() == 1 && trial_division(n)[0].exponent == 1;
    ASSERT_EQ(is_prime(n), expected) << n;
  }
  EXPECT_TRUE(is_prime(18446744073709551557ULL));  // largest 64-bit prime
  EXPECT_FALSE(is_prime(3215031751ULL));           // strong pseudoprime to 2, 3, 5, 7
}

TEST(Sieve, SmallestFactor) {
  const SpfSieve sieve(10'000);
  for (u64 n = 2; n <= 10'000; ++n) ASSERT_EQ(sieve.smallest_factor(n), trial_division(n)[0].prime);
  EXPECT_EQ(sieve.primes().size(), 1229u);
}

TEST(Valuation, Basics) {
  EXPECT_EQ(valuation(96, 2), 5);
  EXPECT_EQ(valuation(-96, 3), 1);
  EXPECT_EQ(valuation(i128{625} << 70, 5), 4);
  EXPECT_THROW(valuation(0, 5), std::invalid_argument);
  EXPECT_THROW(valuation(10, 4), std::invalid_argument);
}

TEST(Squarefree, Decompose) {
  EXPECT_EQ(squarefree_decompose(12), (SquarefreeParts{3, 2}));
  EXPECT_EQ(squarefree_decompose(225), (SquarefreeParts{1, 15}));
  EXPECT_EQ(squarefree_decompose(30), (SquarefreeParts{30, 1}));
  EXPECT_THROW(squarefree_decompose(8), std::invalid_argument);
  EXPECT_THROW(squarefree_decompose(-3), std::invalid_argument);
}

TEST(Squarefree, Predicates) {
  EXPECT_TRUE(is_squarefree(30));
  EXPECT_FALSE(is_squarefree(-12));
  EXPECT_TRUE(is_cubefree(-36));
  EXPECT_FALSE(is_cubefree(54));
  EXPECT_EQ(radical(-72), 6u);
  EXPECT_EQ(tau(72), 12u);
  EXPECT_EQ(tau(1), 1u);
}

TEST(WideInt, Helpers) {
  EXPECT_EQ(isqrt(u128{1} << 100), u128{1} << 50);
  EXPECT_EQ(isqrt((u128{1} << 100) - 1), (u128{1} << 50) - 1);
  EXPECT_TRUE(is_square(u128{144}));
  EXPECT_FALSE(is_square(u128{145}));
  EXPECT_EQ(to_string(-(i128{1} << 100)), "-1267650600228229401496703205376");
  EXPECT_EQ(mod(-7, 3), 2);
  EXPECT_EQ(gcd128(-12, 18), 6);
  EXPECT_THROW(checked_mul(i128{1} << 100, i128{1} << 30), OverflowError);
  EXPECT_THROW(to_i64(i128{1} << 63), OverflowError);
}

TEST(MergeFactors, UnionOfPrimes) {
  const auto m = merge_factors(factorize(12).factors, factorize(45).factors);
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0].prime, 2u);
  EXPECT_EQ(m[1].prime, 3u);
  EXPECT_EQ(m[2].prime, 5u);
}

}  // namespace
}  // namespace e2
