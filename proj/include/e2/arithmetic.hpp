// Copyright 2026 The e2stat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact integer arithmetic: a smallest-prime-factor sieve, 64-bit
// factorization (sieve, trial division, Miller-Rabin, Pollard-Brent rho),
// valuations and square-free / cube-free structure.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "e2/wide_int.hpp"

namespace e2 {

struct PrimePower {
  u64 prime;
  int exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// value = sign * prod p^e, primes strictly increasing.
struct Factorization {
  i64 value = 1;
  int sign = 1;
  std::vector<PrimePower> factors;

  [[nodiscard]] int exponent_of(u64 p) const {
    for (const auto& f : factors)
      if (f.prime == p) return f.exponent;
    return 0;
  }
};

// ---------------------------------------------------------------------------
// Primality

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128{a} * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace detail

/// Deterministic for all 64-bit inputs.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    u64 w = a % n;
    if (w == 0) continue;
    if (detail::miller_rabin_witness(n, w, d, s)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Sieve

/// Smallest-prime-factor table for odd n <= bound, stored as 16-bit entries
/// (a composite n <= 2^32 has spf(n) < 2^16; primes are stored as 0).
class SpfSieve {
 public:
  static constexpr u64 kMaxBound = 4'000'000'000ULL;

  explicit SpfSieve(u64 bound) : bound_(std::max<u64>(bound, 100)) {
    if (bound_ > kMaxBound) throw std::invalid_argument("sieve bound exceeds 4e9");
    spf_.assign(bound_ / 2 + 1, 0);
    for (u64 p = 3; p * p <= bound_; p += 2) {
      if (spf_[p / 2] != 0) continue;
      for (u64 m = p * p; m <= bound_; m += 2 * p)
        if (spf_[m / 2] == 0) spf_[m / 2] = static_cast<std::uint16_t>(p);
    }
  }

  [[nodiscard]] u64 bound() const { return bound_; }

  /// Requires 2 <= n <= bound().
  [[nodiscard]] u64 smallest_factor(u64 n) const {
    if ((n & 1) == 0) return 2;
    std::uint16_t s = spf_[n / 2];
    return s == 0 ? n : s;
  }

  [[nodiscard]] bool is_prime(u64 n) const {
    if (n < 2) return false;
    if (n > bound_) return e2::is_prime(n);
    return smallest_factor(n) == n;
  }

  /// All primes <= bound(), built on first use.
  [[nodiscard]] const std::vector<std::uint32_t>& primes() const {
    std::call_once(primes_once_, [this] {
      primes_.push_back(2);
      for (u64 n = 3; n <= bound_; n += 2)
        if (spf_[n / 2] == 0) primes_.push_back(static_cast<std::uint32_t>(n));
    });
    return primes_;
  }

 private:
  u64 bound_;
  std::vector<std::uint16_t> spf_;
  mutable std::once_flag primes_once_;
  mutable std::vector<std::uint32_t> primes_;
};

/// Bound from CENSUS_SIEVE_BOUND, default 1e8.
inline u64 configured_sieve_bound() {
  u64 bound = 100'000'000ULL;
  if (const char* env = std::getenv("CENSUS_SIEVE_BOUND"); env && *env) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v >= 100) bound = std::min<u64>(v, SpfSieve::kMaxBound);
  }
  return bound;
}

/// Process-wide sieve, immutable after construction.
inline const SpfSieve& default_sieve() {
  static const SpfSieve sieve(configured_sieve_bound());
  return sieve;
}

// ---------------------------------------------------------------------------
// Factorization

namespace detail {

inline u64 pollard_brent(u64 n) {
  if ((n & 1) == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void collect_factors(u64 n, const SpfSieve& sieve, std::vector<u64>& out) {
  if (n == 1) return;
  if (n <= sieve.bound()) {
    while (n > 1) {
      u64 p = sieve.smallest_factor(n);
      out.push_back(p);
      n /= p;
    }
    return;
  }
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  collect_factors(d, sieve, out);
  collect_factors(n / d, sieve, out);
}

}  // namespace detail

/// Deterministic prime factorization of a nonzero 64-bit integer.
inline Factorization factorize(i64 n, const SpfSieve& sieve = default_sieve()) {
  if (n == 0) throw std::invalid_argument("factorize: n must be nonzero");
  if (n == std::numeric_limits<i64>::min()) throw std::invalid_argument("factorize: |n| exceeds 2^63-1");
  Factorization f;
  f.value = n;
  f.sign = n < 0 ? -1 : 1;
  u64 m = static_cast<u64>(n < 0 ? -n : n);

  std::vector<u64> primes;
  if (int tz = __builtin_ctzll(m); tz > 0) {
    primes.insert(primes.end(), static_cast<std::size_t>(tz), 2);
    m >>= tz;
  }
  if (m > sieve.bound()) {
    // Cheap trial division before falling back to rho.
    for (u64 p = 3; p < 1000 && p * p <= m; p += 2) {
      while (m % p == 0) {
        primes.push_back(p);
        m /= p;
      }
    }
  }
  detail::collect_factors(m, sieve, primes);
  std::sort(primes.begin(), primes.end());
  for (u64 p : primes) {
    if (!f.factors.empty() && f.factors.back().prime == p)
      ++f.factors.back().exponent;
    else
      f.factors.push_back({p, 1});
  }
  return f;
}

inline int valuation(i128 n, u64 p) {
  if (n == 0) throw std::invalid_argument("valuation: n must be nonzero");
  if (!is_prime(p)) throw std::invalid_argument("valuation: p must be prime");
  int e = 0;
  n = abs128(n);
  while (n % static_cast<i128>(p) == 0) {
    n /= static_cast<i128>(p);
    ++e;
  }
  return e;
}

struct SquarefreeParts {
  u64 n0;  // primes to the first power
  u64 n1;  // primes to the second power
  friend bool operator==(const SquarefreeParts&, const SquarefreeParts&) = default;
};

/// n = n0 * n1^2 with n0, n1 square-free and coprime; n must be cube-free.
inline SquarefreeParts squarefree_decompose(const Factorization& f) {
  if (f.value <= 0) throw std::invalid_argument("squarefree_decompose: n must be positive");
  SquarefreeParts parts{1, 1};
  for (const auto& [p, e] : f.factors) {
    if (e >= 3) throw std::invalid_argument("squarefree_decompose: n is not cube-free");
    (e == 1 ? parts.n0 : parts.n1) *= p;
  }
  return parts;
}

inline SquarefreeParts squarefree_decompose(i64 n) {
  if (n <= 0) throw std::invalid_argument("squarefree_decompose: n must be positive");
  return squarefree_decompose(factorize(n));
}

inline bool is_cubefree(const Factorization& f) {
  return std::all_of(f.factors.begin(), f.factors.end(), [](const PrimePower& pp) { return pp.exponent < 3; });
}
inline bool is_squarefree(const Factorization& f) {
  return std::all_of(f.factors.begin(), f.factors.end(), [](const PrimePower& pp) { return pp.exponent < 2; });
}
inline u64 radical(const Factorization& f) {
  u64 r = 1;
  for (const auto& pp : f.factors) r *= pp.prime;
  return r;
}
inline u64 tau(const Factorization& f) {
  u64 t = 1;
  for (const auto& pp : f.factors) t *= static_cast<u64>(pp.exponent + 1);
  return t;
}

inline bool is_cubefree(i64 n) { return is_cubefree(factorize(n)); }
inline bool is_squarefree(i64 n) { return is_squarefree(factorize(n)); }
inline u64 radical(i64 n) { return radical(factorize(n)); }
inline u64 tau(i64 n) { return tau(factorize(n)); }

/// Multiplies prime-power lists (both sorted).
inline std::vector<PrimePower> merge_factors(const std::vector<PrimePower>& x, const std::vector<PrimePower>& y) {
  std::vector<PrimePower> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].prime < y[j].prime)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].prime < x[i].prime) {
      out.push_back(y[j++]);
    } else {
      out.push_back({x[i].prime, x[i].exponent + y[j].exponent});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace e2
