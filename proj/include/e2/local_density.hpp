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

// p-adic densities of reduction classes at p >= 5, the 2,3-adic mass of the
// good-reduction congruences, and the Euler products attached to the three
// counted families.
//
// Euler factors are handled as series in x = p^{-1/4}. Infinite products use
// an exact head over 5 <= p <= P and a tail sum_{p > P} log f(p) expanded as
// sum_j c_j sum_{p > P} p^{-j/4}, where the inner prime sums come from the
// prime zeta function P(s) = sum_k mu(k)/k log zeta(ks).

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/special_functions/zeta.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "e2/arithmetic.hpp"
#include "e2/curve.hpp"
#include "e2/real_density.hpp"
#include "e2/wide_int.hpp"

namespace e2 {

using Rational = boost::multiprecision::cpp_rational;

enum class ReductionClass { III, I0Star, IIIStar, Semistable };

/// A class at one prime. For Semistable, k = v_p(b (a^2 - 4b)) >= 1 with
/// p not dividing a; the local index is then p^{k-1}.
struct DensityClass {
  ReductionClass kind;
  int k = 0;

  [[nodiscard]] std::string name() const {
    switch (kind) {
      case ReductionClass::III: return "III";
      case ReductionClass::I0Star: return "I0*";
      case ReductionClass::IIIStar: return "III*";
      case ReductionClass::Semistable: return "semistable" + std::to_string(k);
    }
    return "?";
  }

  /// Smallest m such that the class is a union of residue classes mod p^m.
  [[nodiscard]] int min_level() const {
    switch (kind) {
      case ReductionClass::III: return 2;
      case ReductionClass::I0Star: return 3;
      case ReductionClass::IIIStar: return 4;
      case ReductionClass::Semistable: return k + 1;
    }
    return 0;
  }
};

inline DensityClass parse_density_class(const std::string& s) {
  if (s == "III") return {ReductionClass::III};
  if (s == "I0*" || s == "I0star" || s == "I0Star") return {ReductionClass::I0Star};
  if (s == "III*" || s == "IIIstar" || s == "IIIStar") return {ReductionClass::IIIStar};
  if (s.rfind("semistable", 0) == 0 && s.size() > 10) {
    const int k = std::stoi(s.substr(10));
    if (k >= 1) return {ReductionClass::Semistable, k};
  }
  throw std::invalid_argument("unknown density class: " + s);
}

namespace detail {

inline Rational rpow(u64 p, int e) {
  boost::multiprecision::cpp_int n = 1;
  for (int i = 0; i < e; ++i) n *= p;
  return Rational(n);
}

inline void require_large_prime(u64 p) {
  if (p < 5 || !is_prime(p)) throw std::invalid_argument("p must be a prime >= 5");
}

}  // namespace detail

/// Closed-form density of a class among (a, b) in Z_p^2.
inline Rational density_kodaira(u64 p, const DensityClass& cls) {
  detail::require_large_prime(p);
  const Rational pm1(p - 1);
  switch (cls.kind) {
    case ReductionClass::III: return pm1 / detail::rpow(p, 3);
    case ReductionClass::I0Star: return pm1 / detail::rpow(p, 4);
    case ReductionClass::IIIStar: return pm1 / detail::rpow(p, 6);
    case ReductionClass::Semistable:
      if (cls.k < 1) throw std::invalid_argument("semistable class needs k >= 1");
      return 2 * pm1 * pm1 / detail::rpow(p, cls.k + 2);
  }
  throw std::invalid_argument("unknown class");
}

inline Rational density_good(u64 p) {
  detail::require_large_prime(p);
  const Rational pm1(p - 1);
  return pm1 * pm1 / detail::rpow(p, 2);
}

/// Exhaustive count over (Z/p^m)^2 of pairs in the class, divided by p^{2m}.
/// Rows (fixed a) are split across workers.
inline Rational density_empirical(u64 p, int m, const DensityClass& cls, unsigned workers = 1) {
  detail::require_large_prime(p);
  if (cls.kind == ReductionClass::Semistable && cls.k < 1) throw std::invalid_argument("semistable class needs k >= 1");
  if (m < cls.min_level())
    throw std::invalid_argument("density_empirical: level " + std::to_string(m) + " too small for class " +
                                cls.name());
  u64 q = 1;
  for (int i = 0; i < m; ++i) {
    if (q > (1ULL << 20) / p) throw std::invalid_argument("density_empirical: p^m too large");
    q *= p;
  }
  // vt[x] = v_p(x) for x in [0, q), capped at m.
  std::vector<std::uint8_t> vt(q, static_cast<std::uint8_t>(m));
  for (u64 x = 1; x < q; ++x) {
    u64 y = x;
    std::uint8_t e = 0;
    while (y % p == 0) {
      y /= p;
      ++e;
    }
    vt[x] = e;
  }
  auto row = [&](u64 a) -> u64 {
    const int va = vt[a];
    u64 hits = 0;
    switch (cls.kind) {
      case ReductionClass::III:
        if (va >= 1)
          for (u64 b = 0; b < q; ++b) hits += vt[b] == 1;
        break;
      case ReductionClass::I0Star:
        if (va >= 1)
          for (u64 b = 0; b < q; ++b) hits += vt[b] == 2;
        break;
      case ReductionClass::IIIStar:
        if (va >= 2)
          for (u64 b = 0; b < q; ++b) hits += vt[b] == 3;
        break;
      case ReductionClass::Semistable: {
        if (va != 0) break;
        // c = a^2 - 4b, stepped down by 4 per b.
        u64 c = static_cast<u64>(u128{a} * a % q);
        const u64 four = 4 % q;
        for (u64 b = 0; b < q; ++b) {
          hits += (vt[b] + vt[c]) == cls.k;
          c = c >= four ? c - four : c + q - four;
        }
        break;
      }
    }
    return hits;
  };
  workers = std::max(1U, workers);
  std::vector<u64> partial(workers, 0);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (u64 a = w; a < q; a += workers) partial[w] += row(a);
    });
  for (auto& t : pool) t.join();
  u64 hits = 0;
  for (u64 h : partial) hits += h;
  return Rational(hits) / (Rational(q) * Rational(q));
}

struct GoodReductionMass {
  Rational at_2;      // over (Z/32)^2
  Rational at_3;      // over (Z/3)^2
  Rational combined;  // over (Z/96)^2
};

inline GoodReductionMass good_reduction_density_23() {
  u64 n2 = 0, n3 = 0, n96 = 0;
  for (i64 a = 0; a < 32; ++a)
    for (i64 b = 0; b < 32; ++b) n2 += good_reduction_at_2({a, b});
  for (i64 a = 0; a < 3; ++a)
    for (i64 b = 0; b < 3; ++b) n3 += good_reduction_at_3({a, b});
  for (i64 a = 0; a < 96; ++a)
    for (i64 b = 0; b < 96; ++b) n96 += in_family({a, b});
  return {Rational(n2) / 1024, Rational(n3) / 9, Rational(n96) / 9216};
}

// ---------------------------------------------------------------------------
// Euler factors

enum class Family { CubeFree, Kappa, CondPoly };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::CubeFree: return "cubefree";
    case Family::Kappa: return "kappa";
    case Family::CondPoly: return "condpoly";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  if (s == "cubefree" || s == "CubeFree") return Family::CubeFree;
  if (s == "kappa" || s == "Kappa") return Family::Kappa;
  if (s == "condpoly" || s == "CondPoly") return Family::CondPoly;
  throw std::invalid_argument("unknown family: " + s);
}

/// f(x) = poly(x) + geo(x) / (1 - x), x = p^{-1/4}; coefficient lists are
/// indexed by power of x.
struct FactorSeries {
  std::vector<long double> poly;
  std::vector<long double> geo;

  [[nodiscard]] long double eval(long double x) const {
    long double v = 0, g = 0;
    for (std::size_t j = poly.size(); j-- > 0;) v = v * x + poly[j];
    for (std::size_t j = geo.size(); j-- > 0;) g = g * x + geo[j];
    return v + g / (1 - x);
  }

  /// First J + 1 power-series coefficients.
  [[nodiscard]] std::vector<long double> coefficients(std::size_t J) const {
    std::vector<long double> a(J + 1, 0);
    for (std::size_t j = 0; j < poly.size() && j <= J; ++j) a[j] += poly[j];
    for (std::size_t i = 0; i < geo.size(); ++i)
      for (std::size_t j = i; j <= J; ++j) a[j] += geo[i];
    return a;
  }

  /// Smallest j >= 1 with a nonzero coefficient.
  [[nodiscard]] std::size_t leading_order() const {
    const auto a = coefficients(64);
    for (std::size_t j = 1; j < a.size(); ++j)
      if (a[j] != 0) return j;
    return 64;
  }
};

namespace detail {

inline std::vector<long double> sparse(std::initializer_list<std::pair<int, long double>> terms) {
  std::vector<long double> v;
  for (const auto& [j, c] : terms) {
    if (v.size() <= static_cast<std::size_t>(j)) v.resize(static_cast<std::size_t>(j) + 1, 0);
    v[static_cast<std::size_t>(j)] += c;
  }
  return v;
}

}  // namespace detail

/// Euler factors of the asymptotic constants, as displayed:
///   CubeFree  1 - (2p-1)/p^3 + 2(p-1)^2/p^{13/4}
///   Kappa     1 + 1/p^2 + p^{3/2}(p-1)/p^4 + 2(p-1)^2/(p^3(p^{1/4}-1))
///   CondPoly  1 - 1/p^6
inline FactorSeries euler_factor_series(Family f) {
  using detail::sparse;
  switch (f) {
    case Family::CubeFree: return {sparse({{0, 1}, {5, 2}, {8, -2}, {9, -4}, {12, 1}, {13, 2}}), {}};
    case Family::Kappa: return {sparse({{0, 1}, {6, 1}, {8, 1}, {10, -1}}), sparse({{5, 2}, {9, -4}, {13, 2}})};
    case Family::CondPoly: return {sparse({{0, 1}, {24, -1}}), {}};
  }
  throw std::invalid_argument("unknown family");
}

/// Local index sums sum_k p^{3k/4} nu(p^k) assembled from the class
/// densities (good, semistable k >= 1 with index p^{k-1}, III with index 1,
/// I0* with index p^2, III* with index p^4).
inline FactorSeries index_sum_series(Family f) {
  using detail::sparse;
  switch (f) {
    // good + semistable(1) + III + p^{3/4} semistable(2)
    case Family::CubeFree: return euler_factor_series(Family::CubeFree);
    // good + III + p^3 III* + p^{3/2} I0* + sum_k p^{3(k-1)/4} semistable(k)
    case Family::Kappa: return {sparse({{0, 1}, {6, 1}, {8, -1}, {10, -1}}), sparse({{5, 2}, {9, -4}, {13, 2}})};
    // every minimal class with weight 1
    case Family::CondPoly: return euler_factor_series(Family::CondPoly);
  }
  throw std::invalid_argument("unknown family");
}

inline long double euler_factor(u64 p, Family f) {
  detail::require_large_prime(p);
  return euler_factor_series(f).eval(std::pow(static_cast<long double>(p), -0.25L));
}

/// The same local sums computed straight from density_kodaira; the geometric
/// series over semistable k is summed in closed form for Kappa.
inline long double local_index_sum(u64 p, Family f) {
  detail::require_large_prime(p);
  const long double P = static_cast<long double>(p);
  const long double q = std::pow(P, 0.25L);
  auto d = [p](ReductionClass k, int n = 0) {
    return static_cast<long double>(density_kodaira(p, {k, n}));
  };
  const long double good = static_cast<long double>(density_good(p));
  switch (f) {
    case Family::CubeFree:
      return good + d(ReductionClass::Semistable, 1) + d(ReductionClass::III) +
             std::pow(P, 0.75L) * d(ReductionClass::Semistable, 2);
    case Family::Kappa: {
      const long double ratio = 1 / q;  // p^{3/4} p^{-1}
      if (ratio >= 1) throw std::domain_error("divergent semistable series");
      const long double semistable = d(ReductionClass::Semistable, 1) / (1 - ratio);
      return good + semistable + d(ReductionClass::III) + std::pow(P, 1.5L) * d(ReductionClass::I0Star) +
             P * P * P * d(ReductionClass::IIIStar);
    }
    case Family::CondPoly: return 1 - 1 / std::pow(P, 6.0L);
  }
  throw std::invalid_argument("unknown family");
}

// ---------------------------------------------------------------------------
// Products over primes

namespace detail {

inline std::vector<u64> primes_in(u64 lo, u64 hi) {
  std::vector<bool> composite(hi + 1, false);
  std::vector<u64> out;
  for (u64 i = 2; i <= hi; ++i) {
    if (composite[i]) continue;
    if (i >= lo) out.push_back(i);
    for (u64 j = i * i; j <= hi; j += i) composite[j] = true;
  }
  return out;
}

inline int moebius(u64 n) {
  int m = 1;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    m = -m;
  }
  if (n > 1) m = -m;
  return m;
}

/// sum_{p prime} p^{-s}, s > 1.
inline long double prime_zeta(long double s) {
  long double total = 0;
  for (u64 k = 1; k < 200; ++k) {
    const long double ks = k * s;
    if (std::ldexp(1.0L, -static_cast<int>(std::floor(ks))) < 1e-22L) break;
    const int mu = moebius(k);
    if (mu == 0) continue;
    total += mu * std::log(boost::math::zeta(ks)) / k;
  }
  return total;
}

/// Power-series coefficients of log f from those of f (f(0) = 1).
inline std::vector<long double> log_series(const std::vector<long double>& a) {
  std::vector<long double> c(a.size(), 0);
  for (std::size_t j = 1; j < a.size(); ++j) {
    long double s = 0;
    for (std::size_t i = 1; i < j; ++i) s += static_cast<long double>(i) * c[i] * a[j - i];
    c[j] = a[j] - s / static_cast<long double>(j);
  }
  return c;
}

}  // namespace detail

struct EulerProduct {
  long double value;
  u64 cutoff;             // primes 5 <= p <= cutoff taken exactly
  long double tail_bound; // bound on |log(value) - log(true product)|
};

/// Product of f over 5 <= p <= cutoff, nothing else.
inline long double euler_product_truncated(const FactorSeries& f, u64 cutoff) {
  long double lg = 0;
  for (u64 p : detail::primes_in(5, cutoff)) lg += std::log(f.eval(std::pow(static_cast<long double>(p), -0.25L)));
  return std::exp(lg);
}

/// Head over 5 <= p <= cutoff plus the prime-zeta tail.
inline EulerProduct euler_product_series(const FactorSeries& f, long double tol, u64 cutoff = 100'000) {
  if (!(tol > 0)) throw std::invalid_argument("euler_product: tol must be positive");
  const auto primes = detail::primes_in(2, cutoff);
  long double head = 0;
  for (u64 p : primes)
    if (p >= 5) head += std::log(f.eval(std::pow(static_cast<long double>(p), -0.25L)));

  // Terms whose bound is negligible go to the remainder instead.
  constexpr std::size_t kTerms = 400;
  const auto a = f.coefficients(kTerms);
  const auto c = detail::log_series(a);
  long double tail = 0, remainder = 0;
  std::size_t used = 0;
  for (std::size_t j = 5; j <= kTerms; ++j) {
    if (c[j] == 0) continue;
    // sum_{p > cutoff} p^{-j/4} <= cutoff^{1 - j/4} / (j/4 - 1).
    const long double s = static_cast<long double>(j) / 4;
    const long double bound = std::pow(static_cast<long double>(cutoff), 1 - s) / (s - 1);
    if (std::fabs(c[j]) * bound < tol * 1e-6L) {
      remainder += std::fabs(c[j]) * bound;
      continue;
    }
    long double inner = detail::prime_zeta(s);
    for (u64 p : primes) inner -= std::pow(static_cast<long double>(p), -s);
    tail += c[j] * inner;
    ++used;
  }
  // Coefficients of log f grow at most geometrically; past kTerms the
  // bound is cutoff^{-j/4} times that growth, negligible for cutoff >= 10^4.
  const long double rounding = 1e-17L * static_cast<long double>(used + 1);
  for (std::size_t j = 1; j < 5; ++j)
    if (c[j] != 0) throw std::domain_error("euler_product: factor deviates too slowly for a convergent product");
  return {std::exp(head + tail), cutoff, remainder + rounding};
}

/// Plain truncation with the cutoff chosen from the leading deviation
/// |c| p^{-e}: sum_{p > P} |c| p^{-e} <= |c| P^{1-e} / (e - 1). Throws if the
/// cutoff would exceed max_cutoff.
inline EulerProduct euler_product_plain(const FactorSeries& f, long double tol, u64 max_cutoff) {
  const std::size_t j0 = f.leading_order();
  const long double e = static_cast<long double>(j0) / 4;
  const long double lead = std::fabs(f.coefficients(j0)[j0]) * 2;  // slack for the (1 - x)^{-1} factor
  if (e <= 1) throw std::domain_error("euler_product: divergent product");
  const long double need = std::pow(lead / ((e - 1) * tol), 1 / (e - 1));
  if (!(need <= static_cast<long double>(max_cutoff)))
    throw std::runtime_error("euler_product: tolerance " + std::to_string(static_cast<double>(tol)) +
                             " needs primes up to " + std::to_string(static_cast<double>(need)) +
                             ", beyond the bound " + std::to_string(max_cutoff));
  const u64 cutoff = std::max<u64>(5, static_cast<u64>(std::ceil(need)));
  return {euler_product_truncated(f, cutoff), cutoff, tol};
}

enum class ProductMethod { SeriesTail, Plain };

inline EulerProduct euler_product(Family f, long double tol, ProductMethod method = ProductMethod::SeriesTail) {
  const auto series = euler_factor_series(f);
  if (method == ProductMethod::Plain) return euler_product_plain(series, tol, configured_sieve_bound());
  return euler_product_series(series, tol);
}

/// (1/64) (2 + sqrt 2) Gamma(1/4)^2 / (3 sqrt pi).
inline long double main_term_prefactor() {
  const auto& k = gamma_constants();
  return (2 + k.sqrt2) * k.gamma_quarter * k.gamma_quarter / (64 * 3 * k.sqrt_pi);
}

inline long double main_term_constant(Family f, long double tol = 1e-12L) {
  return main_term_prefactor() * euler_product(f, tol).value;
}

/// Euler product of the local index sums.
inline EulerProduct dirichlet_index_sum(Family f, long double tol) {
  return euler_product_series(index_sum_series(f), tol);
}

}  // namespace e2
