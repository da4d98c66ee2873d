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

// Area of R(Z) = {(x, y) : |y (x^2 - y)| <= Z} and of its truncation
// |y| >= 4, |x^2 - y| >= 4. For fixed x the untruncated y-fibre has length
// sqrt(x^4 + 4Z) - sqrt(x^4 - 4Z) (second term only when x^4 > 4Z); with
// x = sqrt(2) Z^{1/4} z the area is 4 sqrt(2) Z^{3/4} (I1 + I2) where
//   I1 = int_0^1 sqrt(z^4 + 1) dz,
//   I2 = int_1^inf sqrt(z^4 + 1) - sqrt(z^4 - 1) dz.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "e2/region.hpp"
#include "e2/wide_int.hpp"

namespace e2 {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RegionSpec {
  long double Z = 1;
  bool truncated = false;
};

inline bool region_contains(long double x, long double y, const RegionSpec& spec) {
  const long double w = x * x - y;
  if (std::fabs(y * w) > spec.Z) return false;
  if (spec.truncated && (std::fabs(y) < 4 || std::fabs(w) < 4)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Constants

struct GammaConstants {
  long double gamma_quarter;  // Gamma(1/4)
  long double sqrt_pi;
  long double sqrt2;
};

/// Gamma(1/4) and sqrt(pi) in 50-digit arithmetic, checked against the
/// reflection formula Gamma(1/4) Gamma(3/4) = pi sqrt(2).
inline const GammaConstants& gamma_constants() {
  static const GammaConstants k = [] {
    using F = boost::multiprecision::cpp_bin_float_50;
    const F g1 = boost::math::tgamma(F(1) / 4);
    const F g3 = boost::math::tgamma(F(3) / 4);
    const F pi = boost::math::constants::pi<F>();
    const F s2 = boost::multiprecision::sqrt(F(2));
    const F err = boost::multiprecision::abs(g1 * g3 - pi * s2);
    if (err > F("1e-40")) throw std::logic_error("Gamma(1/4) reflection self-check failed");
    return GammaConstants{static_cast<long double>(g1), static_cast<long double>(boost::multiprecision::sqrt(pi)),
                          static_cast<long double>(s2)};
  }();
  return k;
}

/// int_0^1 sqrt(z^4 + 1) dz = (sqrt 2 + Gamma(1/4)^2 / (4 sqrt pi)) / 3.
inline long double piece_unit_closed_form() {
  const auto& k = gamma_constants();
  return (k.sqrt2 + k.gamma_quarter * k.gamma_quarter / (4 * k.sqrt_pi)) / 3;
}

/// int_1^inf sqrt(z^4 + 1) - sqrt(z^4 - 1) dz
///   = (-sqrt 2 + (1 + sqrt 2) Gamma(1/4)^2 / (4 sqrt pi)) / 3.
inline long double piece_tail_closed_form() {
  const auto& k = gamma_constants();
  return (-k.sqrt2 + (1 + k.sqrt2) * k.gamma_quarter * k.gamma_quarter / (4 * k.sqrt_pi)) / 3;
}

/// 2 (1 + sqrt 2) Gamma(1/4)^2 / (3 sqrt pi) * Z^{3/4}.
inline long double area_closed_form(long double Z) {
  if (!(Z > 0)) throw std::invalid_argument("area_closed_form: Z must be positive");
  const auto& k = gamma_constants();
  return 2 * (1 + k.sqrt2) * k.gamma_quarter * k.gamma_quarter / (3 * k.sqrt_pi) * std::pow(Z, 0.75L);
}

// ---------------------------------------------------------------------------
// Quadrature

struct QuadratureResult {
  long double value;
  long double error_estimate;
};

namespace detail {

inline QuadratureResult gk(const std::function<long double(long double)>& f, long double lo, long double hi,
                           long double tol) {
  long double err = 0;
  const long double v =
      boost::math::quadrature::gauss_kronrod<long double, 61>::integrate(f, lo, hi, 20, tol, &err);
  if (!std::isfinite(v) || err > std::max(tol * std::fabs(v), tol) * 10)
    throw QuadratureError("gauss-kronrod did not converge on [" + std::to_string(static_cast<double>(lo)) + ", " +
                          std::to_string(static_cast<double>(hi)) + "]");
  return {v, err};
}

}  // namespace detail

/// int_0^1 sqrt(z^4 + 1) dz.
inline QuadratureResult piece_unit_quadrature(long double tol) {
  return detail::gk([](long double z) { return std::sqrt(z * z * z * z + 1); }, 0, 1, tol);
}

/// I2 after z = 1/t: int_0^1 2 / (sqrt(1 + t^4) + sqrt(1 - t^4)) dt.
inline QuadratureResult piece_tail_quadrature(long double tol) {
  boost::math::quadrature::tanh_sinh<long double> ts;
  long double err = 0, l1 = 0;
  auto f = [](long double t) {
    const long double t4 = t * t * t * t;
    return 2 / (std::sqrt(1 + t4) + std::sqrt(std::max<long double>(0, 1 - t4)));
  };
  const long double v = ts.integrate(f, 0.0L, 1.0L, tol, &err, &l1);
  if (!std::isfinite(v) || err > tol * 10) throw QuadratureError("tanh-sinh did not converge on the tail piece");
  return {v, err};
}

/// Measure of the part of R(Z) with |x| > sqrt(2) Z^{1/4}, one side.
inline long double tail_piece_area(long double Z, long double tol) {
  return std::sqrt(2.0L) * std::pow(Z, 0.75L) * piece_tail_quadrature(tol).value;
}

namespace detail {

/// Length of {y : (x, y) in region} for the truncated region, by interval
/// subtraction.
inline long double truncated_fibre_length(long double x, long double Z) {
  const long double s = x * x;
  struct Iv {
    long double lo, hi;
  };
  std::vector<Iv> ivs;
  const long double ro = std::sqrt(s * s + 4 * Z);
  const long double glo = (s - ro) / 2, ghi = (s + ro) / 2;
  if (s * s > 4 * Z) {
    const long double ri = std::sqrt(s * s - 4 * Z);
    ivs.push_back({glo, (s - ri) / 2});
    ivs.push_back({(s + ri) / 2, ghi});
  } else {
    ivs.push_back({glo, ghi});
  }
  auto remove = [&ivs](long double lo, long double hi) {
    std::vector<Iv> next;
    for (const auto& iv : ivs) {
      if (iv.hi <= lo || iv.lo >= hi) {
        next.push_back(iv);
        continue;
      }
      if (iv.lo < lo) next.push_back({iv.lo, lo});
      if (iv.hi > hi) next.push_back({hi, iv.hi});
    }
    ivs.swap(next);
  };
  remove(-4, 4);
  remove(s - 4, s + 4);
  long double len = 0;
  for (const auto& iv : ivs) len += iv.hi - iv.lo;
  return len;
}

}  // namespace detail

/// Untruncated: 4 sqrt(2) Z^{3/4} (I1 + I2) with both pieces by quadrature.
/// Truncated: direct integration of the fibre length over x, split at the
/// points where fibre endpoints cross.
inline long double area_quadrature(long double Z, long double tol, bool truncated = false) {
  if (!(Z > 0)) throw std::invalid_argument("area_quadrature: Z must be positive");
  if (!(tol > 0)) throw std::invalid_argument("area_quadrature: tol must be positive");
  if (!truncated) {
    const long double i1 = piece_unit_quadrature(tol / 2).value;
    const long double i2 = piece_tail_quadrature(tol / 2).value;
    return 4 * std::sqrt(2.0L) * std::pow(Z, 0.75L) * (i1 + i2);
  }
  const long double xmax = std::sqrt(Z / 4 + 4);
  std::vector<long double> cuts{0, xmax};
  for (long double s : {2 * std::sqrt(Z), Z / 4 - 4, Z / 4 + 4, 4 - Z / 4, 4.0L, 8.0L})
    if (s > 0 && std::sqrt(s) < xmax) cuts.push_back(std::sqrt(s));
  std::sort(cuts.begin(), cuts.end());
  long double total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] <= 0) continue;
    // tanh-sinh: the fibre length has square-root endpoint behaviour at x^4 = 4Z.
    boost::math::quadrature::tanh_sinh<long double> ts;
    long double err = 0, l1 = 0;
    const long double v = ts.integrate([Z](long double x) { return detail::truncated_fibre_length(x, Z); }, cuts[i],
                                       cuts[i + 1], tol, &err, &l1);
    if (!std::isfinite(v) || err > std::max(tol * l1, tol) * 10)
      throw QuadratureError("truncated-region quadrature did not converge");
    total += v;
  }
  return 2 * total;
}

// ---------------------------------------------------------------------------
// Monte Carlo

struct MonteCarloResult {
  long double estimate;
  long double stderr_;
};

/// Hit-count estimate of the truncated region's area over the box
/// |x| <= sqrt(Z/4 + 4), |y| <= Z/4. Samples are split over a fixed number
/// of streams, each seeded from (seed, stream), so the result depends only
/// on (Z, samples, seed).
inline MonteCarloResult area_monte_carlo(long double Z, u64 samples, u64 seed, unsigned workers = 1) {
  if (samples < 1000) throw std::invalid_argument("area_monte_carlo: need at least 1000 samples");
  constexpr unsigned kStreams = 8;
  const long double xr = std::sqrt(Z / 4 + 4), yr = Z / 4;
  const RegionSpec spec{Z, true};
  std::vector<u64> hits(kStreams, 0);
  auto run_stream = [&](unsigned k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), k};
    std::mt19937_64 gen(seq);
    std::uniform_real_distribution<double> ux(-static_cast<double>(xr), static_cast<double>(xr));
    std::uniform_real_distribution<double> uy(-static_cast<double>(yr), static_cast<double>(yr));
    const u64 n = samples / kStreams + (k < samples % kStreams ? 1 : 0);
    u64 h = 0;
    for (u64 i = 0; i < n; ++i) {
      const double x = ux(gen);
      const double y = uy(gen);
      h += region_contains(x, y, spec);
    }
    hits[k] = h;
  };
  workers = std::clamp(workers, 1U, kStreams);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (unsigned k = w; k < kStreams; k += workers) run_stream(k);
    });
  for (auto& t : pool) t.join();
  u64 total_hits = 0;
  for (u64 h : hits) total_hits += h;
  const long double box = 4 * xr * yr;
  const long double p = static_cast<long double>(total_hits) / samples;
  return {box * p, box * std::sqrt(p * (1 - p) / samples)};
}

// ---------------------------------------------------------------------------
// Lattice counts in congruence classes

/// A subset of Z^2 given by residues of (a, b) modulo n.
class CongruenceClass {
 public:
  explicit CongruenceClass(i64 modulus) : n_(modulus), allowed_(static_cast<std::size_t>(modulus * modulus), false) {
    if (modulus < 1) throw std::invalid_argument("CongruenceClass: modulus must be positive");
  }

  static CongruenceClass everything() {
    CongruenceClass c(1);
    c.allow(0, 0);
    return c;
  }

  template <class Pred>
  static CongruenceClass from_predicate(i64 modulus, Pred&& pred) {
    CongruenceClass c(modulus);
    for (i64 a = 0; a < modulus; ++a)
      for (i64 b = 0; b < modulus; ++b)
        if (pred(a, b)) c.allow(a, b);
    return c;
  }

  void allow(i64 a, i64 b) { allowed_[index(a, b)] = true; }
  [[nodiscard]] bool contains(i64 a, i64 b) const { return allowed_[index(mod(a, n_), mod(b, n_))]; }
  [[nodiscard]] i64 modulus() const { return n_; }

  /// Haar measure of the closure in Zhat^2.
  [[nodiscard]] long double density() const {
    return static_cast<long double>(std::count(allowed_.begin(), allowed_.end(), true)) /
           static_cast<long double>(n_ * n_);
  }

 private:
  [[nodiscard]] std::size_t index(i64 a, i64 b) const { return static_cast<std::size_t>(a * n_ + b); }
  i64 n_;
  std::vector<bool> allowed_;
};

struct LatticeCount {
  u64 count;
  long double predicted;
  long double error;
};

/// Points of the class with |C| <= X, |b| >= 4, |a^2 - 4b| >= 4, against
/// (sqrt 2 / 2) nu A(X).
inline LatticeCount lattice_count_with_error(const CongruenceClass& cls, i64 X) {
  if (X < 1) throw std::invalid_argument("lattice_count_with_error: X must be >= 1");
  u64 count = 0;
  const i64 A = region_a_bound(X);
  for_each_region_point(X, -A, A, [&](i64 a, i64 b) {
    const i128 c = i128{a} * a - 4 * i128{b};
    if (b > -4 && b < 4) return;
    if (c > -4 && c < 4) return;
    if (cls.contains(a, b)) ++count;
  });
  const long double predicted = std::sqrt(2.0L) / 2 * cls.density() * area_closed_form(static_cast<long double>(X));
  return {count, predicted, std::fabs(static_cast<long double>(count) - predicted)};
}

}  // namespace e2
