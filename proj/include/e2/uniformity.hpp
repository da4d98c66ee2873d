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

// Counting tools for curves with many additive or repeated primes:
// square-free splittings of curves whose additive primes are all type III,
// the ternary quadric they satisfy, point counts on quadrics and planar
// lattices (with the upper bounds they are compared against), and the
// valuation-based decomposition of b and a^2 - 4b into repeated and simple
// parts.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "e2/arithmetic.hpp"
#include "e2/curve.hpp"
#include "e2/wide_int.hpp"

namespace e2 {

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Curves with additive primes of type III only

/// a = P u, b = P v, a^2 - 4b = P w with P u^2 = w + 4 v, v = v0 v1^2 and
/// w = w0 w1^2 (signs carried by v0, w0).
struct QuadricDecomposition {
  i64 P = 1;
  i64 u = 0;
  i64 v0 = 1, v1 = 1, w0 = 1, w1 = 1;

  [[nodiscard]] i128 v() const { return i128{v0} * v1 * v1; }
  [[nodiscard]] i128 w() const { return i128{w0} * w1 * w1; }
  [[nodiscard]] bool identity_holds() const { return i128{P} * u * u == w() + 4 * v(); }
};

namespace detail {

inline void signed_squarefree_split(i64 n, i64& n0, i64& n1) {
  const auto parts = squarefree_decompose(n < 0 ? -n : n);
  n0 = static_cast<i64>(parts.n0) * (n < 0 ? -1 : 1);
  n1 = static_cast<i64>(parts.n1);
}

}  // namespace detail

inline QuadricDecomposition decompose_III_curve(i64 a, i64 b, i64 P) {
  if (P < 1 || !is_squarefree(P)) throw PreconditionError("decompose_III_curve: P must be positive and square-free");
  if (a % P != 0) throw PreconditionError("decompose_III_curve: P does not divide a");
  if (b % P != 0) throw PreconditionError("decompose_III_curve: P does not divide b");
  const i64 v = b / P;
  if (std::gcd(v, P) != 1) throw PreconditionError("decompose_III_curve: P does not exactly divide b");
  const i64 u = a / P;
  const i128 w128 = i128{P} * u * u - 4 * i128{v};
  if (w128 == 0) throw PreconditionError("decompose_III_curve: singular curve");
  const i64 w = to_i64(w128);
  if (std::gcd(w, P) != 1) throw PreconditionError("decompose_III_curve: a^2 - 4b has a prime of P to power > 1");
  if (!is_cubefree(v)) throw PreconditionError("decompose_III_curve: b/P is not cube-free");
  if (!is_cubefree(w)) throw PreconditionError("decompose_III_curve: (a^2 - 4b)/P is not cube-free");
  QuadricDecomposition d;
  d.P = P;
  d.u = u;
  detail::signed_squarefree_split(v, d.v0, d.v1);
  detail::signed_squarefree_split(w, d.w0, d.w1);
  if (!d.identity_holds()) throw OracleDisagreement("decompose_III_curve: quadric identity failed");
  return d;
}

/// Dyadic membership T < |n| <= 2T; with T = 1/2 this is |n| = 1.
inline bool in_dyadic(i64 n, long double T) {
  const long double m = static_cast<long double>(n < 0 ? -n : n);
  return m > T && m <= 2 * T;
}

/// Tuples (u, v0, v1, w0, w1) with v1, w1 > 0, P u^2 = w0 w1^2 + 4 v0 v1^2,
/// square-free v0, v1, w0, w1, gcd(v0, v1) = gcd(w0, w1) = 1, v and w coprime
/// to P, each of |v0|, |w0|, v1, w1 in its dyadic range and
/// |v0 v1 w0 w1| <= Z.
inline u64 count_dyadic_box(long double T1, long double T2, long double T3, long double T4, i64 P, long double Z) {
  if (T1 < 0.5L || T2 < 0.5L || T3 < 0.5L || T4 < 0.5L) throw std::invalid_argument("count_dyadic_box: T_i >= 1/2");
  if (Z < 1) throw std::invalid_argument("count_dyadic_box: Z >= 1");
  if (P < 1) throw std::invalid_argument("count_dyadic_box: P >= 1");
  auto range = [](long double T) {
    return std::pair<i64, i64>{static_cast<i64>(std::floor(T)) + 1, static_cast<i64>(std::floor(2 * T))};
  };
  const auto [v0lo, v0hi] = range(T1);
  const auto [w0lo, w0hi] = range(T2);
  const auto [v1lo, v1hi] = range(T3);
  const auto [w1lo, w1hi] = range(T4);
  auto sqf = [](i64 n) { return n != 0 && is_squarefree(n < 0 ? -n : n); };
  u64 count = 0;
  for (i64 v1 = v1lo; v1 <= v1hi; ++v1) {
    if (!sqf(v1)) continue;
    for (i64 w1 = w1lo; w1 <= w1hi; ++w1) {
      if (!sqf(w1)) continue;
      for (i64 av0 = v0lo; av0 <= v0hi; ++av0) {
        if (!sqf(av0) || std::gcd(av0, v1) != 1) continue;
        for (i64 aw0 = w0lo; aw0 <= w0hi; ++aw0) {
          if (static_cast<long double>(av0) * v1 * aw0 * w1 > Z) break;
          if (!sqf(aw0) || std::gcd(aw0, w1) != 1) continue;
          for (int sv : {-1, 1})
            for (int sw : {-1, 1}) {
              const i128 v = i128{sv * av0} * v1 * v1;
              const i128 w = i128{sw * aw0} * w1 * w1;
              if (gcd128(abs128(v), P) != 1 || gcd128(abs128(w), P) != 1) continue;
              const i128 rhs = w + 4 * v;
              if (rhs < 0 || rhs % P != 0) continue;
              const i128 q = rhs / P;
              if (!is_square(static_cast<u128>(q))) continue;
              count += q == 0 ? 1 : 2;
            }
        }
      }
    }
  }
  return count;
}

// ---------------------------------------------------------------------------
// Ternary quadratic forms

using SymMatrix3 = std::array<std::array<i64, 3>, 3>;

inline i128 det3(const SymMatrix3& m) {
  auto e = [&](int i, int j) { return i128{m[i][j]}; };
  return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
         e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

/// gcd of all 2x2 minors.
inline i128 minor_gcd(const SymMatrix3& m) {
  i128 g = 0;
  for (int r1 = 0; r1 < 3; ++r1)
    for (int r2 = r1 + 1; r2 < 3; ++r2)
      for (int c1 = 0; c1 < 3; ++c1)
        for (int c2 = c1 + 1; c2 < 3; ++c2)
          g = gcd128(g, abs128(i128{m[r1][c1]} * m[r2][c2] - i128{m[r1][c2]} * m[r2][c1]));
  return g;
}

inline void require_symmetric_nonsingular(const SymMatrix3& m) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (m[i][j] != m[j][i]) throw std::invalid_argument("quadratic form matrix must be symmetric");
  if (det3(m) == 0) throw std::invalid_argument("quadratic form is singular");
}

/// Primitive integer zeros of x^T M x with |x_i| <= R_i (x and -x both
/// counted). Solves for x3 given (x1, x2).
inline u64 quadric_point_count(const SymMatrix3& m, i64 R1, i64 R2, i64 R3) {
  require_symmetric_nonsingular(m);
  u64 count = 0;
  auto emit = [&](i64 x1, i64 x2, i64 x3) {
    if (x3 < -R3 || x3 > R3) return;
    if (x1 == 0 && x2 == 0 && x3 == 0) return;
    if (std::gcd(std::gcd(x1, x2), x3) != 1) return;
    ++count;
  };
  const i128 A = m[2][2];
  for (i64 x1 = -R1; x1 <= R1; ++x1)
    for (i64 x2 = -R2; x2 <= R2; ++x2) {
      // A x3^2 + 2 B x3 + C = 0
      const i128 B = i128{m[0][2]} * x1 + i128{m[1][2]} * x2;
      const i128 C = i128{m[0][0]} * x1 * x1 + 2 * i128{m[0][1]} * x1 * x2 + i128{m[1][1]} * x2 * x2;
      if (A == 0) {
        if (B == 0) {
          if (C == 0)
            for (i64 x3 = -R3; x3 <= R3; ++x3) emit(x1, x2, x3);
          continue;
        }
        if (C % (2 * B) == 0) emit(x1, x2, static_cast<i64>(-C / (2 * B)));
        continue;
      }
      const i128 D = B * B - A * C;  // quarter discriminant
      if (D < 0 || !is_square(static_cast<u128>(D))) continue;
      const i128 s = static_cast<i128>(isqrt(static_cast<u128>(D)));
      for (i128 num : {-B + s, -B - s}) {
        if (num % A == 0) {
          const i128 x3 = num / A;
          if (x3 >= -R3 && x3 <= R3) emit(x1, x2, static_cast<i64>(x3));
        }
        if (s == 0) break;  // double root
      }
    }
  return count;
}

/// (1 + (R1 R2 R3 Delta0^{3/2} / Delta)^{1/3}) tau(Delta).
inline long double bhb_bound(const SymMatrix3& m, i64 R1, i64 R2, i64 R3) {
  require_symmetric_nonsingular(m);
  const i128 delta = abs128(det3(m));
  const i128 delta0 = minor_gcd(m);
  const long double core = static_cast<long double>(R1) * R2 * R3 *
                           std::pow(static_cast<long double>(delta0), 1.5L) / static_cast<long double>(delta);
  return (1 + std::cbrt(core)) * static_cast<long double>(tau(to_i64(delta)));
}

// ---------------------------------------------------------------------------
// Planar lattices

using Vec2 = std::array<i64, 2>;

/// Integer vectors with gcd(x1, x2) = 1 in the lattice spanned by the basis
/// and with |x_i| <= R_i. The basis is brought to the form (g, h), (0, d).
inline u64 lattice_box_count(const Vec2& e1, const Vec2& e2, i64 R1, i64 R2) {
  const i128 det = i128{e1[0]} * e2[1] - i128{e1[1]} * e2[0];
  if (det == 0) throw std::invalid_argument("lattice_box_count: basis is linearly dependent");
  // s e1[0] + t e2[0] = g
  i64 g0 = e1[0], g1 = e2[0], s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (g1 != 0) {
    const i64 q = g0 / g1;
    std::tie(g0, g1) = std::pair{g1, g0 - q * g1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
    std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
  }
  i128 g = g0, h = i128{s0} * e1[1] + i128{t0} * e2[1];
  if (g < 0) {
    g = -g;
    h = -h;
  }
  const i128 d = abs128(det) / g;
  u64 count = 0;
  for (i128 x = -(R1 / g) * g; x <= R1; x += g) {
    const i128 m = x / g;
    const i64 r = mod(m * h, static_cast<i64>(d));  // y = r (mod d)
    i128 y = -static_cast<i128>(R2);
    y += mod(r - y, static_cast<i64>(d));
    for (; y <= R2; y += d)
      if (gcd128(abs128(x), abs128(y)) == 1) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Repeated-prime decomposition

/// |b| = P1 Q1 u with P1 Q1 the part of |b| on primes of valuation >= 2,
/// P1 its radical, R1 the product of primes of valuation exactly 2 and
/// S1 = P1 Q1 / R1^2; likewise for c = a^2 - 4b.
struct MultiplicativeDecomposition {
  u64 P1 = 1, Q1 = 1, R1 = 1, S1 = 1;
  i64 u = 1;
  u64 P2 = 1, Q2 = 1, R2 = 1, S2 = 1;
  i64 v = 1;
};

struct RepeatedPart {
  u64 P = 1, Q = 1, R = 1, S = 1;
  i64 simple = 1;
};

inline RepeatedPart repeated_part(const Factorization& f) {
  RepeatedPart r;
  u64 simple = 1;
  u64 PQ = 1;
  for (const auto& [p, e] : f.factors) {
    if (e == 1) {
      simple *= p;
      continue;
    }
    u64 pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    PQ *= pe;
    r.P *= p;
    if (e == 2) r.R *= p;
  }
  r.Q = PQ / r.P;
  r.S = PQ / (r.R * r.R);
  r.simple = static_cast<i64>(simple);
  return r;
}

inline MultiplicativeDecomposition multiplicative_decompose(i64 a, i64 b) {
  const CurveParams c = make_curve(a, b);
  const auto rb = repeated_part(factorize(b));
  const auto rc = repeated_part(factorize(to_i64(c.c())));
  return {rb.P, rb.Q, rb.R, rb.S, rb.simple, rc.P, rc.Q, rc.R, rc.S, rc.simple};
}

// ---------------------------------------------------------------------------
// Exponent vectors

/// (gamma_I0*, gamma_III, gamma_III*, alpha1, alpha2, beta1, beta2, upsilon, nu),
/// each a logarithm to base X.
struct ExponentVector {
  long double gamma_I0star = 0, gamma_III = 0, gamma_IIIstar = 0;
  long double alpha1 = 0, alpha2 = 0, beta1 = 0, beta2 = 0;
  long double upsilon = 0, nu = 0;

  [[nodiscard]] std::array<long double, 9> as_array() const {
    return {gamma_I0star, gamma_III, gamma_IIIstar, alpha1, alpha2, beta1, beta2, upsilon, nu};
  }
  /// 2 (sum of gammas) + alpha1 + upsilon + alpha2 + nu.
  [[nodiscard]] long double conductor_weight() const {
    return 2 * (gamma_I0star + gamma_III + gamma_IIIstar) + alpha1 + upsilon + alpha2 + nu;
  }
};

struct ExponentData {
  ExponentVector vec;
  u64 P_I0star = 1, P_III = 1, P_IIIstar = 1;  // I_n* primes go with I0*
  MultiplicativeDecomposition mult;             // primes >= 5 of multiplicative reduction only
  bool has_In_star = false;
};

/// Classifies additive primes p >= 5 by v_p(b) (1: III, 2: I0* or I_n*,
/// 3: III*) and decomposes the parts of b and a^2 - 4b on multiplicative
/// primes p >= 5. The model must be minimal at every p >= 5.
inline ExponentData exponent_data(i64 a, i64 b, long double X) {
  if (!(X > 1)) throw std::invalid_argument("exponent_vector: X must exceed 1");
  const CurveParams c = make_curve(a, b);
  if (nonminimal_at_large_prime(a, b)) throw PreconditionError("exponent_vector: model not minimal at some p >= 5");
  const Factorization fb = factorize(b);
  const Factorization fc = factorize(to_i64(c.c()));
  ExponentData d;
  Factorization mb, mc;  // multiplicative parts, primes >= 5
  for (const auto& [p, e] : fb.factors) {
    if (p < 5) continue;
    if (a % static_cast<i64>(p) == 0) {
      const bool a_deep = a % static_cast<i64>(p * p) == 0;
      if (e == 1) d.P_III *= p;
      else if (e == 3 && a_deep) d.P_IIIstar *= p;
      else {
        d.P_I0star *= p;
        if (fc.exponent_of(p) > 2 || e > 2) d.has_In_star = true;
      }
    } else {
      mb.factors.push_back({p, e});
    }
  }
  for (const auto& [p, e] : fc.factors)
    if (p >= 5 && a % static_cast<i64>(p) != 0) mc.factors.push_back({p, e});
  const auto rb = repeated_part(mb);
  const auto rc = repeated_part(mc);
  d.mult = {rb.P, rb.Q, rb.R, rb.S, rb.simple, rc.P, rc.Q, rc.R, rc.S, rc.simple};
  const long double lx = std::log(X);
  auto lg = [lx](long double v) { return std::log(std::fabs(v)) / lx; };
  d.vec.gamma_I0star = lg(d.P_I0star);
  d.vec.gamma_III = lg(d.P_III);
  d.vec.gamma_IIIstar = lg(d.P_IIIstar);
  d.vec.alpha1 = lg(rb.P);
  d.vec.alpha2 = lg(rc.P);
  d.vec.beta1 = lg(rb.Q);
  d.vec.beta2 = lg(rc.Q);
  d.vec.upsilon = lg(rb.simple);
  d.vec.nu = lg(rc.simple);
  return d;
}

inline ExponentVector exponent_vector(i64 a, i64 b, long double X) { return exponent_data(a, b, X).vec; }

// ---------------------------------------------------------------------------
// Congruence-constrained counts

/// Integers a with |K a^2 - 4 M| <= Z and K a^2 - 4 M = 0 mod (P2 Q2), where
/// K = P_I0* P_III* and M = P1 Q1 u.
inline u64 count_Nu(long double Z, u64 P_I0star, u64 P_IIIstar, u64 P1, u64 Q1, i64 u, u64 P2, u64 Q2) {
  if (P_I0star == 0 || P_IIIstar == 0 || P1 == 0 || Q1 == 0 || P2 == 0 || Q2 == 0)
    throw std::invalid_argument("count_Nu: moduli must be positive");
  const i128 K = i128{P_I0star} * P_IIIstar;
  const i128 M = i128{P1} * Q1 * u;
  const u64 mod_m = P2 * Q2;
  if (mod_m > 100'000'000ULL) throw std::invalid_argument("count_Nu: modulus too large for residue stepping");
  // K a^2 in [4M - Z, 4M + Z]
  const long double lo = (4 * static_cast<long double>(M) - Z) / static_cast<long double>(K);
  const long double hi = (4 * static_cast<long double>(M) + Z) / static_cast<long double>(K);
  if (hi < 0) return 0;
  // a >= 0 with lo <= a^2 <= hi is an interval [amin, amax]
  auto below_hi = [&](i128 a) { return static_cast<long double>(K * a * a) <= 4 * static_cast<long double>(M) + Z; };
  auto above_lo = [&](i128 a) { return static_cast<long double>(K * a * a) >= 4 * static_cast<long double>(M) - Z; };
  i128 amax = static_cast<i128>(std::floor(std::sqrt(hi)));
  while (below_hi(amax + 1)) ++amax;
  while (amax >= 0 && !below_hi(amax)) --amax;
  if (amax < 0) return 0;
  i128 amin = lo <= 0 ? 0 : static_cast<i128>(std::ceil(std::sqrt(lo)));
  while (amin > 0 && above_lo(amin - 1)) --amin;
  while (amin <= amax && !above_lo(amin)) ++amin;
  if (amin > amax) return 0;
  // residues r mod m with K r^2 = 4M
  std::vector<u64> residues;
  const i128 m = mod_m;
  for (u64 r = 0; r < mod_m; ++r) {
    const i128 val = ((K % m) * ((i128{r} * r) % m) - (4 * M) % m) % m;
    if (val == 0) residues.push_back(r);
  }
  auto count_in = [&](i128 lo_a, i128 hi_a) {  // a in [lo_a, hi_a]
    u64 n = 0;
    if (lo_a > hi_a) return n;
    for (u64 r : residues) {
      // first a >= lo_a with a = r mod m
      i128 first = lo_a + ((i128{r} - lo_a) % m + m) % m;
      if (first > hi_a) continue;
      n += static_cast<u64>((hi_a - first) / m + 1);
    }
    return n;
  };
  if (amin == 0) return count_in(-amax, amax);
  return count_in(amin, amax) + count_in(-amax, -amin);
}

// ---------------------------------------------------------------------------
// Near-square condition

struct NearSquareResult {
  bool near_square = false;          // Q_i <= P_i X^nu for i = 1, 2
  bool implication_holds = true;     // S_i <= X^{3 nu} whenever near_square
};

inline NearSquareResult near_square_check(const MultiplicativeDecomposition& d, long double X, long double nu) {
  if (!(X > 1) || !(nu > 0)) throw std::invalid_argument("near_square_check: need X > 1 and nu > 0");
  const long double xn = std::pow(X, nu);
  NearSquareResult r;
  r.near_square = d.Q1 <= d.P1 * xn && d.Q2 <= d.P2 * xn;
  if (r.near_square) {
    const long double x3 = std::pow(X, 3 * nu);
    r.implication_holds = d.S1 <= x3 * (1 + 1e-15L) && d.S2 <= x3 * (1 + 1e-15L);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Corpora for the bound checks

struct QuadricInstance {
  SymMatrix3 m;
  i64 R1, R2, R3;
};

struct LatticeInstance {
  Vec2 e1, e2;
  i64 R1, R2;
};

/// Symmetric forms with entries of log-uniform magnitude (up to 60, every
/// fourth form up to 2500), off-diagonal entries zero a third of the time,
/// 1 <= |det| <= 1e9, and cube boxes of side clamp((8000 |det|)^{1/3}, 30, 1200).
inline std::vector<QuadricInstance> quadric_corpus(std::size_t n, u64 seed) {
  std::mt19937_64 gen(seed);
  std::vector<QuadricInstance> out;
  while (out.size() < n) {
    const double top = out.size() % 4 == 3 ? 2500.0 : 60.0;
    std::uniform_real_distribution<double> log_mag(0, std::log(top));
    SymMatrix3 m{};
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        i64 v = static_cast<i64>(std::exp(log_mag(gen)));
        if (i != j && gen() % 3 == 0) v = 0;
        if (gen() & 1) v = -v;
        m[i][j] = m[j][i] = v;
      }
    const i128 det = abs128(det3(m));
    if (det == 0 || det > 1'000'000'000) continue;
    const i64 side = std::clamp<i64>(static_cast<i64>(std::cbrt(8000.0 * static_cast<double>(det))), 30, 1200);
    out.push_back({m, side, side, side});
  }
  return out;
}

/// Random bases with entries in [-max_entry, max_entry] and box sides up to
/// max_side.
inline std::vector<LatticeInstance> lattice_corpus(std::size_t n, u64 seed, i64 max_entry = 60, i64 max_side = 400) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<i64> entry(-max_entry, max_entry);
  std::uniform_int_distribution<i64> side(1, max_side);
  std::vector<LatticeInstance> out;
  while (out.size() < n) {
    LatticeInstance li{{entry(gen), entry(gen)}, {entry(gen), entry(gen)}, side(gen), side(gen)};
    if (i128{li.e1[0]} * li.e2[1] - i128{li.e1[1]} * li.e2[0] == 0) continue;
    out.push_back(li);
  }
  return out;
}

struct CorpusFit {
  long double constant = 0;  // max of count / bound
  std::size_t instances = 0;
  std::size_t nonzero = 0;
};

inline CorpusFit fit_quadric_corpus(const std::vector<QuadricInstance>& corpus) {
  CorpusFit f;
  for (const auto& q : corpus) {
    const u64 n = quadric_point_count(q.m, q.R1, q.R2, q.R3);
    const long double bound = bhb_bound(q.m, q.R1, q.R2, q.R3);
    f.constant = std::max(f.constant, static_cast<long double>(n) / bound);
    f.nonzero += n > 0;
    ++f.instances;
  }
  return f;
}

inline CorpusFit fit_lattice_corpus(const std::vector<LatticeInstance>& corpus) {
  CorpusFit f;
  for (const auto& l : corpus) {
    const u64 n = lattice_box_count(l.e1, l.e2, l.R1, l.R2);
    const long double det =
        static_cast<long double>(abs128(i128{l.e1[0]} * l.e2[1] - i128{l.e1[1]} * l.e2[0]));
    const long double bound = static_cast<long double>(l.R1) * l.R2 / det + 1;
    f.constant = std::max(f.constant, static_cast<long double>(n) / bound);
    f.nonzero += n > 0;
    ++f.instances;
  }
  return f;
}

}  // namespace e2
