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

// Curves E_{a,b}: y^2 = x(x^2 + a x + b) with the marked 2-torsion point
// (0,0). Invariants, local reduction data and the canonical 2-isogeny
// E_{a,b} -> E_{-2a, a^2-4b}.
//
// Local data at p >= 5 comes from the (v(c4), v(disc)) table, which is exact
// for models minimal at p. tate_algorithm() is the general oracle and is the
// only source of truth at p = 2, 3.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "e2/arithmetic.hpp"
#include "e2/wide_int.hpp"

namespace e2 {

class InvalidCurve : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotInFamily : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when two independent classification routes disagree, or an
/// identity that must hold exactly fails.
class OracleDisagreement : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct CurveParams {
  i64 a = 0;
  i64 b = 0;

  /// a^2 - 4b.
  [[nodiscard]] i128 c() const { return i128{a} * a - 4 * i128{b}; }
  friend bool operator==(const CurveParams&, const CurveParams&) = default;
  friend auto operator<=>(const CurveParams&, const CurveParams&) = default;
};

inline CurveParams make_curve(i64 a, i64 b) {
  CurveParams c{a, b};
  if (b == 0) throw InvalidCurve("singular curve: b = 0");
  if (c.c() == 0) throw InvalidCurve("singular curve: a^2 - 4b = 0");
  return c;
}

inline void require_nonsingular(const CurveParams& c) { (void)make_curve(c.a, c.b); }

inline i128 discriminant(const CurveParams& c) { return 16 * i128{c.b} * c.b * c.c(); }
inline i128 conductor_polynomial(const CurveParams& c) { return i128{c.b} * c.c(); }

struct CInvariants {
  i128 c4;
  i128 c6;
};

inline CInvariants c_invariants(const CurveParams& c) {
  require_nonsingular(c);
  const i128 a = c.a, b = c.b;
  return {16 * (a * a - 3 * b), -32 * a * (2 * a * a - 9 * b)};
}

inline CurveParams isogeny(const CurveParams& c) {
  const i128 cc = c.c();
  return {-2 * c.a, to_i64(cc)};
}

// ---------------------------------------------------------------------------
// Kodaira symbols

struct KodairaSymbol {
  enum class Kind { Good, I, I0Star, IStar, II, III, IV, IVStar, IIIStar, IIStar };
  Kind kind = Kind::Good;
  int n = 0;  // only for I and IStar

  static KodairaSymbol good() { return {Kind::Good, 0}; }
  static KodairaSymbol i(int n) { return {Kind::I, n}; }
  static KodairaSymbol i_star(int n) { return n == 0 ? KodairaSymbol{Kind::I0Star, 0} : KodairaSymbol{Kind::IStar, n}; }
  static KodairaSymbol of(Kind k) { return {k, 0}; }

  [[nodiscard]] bool multiplicative() const { return kind == Kind::I; }
  [[nodiscard]] bool additive() const { return kind != Kind::Good && kind != Kind::I; }

  /// Symbols the family is expected to show at p >= 5: I_n, I0*, III, III*.
  [[nodiscard]] bool in_expected_list() const {
    return kind == Kind::Good || kind == Kind::I || kind == Kind::I0Star || kind == Kind::III ||
           kind == Kind::IIIStar;
  }

  [[nodiscard]] std::string to_string() const {
    switch (kind) {
      case Kind::Good: return "I0";
      case Kind::I: return "I" + std::to_string(n);
      case Kind::I0Star: return "I0*";
      case Kind::IStar: return "I" + std::to_string(n) + "*";
      case Kind::II: return "II";
      case Kind::III: return "III";
      case Kind::IV: return "IV";
      case Kind::IVStar: return "IV*";
      case Kind::IIIStar: return "III*";
      case Kind::IIStar: return "II*";
    }
    return "?";
  }

  friend bool operator==(const KodairaSymbol&, const KodairaSymbol&) = default;
};

struct LocalReduction {
  u64 p = 0;
  int v_a = 0, v_b = 0, v_c = 0;  // v_c = v_p(a^2 - 4b); valuations of 0 reported as 99
  int v_disc = 0;                 // of the given model
  int v_disc_min = 0;             // of a minimal model at p
  int v_c4 = 0;
  KodairaSymbol symbol;
  int conductor_exponent = 0;
};

namespace detail {

inline constexpr int kZeroValuation = 99;

inline int val_or_inf(i128 x, u64 p) {
  if (x == 0) return kZeroValuation;
  int e = 0;
  const i128 pp = static_cast<i128>(p);
  while (x % pp == 0) {
    x /= pp;
    ++e;
  }
  return e;
}

inline void fill_valuations(const CurveParams& c, u64 p, LocalReduction& lr) {
  lr.p = p;
  lr.v_a = val_or_inf(c.a, p);
  lr.v_b = val_or_inf(c.b, p);
  lr.v_c = val_or_inf(c.c(), p);
  lr.v_disc = val_or_inf(discriminant(c), p);
  lr.v_c4 = val_or_inf(16 * (i128{c.a} * c.a - 3 * i128{c.b}), p);
}

}  // namespace detail

/// Table classification from (v(c4), v(disc)), valid when the model is
/// minimal at p >= 5.
inline KodairaSymbol classify_by_valuations(int v_c4, int v_disc) {
  using K = KodairaSymbol::Kind;
  if (v_disc == 0) return KodairaSymbol::good();
  if (v_c4 == 0) return KodairaSymbol::i(v_disc);
  if (v_disc == 2) return KodairaSymbol::of(K::II);
  if (v_c4 == 1 && v_disc == 3) return KodairaSymbol::of(K::III);
  if (v_c4 >= 2 && v_disc == 4) return KodairaSymbol::of(K::IV);
  if (v_c4 >= 2 && v_disc == 6) return KodairaSymbol::of(K::I0Star);
  if (v_c4 == 2 && v_disc > 6) return KodairaSymbol::i_star(v_disc - 6);
  if (v_c4 >= 3 && v_disc == 8) return KodairaSymbol::of(K::IVStar);
  if (v_c4 == 3 && v_disc == 9) return KodairaSymbol::of(K::IIIStar);
  if (v_c4 >= 4 && v_disc == 10) return KodairaSymbol::of(K::IIStar);
  throw OracleDisagreement("unclassifiable valuations (v(c4)=" + std::to_string(v_c4) +
                           ", v(disc)=" + std::to_string(v_disc) + "): model not minimal");
}

inline int conductor_exponent_large_p(const KodairaSymbol& s) {
  if (s.kind == KodairaSymbol::Kind::Good) return 0;
  return s.multiplicative() ? 1 : 2;
}

inline LocalReduction kodaira_symbol_large_p(const CurveParams& c, u64 p) {
  require_nonsingular(c);
  if (p < 5) throw std::invalid_argument("kodaira_symbol_large_p: p must be >= 5");
  if (!is_prime(p)) throw std::invalid_argument("kodaira_symbol_large_p: p must be prime");
  LocalReduction lr;
  detail::fill_valuations(c, p, lr);
  lr.symbol = classify_by_valuations(lr.v_c4, lr.v_disc);
  lr.v_disc_min = lr.v_disc;
  lr.conductor_exponent = conductor_exponent_large_p(lr.symbol);
  return lr;
}

// ---------------------------------------------------------------------------
// Tate's algorithm

namespace detail {

using BigInt = boost::multiprecision::cpp_int;

inline i128 mul(i128 x, i128 y) { return checked_mul(x, y); }
inline i128 add(i128 x, i128 y) { return checked_add(x, y); }
inline i128 sub(i128 x, i128 y) { return checked_add(x, -y); }
inline BigInt mul(const BigInt& x, const BigInt& y) { return x * y; }
inline BigInt add(const BigInt& x, const BigInt& y) { return x + y; }
inline BigInt sub(const BigInt& x, const BigInt& y) { return x - y; }

template <class Int>
struct Weierstrass {
  Int a1, a2, a3, a4, a6;
};

template <class Int>
struct TateKernel {
  i64 p;
  Int P;

  explicit TateKernel(i64 prime) : p(prime), P(prime) {}

  Int m(const Int& x, const Int& y) const { return mul(x, y); }
  Int pl(const Int& x, const Int& y) const { return add(x, y); }
  Int mi(const Int& x, const Int& y) const { return sub(x, y); }

  i64 red(const Int& x) const {
    Int r = x % P;
    if (r < 0) r += P;
    return static_cast<i64>(r);
  }
  bool pdiv(const Int& x) const { return x % P == 0; }
  int val(Int x) const {
    if (x == 0) return kZeroValuation;
    int e = 0;
    while (x % P == 0) {
      x /= P;
      ++e;
    }
    return e;
  }
  i64 inv(const Int& x) const {
    i64 a = red(x);
    if (a == 0) throw std::logic_error("tate: inverse of 0 mod p");
    // extended Euclid on 64-bit values
    i128 t0 = 0, t1 = 1, r0 = p, r1 = a;
    while (r1) {
      i128 q = r0 / r1;
      i128 tmp = r0 - q * r1;
      r0 = r1;
      r1 = tmp;
      tmp = t0 - q * t1;
      t0 = t1;
      t1 = tmp;
    }
    return mod(t0, p);
  }
  Int I(i64 v) const { return Int(v); }

  void transform(Weierstrass<Int>& w, const Int& r, const Int& s, const Int& t) const {
    const Weierstrass<Int> o = w;
    w.a1 = pl(o.a1, m(I(2), s));
    w.a2 = mi(pl(mi(o.a2, m(s, o.a1)), m(I(3), r)), m(s, s));
    w.a3 = pl(pl(o.a3, m(r, o.a1)), m(I(2), t));
    w.a4 = pl(mi(pl(mi(o.a4, m(s, o.a3)), m(m(I(2), r), o.a2)), m(pl(t, m(r, s)), o.a1)),
              mi(m(I(3), m(r, r)), m(m(I(2), s), t)));
    w.a6 = mi(mi(mi(pl(pl(pl(o.a6, m(r, o.a4)), m(m(r, r), o.a2)), m(m(r, r), r)), m(t, o.a3)), m(t, t)),
              m(m(r, t), o.a1));
  }
};

struct TateOutcome {
  KodairaSymbol symbol;
  int conductor_exponent = 0;
  int v_disc = 0;      // original model
  int v_disc_min = 0;  // minimal model
};

template <class Int>
TateOutcome tate_impl(Int a1, Int a2, Int a3, Int a4, Int a6, i64 p) {
  using K = KodairaSymbol::Kind;
  TateKernel<Int> k(p);
  const Int P = k.P;
  Weierstrass<Int> w{a1, a2, a3, a4, a6};
  TateOutcome out;
  bool first = true;
  const i64 half = p == 2 ? 0 : k.inv(Int(2));

  while (true) {
    auto b2 = k.pl(k.m(w.a1, w.a1), k.m(Int(4), w.a2));
    auto b4 = k.pl(k.m(Int(2), w.a4), k.m(w.a1, w.a3));
    auto b6 = k.pl(k.m(w.a3, w.a3), k.m(Int(4), w.a6));
    auto b8 = k.mi(k.pl(k.mi(k.pl(k.m(k.m(w.a1, w.a1), w.a6), k.m(k.m(Int(4), w.a2), w.a6)),
                             k.m(k.m(w.a1, w.a3), w.a4)),
                        k.m(k.m(w.a2, w.a3), w.a3)),
                   k.m(w.a4, w.a4));
    auto c4 = k.mi(k.m(b2, b2), k.m(Int(24), b4));
    auto c6 = k.mi(k.pl(k.m(Int(-1), k.m(k.m(b2, b2), b2)), k.m(k.m(Int(36), b2), b4)), k.m(Int(216), b6));
    auto disc = k.pl(k.mi(k.mi(k.m(Int(-1), k.m(k.m(b2, b2), b8)), k.m(Int(8), k.m(k.m(b4, b4), b4))),
                          k.m(Int(27), k.m(b6, b6))),
                     k.m(k.m(Int(9), b2), k.m(b4, b6)));
    const int vD = k.val(disc);
    if (first) {
      out.v_disc = vD;
      first = false;
    }
    out.v_disc_min = vD;
    if (vD == 0) {
      out.symbol = KodairaSymbol::good();
      out.conductor_exponent = 0;
      return out;
    }

    // Move the singular point to (0,0): p | a3, a4, a6.
    Int r, t;
    if (p == 2) {
      if (k.pdiv(b2)) {
        r = k.red(w.a4);
        t = k.red(k.pl(k.m(k.pl(k.m(k.pl(r, w.a2), r), w.a4), r), w.a6));
      } else {
        const Int inv_a1 = k.inv(w.a1);
        r = k.m(inv_a1, w.a3);
        t = k.m(inv_a1, k.pl(w.a4, k.m(r, r)));
      }
    } else if (p == 3) {
      r = k.pdiv(b2) ? Int(k.red(k.m(Int(-1), b6))) : k.m(Int(-k.inv(b2)), b4);
      t = k.pl(k.m(w.a1, r), w.a3);
    } else {
      if (k.pdiv(c4))
        r = k.m(Int(-k.inv(Int(12))), b2);
      else
        r = k.m(Int(-k.inv(k.m(Int(12), c4))), k.pl(c6, k.m(b2, c4)));
      t = k.m(Int(-half), k.pl(k.m(w.a1, r), w.a3));
    }
    r = Int(k.red(r));
    t = Int(k.red(t));
    k.transform(w, r, Int(0), t);
    b6 = k.pl(k.m(w.a3, w.a3), k.m(Int(4), w.a6));
    b8 = k.mi(k.pl(k.mi(k.pl(k.m(k.m(w.a1, w.a1), w.a6), k.m(k.m(Int(4), w.a2), w.a6)), k.m(k.m(w.a1, w.a3), w.a4)),
                   k.m(k.m(w.a2, w.a3), w.a3)),
              k.m(w.a4, w.a4));
    if (!k.pdiv(w.a3) || !k.pdiv(w.a4) || !k.pdiv(w.a6)) throw std::logic_error("tate: first transform failed");

    if (!k.pdiv(c4)) {
      out.symbol = KodairaSymbol::i(vD);
      out.conductor_exponent = 1;
      return out;
    }
    if (k.val(w.a6) < 2) {
      out.symbol = KodairaSymbol::of(K::II);
      out.conductor_exponent = vD;
      return out;
    }
    if (k.val(b8) < 3) {
      out.symbol = KodairaSymbol::of(K::III);
      out.conductor_exponent = vD - 1;
      return out;
    }
    if (k.val(b6) < 3) {
      out.symbol = KodairaSymbol::of(K::IV);
      out.conductor_exponent = vD - 2;
      return out;
    }

    // p | a1, a2; p^2 | a3, a4; p^3 | a6.
    Int s;
    if (p == 2) {
      s = Int(k.red(w.a2));
      t = k.m(P, Int(k.red(w.a6 / (P * P))));
    } else if (p == 3) {
      s = w.a1;
      t = w.a3;
    } else {
      s = k.m(Int(-half), w.a1);
      t = k.m(Int(-half), w.a3);
    }
    k.transform(w, Int(0), s, t);

    const Int pb = w.a2 / P;
    const Int pc = w.a4 / (P * P);
    const Int pd = w.a6 / (P * P * P);
    const Int bb = k.m(pb, pb), cc = k.m(pc, pc), bc = k.m(pb, pc);
    const Int wq = k.pl(k.mi(k.pl(k.mi(k.m(Int(27), k.m(pd, pd)), k.m(bb, cc)), k.m(k.m(Int(4), pb), k.m(bb, pd))),
                             k.m(k.m(Int(18), bc), pd)),
                        k.m(k.m(Int(4), pc), cc));
    const Int xq = k.mi(k.m(Int(3), pc), bb);
    const int sw = k.pdiv(wq) ? (k.pdiv(xq) ? 3 : 2) : 1;

    if (sw == 1) {
      out.symbol = KodairaSymbol::of(K::I0Star);
      out.conductor_exponent = vD - 4;
      return out;
    }
    if (sw == 2) {
      Int rr;
      if (p == 2)
        rr = Int(k.red(pc));
      else if (p == 3)
        rr = k.m(pc, Int(k.inv(pb)));
      else
        rr = k.m(k.mi(bc, k.m(Int(9), pd)), Int(k.inv(k.m(Int(2), xq))));
      rr = k.m(P, Int(k.red(rr)));
      k.transform(w, rr, Int(0), Int(0));
      int mm = 1;
      Int mx = P * P, my = P * P;
      while (true) {
        Int xa2 = w.a2 / P, xa3 = w.a3 / my, xa4 = w.a4 / k.m(P, mx), xa6 = w.a6 / k.m(mx, my);
        if (!k.pdiv(k.pl(k.m(xa3, xa3), k.m(Int(4), xa6)))) break;
        Int tt = p == 2 ? k.m(my, Int(k.red(xa6))) : k.m(my, Int(k.red(k.m(Int(-half), xa3))));
        k.transform(w, Int(0), Int(0), tt);
        my = k.m(my, P);
        ++mm;
        xa2 = w.a2 / P;
        xa3 = w.a3 / my;
        xa4 = w.a4 / k.m(P, mx);
        xa6 = w.a6 / k.m(mx, my);
        if (!k.pdiv(k.mi(k.m(xa4, xa4), k.m(k.m(Int(4), xa2), xa6)))) break;
        Int r2 = p == 2 ? k.m(mx, Int(k.red(k.m(xa6, Int(k.inv(xa2))))))
                        : k.m(mx, Int(k.red(k.m(Int(-1), k.m(xa4, Int(k.inv(k.m(Int(2), xa2))))))));
        k.transform(w, r2, Int(0), Int(0));
        mx = k.m(mx, P);
        ++mm;
      }
      out.symbol = KodairaSymbol::i_star(mm);
      out.conductor_exponent = vD - mm - 4;
      return out;
    }

    // Triple root.
    Int r3;
    if (p == 2)
      r3 = pb;
    else if (p == 3)
      r3 = Int(k.red(k.m(Int(-1), pd)));
    else
      r3 = k.m(Int(-k.inv(Int(3))), pb);
    r3 = k.m(P, Int(k.red(r3)));
    k.transform(w, r3, Int(0), Int(0));
    const Int x3 = w.a3 / (P * P);
    const Int x6 = w.a6 / (P * P * P * P);
    if (!k.pdiv(k.pl(k.m(x3, x3), k.m(Int(4), x6)))) {
      out.symbol = KodairaSymbol::of(K::IVStar);
      out.conductor_exponent = vD - 6;
      return out;
    }
    Int t3 = p == 2 ? k.m(Int(-1), k.m(P * P, Int(k.red(x6)))) : k.m(P * P, Int(k.red(k.m(Int(-half), x3))));
    k.transform(w, Int(0), Int(0), t3);
    if (k.val(w.a4) < 4) {
      out.symbol = KodairaSymbol::of(K::IIIStar);
      out.conductor_exponent = vD - 7;
      return out;
    }
    if (k.val(w.a6) < 6) {
      out.symbol = KodairaSymbol::of(K::IIStar);
      out.conductor_exponent = vD - 8;
      return out;
    }
    // Non-minimal: scale by p and start over.
    w.a1 /= P;
    w.a2 /= P * P;
    w.a3 /= P * P * P;
    w.a4 /= P * P * P * P;
    w.a6 /= P * P * P * P * P * P;
  }
}

}  // namespace detail

/// Kodaira symbol and conductor exponent at any prime, via Tate's algorithm
/// on the general Weierstrass model [0, a, 0, b, 0].
inline LocalReduction tate_algorithm(const CurveParams& c, u64 p) {
  require_nonsingular(c);
  if (!is_prime(p)) throw std::invalid_argument("tate_algorithm: p must be prime");
  LocalReduction lr;
  detail::fill_valuations(c, p, lr);
  detail::TateOutcome o;
  try {
    o = detail::tate_impl<i128>(0, c.a, 0, c.b, 0, static_cast<i64>(p));
  } catch (const OverflowError&) {
    using B = detail::BigInt;
    o = detail::tate_impl<B>(B(0), B(c.a), B(0), B(c.b), B(0), static_cast<i64>(p));
  }
  lr.symbol = o.symbol;
  lr.conductor_exponent = o.conductor_exponent;
  lr.v_disc_min = o.v_disc_min;
  return lr;
}

// ---------------------------------------------------------------------------
// Good reduction at 2 and 3 (congruence criteria)

inline bool good_reduction_at_2(const CurveParams& c) {
  const i64 a8 = mod(c.a, 8), a4 = mod(c.a, 4), b32 = mod(c.b, 32);
  return ((b32 & 1) == 1 && a8 == 6) || (a4 == 1 && b32 == 16);
}

inline bool good_reduction_at_3(const CurveParams& c) {
  const i64 a3 = mod(c.a, 3), b3 = mod(c.b, 3);
  return ((a3 == 1 || a3 == 2) && b3 == 2) || (a3 == 0 && b3 != 0);
}

inline bool in_family(const CurveParams& c) { return good_reduction_at_2(c) && good_reduction_at_3(c); }

/// Some p >= 5 with p^2 | a and p^4 | b (the model is not minimal there).
inline bool nonminimal_at_large_prime(i64 a, i64 b) {
  const u64 g = static_cast<u64>(std::gcd(a, b));
  if (g < 5) return false;
  for (const auto& [p, e] : factorize(static_cast<i64>(g)).factors) {
    if (p < 5) continue;
    const i128 p2 = static_cast<i128>(p) * p;
    if (a % p2 == 0 && b % (p2 * p2) == 0) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Conductor, index, Szpiro ratios

enum class ConductorPolicy {
  FamilyOnly,    // in-family curves only; 2 and 3 contribute nothing
  TateFallback,  // out-of-family curves get their 2- and 3-parts from Tate
  LargePrimesOnly,  // primes >= 5 only, no membership check
};

/// Local data at every prime p >= 5 dividing the discriminant, from the
/// factorizations of b and a^2 - 4b.
inline std::vector<LocalReduction> local_data_large_primes(const CurveParams& c) {
  require_nonsingular(c);
  const Factorization fb = factorize(c.b);
  const Factorization fc = factorize(to_i64(c.c()));
  std::vector<LocalReduction> out;
  for (const auto& [p, e] : merge_factors(fb.factors, fc.factors)) {
    if (p < 5) continue;
    out.push_back(kodaira_symbol_large_p(c, p));
  }
  return out;
}

inline u64 conductor(const CurveParams& c, ConductorPolicy policy = ConductorPolicy::FamilyOnly) {
  require_nonsingular(c);
  u128 cond = 1;
  for (const auto& lr : local_data_large_primes(c))
    for (int i = 0; i < lr.conductor_exponent; ++i) cond *= lr.p;
  if (policy != ConductorPolicy::LargePrimesOnly && !in_family(c)) {
    if (policy == ConductorPolicy::FamilyOnly)
      throw NotInFamily("curve (" + std::to_string(c.a) + "," + std::to_string(c.b) +
                        ") lacks good reduction at 2 or 3 by the congruence criteria");
    for (u64 p : {2ULL, 3ULL})
      for (int i = 0; i < tate_algorithm(c, p).conductor_exponent; ++i) cond *= p;
  }
  if (cond > std::numeric_limits<u64>::max()) throw OverflowError("conductor exceeds 64 bits");
  return static_cast<u64>(cond);
}

/// Conductor from Tate's algorithm at every prime dividing the discriminant.
inline u64 conductor_tate(const CurveParams& c) {
  require_nonsingular(c);
  const Factorization fb = factorize(c.b);
  const Factorization fc = factorize(to_i64(c.c()));
  auto primes = merge_factors(fb.factors, fc.factors);
  primes = merge_factors(primes, {{2, 1}});
  u128 cond = 1;
  for (const auto& [p, e] : primes)
    for (int i = 0; i < tate_algorithm(c, p).conductor_exponent; ++i) cond *= p;
  if (cond > std::numeric_limits<u64>::max()) throw OverflowError("conductor exceeds 64 bits");
  return static_cast<u64>(cond);
}

/// |C(E)| / C(E). Throws OracleDisagreement when the division is not exact.
inline u64 index(const CurveParams& c, ConductorPolicy policy = ConductorPolicy::FamilyOnly) {
  const i128 cp = abs128(conductor_polynomial(c));
  const u64 cond = conductor(c, policy);
  if (cp % cond != 0)
    throw OracleDisagreement("conductor " + std::to_string(cond) + " does not divide |C| = " + to_string(cp));
  return to_i64(cp / cond);
}

/// Prime-to-6 part of |C(E)| divided by the conductor away from 2 and 3.
inline u64 index_away_from_6(const CurveParams& c) {
  i128 cp = abs128(conductor_polynomial(c));
  while (cp % 2 == 0) cp /= 2;
  while (cp % 3 == 0) cp /= 3;
  const u64 cond = conductor(c, ConductorPolicy::LargePrimesOnly);
  if (cp % cond != 0)
    throw OracleDisagreement("conductor " + std::to_string(cond) + " does not divide " + to_string(cp));
  return to_i64(cp / cond);
}

/// log |disc| of a minimal model: p >= 5 from (v(c4), v(c6)), p = 2, 3 from Tate.
inline long double log_minimal_discriminant(const CurveParams& c) {
  require_nonsingular(c);
  long double lg = std::log(static_cast<long double>(abs128(discriminant(c))));
  for (u64 p : {2ULL, 3ULL}) {
    const auto lr = tate_algorithm(c, p);
    lg -= static_cast<long double>(lr.v_disc - lr.v_disc_min) * std::log(static_cast<long double>(p));
  }
  const i64 g = std::gcd(c.a, c.b);
  if (g != 1 && g != -1) {
    const auto [c4, c6] = c_invariants(c);
    for (const auto& [p, e] : factorize(g).factors) {
      if (p < 5) continue;
      int k = 0;
      i128 x4 = c4, x6 = c6;
      const i128 p4 = static_cast<i128>(p) * p * p * p, p6 = p4 * p * p;
      while (x4 % p4 == 0 && x6 % p6 == 0) {
        x4 /= p4;
        x6 /= p6;
        ++k;
      }
      lg -= 12.0L * k * std::log(static_cast<long double>(p));
    }
  }
  return lg;
}

inline long double szpiro_ratio(const CurveParams& c, ConductorPolicy policy = ConductorPolicy::FamilyOnly) {
  const u64 cond = conductor(c, policy);
  if (cond <= 1) throw std::domain_error("szpiro_ratio: conductor must exceed 1");
  return log_minimal_discriminant(c) / std::log(static_cast<long double>(cond));
}

/// (beta_E + beta_phi(E)) / 2; the conductor is shared across the isogeny.
inline long double avg_szpiro(const CurveParams& c, ConductorPolicy policy = ConductorPolicy::FamilyOnly) {
  const u64 cond = conductor(c, policy);
  if (cond <= 1) throw std::domain_error("avg_szpiro: conductor must exceed 1");
  const long double lc = std::log(static_cast<long double>(cond));
  return (log_minimal_discriminant(c) + log_minimal_discriminant(isogeny(c))) / (2 * lc);
}

struct CurveInvariants {
  i128 disc = 0;
  i128 cond_poly = 0;
  u64 conductor = 0;
  u64 index = 0;
  long double szpiro = 0;
  long double szpiro_isog = 0;
  long double avg_szpiro = 0;
};

inline CurveInvariants compute_invariants(const CurveParams& c, ConductorPolicy policy = ConductorPolicy::FamilyOnly) {
  CurveInvariants inv;
  inv.disc = discriminant(c);
  inv.cond_poly = conductor_polynomial(c);
  inv.conductor = conductor(c, policy);
  inv.index = index(c, policy);
  if (inv.conductor > 1) {
    const long double lc = std::log(static_cast<long double>(inv.conductor));
    inv.szpiro = log_minimal_discriminant(c) / lc;
    inv.szpiro_isog = log_minimal_discriminant(isogeny(c)) / lc;
    inv.avg_szpiro = (inv.szpiro + inv.szpiro_isog) / 2;
  }
  return inv;
}

}  // namespace e2
