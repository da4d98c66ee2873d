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

// Integer points (a, b) with 0 < |b (a^2 - 4b)| <= X, one a at a time.
//
// For fixed a the polynomial f(b) = b(a^2 - 4b) is a downward parabola, so
// {b : f(b) >= -X} is an interval and {b : f(b) > X} is an open interval
// inside it. Endpoints come from floating square roots and are then fixed up
// against the exact predicate.

#pragma once

#include <cmath>
#include <vector>

#include "e2/wide_int.hpp"

namespace e2 {

struct BInterval {
  i64 lo;
  i64 hi;  // inclusive; empty when lo > hi
};

/// Largest |a| with some admissible b.
inline i64 region_a_bound(i64 X) { return static_cast<i64>(isqrt(static_cast<u128>(4 * i128{X} + 1))); }

namespace detail {

inline i128 cond_poly_value(i64 a, i64 b) { return i128{b} * (i128{a} * a - 4 * i128{b}); }

}  // namespace detail

/// The (at most two) maximal b-intervals with |f(b)| <= X for this a. b = 0
/// and roots of a^2 - 4b are not removed here.
inline std::vector<BInterval> b_intervals(i64 a, i64 X) {
  using detail::cond_poly_value;
  const long double a2 = static_cast<long double>(a) * a;
  const long double x = static_cast<long double>(X);
  auto ge_minus_x = [&](i64 b) { return cond_poly_value(a, b) >= -i128{X}; };
  auto le_x = [&](i64 b) { return cond_poly_value(a, b) <= i128{X}; };

  // Outer interval: 4b^2 - a^2 b - X <= 0.
  const long double disc_out = std::sqrt(a2 * a2 + 16 * x);
  i64 lo = static_cast<i64>(std::floor((a2 - disc_out) / 8));
  i64 hi = static_cast<i64>(std::ceil((a2 + disc_out) / 8));
  while (!ge_minus_x(lo)) ++lo;
  while (ge_minus_x(lo - 1)) --lo;
  while (!ge_minus_x(hi)) --hi;
  while (ge_minus_x(hi + 1)) ++hi;

  // Excluded middle {b : f(b) > X}: an integer interval around the vertex
  // a^2/8, empty when both neighbouring integers satisfy f <= X.
  const i64 vertex = static_cast<i64>(std::floor(a2 / 8));
  i64 probe = vertex;
  if (le_x(probe)) probe = vertex + 1;
  if (le_x(probe)) return {{lo, hi}};
  const long double disc_in = std::sqrt(std::max<long double>(0, a2 * a2 - 16 * x));
  i64 mlo = std::min(probe, static_cast<i64>(std::ceil((a2 - disc_in) / 8)));
  i64 mhi = std::max(probe, static_cast<i64>(std::floor((a2 + disc_in) / 8)));
  while (!le_x(mlo - 1)) --mlo;
  while (le_x(mlo)) ++mlo;
  while (!le_x(mhi + 1)) ++mhi;
  while (le_x(mhi)) --mhi;
  std::vector<BInterval> out;
  if (lo <= mlo - 1) out.push_back({lo, mlo - 1});
  if (mhi + 1 <= hi) out.push_back({mhi + 1, hi});
  return out;
}

/// Calls fn(a, b) for every (a, b) with 0 < |b(a^2 - 4b)| <= X and a in
/// [a_lo, a_hi]; a ascending, b ascending within each a.
template <class Fn>
void for_each_region_point(i64 X, i64 a_lo, i64 a_hi, Fn&& fn) {
  for (i64 a = a_lo; a <= a_hi; ++a) {
    for (const auto& iv : b_intervals(a, X)) {
      for (i64 b = iv.lo; b <= iv.hi; ++b) {
        if (b == 0 || i128{a} * a == 4 * i128{b}) continue;
        fn(a, b);
      }
    }
  }
}

}  // namespace e2
