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

#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace e2 {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

inline constexpr i128 abs128(i128 x) { return x < 0 ? -x : x; }

inline i128 checked_mul(i128 x, i128 y) {
  i128 r;
  if (__builtin_mul_overflow(x, y, &r)) throw OverflowError("128-bit multiply overflow");
  return r;
}

inline i128 checked_add(i128 x, i128 y) {
  i128 r;
  if (__builtin_add_overflow(x, y, &r)) throw OverflowError("128-bit add overflow");
  return r;
}

/// Narrowing with a range check.
inline i64 to_i64(i128 x) {
  if (x > std::numeric_limits<i64>::max() || x < std::numeric_limits<i64>::min())
    throw OverflowError("value does not fit in 64 bits");
  return static_cast<i64>(x);
}

/// floor(sqrt(n)) for n >= 0.
inline u128 isqrt(u128 n) {
  if (n < 2) return n;
  // Newton from a power-of-two overestimate.
  int bits = 128 - (static_cast<u64>(n >> 64) ? __builtin_clzll(static_cast<u64>(n >> 64))
                                               : 64 + __builtin_clzll(static_cast<u64>(n)));
  u128 x = u128{1} << ((bits + 1) / 2);
  while (true) {
    u128 y = (x + n / x) >> 1;
    if (y >= x) break;
    x = y;
  }
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

inline bool is_square(u128 n) {
  u128 r = isqrt(n);
  return r * r == n;
}

inline std::string to_string(i128 x) {
  if (x == 0) return "0";
  bool neg = x < 0;
  u128 u = neg ? static_cast<u128>(-(x + 1)) + 1 : static_cast<u128>(x);
  std::string s;
  while (u) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

/// Euclidean remainder in [0, m).
inline constexpr i64 mod(i128 x, i64 m) {
  i128 r = x % m;
  return static_cast<i64>(r < 0 ? r + m : r);
}

inline constexpr i128 gcd128(i128 x, i128 y) {
  x = abs128(x);
  y = abs128(y);
  while (y) {
    i128 t = x % y;
    x = y;
    y = t;
  }
  return x;
}

}  // namespace e2
