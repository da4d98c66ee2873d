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

// Enumeration of curves by |C(E)| and by conductor, with per-cutoff counts,
// tail statistics and flagged anomalies.
//
// Family membership: good reduction at 2 and 3 by the congruence criteria,
// and a model minimal at every p >= 5 (no p^2 | a with p^4 | b). On top of
// that CubeFree asks v_p(C(E)) <= 2 for p >= 5, and Kappa bounds the
// average Szpiro ratio.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "e2/arithmetic.hpp"
#include "e2/curve.hpp"
#include "e2/local_density.hpp"
#include "e2/region.hpp"
#include "e2/wide_int.hpp"

namespace e2 {

// ---------------------------------------------------------------------------
// Region enumeration

struct RegionFilter {
  bool good_reduction_23 = false;
  bool minimal_large_p = false;
  bool tate_at_2 = false;  // additionally require good reduction at 2 per Tate
};

namespace detail {

/// Residues b mod 96 passing both congruence criteria, per a mod 96.
inline const std::array<std::vector<std::uint8_t>, 96>& family_residues() {
  static const auto table = [] {
    std::array<std::vector<std::uint8_t>, 96> t;
    for (i64 a = 0; a < 96; ++a)
      for (i64 b = 0; b < 96; ++b)
        if (in_family({a, b})) t[static_cast<std::size_t>(a)].push_back(static_cast<std::uint8_t>(b));
    return t;
  }();
  return table;
}

inline bool passes(const RegionFilter& f, i64 a, i64 b) {
  if (f.good_reduction_23 && !in_family({a, b})) return false;
  if (f.minimal_large_p && nonminimal_at_large_prime(a, b)) return false;
  if (f.tate_at_2 && tate_algorithm({a, b}, 2).conductor_exponent != 0) return false;
  return true;
}

/// fn(a, b) over region points with a in [a_lo, a_hi] passing the filter.
template <class Fn>
void scan_region(i64 X, i64 a_lo, i64 a_hi, const RegionFilter& filter, Fn&& fn) {
  if (!filter.good_reduction_23) {
    for_each_region_point(X, a_lo, a_hi, [&](i64 a, i64 b) {
      if (passes(filter, a, b)) fn(a, b);
    });
    return;
  }
  const auto& residues = family_residues();
  for (i64 a = a_lo; a <= a_hi; ++a) {
    const auto& rs = residues[static_cast<std::size_t>(mod(a, 96))];
    if (rs.empty()) continue;
    for (const auto& iv : b_intervals(a, X)) {
      i64 block = iv.lo - mod(iv.lo, 96);
      for (; block <= iv.hi; block += 96) {
        for (std::uint8_t r : rs) {
          const i64 b = block + r;
          if (b < iv.lo || b > iv.hi) continue;
          if (b == 0 || i128{a} * a == 4 * i128{b}) continue;
          if (filter.minimal_large_p && nonminimal_at_large_prime(a, b)) continue;
          if (filter.tate_at_2 && tate_algorithm({a, b}, 2).conductor_exponent != 0) continue;
          fn(a, b);
        }
      }
    }
  }
}

}  // namespace detail

/// All (a, b) with 0 < |b(a^2 - 4b)| <= X passing the filter; a ascending,
/// b ascending within each a.
inline std::vector<CurveParams> enumerate_region(i64 X, const RegionFilter& filter = {}) {
  if (X < 1) throw std::invalid_argument("enumerate_region: X must be >= 1");
  std::vector<CurveParams> out;
  const i64 A = region_a_bound(X);
  detail::scan_region(X, -A, A, filter, [&](i64 a, i64 b) { out.push_back({a, b}); });
  return out;
}

/// Double loop over |a| <= sqrt(4X + 1), |b| <= X.
inline std::vector<CurveParams> enumerate_region_naive(i64 X, const RegionFilter& filter = {}) {
  std::vector<CurveParams> out;
  const i64 A = static_cast<i64>(std::ceil(std::sqrt(4.0L * X + 1)));
  for (i64 a = -A; a <= A; ++a)
    for (i64 b = -X; b <= X; ++b) {
      const i128 v = i128{b} * (i128{a} * a - 4 * i128{b});
      if (v == 0 || abs128(v) > X) continue;
      if (detail::passes(filter, a, b)) out.push_back({a, b});
    }
  return out;
}

// ---------------------------------------------------------------------------
// Per-curve data used by the census

struct CurveRecord {
  CurveParams curve;
  u64 cond_poly_abs = 0;
  u64 conductor = 0;  // primes >= 5, plus Tate 2,3-parts when outside the family
  u64 index = 0;
  bool cubefree_large_p = true;
  std::optional<KodairaSymbol> unexpected_symbol;  // first additive p >= 5 outside I_n, I0*, III, III*
  u64 unexpected_prime = 0;
};

namespace detail {

inline u128 pow_u(u64 p, int e) {
  u128 r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

}  // namespace detail

/// Conductor, index and the large-prime classification of a curve whose
/// model is minimal at every p >= 5.
inline CurveRecord analyze_curve(const CurveParams& c, bool in_fam = true) {
  CurveRecord r;
  r.curve = c;
  const i128 cp = abs128(conductor_polynomial(c));
  if (cp > static_cast<i128>(std::numeric_limits<i64>::max())) throw OverflowError("|C(E)| exceeds 63 bits");
  r.cond_poly_abs = static_cast<u64>(cp);
  const Factorization fb = factorize(c.b);
  const Factorization fc = factorize(to_i64(c.c()));
  u128 cond = 1;
  for (const auto& [p, e] : merge_factors(fb.factors, fc.factors)) {
    if (p < 5) continue;
    if (e >= 3) r.cubefree_large_p = false;
    const bool additive = c.a % static_cast<i64>(p) == 0;
    cond *= additive ? u128{p} * p : u128{p};
    if (additive && !r.unexpected_symbol) {
      const auto lr = kodaira_symbol_large_p(c, p);
      if (!lr.symbol.in_expected_list()) {
        r.unexpected_symbol = lr.symbol;
        r.unexpected_prime = p;
      }
    }
  }
  if (!in_fam)
    for (u64 p : {2ULL, 3ULL}) cond *= detail::pow_u(p, tate_algorithm(c, p).conductor_exponent);
  r.conductor = static_cast<u64>(cond);
  if (cp % static_cast<i128>(cond) != 0)
    throw OracleDisagreement("conductor does not divide |C(E)| for (" + std::to_string(c.a) + "," +
                             std::to_string(c.b) + ")");
  r.index = static_cast<u64>(cp / static_cast<i128>(cond));
  return r;
}

/// log |minimal discriminant| of E_{a,b} when a, b may be large: Tate at 2
/// and 3, (v(a), v(b)) scaling at p >= 5.
inline long double log_min_disc_fast(const CurveParams& c) {
  long double lg = std::log(static_cast<long double>(abs128(discriminant(c))));
  for (u64 p : {2ULL, 3ULL}) {
    const auto lr = tate_algorithm(c, p);
    lg -= static_cast<long double>(lr.v_disc - lr.v_disc_min) * std::log(static_cast<long double>(p));
  }
  const i64 g = std::gcd(c.a, c.b);
  if (g > 1 || g < -1) {
    for (const auto& [p, e] : factorize(g).factors) {
      if (p < 5) continue;
      // Each step a -> a/p^2, b -> b/p^4 drops v(disc) by 12.
      i64 a = c.a, b = c.b;
      const i64 p2 = static_cast<i64>(p * p);
      while (a % p2 == 0 && b % (p2 * p2) == 0) {
        a /= p2;
        b /= p2 * p2;
        lg -= 12 * std::log(static_cast<long double>(p));
      }
    }
  }
  return lg;
}

/// (beta_E + beta_phi(E)) / 2 given the shared conductor.
inline long double avg_szpiro_with_conductor(const CurveParams& c, u64 conductor) {
  if (conductor <= 1) return std::numeric_limits<long double>::infinity();
  const long double lc = std::log(static_cast<long double>(conductor));
  return (log_min_disc_fast(c) + log_min_disc_fast(isogeny(c))) / (2 * lc);
}

// ---------------------------------------------------------------------------
// Census

enum class OrderBy { Conductor, CondPoly };

inline std::string to_string(OrderBy o) { return o == OrderBy::Conductor ? "conductor" : "condpoly"; }
inline OrderBy parse_order_by(const std::string& s) {
  if (s == "conductor") return OrderBy::Conductor;
  if (s == "condpoly") return OrderBy::CondPoly;
  throw std::invalid_argument("unknown ordering: " + s);
}

struct CensusConfig {
  std::vector<i64> grid{10000};  // cutoffs, ascending
  Family family = Family::CondPoly;
  long double kappa = 2.2L;
  OrderBy order_by = OrderBy::CondPoly;
  u64 index_cap = 10000;
  bool good_reduction_filter = true;
  bool tate_at_2 = false;  // replace the 2-adic congruence test by Tate's algorithm
  unsigned workers = 1;
  // Tail parameters.
  long double tail_delta = 0.1L;
  long double tail_theta = 0.25L;
  long double tail_kappa = 2.2L;
  bool tail_index_cubefree = true;  // index tail over the cube-free family

  void validate() const {
    if (grid.empty()) throw std::invalid_argument("census: empty cutoff grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (grid[i] < 1) throw std::invalid_argument("census: cutoffs must be >= 1");
      if (i && grid[i] <= grid[i - 1]) throw std::invalid_argument("census: cutoffs must increase");
    }
    if (family == Family::Kappa && !(kappa > 1 && kappa < 155.0L / 68))
      throw std::invalid_argument("census: kappa must lie in (1, 155/68)");
    if (order_by == OrderBy::Conductor && index_cap < 1) throw std::invalid_argument("census: index_cap must be >= 1");
    if (!(tail_delta > 0 && tail_delta < 0.5L)) throw std::invalid_argument("census: tail delta must lie in (0, 1/2)");
    if (!(tail_theta > 0)) throw std::invalid_argument("census: tail theta must be positive");
    if (!(tail_kappa > 1 && tail_kappa < 155.0L / 68)) throw std::invalid_argument("census: tail kappa must lie in (1, 155/68)");
    if (workers < 1) throw std::invalid_argument("census: workers must be >= 1");
    const i128 top = i128{grid.back()} * (order_by == OrderBy::Conductor ? index_cap : 1);
    if (top > (i128{1} << 60)) throw std::invalid_argument("census: region bound exceeds 2^60");
  }

  /// Largest |C(E)| the scan must visit.
  [[nodiscard]] i64 region_bound() const {
    return order_by == OrderBy::Conductor ? static_cast<i64>(i128{grid.back()} * index_cap) : grid.back();
  }
};

struct Anomaly {
  CurveParams curve;
  u64 prime;
  std::string symbol;
  friend auto operator<=>(const Anomaly& x, const Anomaly& y) {
    return std::tie(x.curve, x.prime) <=> std::tie(y.curve, y.prime);
  }
  friend bool operator==(const Anomaly& x, const Anomaly& y) { return x.curve == y.curve && x.prime == y.prime; }
};

struct CutoffRow {
  i64 X = 0;
  u64 count = 0;
  long double predicted = 0;
  long double ratio = 0;
  u64 tail_index = 0;    // index > X^{2 delta}
  u64 tail_szpiro = 0;   // 3/2 + theta < avg szpiro <= tail kappa
  u64 index_cap_overflow = 0;  // seen with C <= X but index > cap
};

struct CensusReport {
  CensusConfig config;
  std::vector<CutoffRow> rows;
  std::map<u64, u64> index_histogram;  // at the largest cutoff
  u64 anomaly_count = 0;
  std::vector<Anomaly> anomaly_examples;  // smallest few, sorted
  u64 curves_scanned = 0;
  long double constant = 0;  // main-term constant used for predictions

  static constexpr std::size_t kMaxExamples = 50;

  void merge(const CensusReport& o) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      rows[i].count += o.rows[i].count;
      rows[i].tail_index += o.rows[i].tail_index;
      rows[i].tail_szpiro += o.rows[i].tail_szpiro;
      rows[i].index_cap_overflow += o.rows[i].index_cap_overflow;
    }
    for (const auto& [k, v] : o.index_histogram) index_histogram[k] += v;
    anomaly_count += o.anomaly_count;
    anomaly_examples.insert(anomaly_examples.end(), o.anomaly_examples.begin(), o.anomaly_examples.end());
    std::sort(anomaly_examples.begin(), anomaly_examples.end());
    if (anomaly_examples.size() > kMaxExamples) anomaly_examples.resize(kMaxExamples);
    curves_scanned += o.curves_scanned;
  }
};

namespace detail {

inline void census_slice(const CensusConfig& cfg, i64 a_lo, i64 a_hi, unsigned stride, unsigned offset,
                         CensusReport& rep) {
  RegionFilter filter{cfg.good_reduction_filter, true, cfg.good_reduction_filter && cfg.tate_at_2};
  const i64 bound = cfg.region_bound();
  const std::size_t n = cfg.grid.size();
  std::vector<long double> index_thresholds(n);
  for (std::size_t i = 0; i < n; ++i)
    index_thresholds[i] = std::pow(static_cast<long double>(cfg.grid[i]), 2 * cfg.tail_delta);
  const long double lo_szpiro = 1.5L + cfg.tail_theta;
  const bool szpiro_tail_possible = lo_szpiro < cfg.tail_kappa;

  for (i64 a = a_lo + static_cast<i64>(offset); a <= a_hi; a += stride) {
    scan_region(bound, a, a, filter, [&](i64 aa, i64 b) {
      const CurveParams c{aa, b};
      ++rep.curves_scanned;
      const CurveRecord r = analyze_curve(c, cfg.good_reduction_filter);
      if (r.unexpected_symbol) {
        ++rep.anomaly_count;
        if (rep.anomaly_examples.size() < CensusReport::kMaxExamples * 4)
          rep.anomaly_examples.push_back({c, r.unexpected_prime, r.unexpected_symbol->to_string()});
      }
      const u64 key = cfg.order_by == OrderBy::Conductor ? r.conductor : r.cond_poly_abs;
      if (key > static_cast<u64>(cfg.grid.back())) return;

      // Family membership beyond the filter.
      bool member = true;
      if (cfg.family == Family::CubeFree) member = r.cubefree_large_p;
      std::optional<long double> avg;
      auto get_avg = [&] {
        if (!avg) avg = avg_szpiro_with_conductor(c, r.conductor);
        return *avg;
      };
      if (member && cfg.family == Family::Kappa) member = get_avg() <= cfg.kappa;

      const bool want_szpiro = szpiro_tail_possible && cfg.order_by == OrderBy::Conductor;
      for (std::size_t i = 0; i < n; ++i) {
        const u64 Xi = static_cast<u64>(cfg.grid[i]);
        if (key > Xi) continue;
        if (cfg.order_by == OrderBy::Conductor) {
          if (r.index > cfg.index_cap) ++rep.rows[i].index_cap_overflow;
          if (static_cast<u128>(r.cond_poly_abs) > static_cast<u128>(Xi) * cfg.index_cap) continue;
        }
        if (member) {
          ++rep.rows[i].count;
          if (i + 1 == n) ++rep.index_histogram[r.index];
        }
        if ((!cfg.tail_index_cubefree || r.cubefree_large_p) &&
            static_cast<long double>(r.index) > index_thresholds[i])
          ++rep.rows[i].tail_index;
        if (want_szpiro) {
          const long double s = get_avg();
          if (s > lo_szpiro && s <= cfg.tail_kappa) ++rep.rows[i].tail_szpiro;
        }
      }
    });
  }
  std::sort(rep.anomaly_examples.begin(), rep.anomaly_examples.end());
  if (rep.anomaly_examples.size() > CensusReport::kMaxExamples) rep.anomaly_examples.resize(CensusReport::kMaxExamples);
}

}  // namespace detail

/// Counts per cutoff. With order_by = Conductor a curve counts at cutoff X
/// when C(E) <= X and |C(E)| <= X * index_cap; curves seen with C(E) <= X
/// but a larger index are tallied in index_cap_overflow. Worker w takes the
/// a-values congruent to w modulo the worker count; the merge is a sum, so
/// the report does not depend on scheduling.
inline CensusReport run_census(const CensusConfig& cfg) {
  cfg.validate();
  const i64 bound = cfg.region_bound();
  const i64 A = region_a_bound(bound);
  auto fresh = [&] {
    CensusReport r;
    r.config = cfg;
    r.rows.resize(cfg.grid.size());
    return r;
  };
  std::vector<CensusReport> parts(cfg.workers, fresh());
  std::vector<std::exception_ptr> errors(cfg.workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < cfg.workers; ++w)
    pool.emplace_back([&, w] {
      try {
        detail::census_slice(cfg, -A, A, cfg.workers, w, parts[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  CensusReport rep = fresh();
  for (const auto& p : parts) rep.merge(p);
  rep.constant = main_term_constant(cfg.family);
  for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
    auto& row = rep.rows[i];
    row.X = cfg.grid[i];
    row.predicted = rep.constant * std::pow(static_cast<long double>(row.X), 0.75L);
    row.ratio = static_cast<long double>(row.count) / row.predicted;
  }
  return rep;
}

/// Cube-free family curves with C(E) <= X and index > X^{2 delta}.
inline u64 tail_count_index(i64 X, long double delta, u64 index_cap = 10000, unsigned workers = 1,
                            bool tate_at_2 = false) {
  CensusConfig cfg;
  cfg.tate_at_2 = tate_at_2;
  cfg.grid = {X};
  cfg.family = Family::CubeFree;
  cfg.order_by = OrderBy::Conductor;
  cfg.index_cap = index_cap;
  cfg.workers = workers;
  cfg.tail_delta = delta;
  cfg.tail_theta = 1;  // szpiro tail empty
  return run_census(cfg).rows[0].tail_index;
}

/// Family curves with C(E) <= X and 3/2 + theta < avg Szpiro <= kappa.
inline u64 tail_count_szpiro(i64 X, long double theta, long double kappa, u64 index_cap = 10000,
                             unsigned workers = 1, bool tate_at_2 = false) {
  CensusConfig cfg;
  cfg.tate_at_2 = tate_at_2;
  cfg.grid = {X};
  cfg.family = Family::CondPoly;
  cfg.order_by = OrderBy::Conductor;
  cfg.index_cap = index_cap;
  cfg.workers = workers;
  cfg.tail_theta = theta;
  cfg.tail_kappa = kappa;
  return run_census(cfg).rows[0].tail_szpiro;
}

}  // namespace e2
