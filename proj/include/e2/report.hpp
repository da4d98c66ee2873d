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

// CSV and JSON emission. Numbers are formatted with std::to_chars, so output
// never depends on the global locale. Exact rationals go to JSON as
// {"num": "...", "den": "..."}.

#pragma once

#include <nlohmann/json.hpp>

#include <charconv>
#include <chrono>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "e2/census.hpp"
#include "e2/curve.hpp"
#include "e2/local_density.hpp"
#include "e2/lp.hpp"

namespace e2 {

inline constexpr std::string_view kVersion = "0.3.0";

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form.
inline std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}
inline std::string format_number(long double x) { return format_number(static_cast<double>(x)); }

inline Json rational_json(const Rational& q) {
  return Json{{"num", boost::multiprecision::numerator(q).str()}, {"den", boost::multiprecision::denominator(q).str()}};
}

/// i128 values that fit in 64 bits become JSON integers, others strings.
inline Json wide_json(i128 x) {
  if (x >= std::numeric_limits<i64>::min() && x <= std::numeric_limits<i64>::max()) return static_cast<i64>(x);
  return to_string(x);
}

// ---------------------------------------------------------------------------
// CSV

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void header(const std::vector<std::string>& names) { row(names); }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) os_ << ',';
      os_ << escape(fields[i]);
    }
    os_ << '\n';
  }

 private:
  static std::string escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"') out += '"';
      out += ch;
    }
    return out + '"';
  }
  std::ostream& os_;
};

// ---------------------------------------------------------------------------
// Manifest

/// FNV-1a over a canonical string; stable across platforms.
inline std::string fnv1a_hex(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  const auto res = std::to_chars(buf, buf + sizeof buf, h, 16);
  return std::string(16 - static_cast<std::size_t>(res.ptr - buf), '0') + std::string(buf, res.ptr);
}

struct RunManifest {
  std::string subcommand;
  Json config = Json::object();
  std::uint64_t seed = 0;
  double wall_seconds = 0;

  [[nodiscard]] Json to_json() const {
    return Json{{"subcommand", subcommand},
                {"artifact_version", std::string(kVersion)},
                {"config", config},
                {"seed", seed},
                {"input_hash", fnv1a_hex(config.dump())},
                {"wall_seconds", wall_seconds}};
  }
};

// ---------------------------------------------------------------------------
// Curves

inline Json local_reduction_json(const LocalReduction& lr) {
  return Json{{"p", lr.p},
              {"symbol", lr.symbol.to_string()},
              {"conductor_exponent", lr.conductor_exponent},
              {"v_disc", lr.v_disc},
              {"v_disc_min", lr.v_disc_min},
              {"v_c4", lr.v_c4}};
}

inline std::vector<u64> bad_primes(const CurveParams& c) {
  auto primes = merge_factors(factorize(c.b).factors, factorize(to_i64(c.c())).factors);
  primes = merge_factors(primes, {{2, 1}});
  std::vector<u64> out;
  for (const auto& pp : primes) out.push_back(pp.prime);
  return out;
}

/// Invariants plus the local table at every prime dividing the discriminant.
inline Json classify_json(const CurveParams& c) {
  const auto [c4, c6] = c_invariants(c);
  Json j{{"a", c.a},
         {"b", c.b},
         {"discriminant", wide_json(discriminant(c))},
         {"conductor_polynomial", wide_json(conductor_polynomial(c))},
         {"c4", wide_json(c4)},
         {"c6", wide_json(c6)},
         {"good_reduction_at_2", good_reduction_at_2(c)},
         {"good_reduction_at_3", good_reduction_at_3(c)},
         {"in_family", in_family(c)}};
  const CurveParams img = isogeny(c);
  j["isogeny"] = Json{{"a", img.a}, {"b", img.b}};
  Json local = Json::array();
  for (u64 p : bad_primes(c)) {
    auto lr = tate_algorithm(c, p);
    if (p >= 5 && !nonminimal_at_large_prime(c.a, c.b)) {
      const auto table = kodaira_symbol_large_p(c, p);
      if (!(table.symbol == lr.symbol) || table.conductor_exponent != lr.conductor_exponent)
        throw OracleDisagreement("classify: table and Tate disagree at p = " + std::to_string(p));
    }
    local.push_back(local_reduction_json(lr));
  }
  j["local"] = std::move(local);
  const u64 cond_large = conductor(c, ConductorPolicy::LargePrimesOnly);
  j["conductor_large_primes"] = cond_large;
  j["conductor_tate"] = conductor_tate(c);
  if (in_family(c)) {
    j["conductor"] = conductor(c);
    j["index"] = index(c);
  }
  if (cond_large > 1) j["szpiro_large_primes"] = static_cast<double>(szpiro_ratio(c, ConductorPolicy::LargePrimesOnly));
  const u64 ct = conductor_tate(c);
  if (ct > 1) {
    const long double lc = std::log(static_cast<long double>(ct));
    j["szpiro"] = static_cast<double>(log_minimal_discriminant(c) / lc);
    j["avg_szpiro"] = static_cast<double>((log_minimal_discriminant(c) + log_minimal_discriminant(img)) / (2 * lc));
  }
  return j;
}

// ---------------------------------------------------------------------------
// Census

inline Json census_config_json(const CensusConfig& c) {
  Json grid = Json::array();
  for (auto x : c.grid) grid.push_back(x);
  return Json{{"grid", grid},
              {"family", to_string(c.family)},
              {"kappa", static_cast<double>(c.kappa)},
              {"order_by", to_string(c.order_by)},
              {"index_cap", c.index_cap},
              {"good_reduction_filter", c.good_reduction_filter},
              {"tate_at_2", c.tate_at_2},
              {"workers", c.workers},
              {"tail_delta", static_cast<double>(c.tail_delta)},
              {"tail_theta", static_cast<double>(c.tail_theta)},
              {"tail_kappa", static_cast<double>(c.tail_kappa)}};
}

inline void write_census_csv(std::ostream& os, const CensusReport& rep) {
  CsvWriter w(os);
  w.header({"X", "count", "predicted", "ratio", "tail_index", "tail_szpiro", "index_cap_overflow"});
  for (const auto& r : rep.rows)
    w.row({std::to_string(r.X), std::to_string(r.count), format_number(r.predicted), format_number(r.ratio),
           std::to_string(r.tail_index), std::to_string(r.tail_szpiro), std::to_string(r.index_cap_overflow)});
}

inline Json census_json(const CensusReport& rep) {
  Json rows = Json::array();
  for (const auto& r : rep.rows)
    rows.push_back(Json{{"X", r.X},
                        {"count", r.count},
                        {"predicted", static_cast<double>(r.predicted)},
                        {"ratio", static_cast<double>(r.ratio)},
                        {"tail_index", r.tail_index},
                        {"tail_szpiro", r.tail_szpiro},
                        {"index_cap_overflow", r.index_cap_overflow}});
  Json hist = Json::array();
  for (const auto& [k, v] : rep.index_histogram) hist.push_back(Json{{"index", k}, {"count", v}});
  Json anomalies = Json::array();
  for (const auto& a : rep.anomaly_examples)
    anomalies.push_back(Json{{"a", a.curve.a}, {"b", a.curve.b}, {"p", a.prime}, {"symbol", a.symbol}});
  Json j{{"config", census_config_json(rep.config)},
         {"constant", static_cast<double>(rep.constant)},
         {"curves_scanned", rep.curves_scanned},
         {"rows", rows},
         {"index_histogram", hist},
         {"anomaly_count", rep.anomaly_count},
         {"anomaly_examples", anomalies}};
  if (rep.config.order_by == OrderBy::Conductor)
    j["completeness_caveat"] = "curves with C <= X whose conductor polynomial exceeds X * index_cap are not visited";
  return j;
}

// ---------------------------------------------------------------------------
// LP sweeps

struct LpSweepRow {
  Rational delta, r;
  Rational certificate_value;  // 3/2 - 3 delta + 3 r
  Rational primal_value;       // c.x* (whether or not x* is feasible)
  Rational dual_value;         // b.y*
  Rational simplex_value;
  bool x_feasible = false;
  bool y_feasible = false;
  [[nodiscard]] bool match() const {
    return x_feasible && y_feasible && primal_value == certificate_value && dual_value == certificate_value &&
           simplex_value == certificate_value;
  }
};

inline LpSweepRow lp_sweep_row(const Rational& delta, const Rational& r) {
  const auto primal = build_primal(delta, r);
  const auto dual = build_dual(primal);
  const auto xs = primal_certificate(delta, r);
  const auto ys = dual_certificate();
  LpSweepRow row;
  row.delta = delta;
  row.r = r;
  row.certificate_value = claimed_optimum(delta, r);
  row.primal_value = objective_value(primal, xs);
  row.dual_value = objective_value(dual, ys);
  row.simplex_value = solve_simplex(primal).value;
  row.x_feasible = check_feasible(primal, xs).feasible;
  row.y_feasible = check_feasible(dual, ys).feasible;
  return row;
}

inline void write_lp_csv(std::ostream& os, const std::vector<LpSweepRow>& rows) {
  CsvWriter w(os);
  w.header({"delta", "r", "certificate_value", "simplex_value", "match", "x_feasible", "y_feasible", "dual_value"});
  for (const auto& r : rows)
    w.row({r.delta.str(), r.r.str(), r.certificate_value.str(), r.simplex_value.str(), r.match() ? "1" : "0",
           r.x_feasible ? "1" : "0", r.y_feasible ? "1" : "0", r.dual_value.str()});
}

inline Json lp_json(const LpSweepRow& r) {
  return Json{{"delta", rational_json(r.delta)},
              {"r", rational_json(r.r)},
              {"certificate_value", rational_json(r.certificate_value)},
              {"primal_certificate_value", rational_json(r.primal_value)},
              {"dual_certificate_value", rational_json(r.dual_value)},
              {"simplex_value", rational_json(r.simplex_value)},
              {"x_feasible", r.x_feasible},
              {"y_feasible", r.y_feasible},
              {"match", r.match()}};
}

// ---------------------------------------------------------------------------
// Bound corpora

inline void write_quadric_corpus_csv(std::ostream& os, const std::vector<QuadricInstance>& corpus) {
  CsvWriter w(os);
  w.header({"m11", "m12", "m13", "m22", "m23", "m33", "R1", "R2", "R3", "count", "bound"});
  for (const auto& q : corpus)
    w.row({std::to_string(q.m[0][0]), std::to_string(q.m[0][1]), std::to_string(q.m[0][2]),
           std::to_string(q.m[1][1]), std::to_string(q.m[1][2]), std::to_string(q.m[2][2]), std::to_string(q.R1),
           std::to_string(q.R2), std::to_string(q.R3), std::to_string(quadric_point_count(q.m, q.R1, q.R2, q.R3)),
           format_number(bhb_bound(q.m, q.R1, q.R2, q.R3))});
}

}  // namespace e2
