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

// e2census: batch front end. Exit codes: 0 success, 2 bad configuration,
// 3 internal check failure.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "e2/census.hpp"
#include "e2/curve.hpp"
#include "e2/local_density.hpp"
#include "e2/lp.hpp"
#include "e2/real_density.hpp"
#include "e2/report.hpp"

namespace {

using namespace e2;

constexpr int kExitConfig = 2;
constexpr int kExitInternal = 3;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "0.01", "-3", "1/102" -> exact rational.
Rational parse_rational(const std::string& s) {
  try {
    if (auto slash = s.find('/'); slash != std::string::npos)
      return Rational(boost::multiprecision::cpp_int(s.substr(0, slash)),
                      boost::multiprecision::cpp_int(s.substr(slash + 1)));
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    if (digits.empty() || digits == "-") throw ConfigError("bad number");
    boost::multiprecision::cpp_int den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return Rational(boost::multiprecision::cpp_int(digits), den);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse rational '" + s + "'");
  }
}

struct Output {
  std::string path;
  std::string format = "json";

  void emit(const RunManifest& manifest, const Json& result, const std::string& csv = {}) const {
    if (format == "csv") {
      write(csv);
      const std::string m = manifest.to_json().dump(2) + "\n";
      if (path.empty()) std::cerr << m;
      else std::ofstream(path + ".manifest.json") << m;
      return;
    }
    Json doc{{"manifest", manifest.to_json()}, {"result", result}};
    write(doc.dump(2) + "\n");
  }

 private:
  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open output file " + path);
    os << text;
  }
};

void add_output_flags(CLI::App* sub, Output& out, bool csv_allowed) {
  sub->add_option("--out", out.path, "Output file (default stdout)");
  if (csv_allowed) sub->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Census and density toolkit for y^2 = x(x^2 + ax + b)"};
  app.require_subcommand(1);
  Output out;

  // classify
  i64 cls_a = 0, cls_b = 0;
  auto* classify = app.add_subcommand("classify", "Invariants and local reduction table of one curve");
  classify->add_option("a", cls_a)->required();
  classify->add_option("b", cls_b)->required();
  add_output_flags(classify, out, false);

  // census
  CensusConfig census_cfg;
  std::vector<i64> census_x;
  std::string census_family = "condpoly", census_order = "condpoly";
  bool no_filter = false;
  auto* census = app.add_subcommand("census", "Count family curves up to each cutoff");
  census->add_option("--x,--grid", census_x, "Cutoff(s), ascending")->required()->delimiter(',');
  census->add_option("--family", census_family)->check(CLI::IsMember({"cubefree", "kappa", "condpoly"}));
  census->add_option("--kappa", census_cfg.kappa);
  census->add_option("--order-by", census_order)->check(CLI::IsMember({"conductor", "condpoly"}));
  census->add_option("--index-cap", census_cfg.index_cap);
  census->add_option("--workers", census_cfg.workers);
  census->add_option("--tail-delta", census_cfg.tail_delta);
  census->add_option("--tail-theta", census_cfg.tail_theta);
  census->add_option("--tail-kappa", census_cfg.tail_kappa);
  census->add_flag("--no-good-reduction-filter", no_filter, "Scan all curves, not only the family");
  census->add_flag("--tate-at-2", census_cfg.tate_at_2, "Require good reduction at 2 by Tate's algorithm");
  add_output_flags(census, out, true);

  // local-density
  u64 ld_p = 5;
  std::string ld_class = "III";
  int ld_level = 0;
  bool ld_check = false;
  auto* local = app.add_subcommand("local-density", "p-adic density of a reduction class");
  local->add_option("--p", ld_p)->required();
  local->add_option("--class", ld_class, "III, I0*, III*, semistable<k> (k = v_p(C)), good");
  local->add_flag("--check", ld_check, "Compare with exhaustive count mod p^m");
  local->add_option("--m", ld_level, "Level for --check (default: minimal level)");
  local->add_option("--workers", census_cfg.workers);
  add_output_flags(local, out, false);

  // real-density
  long double rd_z = 1, rd_tol = 1e-10L;
  std::string rd_method = "closed";
  u64 rd_seed = 1, rd_samples = 4'000'000;
  bool rd_truncated = false;
  auto* real = app.add_subcommand("real-density", "Area of the real region |y(x^2 - y)| <= Z");
  real->add_option("--z", rd_z);
  real->add_option("--method", rd_method)->check(CLI::IsMember({"closed", "quad", "mc"}));
  real->add_option("--tol", rd_tol);
  real->add_option("--seed", rd_seed);
  real->add_option("--samples", rd_samples);
  real->add_flag("--truncated", rd_truncated, "Require |y|, |x^2 - y| >= 4");
  real->add_option("--workers", census_cfg.workers);
  add_output_flags(real, out, false);

  // lp
  std::string lp_delta = "0", lp_r = "0";
  bool lp_sweep = false;
  auto* lp = app.add_subcommand("lp", "Average-Szpiro linear program");
  lp->add_option("--delta", lp_delta, "Exact value, e.g. 0.01 or 1/100");
  lp->add_option("--r", lp_r);
  lp->add_flag("--sweep", lp_sweep, "Grid delta in {0, 0.01, ..., 0.1}, r in {0, 0.005, 0.01, 1/102}");
  add_output_flags(lp, out, true);

  // tails
  std::string tail_kind;
  std::vector<i64> tail_x{10000, 100000, 1000000};
  long double tail_delta = 0.1L, tail_theta = 0.25L, tail_kappa = 2.2L;
  u64 tail_cap = 10000;
  auto* tails = app.add_subcommand("tails", "Tail counts normalised by X^{3/4}");
  tails->add_option("kind", tail_kind)->required()->check(CLI::IsMember({"index", "szpiro"}));
  tails->add_option("--x", tail_x)->delimiter(',');
  tails->add_option("--delta", tail_delta);
  tails->add_option("--theta", tail_theta);
  tails->add_option("--kappa", tail_kappa);
  tails->add_option("--index-cap", tail_cap);
  tails->add_option("--workers", census_cfg.workers);
  tails->add_flag("--tate-at-2", census_cfg.tate_at_2);
  add_output_flags(tails, out, true);

  // euler
  std::string eu_family = "condpoly", eu_method = "series";
  long double eu_tol = 1e-12L;
  auto* euler = app.add_subcommand("euler", "Euler product and leading constant of a family");
  euler->add_option("--family", eu_family)->check(CLI::IsMember({"cubefree", "kappa", "condpoly"}));
  euler->add_option("--tol", eu_tol);
  euler->add_option("--method", eu_method)->check(CLI::IsMember({"series", "plain"}));
  add_output_flags(euler, out, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  const auto t0 = std::chrono::steady_clock::now();
  RunManifest manifest;
  try {
    if (*classify) {
      manifest.subcommand = "classify";
      manifest.config = Json{{"a", cls_a}, {"b", cls_b}};
      CurveParams c;
      try {
        c = make_curve(cls_a, cls_b);
      } catch (const InvalidCurve& e) {
        throw ConfigError(e.what());
      }
      const Json result = classify_json(c);
      manifest.wall_seconds = seconds_since(t0);
      out.emit(manifest, result);
    } else if (*census) {
      census_cfg.grid = census_x;
      census_cfg.family = parse_family(census_family);
      census_cfg.order_by = parse_order_by(census_order);
      census_cfg.good_reduction_filter = !no_filter;
      try {
        census_cfg.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      manifest.subcommand = "census";
      manifest.config = census_config_json(census_cfg);
      const auto rep = run_census(census_cfg);
      std::ostringstream csv;
      write_census_csv(csv, rep);
      manifest.wall_seconds = seconds_since(t0);
      out.emit(manifest, census_json(rep), csv.str());
    } else if (*local) {
      manifest.subcommand = "local-density";
      manifest.config = Json{{"p", ld_p}, {"class", ld_class}, {"check", ld_check}, {"m", ld_level}};
      Json result{{"p", ld_p}};
      if (ld_class == "good") {
        result["class"] = "good";
        result["density"] = rational_json(density_good(ld_p));
      } else {
        DensityClass cls;
        Rational expected;
        try {
          cls = parse_density_class(ld_class);
          expected = density_kodaira(ld_p, cls);
        } catch (const std::invalid_argument& e) {
          throw ConfigError(e.what());
        }
        result["class"] = cls.name();
        result["density"] = rational_json(expected);
        if (ld_check) {
          const int m = ld_level > 0 ? ld_level : cls.min_level();
          const Rational empirical = density_empirical(ld_p, m, cls, census_cfg.workers);
          result["level"] = m;
          result["empirical"] = rational_json(empirical);
          result["match"] = empirical == expected;
          if (empirical != expected) {
            manifest.wall_seconds = seconds_since(t0);
            out.emit(manifest, result);
            throw OracleDisagreement("local density: exhaustive count differs from the formula");
          }
        }
      }
      manifest.wall_seconds = seconds_since(t0);
      out.emit(manifest, result);
    } else if (*real) {
      manifest.subcommand = "real-density";
      manifest.seed = rd_seed;
      manifest.config = Json{{"z", static_cast<double>(rd_z)},
                             {"method", rd_method},
                             {"tol", static_cast<double>(rd_tol)},
                             {"truncated", rd_truncated},
                             {"samples", rd_samples}};
      if (!(rd_z > 0)) throw ConfigError("--z must be positive");
      Json result{{"z", static_cast<double>(rd_z)}, {"method", rd_method}};
      if (rd_method == "closed") {
        if (rd_truncated) throw ConfigError("closed form covers the untruncated region only");
        result["area"] = static_cast<double>(area_closed_form(rd_z));
      } else if (rd_method == "quad") {
        result["area"] = static_cast<double>(area_quadrature(rd_z, rd_tol, rd_truncated));
        result["truncated"] = rd_truncated;
      } else {
        const auto mc = area_monte_carlo(rd_z, rd_samples, rd_seed, census_cfg.workers);
        result["area"] = static_cast<double>(mc.estimate);
        result["stderr"] = static_cast<double>(mc.stderr_);
        result["truncated"] = true;
      }
      manifest.wall_seconds = seconds_since(t0);
      out.emit(manifest, result);
    } else if (*lp) {
      manifest.subcommand = "lp";
      manifest.config = Json{{"delta", lp_delta}, {"r", lp_r}, {"sweep", lp_sweep}};
      std::vector<LpSweepRow> rows;
      try {
        if (lp_sweep) {
          const std::vector<Rational> rs{0, Rational(1, 200), Rational(1, 100), Rational(1, 102)};
          for (int k = 0; k <= 10; ++k)
            for (const auto& r : rs) rows.push_back(lp_sweep_row(Rational(k, 100), r));
        } else {
          rows.push_back(lp_sweep_row(parse_rational(lp_delta), parse_rational(lp_r)));
        }
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      Json result = Json::array();
      for (const auto& r : rows) result.push_back(lp_json(r));
      std::ostringstream csv;
      write_lp_csv(csv, rows);
      manifest.wall_seconds = seconds_since(t0);
      out.emit(manifest, lp_sweep ? result : result[0], csv.str());
    } else if (*tails) {
      manifest.subcommand = "tails";
      manifest.config = Json{{"kind", tail_kind},
                             {"x", tail_x},
                             {"delta", static_cast<double>(tail_delta)},
                             {"theta", static_cast<double>(tail_theta)},
                             {"kappa", static_cast<double>(tail_kappa)},
                             {"index_cap", tail_cap},
                             {"tate_at_2", census_cfg.tate_at_2}};
      Json result = Json::array();
      std::ostringstream csv;
      CsvWriter w(csv);
      w.header({"X", "tail", "normalized"});
      for (i64 X : tail_x) {
        u64 n = 0;
        try {
          n = tail_kind == "index"
                  ? tail_count_index(X, tail_delta, tail_cap, census_cfg.workers, census_cfg.tate_at_2)
                  : tail_count_szpiro(X, tail_theta, tail_kappa, tail_cap, census_cfg.workers, census_cfg.tate_at_2);
        } catch (const std::invalid_argument& e) {
          throw ConfigError(e.what());
        }
        const double norm = static_cast<double>(n) / std::pow(static_cast<double>(X), 0.75);
        result.push_back(Json{{"X", X}, {"tail", n}, {"normalized", norm}});
        w.row({std::to_string(X), std::to_string(n), format_number(norm)});
      }
      manifest.wall_seconds = seconds_since(t0);
      out.emit(manifest, result, csv.str());
    } else if (*euler) {
      manifest.subcommand = "euler";
      manifest.config = Json{{"family", eu_family}, {"tol", static_cast<double>(eu_tol)}, {"method", eu_method}};
      if (!(eu_tol > 0)) throw ConfigError("--tol must be positive");
      const Family fam = parse_family(eu_family);
      const auto ep = euler_product(fam, eu_tol, eu_method == "plain" ? ProductMethod::Plain : ProductMethod::SeriesTail);
      const Json result{{"family", eu_family},
                        {"euler_product", static_cast<double>(ep.value)},
                        {"cutoff", ep.cutoff},
                        {"tail_bound", static_cast<double>(ep.tail_bound)},
                        {"prefactor", static_cast<double>(main_term_prefactor())},
                        {"constant", static_cast<double>(main_term_prefactor() * ep.value)}};
      manifest.wall_seconds = seconds_since(t0);
      out.emit(manifest, result);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const OracleDisagreement& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
