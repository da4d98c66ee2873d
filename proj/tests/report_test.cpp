#include <gtest/gtest.h>

#include <sstream>

#include "e2/report.hpp"

namespace e2 {
namespace {

TEST(Json, RationalAndWideValues) {
  EXPECT_EQ(rational_json(Rational(-3, 6)).dump(), R"({"num":"-1","den":"2"})");
  EXPECT_EQ(wide_json(i128{-5}).dump(), "-5");
  EXPECT_EQ(wide_json(i128{1} << 70).dump(), "\"1180591620717411303424\"");
}

TEST(Json, NumberFormatRoundTrips) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(std::stod(format_number(1.0 / 3)), 1.0 / 3);
}

TEST(Csv, Escaping) {
  std::ostringstream os;
  CsvWriter w(os);
  w.header({"name", "value"});
  w.row({"a,b", "say \"hi\""});
  w.row({"plain", "line\nbreak"});
  EXPECT_EQ(os.str(), "name,value\n\"a,b\",\"say \"\"hi\"\"\"\nplain,\"line\nbreak\"\n");
}

TEST(Manifest, HashDependsOnConfigOnly) {
  RunManifest m1{"census", Json{{"x", 1}}, 0, 1.5};
  RunManifest m2{"census", Json{{"x", 1}}, 0, 9.0};
  RunManifest m3{"census", Json{{"x", 2}}, 0, 1.5};
  EXPECT_EQ(m1.to_json()["input_hash"], m2.to_json()["input_hash"]);
  EXPECT_NE(m1.to_json()["input_hash"], m3.to_json()["input_hash"]);
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Classify, InvariantsForIIICurve) {
  const Json j = classify_json(make_curve(5, 5));
  EXPECT_EQ(j["discriminant"], 2000);
  EXPECT_EQ(j["c6"], -800);
  EXPECT_FALSE(j["in_family"].get<bool>());
  EXPECT_FALSE(j.contains("conductor"));
  EXPECT_EQ(j["conductor_large_primes"], 25);
  EXPECT_NEAR(j["szpiro_large_primes"].get<double>(), std::log(2000.0) / std::log(25.0), 1e-12);
}

TEST(Classify, FamilyCurveHasIndex) {
  const Json j = classify_json(make_curve(6, 5));
  EXPECT_TRUE(j["in_family"].get<bool>());
  EXPECT_EQ(j["conductor"], 5);
  EXPECT_EQ(j["index"], 16);
}

TEST(Census, JsonAndCsvAreDeterministic) {
  CensusConfig cfg;
  cfg.grid = {1000, 5000};
  const auto a = census_json(run_census(cfg)).dump();
  cfg.workers = 3;
  auto b_json = census_json(run_census(cfg));
  b_json["config"]["workers"] = 1;
  EXPECT_EQ(a, b_json.dump());
  std::ostringstream csv;
  write_census_csv(csv, run_census(cfg));
  EXPECT_EQ(csv.str().substr(0, 2), "X,");
}

TEST(Lp, SweepRowReportsMismatchForPositiveR) {
  const auto at_zero = lp_sweep_row(Rational(1, 10), 0);
  EXPECT_TRUE(at_zero.match());
  const auto positive = lp_sweep_row(Rational(1, 100), Rational(1, 102));
  EXPECT_FALSE(positive.match());
  EXPECT_FALSE(positive.x_feasible);
  EXPECT_TRUE(positive.y_feasible);
  EXPECT_EQ(positive.simplex_value, Rational(2599, 1700));
  EXPECT_EQ(lp_json(positive)["simplex_value"]["den"], "1700");
}

}  // namespace
}  // namespace e2
