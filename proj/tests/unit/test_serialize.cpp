#include <gtest/gtest.h>

#include "helpers.hpp"
#include "itolab/error.hpp"
#include "itolab/operad.hpp"
#include "itolab/serialize.hpp"

using namespace itolab;
using testing_support::RPath;

TEST(Serialize, RationalPathRoundTripIsExact) {
  std::mt19937_64 rng(80);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = testing_support::random_grid(1 + trial % 12, rng);
    const RPath x = testing_support::random_rational(g, 1000, rng);
    const Json j = path_to_json(x);
    EXPECT_EQ(j["mode"], "rational");
    const RPath back = path_from_json<Rational>(Json::parse(j.dump()));
    ASSERT_EQ(back, x);
  }
}

TEST(Serialize, FloatPathRoundTripIsBitExact) {
  GeneratorSpec spec;
  spec.seed = 81;
  const auto w = brownian_paths(spec, make_grid(1.0, 33), 5);
  for (const auto& p : w.paths) {
    const auto back = path_from_json<double>(Json::parse(path_to_json(p).dump()));
    ASSERT_EQ(back.values(), p.values());
    ASSERT_EQ(back.grid().times(), p.grid().times());
  }
}

TEST(Serialize, PathErrors) {
  EXPECT_THROW(path_from_json<Rational>(Json{{"times", {0, 1}}}), Error);
  const RPath x(make_grid(Rational(1), 1), {Rational(0), Rational(1)});
  EXPECT_THROW(path_from_json<double>(path_to_json(x)), Error);
  EXPECT_THROW(path_from_json<Rational>(Json{{"times", {0, 1}}, {"values", {0, 0.5}}}), Error);
  EXPECT_EQ(path_from_json<Rational>(Json{{"times", {0, "1/2"}}, {"values", {"0", "-3/6"}}}).terminal(),
            ratio<Rational>(-1, 2));
}

TEST(Serialize, ScalarFormats) {
  EXPECT_EQ(scalar_to_json(ratio<Rational>(6, 4)).get<std::string>(), "3/2");
  EXPECT_EQ(scalar_to_json(Rational(0)).get<std::string>(), "0/1");
  EXPECT_EQ(format_scalar(0.1), "0.10000000000000001");
  EXPECT_EQ(scalar_from_json<double>(Json("0.25")), 0.25);
}

TEST(Serialize, Csv) {
  const SamplePath<double> x(make_grid(1.0, 2), {0.0, 0.5, -1.0});
  EXPECT_EQ(path_to_csv(x), "time,value\n0,0\n0.5,0.5\n1,-1\n");
}

TEST(Serialize, ReportSummary) {
  const auto g = make_grid(Rational(1), 2);
  const RPath l(g, {Rational(0), ratio<Rational>(1, 2), Rational(1)});
  const auto r = check_dendriform(HParam<Rational>(ratio<Rational>(1, 2)), l, l, l);
  const Json j = report_to_json(r);
  EXPECT_EQ(j["law"], "dendriform");
  EXPECT_EQ(j["exact_zero"], false);
  EXPECT_EQ(j["expected_matched"], true);
  EXPECT_EQ(j["closed_form_extension"], true);
  EXPECT_EQ(j["axioms"].size(), 3u);
  EXPECT_EQ(j["axioms"][0]["deviation_from_closed_form"], "0/1");
  EXPECT_EQ(j["max_abs"], "1/16");
}

TEST(Serialize, GeneratorSpecRoundTrip) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::kSemimartingale;
  spec.volatility = 0.3;
  spec.seed = 123456789012345ULL;
  spec.zero_start = false;
  const auto back = generator_spec_from_json(Json::parse(generator_spec_to_json(spec).dump()));
  EXPECT_EQ(back.kind, spec.kind);
  EXPECT_EQ(back.volatility, spec.volatility);
  EXPECT_EQ(back.seed, spec.seed);
  EXPECT_EQ(back.zero_start, false);
  EXPECT_THROW(generator_spec_from_json(Json{{"sigma", 1}}), Error);
  EXPECT_THROW(generator_spec_from_json(Json{{"volatility", -1}}), Error);
  EXPECT_EQ(generator_spec_from_json(Json::object()).kind, GeneratorKind::kBrownian);
}

TEST(Serialize, SpaceRoundTrip) {
  for (const auto& s : meas::all_spaces(3)) {
    const auto back = space_from_json(Json::parse(space_to_json(s).dump()));
    ASSERT_EQ(back, s);
  }
  EXPECT_THROW(space_from_json(Json{{"points", {"a"}}, {"sigma", {{"b"}}}}), Error);
}

TEST(Serialize, TimeChangeAndDensity) {
  const auto src = make_grid(Rational(1), 3);
  const TimeChangeMap<Rational> phi(src, make_grid(Rational(1), 2), {0, 2, 3});
  const Json j = time_change_to_json(phi);
  EXPECT_EQ(j.dump(), R"({"sigma":[0,2,3],"source_n":3,"target_n":2})");
  EXPECT_EQ(density_to_json(DensityPath<Rational>::unit(src))["density"], true);
}

TEST(Serialize, ConvergenceFormats) {
  ConvergenceReport r;
  r.law = "cocycle";
  r.intervals = {4, 8, 16};
  r.mesh = {0.25, 0.125, 0.0625};
  r.median_abs = {0.5, 0.25, 0.125};
  r.max_abs = {1.0, 0.5, 0.25};
  r.slope = -1.0;
  EXPECT_EQ(convergence_to_csv(r), "mesh,median_abs,max_abs\n0.25,0.5,1\n0.125,0.25,0.5\n0.0625,0.125,0.25\n");
  const Json j = convergence_to_json(r);
  EXPECT_EQ(j["slope"], -1.0);
  EXPECT_EQ(j["medians_decreasing"], true);
  EXPECT_EQ(j["levels"].size(), 3u);
  r.slope.reset();
  EXPECT_TRUE(convergence_to_json(r)["slope"].is_null());
}
