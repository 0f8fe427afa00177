#pragma once

// JSON and CSV forms of the library's value types. Rationals are written as
// "p/q" strings and doubles with 17 significant digits, so a value survives a
// round trip unchanged and reruns produce identical bytes.

#include <string>

#include <json.hpp>

#include "itolab/convergence.hpp"
#include "itolab/meas_cat.hpp"
#include "itolab/path.hpp"
#include "itolab/residual.hpp"
#include "itolab/scalar.hpp"
#include "itolab/simulate.hpp"
#include "itolab/transforms.hpp"

namespace itolab {

using Json = nlohmann::ordered_json;

template <Scalar S>
Json scalar_to_json(const S& value) {
  if constexpr (is_exact<S>()) {
    return format_scalar(value);
  } else {
    return value;
  }
}

template <Scalar S>
S scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar<S>(j.get<std::string>());
  if constexpr (is_exact<S>()) {
    require(j.is_number_integer(), ErrorCode::kParse, "exact values must be integers or \"p/q\" strings");
    return S(j.get<long>());
  } else {
    require(j.is_number(), ErrorCode::kParse, "expected a number");
    return j.get<double>();
  }
}

template <Scalar S>
Json path_to_json(const SamplePath<S>& x) {
  Json times = Json::array();
  Json values = Json::array();
  for (const auto& t : x.grid().times()) times.push_back(scalar_to_json(t));
  for (const auto& v : x.values()) values.push_back(scalar_to_json(v));
  return Json{{"times", std::move(times)}, {"values", std::move(values)}, {"mode", to_string(mode_of<S>())}};
}

/// Throws parse-error on a malformed object or a mode other than S's.
template <Scalar S>
SamplePath<S> path_from_json(const Json& j) {
  require(j.is_object() && j.contains("times") && j.contains("values"), ErrorCode::kParse,
          "path JSON needs \"times\" and \"values\"");
  if (j.contains("mode")) {
    require(parse_mode(j.at("mode").get<std::string>()) == mode_of<S>(), ErrorCode::kParse,
            "path mode does not match the requested scalar mode");
  }
  std::vector<S> times, values;
  for (const auto& t : j.at("times")) times.push_back(scalar_from_json<S>(t));
  for (const auto& v : j.at("values")) values.push_back(scalar_from_json<S>(v));
  return SamplePath<S>(make_grid(std::move(times)), std::move(values));
}

/// time,value rows with 17 significant digits.
std::string path_to_csv(const SamplePath<double>& x);

template <Scalar S>
Json density_to_json(const DensityPath<S>& d) {
  Json j = path_to_json(d.path());
  j["density"] = true;
  return j;
}

template <Scalar S>
Json time_change_to_json(const TimeChangeMap<S>& phi) {
  return Json{{"sigma", phi.sigma()}, {"source_n", phi.source()->intervals()}, {"target_n", phi.target()->intervals()}};
}

/// Summary of a law report: per-axiom flags and magnitudes.
template <Scalar S>
Json report_to_json(const ResidualReport<S>& report, const FloatTolerance& tol = {}) {
  Json axioms = Json::array();
  for (const auto& a : report.axioms) {
    Json entry{{"axiom", a.axiom},
               {"exact_zero", a.exact_zero()},
               {"max_abs", scalar_to_json(a.residual.max_abs())}};
    if (a.expected) entry["deviation_from_closed_form"] = scalar_to_json(a.deviation());
    axioms.push_back(std::move(entry));
  }
  return Json{{"law", report.law},
              {"mode", to_string(mode_of<S>())},
              {"closed_form_extension", report.closed_form_extension},
              {"exact_zero", report.exact_zero()},
              {"expected_matched", report.expected_matched(tol)},
              {"max_abs", scalar_to_json(report.max_abs())},
              {"axioms", std::move(axioms)}};
}

Json convergence_to_json(const ConvergenceReport& report);
/// Columns mesh,median_abs,max_abs; one row per level.
std::string convergence_to_csv(const ConvergenceReport& report);

Json generator_spec_to_json(const GeneratorSpec& spec);
/// Missing keys keep their defaults; unknown keys are rejected.
GeneratorSpec generator_spec_from_json(const Json& j);

Json space_to_json(const meas::FiniteMeasurableSpace& space);
meas::FiniteMeasurableSpace space_from_json(const Json& j);

}  // namespace itolab
