#include "itolab/serialize.hpp"

#include <set>
#include <sstream>

namespace itolab {

std::string path_to_csv(const SamplePath<double>& x) {
  std::string out = "time,value\n";
  for (std::size_t j = 0; j < x.size(); ++j) {
    out += format_scalar(x.grid()[j]) + "," + format_scalar(x[j]) + "\n";
  }
  return out;
}

Json convergence_to_json(const ConvergenceReport& report) {
  Json levels = Json::array();
  for (std::size_t i = 0; i < report.intervals.size(); ++i) {
    levels.push_back(Json{{"intervals", report.intervals[i]},
                          {"mesh", report.mesh[i]},
                          {"median_abs", report.median_abs[i]},
                          {"max_abs", report.max_abs[i]}});
  }
  Json j{{"law", report.law},
         {"h", report.h},
         {"count", report.count},
         {"seed", report.seed},
         {"levels", std::move(levels)},
         {"medians_decreasing", report.medians_decreasing()}};
  j["slope"] = report.slope ? Json(*report.slope) : Json(nullptr);
  return j;
}

std::string convergence_to_csv(const ConvergenceReport& report) {
  std::string out = "mesh,median_abs,max_abs\n";
  for (std::size_t i = 0; i < report.intervals.size(); ++i) {
    out += format_scalar(report.mesh[i]) + "," + format_scalar(report.median_abs[i]) + "," +
           format_scalar(report.max_abs[i]) + "\n";
  }
  return out;
}

Json generator_spec_to_json(const GeneratorSpec& spec) {
  return Json{{"kind", std::string(to_string(spec.kind))},
              {"volatility", spec.volatility},
              {"horizon", spec.horizon},
              {"drift_degree", spec.drift_degree},
              {"drift_scale", spec.drift_scale},
              {"denominator_bound", spec.denominator_bound},
              {"zero_start", spec.zero_start},
              {"seed", spec.seed}};
}

GeneratorSpec generator_spec_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::kParse, "generator spec must be a JSON object");
  static const std::set<std::string> known = {"kind",        "volatility",        "horizon",    "drift_degree",
                                              "drift_scale", "denominator_bound", "zero_start", "seed"};
  for (const auto& [key, value] : j.items()) {
    require(known.count(key) == 1, ErrorCode::kParse, "unknown generator key '" + key + "'");
  }
  GeneratorSpec spec;
  try {
    if (j.contains("kind")) spec.kind = parse_generator_kind(j.at("kind").get<std::string>());
    spec.volatility = j.value("volatility", spec.volatility);
    spec.horizon = j.value("horizon", spec.horizon);
    spec.drift_degree = j.value("drift_degree", spec.drift_degree);
    spec.drift_scale = j.value("drift_scale", spec.drift_scale);
    spec.denominator_bound = j.value("denominator_bound", spec.denominator_bound);
    spec.zero_start = j.value("zero_start", spec.zero_start);
    spec.seed = j.value("seed", spec.seed);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("generator spec: ") + e.what());
  }
  require(spec.volatility > 0 && spec.horizon > 0, ErrorCode::kInvalidArgument,
          "volatility and horizon must be positive");
  require(spec.denominator_bound >= 1, ErrorCode::kInvalidArgument, "denominator_bound must be at least 1");
  require(spec.drift_degree >= 0, ErrorCode::kInvalidArgument, "drift_degree must be non-negative");
  return spec;
}

Json space_to_json(const meas::FiniteMeasurableSpace& space) {
  Json sigma = Json::array();
  for (meas::Mask s : space.sigma()) {
    Json members = Json::array();
    for (std::size_t p = 0; p < space.size(); ++p) {
      if ((s >> p) & 1u) members.push_back(space.points()[p]);
    }
    sigma.push_back(std::move(members));
  }
  return Json{{"points", space.points()}, {"sigma", std::move(sigma)}};
}

meas::FiniteMeasurableSpace space_from_json(const Json& j) {
  require(j.is_object() && j.contains("points") && j.contains("sigma"), ErrorCode::kParse,
          "space JSON needs \"points\" and \"sigma\"");
  std::vector<std::string> points;
  try {
    points = j.at("points").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("space points: ") + e.what());
  }
  std::vector<meas::Mask> sigma;
  for (const auto& set : j.at("sigma")) {
    meas::Mask m = 0;
    for (const auto& label : set) {
      const auto it = std::find(points.begin(), points.end(), label.get<std::string>());
      require(it != points.end(), ErrorCode::kParse, "sigma mentions unknown point " + label.dump());
      m |= meas::Mask{1} << (it - points.begin());
    }
    sigma.push_back(m);
  }
  return meas::FiniteMeasurableSpace(std::move(points), std::move(sigma));
}

}  // namespace itolab
