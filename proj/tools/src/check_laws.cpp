#include "itolab_cli/check_laws.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "itolab/deformation.hpp"
#include "itolab/ito.hpp"
#include "itolab/operad.hpp"
#include "itolab/parallel.hpp"
#include "itolab/transforms.hpp"

namespace itolab::cli {

namespace {

struct LawInfo {
  const char* name;
  bool uses_h;
};

constexpr LawInfo kLaws[] = {
    {"ito-stratonovich", false},     {"tridendriform", false},        {"star", true},
    {"dendriform", true},            {"zinbiel", false},              {"pre-lie", true},
    {"h-associativity", true},       {"hochschild-cocycle", false},   {"multiplicativity", true},
    {"d-squared", false},            {"stopping-endomorphism", true}, {"time-change-morphism", true},
    {"girsanov-module", false},      {"girsanov-functor", false},
};

bool law_uses_h(const std::string& name) {
  for (const auto& law : kLaws) {
    if (name == law.name) return law.uses_h;
  }
  return false;
}

/// X |- Y evaluated with right endpoints; a deliberately wrong operation.
template <Scalar S>
SamplePath<S> backward_succ(const SamplePath<S>& x, const SamplePath<S>& y) {
  return h_integral(HParam<S>(S(1)), x, y);
}

template <Scalar S>
struct Instance {
  const SamplePath<S>& x;
  const SamplePath<S>& y;
  const SamplePath<S>& z;
  std::optional<HParam<S>> h;
  std::uint64_t seed;
  std::size_t member;
  long bound;
  const TridendriformOps<S>& ops;
};

template <Scalar S>
GridPtr<S> random_target_grid(std::size_t n, long bound, std::mt19937_64& rng) {
  std::vector<S> times{S(0)};
  std::uniform_int_distribution<long> step(1, bound);
  for (std::size_t j = 0; j < n; ++j) times.push_back(S(times.back() + ratio<S>(step(rng), bound)));
  return make_grid(std::move(times));
}

template <Scalar S>
DensityPath<S> instance_density(const Instance<S>& in, const SamplePath<S>& driver, std::uint64_t offset) {
  if constexpr (is_exact<S>()) {
    return rational_density(in.x.grid_ptr(), in.bound, in.seed, in.member + offset);
  } else {
    return exponential_density(driver, 1.0);
  }
}

template <Scalar S>
ResidualReport<S> evaluate(const std::string& law, const Instance<S>& in) {
  const auto& x = in.x;
  const auto& y = in.y;
  const auto& z = in.z;
  if (law == "ito-stratonovich") {
    ResidualReport<S> r;
    r.law = law;
    r.input_scale = magnitude_of<S>({&x, &y});
    r.add("X o Y - X . Y = [X,Y]/2",
          stratonovich_integral(x, y) - ito_integral(x, y) - scale(ratio<S>(1, 2), quadratic_covariation(x, y)));
    return r;
  }
  if (law == "tridendriform") return check_tridendriform(x, y, z, in.ops);
  if (law == "star") return check_star(*in.h, x, y, in.ops);
  if (law == "dendriform") return check_dendriform(*in.h, x, y, z);
  if (law == "zinbiel") return check_zinbiel(x, y);
  if (law == "pre-lie") return check_prelie(*in.h, x, y);
  if (law == "h-associativity") return h_associativity_residual(*in.h, x, y, z);
  if (law == "hochschild-cocycle") return cocycle_residual(x, y, z);
  if (law == "multiplicativity") return multiplicativity_residual(*in.h, x, y, z);
  if (law == "d-squared") {
    const std::function<SamplePath<S>(const SamplePath<S>&)> g = [&z](const SamplePath<S>& p) {
      return ito_integral(z, p);
    };
    return d_squared_residual(g, x, y, z);
  }
  if (law == "stopping-endomorphism") {
    auto rng = member_rng(in.seed, in.member, 0x5701);
    const std::size_t tau = std::uniform_int_distribution<std::size_t>(0, x.intervals())(rng);
    return check_stopping_endomorphism(tau, *in.h, x, y, std::optional<SamplePath<S>>(z));
  }
  if (law == "time-change-morphism") {
    auto rng = member_rng(in.seed, in.member, 0x7C01);
    const auto phi = TimeChangeMap<S>::between(x.grid_ptr(), random_target_grid<S>(x.intervals(), in.bound, rng));
    return check_time_change_morphism(phi, *in.h, x, y);
  }
  if (law == "girsanov-module") return girsanov_module_residual(instance_density(in, z, 0), y, x);
  if (law == "girsanov-functor") {
    return girsanov_functor_residual(instance_density(in, z, 0), instance_density(in, y, 1'000'003), x);
  }
  fail(ErrorCode::kInvalidArgument, "unknown law '" + law + "'");
}

template <Scalar S>
bool axiom_matched(const ResidualReport<S>& r, const AxiomResidual<S>& a, const FloatTolerance& tol) {
  if constexpr (is_exact<S>()) {
    return is_zero(a.deviation());
  } else {
    return a.deviation() <= tol.bound(r.input_scale);
  }
}

template <Scalar S>
struct TaskResult {
  std::vector<S> axiom_max;
  std::vector<bool> axiom_exact;
  std::vector<bool> axiom_matched;
  std::vector<std::string> axiom_names;
  bool closed_form = false;
  bool matched = true;
  std::optional<Json> failure;
};

struct Task {
  std::size_t grid;
  std::size_t instance;
  std::optional<std::size_t> h;
};

std::uint64_t slot_seed(std::uint64_t seed, std::size_t n, std::size_t slot) {
  return member_rng(seed, n, 0xE000 + slot)();
}

template <Scalar S>
std::vector<PathEnsemble<S>> make_inputs(const CheckConfig& config, const GridPtr<S>& grid) {
  std::vector<PathEnsemble<S>> slots;
  for (std::size_t s = 0; s < 3; ++s) {
    const std::uint64_t seed = slot_seed(config.seed, grid->intervals(), s);
    if constexpr (is_exact<S>()) {
      slots.push_back(rational_paths<S>(config.bound, grid, config.instances, true, seed));
    } else {
      GeneratorSpec spec = config.generator;
      spec.seed = seed;
      spec.zero_start = true;
      slots.push_back(generate<S>(spec, grid, config.instances));
    }
  }
  return slots;
}

template <Scalar S>
CheckOutcome run_typed(const CheckConfig& config) {
  const FloatTolerance tol;
  TridendriformOps<S> ops;
  if (config.fault == "succ-backward") ops.succ_op = &backward_succ<S>;

  std::vector<HParam<S>> hs;
  for (const auto& text : config.h) hs.emplace_back(parse_scalar<S>(text));

  std::vector<GridPtr<S>> grids;
  std::vector<std::vector<PathEnsemble<S>>> inputs;
  for (std::size_t n : config.intervals) {
    grids.push_back(make_grid(S(1), n));
    inputs.push_back(make_inputs<S>(config, grids.back()));
  }

  const auto& names = config.laws.empty() ? check_law_names() : config.laws;
  CheckOutcome outcome;
  Json law_list = Json::array();
  for (const auto& law : names) {
    const bool uses_h = law_uses_h(law);
    std::vector<Task> tasks;
    for (std::size_t g = 0; g < grids.size(); ++g) {
      const std::size_t h_count = uses_h ? hs.size() : 1;
      for (std::size_t k = 0; k < h_count; ++k) {
        for (std::size_t i = 0; i < config.instances; ++i) {
          tasks.push_back(Task{g, i, uses_h ? std::optional<std::size_t>(k) : std::nullopt});
        }
      }
    }

    std::vector<TaskResult<S>> results(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t t) {
      const Task& task = tasks[t];
      const auto& slots = inputs[task.grid];
      const Instance<S> in{slots[0].paths[task.instance],
                           slots[1].paths[task.instance],
                           slots[2].paths[task.instance],
                           task.h ? std::optional<HParam<S>>(hs[*task.h]) : std::nullopt,
                           slot_seed(config.seed, grids[task.grid]->intervals(), 3),
                           task.instance,
                           config.bound,
                           ops};
      const ResidualReport<S> report = evaluate(law, in);
      TaskResult<S>& out = results[t];
      out.closed_form = report.closed_form_extension;
      for (const auto& a : report.axioms) {
        out.axiom_names.push_back(a.axiom);
        out.axiom_max.push_back(a.residual.max_abs());
        out.axiom_exact.push_back(a.exact_zero());
        out.axiom_matched.push_back(axiom_matched(report, a, tol));
        out.matched = out.matched && out.axiom_matched.back();
      }
      if (!out.matched) {
        out.failure = Json{{"intervals", grids[task.grid]->intervals()},
                           {"instance", task.instance},
                           {"h", task.h ? Json(config.h[*task.h]) : Json(nullptr)},
                           {"report", report_to_json(report, tol)},
                           {"inputs", Json{{"X", path_to_json(in.x)}, {"Y", path_to_json(in.y)}, {"Z", path_to_json(in.z)}}}};
      }
    });

    LawOutcome lo;
    lo.law = law;
    lo.checked = tasks.size();
    std::vector<S> axiom_max;
    std::vector<bool> axiom_exact, axiom_ok;
    std::vector<std::string> axiom_names;
    bool closed_form = false;
    Json first_failure = nullptr;
    for (const auto& r : results) {
      if (axiom_names.empty()) {
        axiom_names = r.axiom_names;
        axiom_max.assign(r.axiom_names.size(), S(0));
        axiom_exact.assign(r.axiom_names.size(), true);
        axiom_ok.assign(r.axiom_names.size(), true);
      }
      closed_form = closed_form || r.closed_form;
      for (std::size_t k = 0; k < axiom_names.size(); ++k) {
        if (axiom_max[k] < r.axiom_max[k]) axiom_max[k] = r.axiom_max[k];
        axiom_exact[k] = axiom_exact[k] && r.axiom_exact[k];
        axiom_ok[k] = axiom_ok[k] && r.axiom_matched[k];
      }
      if (!r.matched && first_failure.is_null()) first_failure = *r.failure;
      lo.passed = lo.passed && r.matched;
    }
    Json axioms = Json::array();
    bool all_exact = true;
    S overall(0);
    for (std::size_t k = 0; k < axiom_names.size(); ++k) {
      axioms.push_back(Json{{"axiom", axiom_names[k]},
                            {"max_abs", scalar_to_json(axiom_max[k])},
                            {"exact_zero", static_cast<bool>(axiom_exact[k])},
                            {"expected_matched", static_cast<bool>(axiom_ok[k])}});
      all_exact = all_exact && axiom_exact[k];
      if (overall < axiom_max[k]) overall = axiom_max[k];
    }
    lo.report = Json{{"law", law},
                     {"mode", to_string(mode_of<S>())},
                     {"seed", config.seed},
                     {"instances", config.instances},
                     {"intervals", config.intervals},
                     {"h", uses_h ? Json(config.h) : Json(nullptr)},
                     {"checked", lo.checked},
                     {"closed_form_extension", closed_form},
                     {"passed", lo.passed},
                     {"exact_zero", all_exact},
                     {"max_abs", scalar_to_json(overall)},
                     {"axioms", std::move(axioms)},
                     {"first_failure", std::move(first_failure)}};
    law_list.push_back(Json{{"law", law}, {"passed", lo.passed}, {"checked", lo.checked}, {"exact_zero", all_exact}});
    outcome.passed = outcome.passed && lo.passed;
    outcome.laws.push_back(std::move(lo));
  }
  outcome.summary = Json{{"mode", to_string(mode_of<S>())},
                         {"seed", config.seed},
                         {"instances", config.instances},
                         {"intervals", config.intervals},
                         {"h", config.h},
                         {"fault", config.fault.empty() ? Json(nullptr) : Json(config.fault)},
                         {"passed", outcome.passed},
                         {"laws", std::move(law_list)}};
  return outcome;
}

template <class T>
T read_value(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

const std::vector<std::string>& check_law_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& law : kLaws) out.emplace_back(law.name);
    return out;
  }();
  return names;
}

CheckConfig check_config_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::kParse, "config must be a JSON object");
  static const std::set<std::string> known = {"mode", "seed",  "instances", "intervals", "h",
                                              "laws", "bound", "fault",     "generator"};
  for (const auto& [key, value] : j.items()) {
    require(known.count(key) == 1, ErrorCode::kParse, "unknown config key '" + key + "'");
  }
  CheckConfig c;
  if (j.contains("mode")) c.mode = parse_mode(read_value<std::string>(j, "mode"));
  if (j.contains("seed")) c.seed = read_value<std::uint64_t>(j, "seed");
  if (j.contains("instances")) c.instances = read_value<std::size_t>(j, "instances");
  if (j.contains("intervals")) c.intervals = read_value<std::vector<std::size_t>>(j, "intervals");
  if (j.contains("h")) {
    c.h.clear();
    for (const auto& v : j.at("h")) {
      if (v.is_string()) {
        c.h.push_back(v.get<std::string>());
      } else if (v.is_number_integer()) {
        c.h.push_back(std::to_string(v.get<long>()));
      } else if (v.is_number()) {
        c.h.push_back(v.dump());
      } else {
        fail(ErrorCode::kParse, "h values must be numbers or strings");
      }
    }
  }
  if (j.contains("laws")) c.laws = read_value<std::vector<std::string>>(j, "laws");
  if (j.contains("bound")) c.bound = read_value<long>(j, "bound");
  if (j.contains("fault")) c.fault = read_value<std::string>(j, "fault");
  if (j.contains("generator")) c.generator = generator_spec_from_json(j.at("generator"));
  return c;
}

void validate(const CheckConfig& config) {
  require(config.instances >= 1, ErrorCode::kInvalidArgument, "instances must be at least 1");
  require(!config.intervals.empty(), ErrorCode::kInvalidArgument, "at least one grid size is needed");
  for (std::size_t n : config.intervals) require(n >= 1, ErrorCode::kInvalidArgument, "grid sizes must be >= 1");
  require(config.bound >= 1, ErrorCode::kInvalidArgument, "bound must be at least 1");
  require(config.fault.empty() || config.fault == "succ-backward", ErrorCode::kInvalidArgument,
          "unknown fault '" + config.fault + "'");
  for (const auto& law : config.laws) {
    const auto& all = check_law_names();
    require(std::find(all.begin(), all.end(), law) != all.end(), ErrorCode::kInvalidArgument,
            "unknown law '" + law + "'");
  }
  require(!config.h.empty(), ErrorCode::kInvalidArgument, "at least one h value is needed");
  for (const auto& text : config.h) {
    if (config.mode == ScalarMode::kRational) {
      HParam<Rational> checked(parse_scalar<Rational>(text));
    } else {
      HParam<double> checked(parse_scalar<double>(text));
    }
  }
}

CheckOutcome run_check_laws(const CheckConfig& config) {
  validate(config);
  if (config.mode == ScalarMode::kRational) return run_typed<Rational>(config);
  return run_typed<double>(config);
}

}  // namespace itolab::cli
