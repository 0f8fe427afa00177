#include "itolab_cli/app.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "itolab/convergence.hpp"
#include "itolab/error.hpp"
#include "itolab/meas_cat.hpp"
#include "itolab/serialize.hpp"
#include "itolab/simulate.hpp"
#include "itolab/transforms.hpp"
#include "itolab_cli/check_laws.hpp"

namespace itolab::cli {

namespace {

namespace fs = std::filesystem;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string mode;
  std::string out;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON config file")->check(CLI::ExistingFile);
  sub->add_option("--seed", c.seed, "RNG seed");
  sub->add_option("--mode", c.mode, "scalar mode")->check(CLI::IsMember({"rational", "float64"}));
  sub->add_option("--out", c.out, "output directory");
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kParse, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, path + ": " + e.what());
  }
}

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
  fs::create_directories(dir);
  const fs::path path = fs::path(dir) / name;
  std::ofstream file(path, std::ios::binary);
  require(static_cast<bool>(file), ErrorCode::kInvalidArgument, "cannot write " + path.string());
  file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string short_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string file_stem(std::string text) {
  for (char& c : text) {
    if (c == '/' || c == '.') c = '_';
  }
  return text;
}

// ---------------------------------------------------------------------------

int cmd_check_laws(const Common& common, const std::vector<std::string>& laws, const std::vector<std::string>& hs,
                   std::optional<std::size_t> instances, std::ostream& out, std::ostream& err) {
  CheckConfig config = common.config.empty() ? CheckConfig{} : check_config_from_json(load_json(common.config));
  if (common.seed) config.seed = *common.seed;
  if (!common.mode.empty()) config.mode = parse_mode(common.mode);
  if (!laws.empty()) config.laws = laws;
  if (!hs.empty()) config.h = hs;
  if (instances) config.instances = *instances;

  const CheckOutcome outcome = run_check_laws(config);
  for (const auto& law : outcome.laws) {
    const bool exact = law.report.at("exact_zero").get<bool>();
    out << (law.passed ? "ok     " : "FAILED ") << law.law << "  " << law.checked << " instances, "
        << (law.passed ? (exact ? "residuals identically zero" : "closed forms matched") : "law violated") << "\n";
    if (!law.passed) {
      const Json& f = law.report.at("first_failure");
      err << law.law << ": first failure at n=" << f.at("intervals") << " instance " << f.at("instance")
          << " h=" << f.at("h").dump() << "\n";
    }
  }
  if (!common.out.empty()) {
    for (const auto& law : outcome.laws) write_file(common.out, law.law + ".json", dump(law.report));
    write_file(common.out, "summary.json", dump(outcome.summary));
  }
  out << (outcome.passed ? "all laws hold" : "law violations found") << "\n";
  return outcome.passed ? kExitOk : kExitLawViolation;
}

// ---------------------------------------------------------------------------

struct ConvergeConfig {
  GeneratorSpec generator;
  std::vector<std::size_t> meshes{64, 256, 1024};
  std::size_t count = 200;
  std::vector<std::string> laws;
  std::vector<double> h{0.5};
};

ConvergeConfig converge_config_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::kParse, "config must be a JSON object");
  static const std::set<std::string> known = {"generator", "meshes", "count", "laws", "h", "seed", "mode"};
  for (const auto& [key, value] : j.items()) {
    require(known.count(key) == 1, ErrorCode::kParse, "unknown config key '" + key + "'");
  }
  ConvergeConfig c;
  try {
    if (j.contains("generator")) c.generator = generator_spec_from_json(j.at("generator"));
    if (j.contains("meshes")) c.meshes = j.at("meshes").get<std::vector<std::size_t>>();
    if (j.contains("count")) c.count = j.at("count").get<std::size_t>();
    if (j.contains("laws")) c.laws = j.at("laws").get<std::vector<std::string>>();
    if (j.contains("h")) {
      c.h.clear();
      for (const auto& v : j.at("h")) c.h.push_back(v.is_string() ? parse_scalar<double>(v.get<std::string>()) : v.get<double>());
    }
    if (j.contains("seed")) c.generator.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("mode")) {
      require(j.at("mode").get<std::string>() == "float64", ErrorCode::kInvalidArgument,
              "convergence studies run in float64 mode");
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("converge config: ") + e.what());
  }
  return c;
}

int cmd_converge(const Common& common, const std::vector<std::string>& laws, const std::vector<std::string>& hs,
                 const std::vector<std::size_t>& meshes, std::optional<std::size_t> count, std::ostream& out) {
  ConvergeConfig config = common.config.empty() ? ConvergeConfig{} : converge_config_from_json(load_json(common.config));
  require(common.mode.empty() || common.mode == "float64", ErrorCode::kInvalidArgument,
          "convergence studies run in float64 mode");
  if (common.seed) config.generator.seed = *common.seed;
  if (!laws.empty()) config.laws = laws;
  if (!meshes.empty()) config.meshes = meshes;
  if (count) config.count = *count;
  if (!hs.empty()) {
    config.h.clear();
    for (const auto& text : hs) config.h.push_back(parse_scalar<double>(text));
  }
  if (config.laws.empty()) config.laws = convergence_laws();
  require(config.meshes.size() >= 3, ErrorCode::kInvalidArgument, "a convergence study needs at least three meshes");
  for (double h : config.h) HParam<double> checked(h);
  for (const auto& law : config.laws) convergence_law_uses_h(law);

  std::vector<std::pair<std::string, ConvergenceReport>> reports;
  for (const auto& law : config.laws) {
    const bool uses_h = convergence_law_uses_h(law);
    const std::vector<double> h_values = uses_h ? config.h : std::vector<double>{0.5};
    for (double h : h_values) {
      std::string stem = law;
      if (uses_h && config.h.size() > 1) stem += "_h" + file_stem(format_scalar(h));
      reports.emplace_back(stem, convergence_study(law, config.generator, config.meshes, config.count, h));
    }
  }
  for (const auto& [stem, r] : reports) {
    out << stem << ":";
    for (std::size_t i = 0; i < r.intervals.size(); ++i) out << " n=" << r.intervals[i] << " median=" << short_double(r.median_abs[i]);
    out << " slope=" << (r.slope ? short_double(*r.slope) : std::string("n/a"))
        << (r.medians_decreasing() ? "" : " (medians not decreasing)") << "\n";
  }
  if (!common.out.empty()) {
    for (const auto& [stem, r] : reports) {
      write_file(common.out, stem + ".csv", convergence_to_csv(r));
      write_file(common.out, stem + ".json", dump(convergence_to_json(r)));
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_lattice(std::size_t n, bool dot, const std::string& out_dir, std::ostream& out) {
  const meas::SigmaLattice lattice(n);
  if (dot) {
    out << lattice.to_dot();
  } else {
    std::string why;
    const bool complete = lattice.verify_complete(&why);
    out << lattice.size() << " sigma-algebras on " << n << (n == 1 ? " point" : " points") << "\n";
    out << "complete lattice under inclusion: " << (complete ? "yes" : "no (" + why + ")") << "\n";
    if (!complete) return kExitLawViolation;
  }
  if (!out_dir.empty()) write_file(out_dir, "lattice_" + std::to_string(n) + ".dot", lattice.to_dot());
  return kExitOk;
}

int cmd_product_demo(const std::string& out_dir, std::ostream& out) {
  const auto a = meas::discrete_functor({"a", "b"});
  const auto b = meas::discrete_functor({"x", "y"});
  const meas::Cone product = meas::product_space(a, b);
  const meas::FiniteMeasurableSpace pair[] = {a, b};
  const auto tests = meas::all_spaces(2);
  const auto w = meas::verify_universal_property(meas::UniversalKind::kProduct, pair, {}, tests);
  const bool power_set = product.apex.sigma().size() == (std::size_t{1} << product.apex.size());
  out << "product of " << meas::describe(a) << "\n       and " << meas::describe(b) << "\n";
  out << product.apex.size() << " points, " << product.apex.sigma().size() << " measurable sets"
      << (power_set ? " (the full power set)" : "") << "\n";
  out << "universal property: " << (w.holds ? "holds" : "fails: " + w.failure) << " (" << w.cones << " cones over "
      << w.test_objects << " test objects, " << w.candidates_searched << " candidate mediators)\n";
  if (!out_dir.empty()) {
    write_file(out_dir, "product_demo.json",
               dump(Json{{"left", space_to_json(a)}, {"right", space_to_json(b)}, {"product", space_to_json(product.apex)},
                         {"universal_property_holds", w.holds}}));
  }
  return w.holds ? kExitOk : kExitLawViolation;
}

int cmd_universal(std::size_t max_points, const std::string& out_dir, std::ostream& out) {
  const auto witnesses = meas::verify_universal_exhaustive(max_points);
  bool all = true;
  Json report = Json::array();
  for (const auto& w : witnesses) {
    out << meas::to_string(w.kind) << ": " << (w.holds ? "holds" : "fails: " + w.failure) << " (" << w.diagrams
        << " diagrams, " << w.cones << " cones, " << w.candidates_searched << " candidate mediators)\n";
    all = all && w.holds;
    report.push_back(Json{{"kind", meas::to_string(w.kind)},
                          {"holds", w.holds},
                          {"diagrams", w.diagrams},
                          {"test_objects", w.test_objects},
                          {"cones", w.cones},
                          {"candidates_searched", w.candidates_searched},
                          {"failure", w.failure}});
  }
  if (!out_dir.empty()) write_file(out_dir, "universal.json", dump(Json{{"max_points", max_points}, {"witnesses", report}}));
  return all ? kExitOk : kExitLawViolation;
}

int cmd_adjunction(std::size_t max_points, const std::string& out_dir, std::ostream& out) {
  const auto r = meas::verify_adjunctions(max_points);
  auto line = [&](const char* what, bool ok) { out << what << ": " << (ok ? "yes" : "no") << "\n"; };
  line("U L = id on carriers", r.ul_identity);
  line("U R = id on carriers", r.ur_identity);
  line("L left adjoint to U", r.left_adjunction);
  line("R right adjoint to U", r.right_adjunction);
  line("L fully faithful (|Hom(LA,LB)| = |B|^|A|)", r.discrete_full);
  line("R fully faithful (|Hom(RA,RB)| = |B|^|A|)", r.indiscrete_full);
  out << r.pairs_checked << " (set, space) pairs checked\n";
  if (!r.all()) out << "first failure: " << r.failure << "\n";
  if (!out_dir.empty()) {
    write_file(out_dir, "adjunction.json",
               dump(Json{{"max_points", max_points},
                         {"ul_identity", r.ul_identity},
                         {"ur_identity", r.ur_identity},
                         {"left_adjunction", r.left_adjunction},
                         {"right_adjunction", r.right_adjunction},
                         {"discrete_full", r.discrete_full},
                         {"indiscrete_full", r.indiscrete_full},
                         {"pairs_checked", r.pairs_checked}}));
  }
  return r.all() ? kExitOk : kExitLawViolation;
}

// ---------------------------------------------------------------------------

template <Scalar S>
Json generate_typed(const GeneratorSpec& spec, std::size_t n, std::size_t count, const std::string& out_dir) {
  const auto grid = make_grid(S(spec.horizon), n);
  const PathEnsemble<S> ensemble = generate<S>(spec, grid, count);
  Json paths = Json::array();
  for (std::size_t i = 0; i < ensemble.count(); ++i) {
    paths.push_back(path_to_json(ensemble.paths[i]));
    if constexpr (!is_exact<S>()) {
      if (!out_dir.empty()) write_file(out_dir, "path_" + std::to_string(i) + ".csv", path_to_csv(ensemble.paths[i]));
    }
  }
  return Json{{"generator", generator_spec_to_json(spec)},
              {"mode", to_string(mode_of<S>())},
              {"intervals", n},
              {"tag", to_string(ensemble.tag)},
              {"paths", std::move(paths)}};
}

int cmd_generate(const Common& common, const std::string& kind, std::optional<std::size_t> n_opt,
                 std::optional<std::size_t> count_opt, std::ostream& out) {
  GeneratorSpec spec;
  std::size_t n = 16;
  std::size_t count = 1;
  ScalarMode mode = ScalarMode::kFloat64;
  if (!common.config.empty()) {
    Json j = load_json(common.config);
    require(j.is_object(), ErrorCode::kParse, "config must be a JSON object");
    static const std::set<std::string> known = {"generator", "intervals", "count", "mode"};
    for (const auto& [key, value] : j.items()) {
      require(known.count(key) == 1, ErrorCode::kParse, "unknown config key '" + key + "'");
    }
    try {
      if (j.contains("generator")) spec = generator_spec_from_json(j.at("generator"));
      if (j.contains("intervals")) n = j.at("intervals").get<std::size_t>();
      if (j.contains("count")) count = j.at("count").get<std::size_t>();
      if (j.contains("mode")) mode = parse_mode(j.at("mode").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::kParse, std::string("generate config: ") + e.what());
    }
  }
  if (!kind.empty()) spec.kind = parse_generator_kind(kind);
  if (common.seed) spec.seed = *common.seed;
  if (!common.mode.empty()) mode = parse_mode(common.mode);
  if (n_opt) n = *n_opt;
  if (count_opt) count = *count_opt;
  require(n >= 1 && count >= 1, ErrorCode::kInvalidArgument, "intervals and count must be positive");

  const Json ensemble = mode == ScalarMode::kRational ? generate_typed<Rational>(spec, n, count, common.out)
                                                      : generate_typed<double>(spec, n, count, common.out);
  if (common.out.empty()) {
    out << dump(ensemble);
  } else {
    write_file(common.out, "ensemble.json", dump(ensemble));
    out << "wrote " << count << (count == 1 ? " path" : " paths") << " to " << common.out << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete Ito calculus: law suites, convergence studies and finite measurable spaces", "itolab"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  Common common;
  std::vector<std::string> laws;
  std::vector<std::string> hs;
  std::optional<std::size_t> instances;
  std::vector<std::size_t> meshes;
  std::optional<std::size_t> count;
  std::optional<std::size_t> intervals;
  std::string kind;
  std::size_t lattice_n = 0;
  std::size_t dot_n = 0;
  std::size_t max_points = 3;
  bool as_dot = false;
  std::string demo = "demo";

  auto* check = app.add_subcommand("check-laws", "run the exact/float law suites");
  add_common(check, common);
  check->add_option("--law", laws, "law to check (repeatable)");
  check->add_option("--h", hs, "h value (repeatable)");
  check->add_option("--instances", instances, "random instances per grid size");

  auto* converge = app.add_subcommand("converge", "mesh-refinement convergence studies");
  add_common(converge, common);
  converge->add_option("--law", laws, "convergence law (repeatable)");
  converge->add_option("--h", hs, "h value (repeatable)");
  converge->add_option("--meshes", meshes, "interval counts, at least three")->delimiter(',');
  converge->add_option("--count", count, "paths per ensemble");

  auto* meascat = app.add_subcommand("meascat", "finite measurable spaces");
  meascat->require_subcommand(1);
  std::string meas_out;
  meascat->add_option("--out", meas_out, "output directory");
  auto* lattice = meascat->add_subcommand("lattice", "count and check the sigma-algebras on n points");
  lattice->add_option("n", lattice_n, "carrier size (1..6)")->required();
  lattice->add_flag("--dot", as_dot, "print the Hasse diagram as DOT");
  auto* dot = meascat->add_subcommand("dot", "Hasse diagram of the sigma-algebras on n points");
  dot->add_option("n", dot_n, "carrier size (1..6)")->required();
  auto* product = meascat->add_subcommand("product", "product of two discrete two-point spaces");
  product->add_option("which", demo, "only 'demo'")->check(CLI::IsMember({"demo"}));
  auto* universal = meascat->add_subcommand("universal", "exhaustive universal-property checks");
  universal->add_option("--max-points", max_points, "largest carrier (1..3)");
  auto* adjunction = meascat->add_subcommand("adjunction", "L -| U -| R checks");
  adjunction->add_option("--max-points", max_points, "largest carrier");

  auto* gen = app.add_subcommand("generate", "generate a path ensemble as JSON");
  add_common(gen, common);
  gen->add_option("--kind", kind, "brownian, bv-smooth, semimartingale or rational-random");
  gen->add_option("--n", intervals, "grid intervals");
  gen->add_option("--count", count, "number of paths");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check_laws(common, laws, hs, instances, out, err);
    if (converge->parsed()) return cmd_converge(common, laws, hs, meshes, count, out);
    if (gen->parsed()) return cmd_generate(common, kind, intervals, count, out);
    if (lattice->parsed()) return cmd_lattice(lattice_n, as_dot, meas_out, out);
    if (dot->parsed()) return cmd_lattice(dot_n, true, meas_out, out);
    if (product->parsed()) return cmd_product_demo(meas_out, out);
    if (universal->parsed()) return cmd_universal(max_points, meas_out, out);
    if (adjunction->parsed()) return cmd_adjunction(max_points, meas_out, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace itolab::cli
