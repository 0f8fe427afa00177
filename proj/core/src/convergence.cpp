#include "itolab/convergence.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "itolab/deformation.hpp"
#include "itolab/error.hpp"
#include "itolab/ito.hpp"
#include "itolab/operad.hpp"
#include "itolab/parallel.hpp"
#include "itolab/transforms.hpp"

namespace itolab {

namespace {

using Path = SamplePath<double>;
using Residual = std::function<double(const std::vector<const Path*>&, double h, const GeneratorSpec&)>;

struct LawDef {
  std::size_t slots;
  Residual residual;
  bool uses_h = false;
};

double sup_norm(const Path& p) { return p.max_abs(); }

double axiom_sup(const ResidualReport<double>& report, std::size_t axiom) {
  return sup_norm(report.axioms.at(axiom).residual);
}

const std::map<std::string, LawDef>& law_table() {
  static const std::map<std::string, LawDef> table = {
      {"ito-stratonovich-gap",
       {1,
        [](const std::vector<const Path*>& w, double, const GeneratorSpec& spec) {
          const Path& p = *w[0];
          const double gap = stratonovich_integral(p, p).terminal() - ito_integral(p, p).terminal();
          return std::fabs(2.0 * gap - spec.volatility * spec.volatility * p.grid().horizon());
        }}},
      {"h-assoc",
       {3,
        [](const std::vector<const Path*>& w, double h, const GeneratorSpec&) {
          return axiom_sup(h_associativity_residual(HParam<double>(h), *w[0], *w[1], *w[2]), 0);
        },
        true}},
      {"cocycle",
       {3,
        [](const std::vector<const Path*>& w, double, const GeneratorSpec&) {
          return axiom_sup(cocycle_residual(*w[0], *w[1], *w[2]), 0);
        }}},
      {"multiplicativity",
       {3,
        [](const std::vector<const Path*>& w, double h, const GeneratorSpec&) {
          return axiom_sup(multiplicativity_residual(HParam<double>(h), *w[0], *w[1], *w[2]), 0);
        },
        true}},
      {"dendriform-axiom1",
       {3,
        [](const std::vector<const Path*>& w, double h, const GeneratorSpec&) {
          return axiom_sup(check_dendriform(HParam<double>(h), *w[0], *w[1], *w[2]), 0);
        },
        true}},
      {"dendriform-axiom3",
       {3,
        [](const std::vector<const Path*>& w, double h, const GeneratorSpec&) {
          return axiom_sup(check_dendriform(HParam<double>(h), *w[0], *w[1], *w[2]), 2);
        },
        true}},
      {"girsanov-bv",
       {1,
        [](const std::vector<const Path*>& w, double, const GeneratorSpec& spec) {
          const Path& driver = *w[0];
          const Path line(driver.grid_ptr(), driver.grid().times());
          return axiom_sup(girsanov_bv_residual(exponential_density(driver, spec.volatility), line), 0);
        }}},
      {"girsanov-functor",
       {3,
        [](const std::vector<const Path*>& w, double, const GeneratorSpec& spec) {
          const auto d12 = exponential_density(*w[1], spec.volatility);
          const auto d23 = exponential_density(*w[2], spec.volatility);
          return axiom_sup(girsanov_functor_residual(d12, d23, *w[0]), 0);
        }}},
  };
  return table;
}

std::uint64_t slot_seed(std::uint64_t seed, std::size_t slot) {
  return seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(slot) + 1));
}

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

}  // namespace

bool ConvergenceReport::medians_decreasing() const {
  for (std::size_t i = 1; i < median_abs.size(); ++i) {
    if (!(median_abs[i] < median_abs[i - 1])) return false;
  }
  return true;
}

const std::vector<std::string>& convergence_laws() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, def] : law_table()) out.push_back(name);
    return out;
  }();
  return names;
}

bool convergence_law_uses_h(const std::string& law) {
  const auto it = law_table().find(law);
  require(it != law_table().end(), ErrorCode::kInvalidArgument, "unknown convergence law '" + law + "'");
  return it->second.uses_h;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorCode::kInvalidArgument,
          "slope fit needs at least two matching points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceReport convergence_study(const std::string& law, const GeneratorSpec& spec,
                                    const std::vector<std::size_t>& meshes, std::size_t count, double h) {
  const auto& table = law_table();
  const auto it = table.find(law);
  require(it != table.end(), ErrorCode::kInvalidArgument, "unknown convergence law '" + law + "'");
  require(meshes.size() >= 3, ErrorCode::kInvalidArgument, "a convergence study needs at least three meshes");
  require(count >= 1, ErrorCode::kInvalidArgument, "a convergence study needs at least one path");
  require(meshes.front() >= 1, ErrorCode::kInvalidArgument, "interval counts must be positive");
  for (std::size_t i = 1; i < meshes.size(); ++i) {
    require(meshes[i] > meshes[i - 1] && meshes[i] % meshes[i - 1] == 0 &&
                is_power_of_two(meshes[i] / meshes[i - 1]),
            ErrorCode::kInvalidArgument,
            "each interval count must be a power-of-two multiple of the previous one");
  }
  const HParam<double> checked_h(h);
  const LawDef& def = it->second;

  ConvergenceReport report;
  report.law = law;
  report.h = checked_h.value();
  report.count = count;
  report.seed = spec.seed;

  std::vector<PathEnsemble<double>> slots;
  const auto grid = make_grid(spec.horizon, meshes.front());
  for (std::size_t s = 0; s < def.slots; ++s) {
    GeneratorSpec slot_spec = spec;
    slot_spec.seed = slot_seed(spec.seed, s);
    slots.push_back(brownian_paths(slot_spec, grid, count));
  }

  std::uint64_t level = 0;
  for (std::size_t target : meshes) {
    while (slots.front().grid->intervals() < target) {
      for (auto& ensemble : slots) ensemble = refine_brownian(ensemble, spec.volatility, level);
      ++level;
    }
    std::vector<double> values(count);
    parallel_for(count, [&](std::size_t i) {
      std::vector<const Path*> args;
      args.reserve(slots.size());
      for (const auto& ensemble : slots) args.push_back(&ensemble.paths[i]);
      values[i] = std::fabs(def.residual(args, report.h, spec));
    });
    report.intervals.push_back(target);
    report.mesh.push_back(slots.front().grid->mesh());
    report.median_abs.push_back(median(values));
    report.max_abs.push_back(maximum(values));
  }

  bool positive = true;
  for (double m : report.median_abs) positive = positive && m > 0.0;
  if (positive) {
    std::vector<double> n(report.intervals.begin(), report.intervals.end());
    report.slope = loglog_slope(n, report.median_abs);
  }
  return report;
}

}  // namespace itolab
