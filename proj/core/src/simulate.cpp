#include "itolab/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "itolab/error.hpp"
#include "itolab/parallel.hpp"

namespace itolab {

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kBrownian:
      return "brownian";
    case GeneratorKind::kBvSmooth:
      return "bv-smooth";
    case GeneratorKind::kSemimartingale:
      return "semimartingale";
    case GeneratorKind::kRationalRandom:
      return "rational-random";
  }
  return "brownian";
}

GeneratorKind parse_generator_kind(std::string_view text) {
  if (text == "brownian") return GeneratorKind::kBrownian;
  if (text == "bv-smooth") return GeneratorKind::kBvSmooth;
  if (text == "semimartingale") return GeneratorKind::kSemimartingale;
  if (text == "rational-random") return GeneratorKind::kRationalRandom;
  fail(ErrorCode::kParse, "unknown generator kind '" + std::string(text) + "'");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

template <Scalar S>
S random_ratio(std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, bound);
  const long p = num(rng);
  const long q = den(rng);
  return ratio<S>(p, q);
}

}  // namespace

std::mt19937_64 member_rng(std::uint64_t seed, std::uint64_t member, std::uint64_t stream) {
  std::uint64_t state = splitmix64(seed);
  state = splitmix64(state ^ member);
  state = splitmix64(state ^ (stream * 0xD1B54A32D192ED03ULL));
  return std::mt19937_64(state);
}

PathEnsemble<double> brownian_paths(const GeneratorSpec& spec, const GridPtr<double>& grid, std::size_t count) {
  PathEnsemble<double> out{grid, {}, spec.seed, PathTag::kMartingale};
  std::vector<std::vector<double>> values(count);
  parallel_for(count, [&](std::size_t i) {
    auto rng = member_rng(spec.seed, i);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> v(grid->size());
    v[0] = 0.0;
    for (std::size_t j = 1; j < v.size(); ++j) {
      v[j] = v[j - 1] + spec.volatility * std::sqrt(grid->step(j)) * normal(rng);
    }
    values[i] = std::move(v);
  });
  out.paths.reserve(count);
  for (auto& v : values) out.paths.emplace_back(grid, std::move(v));
  return out;
}

PathEnsemble<double> refine_brownian(const PathEnsemble<double>& coarse, double volatility, std::uint64_t level) {
  const auto& grid = *coarse.grid;
  std::vector<double> times;
  times.reserve(2 * grid.intervals() + 1);
  times.push_back(grid[0]);
  for (std::size_t j = 1; j < grid.size(); ++j) {
    times.push_back(0.5 * (grid[j - 1] + grid[j]));
    times.push_back(grid[j]);
  }
  auto fine = make_grid(std::move(times));

  PathEnsemble<double> out{fine, {}, coarse.seed, coarse.tag};
  std::vector<std::vector<double>> values(coarse.count());
  parallel_for(coarse.count(), [&](std::size_t i) {
    auto rng = member_rng(coarse.seed, i, level + 1);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto& src = coarse.paths[i];
    std::vector<double> v;
    v.reserve(fine->size());
    v.push_back(src[0]);
    for (std::size_t j = 1; j < src.size(); ++j) {
      const double sd = volatility * std::sqrt(grid.step(j) / 4.0);
      v.push_back(0.5 * (src[j - 1] + src[j]) + sd * normal(rng));
      v.push_back(src[j]);
    }
    values[i] = std::move(v);
  });
  out.paths.reserve(coarse.count());
  for (auto& v : values) out.paths.emplace_back(fine, std::move(v));
  return out;
}

template <Scalar S>
PathEnsemble<S> bv_paths(const GeneratorSpec& spec, const GridPtr<S>& grid, std::size_t count) {
  require(spec.drift_degree >= 1, ErrorCode::kInvalidArgument, "bv-smooth paths need drift_degree >= 1");
  PathEnsemble<S> out{grid, {}, spec.seed, PathTag::kBoundedVariation};
  std::vector<std::vector<S>> values(count);
  parallel_for(count, [&](std::size_t i) {
    auto rng = member_rng(spec.seed, i, 0x42);
    std::vector<S> coeff(static_cast<std::size_t>(spec.drift_degree) + 1);
    for (auto& c : coeff) {
      if constexpr (is_exact<S>()) {
        c = random_ratio<S>(rng, spec.denominator_bound);
      } else {
        std::uniform_real_distribution<double> u(-spec.drift_scale, spec.drift_scale);
        c = u(rng);
      }
    }
    if (spec.zero_start) coeff[0] = 0;
    std::vector<S> v(grid->size());
    for (std::size_t j = 0; j < v.size(); ++j) {
      S acc = coeff.back();
      for (std::size_t d = coeff.size() - 1; d-- > 0;) acc = acc * (*grid)[j] + coeff[d];
      v[j] = acc;
    }
    values[i] = std::move(v);
  });
  out.paths.reserve(count);
  for (auto& v : values) out.paths.emplace_back(grid, std::move(v));
  return out;
}

template <Scalar S>
PathEnsemble<S> rational_paths(long bound, const GridPtr<S>& grid, std::size_t count, bool zero_start,
                               std::uint64_t seed) {
  require(bound >= 1, ErrorCode::kInvalidArgument, "rational path bound must be >= 1");
  PathEnsemble<S> out{grid, {}, seed, PathTag::kUnspecified};
  std::vector<std::vector<S>> values(count);
  parallel_for(count, [&](std::size_t i) {
    auto rng = member_rng(seed, i, 0x7A);
    std::vector<S> v(grid->size());
    for (auto& x : v) x = random_ratio<S>(rng, bound);
    if (zero_start) v[0] = 0;
    values[i] = std::move(v);
  });
  out.paths.reserve(count);
  for (auto& v : values) out.paths.emplace_back(grid, std::move(v));
  return out;
}

SemimartingaleEnsemble semimartingale_paths(const GeneratorSpec& spec, const GridPtr<double>& grid,
                                            std::size_t count) {
  SemimartingaleEnsemble out{brownian_paths(spec, grid, count), bv_paths<double>(spec, grid, count), {}};
  out.sum = PathEnsemble<double>{grid, {}, spec.seed, PathTag::kSemimartingale};
  out.sum.paths.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.sum.paths.push_back(out.martingale.paths[i] + out.bounded_variation.paths[i]);
  }
  return out;
}

template <Scalar S>
PathEnsemble<S> generate(const GeneratorSpec& spec, const GridPtr<S>& grid, std::size_t count) {
  switch (spec.kind) {
    case GeneratorKind::kRationalRandom:
      return rational_paths<S>(spec.denominator_bound, grid, count, spec.zero_start, spec.seed);
    case GeneratorKind::kBvSmooth:
      return bv_paths<S>(spec, grid, count);
    case GeneratorKind::kBrownian:
    case GeneratorKind::kSemimartingale:
      if constexpr (is_exact<S>()) {
        fail(ErrorCode::kInvalidArgument,
             std::string(to_string(spec.kind)) + " paths are only available in float64 mode");
      } else {
        if (spec.kind == GeneratorKind::kBrownian) return brownian_paths(spec, grid, count);
        return semimartingale_paths(spec, grid, count).sum;
      }
  }
  fail(ErrorCode::kInvalidArgument, "unknown generator kind");
}

DensityPath<double> exponential_density(const SamplePath<double>& brownian, double volatility) {
  const auto& grid = brownian.grid();
  std::vector<double> v(brownian.size());
  v[0] = 1.0;
  for (std::size_t j = 1; j < v.size(); ++j) {
    v[j] = v[j - 1] * std::exp(volatility * brownian.increment(j) - 0.5 * volatility * volatility * grid.step(j));
  }
  return DensityPath<double>(SamplePath<double>(brownian.grid_ptr(), std::move(v)));
}

DensityPath<Rational> rational_density(const GridPtr<Rational>& grid, long bound, std::uint64_t seed,
                                       std::uint64_t member) {
  require(bound >= 2, ErrorCode::kInvalidArgument, "density step bound must be >= 2");
  auto rng = member_rng(seed, member, 0xD5);
  std::uniform_int_distribution<long> step(2, bound);
  std::bernoulli_distribution sign(0.5);
  std::vector<Rational> v(grid->size());
  v[0] = 1;
  for (std::size_t j = 1; j < v.size(); ++j) {
    Rational r(1, step(rng));
    v[j] = v[j - 1] * (sign(rng) ? Rational(1 + r) : Rational(1 - r));
  }
  return DensityPath<Rational>(SamplePath<Rational>(grid, std::move(v)));
}

double median(std::vector<double> values) {
  require(!values.empty(), ErrorCode::kInvalidArgument, "median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double maximum(const std::vector<double>& values) {
  require(!values.empty(), ErrorCode::kInvalidArgument, "maximum of an empty sample");
  return *std::max_element(values.begin(), values.end());
}

template PathEnsemble<Rational> bv_paths<Rational>(const GeneratorSpec&, const GridPtr<Rational>&, std::size_t);
template PathEnsemble<double> bv_paths<double>(const GeneratorSpec&, const GridPtr<double>&, std::size_t);
template PathEnsemble<Rational> rational_paths<Rational>(long, const GridPtr<Rational>&, std::size_t, bool,
                                                         std::uint64_t);
template PathEnsemble<double> rational_paths<double>(long, const GridPtr<double>&, std::size_t, bool,
                                                     std::uint64_t);
template PathEnsemble<Rational> generate<Rational>(const GeneratorSpec&, const GridPtr<Rational>&, std::size_t);
template PathEnsemble<double> generate<double>(const GeneratorSpec&, const GridPtr<double>&, std::size_t);

}  // namespace itolab
