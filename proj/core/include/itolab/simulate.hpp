#pragma once

// Test-path generators. Every generator is reproducible: path i of an ensemble
// draws from its own stream seeded by (seed, i), so results do not depend on
// how members are scheduled across threads.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "itolab/path.hpp"
#include "itolab/scalar.hpp"
#include "itolab/transforms.hpp"

namespace itolab {

enum class GeneratorKind { kBrownian, kBvSmooth, kSemimartingale, kRationalRandom };

std::string_view to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(std::string_view text);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kBrownian;
  double volatility = 1.0;
  double horizon = 1.0;
  /// Highest degree of the random drift polynomial of bv-smooth paths.
  int drift_degree = 2;
  /// Bound on |coefficient| of the drift polynomial.
  double drift_scale = 1.0;
  /// Numerator/denominator bound of rational-random values.
  long denominator_bound = 8;
  bool zero_start = true;
  std::uint64_t seed = 0;
};

/// Independent stream for (seed, member, stream) via splitmix64 mixing.
std::mt19937_64 member_rng(std::uint64_t seed, std::uint64_t member, std::uint64_t stream = 0);

/// Brownian motion sampled on `grid`: independent N(0, vol^2 dt) increments.
PathEnsemble<double> brownian_paths(const GeneratorSpec& spec, const GridPtr<double>& grid, std::size_t count);

/// Halves every interval of every path, filling the midpoint from the Brownian
/// bridge: (a + b) / 2 + N(0, vol^2 dt / 4). Coarse points keep their values,
/// so coarse and refined ensembles are couplings of the same paths. `level`
/// selects an independent random stream per refinement step.
PathEnsemble<double> refine_brownian(const PathEnsemble<double>& coarse, double volatility, std::uint64_t level);

/// Grid evaluations of random polynomials a_1 t + ... + a_d t^d (plus a random
/// constant when zero_start is false). Tagged bounded-variation.
template <Scalar S>
PathEnsemble<S> bv_paths(const GeneratorSpec& spec, const GridPtr<S>& grid, std::size_t count);

/// Paths with values num/den, |num| <= bound and 1 <= den <= bound, drawn
/// uniformly; x_0 = 0 when zero_start is set.
template <Scalar S>
PathEnsemble<S> rational_paths(long bound, const GridPtr<S>& grid, std::size_t count, bool zero_start,
                               std::uint64_t seed);

/// Doob-Meyer pieces of a generated semimartingale X = M + A.
struct SemimartingaleEnsemble {
  PathEnsemble<double> martingale;
  PathEnsemble<double> bounded_variation;
  PathEnsemble<double> sum;
};

SemimartingaleEnsemble semimartingale_paths(const GeneratorSpec& spec, const GridPtr<double>& grid,
                                            std::size_t count);

/// Dispatches on spec.kind. Semimartingale ensembles return the sum M + A.
template <Scalar S>
PathEnsemble<S> generate(const GeneratorSpec& spec, const GridPtr<S>& grid, std::size_t count);

/// Exponential-martingale multiplicative walk driven by a Brownian path W:
/// D_j = D_{j-1} exp(vol dW_j - vol^2 dt_j / 2). Positive, D_0 = 1, and each
/// factor has conditional mean 1.
DensityPath<double> exponential_density(const SamplePath<double>& brownian, double volatility);

/// Rational multiplicative walk D_j = D_{j-1} (1 + e_j r_j) with e_j = +-1 and
/// r_j in {1/2, 1/3, ..., 1/bound}; symmetric signs give conditional mean 1.
DensityPath<Rational> rational_density(const GridPtr<Rational>& grid, long bound, std::uint64_t seed,
                                       std::uint64_t member);

/// Ensemble statistics helpers. Both are invariant under reordering.
double median(std::vector<double> values);
double maximum(const std::vector<double>& values);

}  // namespace itolab
