#pragma once

// Mesh-refinement harness: evaluates a named residual on coupled Brownian
// ensembles at a sequence of interval counts and fits the decay rate.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "itolab/simulate.hpp"

namespace itolab {

struct ConvergenceReport {
  std::string law;
  double h = 0.5;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> intervals;  // n per level, increasing
  std::vector<double> mesh;            // T / n, strictly decreasing
  std::vector<double> median_abs;
  std::vector<double> max_abs;
  /// Least-squares slope of log(median_abs) against log(n); empty when some
  /// median is exactly zero.
  std::optional<double> slope;

  bool medians_decreasing() const;
};

/// Names accepted by convergence_study:
///   ito-stratonovich-gap  |2 (W o W - W . W)_T - T|, i.e. |[W,W]_T - T|
///   h-assoc               max_k |X ._h (Y ._h Z) - (XY) ._h Z|
///   cocycle               max_k |d1(xi1)(X, Y; Z)|
///   multiplicativity      max_k |(XY) ._h Z - X ._h (Y ._h Z)|
///   dendriform-axiom1     max_k of the first dendriform residual
///   dendriform-axiom3     max_k of the third dendriform residual
///   girsanov-bv           max_k |G_D(A) - A| with A = t, D exponential walk
///   girsanov-functor      max_k |G_{D1 D2}(X) - G_{D2}(G_{D1}(X))|
const std::vector<std::string>& convergence_laws();

/// True for the laws whose residual depends on h.
bool convergence_law_uses_h(const std::string& law);

/// meshes: interval counts, at least three, each a power-of-two multiple of
/// the previous one (refinement is by repeated bisection).
ConvergenceReport convergence_study(const std::string& law, const GeneratorSpec& spec,
                                    const std::vector<std::size_t>& meshes, std::size_t count, double h = 0.5);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace itolab
