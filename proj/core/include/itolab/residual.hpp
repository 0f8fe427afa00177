#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "itolab/path.hpp"
#include "itolab/scalar.hpp"

namespace itolab {

/// Float-mode acceptance bound for law residuals:
/// factor * eps * max(1, magnitude)^degree. The operad suites use degree 3
/// (trilinear identities) and factor 1e3.
struct FloatTolerance {
  double factor = 1e3;
  int degree = 3;

  double bound(double magnitude) const {
    const double m = std::max(1.0, magnitude);
    double scale = 1.0;
    for (int i = 0; i < degree; ++i) scale *= m;
    return factor * std::numeric_limits<double>::epsilon() * scale;
  }
};

/// Residual path of one axiom instance, with the residual predicted in closed
/// form when the identity only holds in the mesh limit.
template <Scalar S>
struct AxiomResidual {
  std::string axiom;
  SamplePath<S> residual;
  std::optional<SamplePath<S>> expected;

  bool exact_zero() const { return residual.is_identically_zero(); }

  /// Largest |residual - expected| (expected defaults to the zero path).
  S deviation() const {
    if (!expected) return residual.max_abs();
    S best(0);
    for (std::size_t j = 0; j < residual.size(); ++j) {
      S d = abs_value(S(residual[j] - (*expected)[j]));
      if (best < d) best = d;
    }
    return best;
  }
};

template <Scalar S>
struct ResidualReport {
  std::string law;
  std::vector<AxiomResidual<S>> axioms;
  /// Magnitude of the inputs, used for the float-mode bound.
  double input_scale = 1.0;
  /// Set when expected residuals are discrete-level closed forms rather than
  /// identities of the limiting calculus.
  bool closed_form_extension = false;

  S max_abs() const {
    S best(0);
    for (const auto& a : axioms) {
      S m = a.residual.max_abs();
      if (best < m) best = m;
    }
    return best;
  }

  bool exact_zero() const {
    return std::all_of(axioms.begin(), axioms.end(), [](const auto& a) { return a.exact_zero(); });
  }

  /// Exact equality with the expected residual in rational mode; within the
  /// tolerance in float mode.
  bool expected_matched(const FloatTolerance& tol = {}) const {
    return std::all_of(axioms.begin(), axioms.end(), [&](const auto& a) {
      if constexpr (is_exact<S>()) {
        return is_zero(a.deviation());
      } else {
        return a.deviation() <= tol.bound(input_scale);
      }
    });
  }

  void add(std::string axiom, SamplePath<S> residual, std::optional<SamplePath<S>> expected = std::nullopt) {
    axioms.push_back(AxiomResidual<S>{std::move(axiom), std::move(residual), std::move(expected)});
  }
};

template <Scalar S>
double magnitude_of(std::initializer_list<const SamplePath<S>*> paths) {
  double m = 0.0;
  for (const auto* p : paths) m = std::max(m, to_double(p->max_abs()));
  return m;
}

}  // namespace itolab
