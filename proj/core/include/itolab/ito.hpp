#pragma once

// Discrete stochastic calculus on a fixed grid. Every integral and covariation
// is a finite partition sum over the stored grid and takes the value 0 at t_0.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "itolab/error.hpp"
#include "itolab/path.hpp"
#include "itolab/scalar.hpp"

namespace itolab {

/// Evaluation weight h in [0, 1] of the h-integral: 0 is Ito, 1/2 is
/// Fisk-Stratonovich, 1 is the backward integral.
template <Scalar S>
class HParam {
 public:
  explicit HParam(S h) : h_(std::move(h)) {
    require(!(h_ < 0) && !(h_ > 1), ErrorCode::kInvalidArgument,
            "h must lie in [0, 1], got " + format_scalar(h_));
  }
  const S& value() const { return h_; }

 private:
  S h_;
};

namespace detail {

/// Path whose increment over (t_{j-1}, t_j] is delta(j); value 0 at t_0.
template <Scalar S, class Delta>
SamplePath<S> accumulate(const GridPtr<S>& grid, Delta&& delta) {
  const std::size_t size = grid->size();
  std::vector<S> out(size);
  out[0] = 0;
  for (std::size_t j = 1; j < size; ++j) out[j] = out[j - 1] + delta(j);
  return SamplePath<S>(grid, std::move(out));
}

}  // namespace detail

/// (X . Y)_k = sum_{j<=k} x_{j-1} (y_j - y_{j-1}).
template <Scalar S>
SamplePath<S> ito_integral(const SamplePath<S>& x, const SamplePath<S>& y) {
  require_same_grid(x, y, "ito_integral");
  return detail::accumulate(x.grid_ptr(), [&](std::size_t j) { return S(x[j - 1] * (y[j] - y[j - 1])); });
}

/// [X, Y]_k = sum_{j<=k} (x_j - x_{j-1})(y_j - y_{j-1}).
template <Scalar S>
SamplePath<S> quadratic_covariation(const SamplePath<S>& x, const SamplePath<S>& y) {
  require_same_grid(x, y, "quadratic_covariation");
  return detail::accumulate(x.grid_ptr(), [&](std::size_t j) { return S((x[j] - x[j - 1]) * (y[j] - y[j - 1])); });
}

/// sum_{j<=k} dx_j dy_j dz_j, which is [[X, Y], Z] on the grid.
template <Scalar S>
SamplePath<S> triple_covariation(const SamplePath<S>& x, const SamplePath<S>& y, const SamplePath<S>& z) {
  require_same_grid(x, y, "triple_covariation");
  require_same_grid(x, z, "triple_covariation");
  return detail::accumulate(x.grid_ptr(), [&](std::size_t j) {
    return S((x[j] - x[j - 1]) * (y[j] - y[j - 1]) * (z[j] - z[j - 1]));
  });
}

template <Scalar S>
SamplePath<S> pointwise_product(const SamplePath<S>& x, const SamplePath<S>& y) {
  require_same_grid(x, y, "pointwise_product");
  std::vector<S> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] * y[j];
  return SamplePath<S>(x.grid_ptr(), std::move(out));
}

template <Scalar S>
SamplePath<S> pointwise_reciprocal(const SamplePath<S>& x) {
  std::vector<S> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    require(!is_zero(x[j]), ErrorCode::kInvalidArgument, "pointwise_reciprocal: zero value at index " + std::to_string(j));
    out[j] = S(1) / x[j];
  }
  return SamplePath<S>(x.grid_ptr(), std::move(out));
}

/// The h-integral by its defining partition sum
/// sum_{j<=k} ((1-h) x_{j-1} + h x_j)(y_j - y_{j-1}).
template <Scalar S>
SamplePath<S> h_integral_direct(const HParam<S>& h, const SamplePath<S>& x, const SamplePath<S>& y) {
  require_same_grid(x, y, "h_integral");
  const S& w = h.value();
  const S left = S(1) - w;
  return detail::accumulate(x.grid_ptr(), [&](std::size_t j) {
    return S((left * x[j - 1] + w * x[j]) * (y[j] - y[j - 1]));
  });
}

/// The h-integral through its Ito representation X . Y + h [X, Y].
template <Scalar S>
SamplePath<S> h_integral_representation(const HParam<S>& h, const SamplePath<S>& x, const SamplePath<S>& y) {
  return linear_combine(S(1), ito_integral(x, y), h.value(), quadratic_covariation(x, y));
}

/// Float-mode agreement bound between two evaluations of the same partition sum.
template <Scalar S>
S agreement_tolerance(const SamplePath<S>& x, const SamplePath<S>& y) {
  if constexpr (is_exact<S>()) {
    return S(0);
  } else {
    const double scale = std::max(1.0, x.max_abs()) * std::max(1.0, y.max_abs());
    return 64.0 * std::numeric_limits<double>::epsilon() * scale * static_cast<double>(x.size());
  }
}

/// h-integral. Both the direct sum and the representation are evaluated; a
/// disagreement (beyond rounding in float mode) is an internal logic error.
template <Scalar S>
SamplePath<S> h_integral(const HParam<S>& h, const SamplePath<S>& x, const SamplePath<S>& y) {
  SamplePath<S> direct = h_integral_direct(h, x, y);
  SamplePath<S> repr = h_integral_representation(h, x, y);
  const S tol = agreement_tolerance(x, y);
  for (std::size_t j = 0; j < direct.size(); ++j) {
    if (tol < abs_value(S(direct[j] - repr[j]))) {
      throw std::logic_error("h_integral: direct sum and Ito representation disagree at index " + std::to_string(j));
    }
  }
  return direct;
}

/// Stratonovich integral, the h = 1/2 member.
template <Scalar S>
SamplePath<S> stratonovich_integral(const SamplePath<S>& x, const SamplePath<S>& y) {
  return h_integral(HParam<S>(ratio<S>(1, 2)), x, y);
}

/// The stopped path tau(X): value x_{min(j, tau)} at t_j.
template <Scalar S>
SamplePath<S> stop_path(std::size_t tau, const SamplePath<S>& x) {
  require(tau < x.size(), ErrorCode::kInvalidArgument,
          "stopping index " + std::to_string(tau) + " outside 0.." + std::to_string(x.intervals()));
  std::vector<S> out(x.values());
  for (std::size_t j = tau + 1; j < out.size(); ++j) out[j] = x[tau];
  return SamplePath<S>(x.grid_ptr(), std::move(out));
}

/// X*Y - X.Y - Y.X - [X, Y]; identically zero on the grid for zero-start
/// paths. A nonzero start is rejected with the X_0 Y_0 correction the
/// identity would need.
template <Scalar S>
SamplePath<S> integration_by_parts_residual(const SamplePath<S>& x, const SamplePath<S>& y) {
  require_same_grid(x, y, "integration_by_parts_residual");
  if (!x.is_zero_start() || !y.is_zero_start()) {
    fail(ErrorCode::kPreconditionViolation,
         "integration_by_parts_residual: paths must start at 0; the identity then reads "
         "X*Y - X0*Y0 - [X,Y] = X.Y + Y.X with correction X0*Y0 = " +
             format_scalar(S(x.initial() * y.initial())));
  }
  SamplePath<S> prod = pointwise_product(x, y);
  SamplePath<S> xy = ito_integral(x, y);
  SamplePath<S> yx = ito_integral(y, x);
  SamplePath<S> cov = quadratic_covariation(x, y);
  std::vector<S> out(x.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = prod[j] - xy[j] - yx[j] - cov[j];
  return SamplePath<S>(x.grid_ptr(), std::move(out));
}

}  // namespace itolab
