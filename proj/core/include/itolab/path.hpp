#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "itolab/error.hpp"
#include "itolab/scalar.hpp"

namespace itolab {

/// Strictly increasing partition 0 = t_0 < t_1 < ... < t_n of [0, T].
template <Scalar S>
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<S> times) : times_(std::move(times)) {
    if constexpr (is_exact<S>()) {
      for (auto& t : times_) t.canonicalize();
    }
    require(times_.size() >= 2, ErrorCode::kInvalidArgument, "a time grid needs at least one interval");
    require(is_zero(times_.front()), ErrorCode::kInvalidArgument, "a time grid must start at 0");
    for (std::size_t j = 1; j < times_.size(); ++j) {
      require(times_[j - 1] < times_[j], ErrorCode::kInvalidArgument,
              "grid times must be strictly increasing (index " + std::to_string(j) + ")");
    }
  }

  /// Number of intervals n; the grid holds n + 1 times.
  std::size_t intervals() const { return times_.size() - 1; }
  std::size_t size() const { return times_.size(); }
  const std::vector<S>& times() const { return times_; }
  const S& operator[](std::size_t j) const { return times_[j]; }
  const S& horizon() const { return times_.back(); }

  S step(std::size_t j) const { return S(times_[j] - times_[j - 1]); }

  S mesh() const {
    S widest = step(1);
    for (std::size_t j = 2; j < times_.size(); ++j) {
      S width = step(j);
      if (widest < width) widest = width;
    }
    return widest;
  }

  friend bool operator==(const TimeGrid& a, const TimeGrid& b) { return a.times_ == b.times_; }

 private:
  std::vector<S> times_;
};

template <Scalar S>
using GridPtr = std::shared_ptr<const TimeGrid<S>>;

/// Uniform grid t_j = j * horizon / n.
template <Scalar S>
GridPtr<S> make_grid(const S& horizon, std::size_t n) {
  require(horizon > 0, ErrorCode::kInvalidArgument, "horizon must be positive");
  require(n >= 1, ErrorCode::kInvalidArgument, "grid needs n >= 1 intervals");
  std::vector<S> times;
  times.reserve(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    if constexpr (is_exact<S>()) {
      times.push_back(horizon * ratio<Rational>(static_cast<long>(j), static_cast<long>(n)));
    } else {
      times.push_back(horizon * static_cast<double>(j) / static_cast<double>(n));
    }
  }
  // Rounding in float mode cannot move the endpoint off the horizon.
  times.back() = horizon;
  return std::make_shared<const TimeGrid<S>>(std::move(times));
}

template <Scalar S>
GridPtr<S> make_grid(std::vector<S> times) {
  return std::make_shared<const TimeGrid<S>>(std::move(times));
}

/// One realisation of a process: its values at the points of a shared grid.
/// Immutable once built.
template <Scalar S>
class SamplePath {
 public:
  SamplePath(GridPtr<S> grid, std::vector<S> values) : grid_(std::move(grid)), values_(std::move(values)) {
    require(grid_ != nullptr, ErrorCode::kInvalidArgument, "sample path without a grid");
    require(values_.size() == grid_->size(), ErrorCode::kInvalidArgument,
            "path has " + std::to_string(values_.size()) + " values for a grid of " +
                std::to_string(grid_->size()) + " points");
  }

  static SamplePath constant(GridPtr<S> grid, const S& value) {
    std::vector<S> values(grid->size(), value);
    return SamplePath(std::move(grid), std::move(values));
  }
  static SamplePath zero(GridPtr<S> grid) { return constant(std::move(grid), S(0)); }

  const GridPtr<S>& grid_ptr() const { return grid_; }
  const TimeGrid<S>& grid() const { return *grid_; }
  const std::vector<S>& values() const { return values_; }
  std::span<const S> view() const { return values_; }
  const S& operator[](std::size_t j) const { return values_[j]; }
  std::size_t size() const { return values_.size(); }
  std::size_t intervals() const { return values_.size() - 1; }
  const S& initial() const { return values_.front(); }
  const S& terminal() const { return values_.back(); }

  S increment(std::size_t j) const { return S(values_[j] - values_[j - 1]); }

  bool is_zero_start() const { return is_zero(values_.front()); }

  bool is_identically_zero() const {
    for (const S& v : values_) {
      if (!is_zero(v)) return false;
    }
    return true;
  }

  S max_abs() const {
    S best(0);
    for (const S& v : values_) {
      S a = abs_value(v);
      if (best < a) best = a;
    }
    return best;
  }

  friend bool operator==(const SamplePath& a, const SamplePath& b) {
    return (a.grid_ == b.grid_ || *a.grid_ == *b.grid_) && a.values_ == b.values_;
  }

 private:
  GridPtr<S> grid_;
  std::vector<S> values_;
};

/// Role a generated ensemble plays in the Doob-Meyer splitting S = M_0 + A.
enum class PathTag { kUnspecified, kMartingale, kBoundedVariation, kSemimartingale };

std::string_view to_string(PathTag tag);

/// A finite family of paths on one grid; the stand-in for the sample space.
template <Scalar S>
struct PathEnsemble {
  GridPtr<S> grid;
  std::vector<SamplePath<S>> paths;
  std::uint64_t seed = 0;
  PathTag tag = PathTag::kUnspecified;

  std::size_t count() const { return paths.size(); }
};

template <Scalar S>
bool same_grid(const SamplePath<S>& x, const SamplePath<S>& y) {
  return x.grid_ptr() == y.grid_ptr() || x.grid() == y.grid();
}

template <Scalar S>
void require_same_grid(const SamplePath<S>& x, const SamplePath<S>& y, const char* op) {
  require(same_grid(x, y), ErrorCode::kIncompatibleGrids, std::string(op) + ": paths live on different grids");
}

template <Scalar S>
void require_zero_start(const SamplePath<S>& x, const char* op, const char* which) {
  require(x.is_zero_start(), ErrorCode::kPreconditionViolation,
          std::string(op) + ": argument " + which + " must start at 0 (got " + format_scalar(x.initial()) + ")");
}

/// Pointwise a*X + b*Y.
template <Scalar S>
SamplePath<S> linear_combine(const S& a, const SamplePath<S>& x, const S& b, const SamplePath<S>& y) {
  require_same_grid(x, y, "linear_combine");
  std::vector<S> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = a * x[j] + b * y[j];
  return SamplePath<S>(x.grid_ptr(), std::move(out));
}

template <Scalar S>
SamplePath<S> operator+(const SamplePath<S>& x, const SamplePath<S>& y) {
  return linear_combine(S(1), x, S(1), y);
}

template <Scalar S>
SamplePath<S> operator-(const SamplePath<S>& x, const SamplePath<S>& y) {
  return linear_combine(S(1), x, S(-1), y);
}

template <Scalar S>
SamplePath<S> scale(const S& a, const SamplePath<S>& x) {
  std::vector<S> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = a * x[j];
  return SamplePath<S>(x.grid_ptr(), std::move(out));
}

/// Inserts factor - 1 equally spaced points into every interval and linearly
/// interpolates; original points keep their values.
template <Scalar S>
SamplePath<S> refine_linear(const SamplePath<S>& x, std::size_t factor) {
  require(factor >= 1, ErrorCode::kInvalidArgument, "refinement factor must be >= 1");
  if (factor == 1) return x;
  const auto& grid = x.grid();
  const std::size_t n = grid.intervals();
  std::vector<S> times;
  std::vector<S> values;
  times.reserve(n * factor + 1);
  values.reserve(n * factor + 1);
  times.push_back(grid[0]);
  values.push_back(x[0]);
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t k = 1; k < factor; ++k) {
      S w = ratio<S>(static_cast<long>(k), static_cast<long>(factor));
      times.push_back(grid[j - 1] + w * (grid[j] - grid[j - 1]));
      values.push_back(x[j - 1] + w * (x[j] - x[j - 1]));
    }
    times.push_back(grid[j]);
    values.push_back(x[j]);
  }
  return SamplePath<S>(make_grid(std::move(times)), std::move(values));
}

}  // namespace itolab
