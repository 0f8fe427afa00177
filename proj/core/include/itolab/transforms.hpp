#pragma once

// Stopping times, time changes and Girsanov operators on a grid.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "itolab/ito.hpp"
#include "itolab/operad.hpp"
#include "itolab/path.hpp"
#include "itolab/residual.hpp"

namespace itolab {

// ---------------------------------------------------------------------------
// Stopping times
// ---------------------------------------------------------------------------

/// One stopping grid index per ensemble member. Adaptedness of the indices to
/// the paths is the caller's responsibility.
struct StoppingIndex {
  std::vector<std::size_t> index;

  friend bool operator==(const StoppingIndex&, const StoppingIndex&) = default;
};

StoppingIndex stopping_meet(const StoppingIndex& a, const StoppingIndex& b);
StoppingIndex stopping_join(const StoppingIndex& a, const StoppingIndex& b);
/// Pointwise order: a <= b iff a.index[i] <= b.index[i] for every member.
bool stopping_le(const StoppingIndex& a, const StoppingIndex& b);

template <Scalar S>
PathEnsemble<S> stop_ensemble(const StoppingIndex& tau, const PathEnsemble<S>& ensemble) {
  require(tau.index.size() == ensemble.count(), ErrorCode::kInvalidArgument,
          "stopping index has " + std::to_string(tau.index.size()) + " entries for " +
              std::to_string(ensemble.count()) + " paths");
  PathEnsemble<S> out{ensemble.grid, {}, ensemble.seed, ensemble.tag};
  out.paths.reserve(ensemble.count());
  for (std::size_t i = 0; i < ensemble.count(); ++i) out.paths.push_back(stop_path(tau.index[i], ensemble.paths[i]));
  return out;
}

/// tau(X op Y) = tau(X) op tau(Y) for the five operad operations, and the
/// module/covariation identities tau(F . X) = F . tau(X),
/// tau[X, Y] = [X, tau(Y)] = [tau(X), Y].
template <Scalar S>
ResidualReport<S> check_stopping_endomorphism(std::size_t tau, const HParam<S>& h, const SamplePath<S>& x,
                                              const SamplePath<S>& y, const std::optional<SamplePath<S>>& f = {}) {
  require_same_grid(x, y, "check_stopping_endomorphism");
  const SamplePath<S>& integrand = f ? *f : y;
  require_same_grid(x, integrand, "check_stopping_endomorphism");
  auto st = [&](const SamplePath<S>& p) { return stop_path(tau, p); };
  const SamplePath<S> sx = st(x);
  const SamplePath<S> sy = st(y);

  ResidualReport<S> report;
  report.law = "stopping-endomorphism";
  report.input_scale = magnitude_of<S>({&x, &y, &integrand});
  report.add("tau(X-|Y) = tau X -| tau Y", st(dend_left(h, x, y)) - dend_left(h, sx, sy));
  report.add("tau(X|-Y) = tau X |- tau Y", st(dend_right(h, x, y)) - dend_right(h, sx, sy));
  report.add("tau(X<Y) = tau X < tau Y", st(prec(x, y)) - prec(sx, sy));
  report.add("tau(X>Y) = tau X > tau Y", st(succ(x, y)) - succ(sx, sy));
  report.add("tau[X,Y] = [tau X, tau Y]", st(tridot(x, y)) - tridot(sx, sy));
  report.add("tau(F.X) = F.tau X", st(ito_integral(integrand, x)) - ito_integral(integrand, sx));
  report.add("tau[X,Y] = [X,tau Y]", st(quadratic_covariation(x, y)) - quadratic_covariation(x, sy));
  report.add("tau[X,Y] = [tau X,Y]", st(quadratic_covariation(x, y)) - quadratic_covariation(sx, y));
  return report;
}

// ---------------------------------------------------------------------------
// Time changes
// ---------------------------------------------------------------------------

/// Discrete time change between two grids. sigma maps each target index j to
/// the source index whose value the changed path takes at target time t'_j;
/// sigma is strictly increasing with sigma(0) = 0 and sigma(last) = last. When
/// both grids have the same size sigma is the identity on indices and the map
/// is a bijective relabelling of times (an arrow of the time-change groupoid);
/// otherwise it subsamples the source grid.
template <Scalar S>
class TimeChangeMap {
 public:
  TimeChangeMap(GridPtr<S> source, GridPtr<S> target, std::vector<std::size_t> sigma)
      : source_(std::move(source)), target_(std::move(target)), sigma_(std::move(sigma)) {
    require(source_ && target_, ErrorCode::kInvalidArgument, "time change needs both grids");
    require(sigma_.size() == target_->size(), ErrorCode::kInvalidArgument,
            "sigma needs one entry per target grid point");
    require(sigma_.front() == 0, ErrorCode::kInvalidArgument, "time change must fix the origin");
    require(sigma_.back() == source_->intervals(), ErrorCode::kInvalidArgument,
            "time change must map the terminal index onto the source horizon");
    for (std::size_t j = 1; j < sigma_.size(); ++j) {
      require(sigma_[j - 1] < sigma_[j], ErrorCode::kInvalidArgument,
              "time change must be strictly increasing (index " + std::to_string(j) + ")");
    }
  }

  /// The bijective time change that relabels source times as target times.
  static TimeChangeMap between(GridPtr<S> source, GridPtr<S> target) {
    require(source->size() == target->size(), ErrorCode::kInvalidArgument,
            "bijective time change needs grids with the same number of points");
    std::vector<std::size_t> sigma(source->size());
    for (std::size_t j = 0; j < sigma.size(); ++j) sigma[j] = j;
    return TimeChangeMap(std::move(source), std::move(target), std::move(sigma));
  }

  static TimeChangeMap identity(GridPtr<S> grid) { return between(grid, grid); }

  const GridPtr<S>& source() const { return source_; }
  const GridPtr<S>& target() const { return target_; }
  const std::vector<std::size_t>& sigma() const { return sigma_; }
  bool is_bijective() const { return source_->size() == target_->size(); }
  bool is_identity() const { return is_bijective() && *source_ == *target_; }

  friend bool operator==(const TimeChangeMap& a, const TimeChangeMap& b) {
    return *a.source_ == *b.source_ && *a.target_ == *b.target_ && a.sigma_ == b.sigma_;
  }

 private:
  GridPtr<S> source_;
  GridPtr<S> target_;
  std::vector<std::size_t> sigma_;
};

/// (T_phi X) at target time t'_j is x_{sigma(j)}.
template <Scalar S>
SamplePath<S> apply_time_change(const TimeChangeMap<S>& phi, const SamplePath<S>& x) {
  require(x.grid_ptr() == phi.source() || x.grid() == *phi.source(), ErrorCode::kIncompatibleGrids,
          "apply_time_change: path is not on the time change's source grid");
  std::vector<S> out;
  out.reserve(phi.sigma().size());
  for (std::size_t s : phi.sigma()) out.push_back(x[s]);
  return SamplePath<S>(phi.target(), std::move(out));
}

/// Time change of a generated ensemble; the Doob-Meyer tag carries over.
template <Scalar S>
PathEnsemble<S> apply_time_change(const TimeChangeMap<S>& phi, const PathEnsemble<S>& ensemble) {
  PathEnsemble<S> out{phi.target(), {}, ensemble.seed, ensemble.tag};
  out.paths.reserve(ensemble.count());
  for (const auto& p : ensemble.paths) out.paths.push_back(apply_time_change(phi, p));
  return out;
}

/// psi o phi: first phi (A -> B), then psi (B -> C).
template <Scalar S>
TimeChangeMap<S> compose_time_changes(const TimeChangeMap<S>& psi, const TimeChangeMap<S>& phi) {
  require(*psi.source() == *phi.target(), ErrorCode::kIncompatibleGrids,
          "compose_time_changes: psi's source is not phi's target");
  std::vector<std::size_t> sigma;
  sigma.reserve(psi.sigma().size());
  for (std::size_t s : psi.sigma()) sigma.push_back(phi.sigma()[s]);
  return TimeChangeMap<S>(phi.source(), psi.target(), std::move(sigma));
}

template <Scalar S>
TimeChangeMap<S> invert_time_change(const TimeChangeMap<S>& phi) {
  require(phi.is_bijective(), ErrorCode::kInvalidArgument, "only bijective time changes are invertible");
  std::vector<std::size_t> inverse(phi.sigma().size());
  for (std::size_t j = 0; j < inverse.size(); ++j) inverse[phi.sigma()[j]] = j;
  return TimeChangeMap<S>(phi.target(), phi.source(), std::move(inverse));
}

/// T(X op Y) = T X op T Y for the five operad operations, the module identity
/// T(F . X) = T F . T X, and linearity T(aX + bY) = a T X + b T Y.
template <Scalar S>
ResidualReport<S> check_time_change_morphism(const TimeChangeMap<S>& phi, const HParam<S>& h,
                                             const SamplePath<S>& x, const SamplePath<S>& y,
                                             const S& a = S(2), const S& b = S(-3)) {
  require(phi.is_bijective(), ErrorCode::kInvalidArgument,
          "check_time_change_morphism: partition sums transport exactly only along bijective time changes");
  require_same_grid(x, y, "check_time_change_morphism");
  auto t = [&](const SamplePath<S>& p) { return apply_time_change(phi, p); };
  const SamplePath<S> tx = t(x);
  const SamplePath<S> ty = t(y);

  ResidualReport<S> report;
  report.law = "time-change-morphism";
  report.input_scale = magnitude_of<S>({&x, &y});
  report.add("T(X-|Y) = TX -| TY", t(dend_left(h, x, y)) - dend_left(h, tx, ty));
  report.add("T(X|-Y) = TX |- TY", t(dend_right(h, x, y)) - dend_right(h, tx, ty));
  report.add("T(X<Y) = TX < TY", t(prec(x, y)) - prec(tx, ty));
  report.add("T(X>Y) = TX > TY", t(succ(x, y)) - succ(tx, ty));
  report.add("T[X,Y] = [TX,TY]", t(tridot(x, y)) - tridot(tx, ty));
  report.add("T(X.Y) = TX.TY", t(pointwise_product(x, y)) - pointwise_product(tx, ty));
  report.add("T(aX+bY) = aTX+bTY", t(linear_combine(a, x, b, y)) - linear_combine(a, tx, b, ty));
  return report;
}

struct LatticeCheck {
  std::size_t elements = 0;
  std::uint64_t tuples_checked = 0;
  bool holds = true;
  std::string failure;
};

/// Exhaustive lattice laws for meet/join on every stopping index vector with
/// `members` entries in {0..n}: associativity, commutativity, idempotence,
/// absorption, and meet(a, b) = a iff a <= b.
LatticeCheck verify_stopping_lattice(std::size_t n, std::size_t members = 2);

struct GroupoidCheck {
  std::size_t grids = 0;
  std::size_t arrows = 0;
  std::uint64_t compositions_checked = 0;
  bool closure = true;
  bool associativity = true;
  bool identity = true;
  bool inverse = true;
  std::string failure;

  bool all() const { return closure && associativity && identity && inverse; }
};

/// Exhaustive groupoid axioms for bijective time changes. For each n in
/// [1, max_n] the objects are all grids on [0, 1] with n intervals whose
/// interior times lie in {1/(n+2), .., (n+1)/(n+2)}; the arrows are all
/// bijections between them.
GroupoidCheck verify_time_change_groupoid(std::size_t max_n);

// ---------------------------------------------------------------------------
// Girsanov operators
// ---------------------------------------------------------------------------

/// Density process of an equivalent change of measure: strictly positive,
/// normalised to D_0 = 1 on every path.
template <Scalar S>
class DensityPath {
 public:
  explicit DensityPath(SamplePath<S> path) : path_(std::move(path)) {
    require(path_.initial() == S(1), ErrorCode::kInvalidArgument,
            "density must start at 1, got " + format_scalar(path_.initial()));
    for (std::size_t j = 0; j < path_.size(); ++j) {
      require(path_[j] > 0, ErrorCode::kInvalidArgument,
              "density must be strictly positive (index " + std::to_string(j) + " is " + format_scalar(path_[j]) +
                  ")");
    }
  }

  static DensityPath unit(GridPtr<S> grid) { return DensityPath(SamplePath<S>::constant(std::move(grid), S(1))); }

  const SamplePath<S>& path() const { return path_; }

  friend bool operator==(const DensityPath& a, const DensityPath& b) { return a.path_ == b.path_; }

 private:
  SamplePath<S> path_;
};

/// D_{Q1,Q3} = D_{Q1,Q2} * D_{Q2,Q3}
template <Scalar S>
DensityPath<S> compose_densities(const DensityPath<S>& d12, const DensityPath<S>& d23) {
  return DensityPath<S>(pointwise_product(d12.path(), d23.path()));
}

template <Scalar S>
DensityPath<S> invert_density(const DensityPath<S>& d) {
  return DensityPath<S>(pointwise_reciprocal(d.path()));
}

/// G(X) = X - (1/D) . [X, D]
template <Scalar S>
SamplePath<S> girsanov(const DensityPath<S>& d, const SamplePath<S>& x) {
  require_same_grid(x, d.path(), "girsanov");
  return x - ito_integral(pointwise_reciprocal(d.path()), quadratic_covariation(x, d.path()));
}

/// G(F . X) = F . G(X); exact on the grid.
template <Scalar S>
ResidualReport<S> girsanov_module_residual(const DensityPath<S>& d, const SamplePath<S>& f, const SamplePath<S>& x) {
  ResidualReport<S> report;
  report.law = "girsanov-module";
  report.input_scale = magnitude_of<S>({&f, &x, &d.path()});
  report.add("G(F.X) = F.G(X)", girsanov(d, ito_integral(f, x)) - ito_integral(f, girsanov(d, x)));
  return report;
}

/// G(A) - A = -(1/D) . [A, D] for a bounded-variation path A. Vanishes only
/// in the mesh limit.
template <Scalar S>
ResidualReport<S> girsanov_bv_residual(const DensityPath<S>& d, const SamplePath<S>& a) {
  ResidualReport<S> report;
  report.law = "girsanov-bv";
  report.input_scale = magnitude_of<S>({&a, &d.path()});
  report.add("G(A) = A", girsanov(d, a) - a);
  return report;
}

/// Functoriality of D -> G_D under composition of densities:
/// G_{D12 D23}(X) - G_{D23}(G_{D12}(X)), with its grid-level closed form
/// -2 sum dX dD12 dD23 / (D12_{j-1} D23_{j-1}).
template <Scalar S>
ResidualReport<S> girsanov_functor_residual(const DensityPath<S>& d12, const DensityPath<S>& d23,
                                            const SamplePath<S>& x) {
  const SamplePath<S>& p = d12.path();
  const SamplePath<S>& q = d23.path();
  require_same_grid(x, p, "girsanov_functor_residual");
  require_same_grid(x, q, "girsanov_functor_residual");
  SamplePath<S> expected = detail::accumulate(x.grid_ptr(), [&](std::size_t j) {
    return S(S(-2) * x.increment(j) * p.increment(j) * q.increment(j) / (p[j - 1] * q[j - 1]));
  });
  ResidualReport<S> report;
  report.law = "girsanov-functor";
  report.input_scale = magnitude_of<S>({&x, &p, &q});
  report.closed_form_extension = true;
  report.add("G_{D12 D23} = G_{D23} o G_{D12}", girsanov(compose_densities(d12, d23), x) - girsanov(d23, girsanov(d12, x)),
             std::move(expected));
  return report;
}

}  // namespace itolab
