#pragma once

// Tridendriform (prec, succ, tridot), dendriform (dend_left, dend_right) and
// pre-Lie operations on zero-start paths, and the suites that check their laws.
//
// Notation:   X prec Y = Y . X      X succ Y = X . Y      X tridot Y = [X, Y]
//             X -|h Y = Y . X + (1-h)[X, Y]     X |-h Y = X . Y + h [X, Y]

#include <array>
#include <string>

#include "itolab/ito.hpp"
#include "itolab/path.hpp"
#include "itolab/residual.hpp"

namespace itolab {

template <Scalar S>
SamplePath<S> prec(const SamplePath<S>& x, const SamplePath<S>& y) {
  require_zero_start(x, "prec", "X");
  require_zero_start(y, "prec", "Y");
  return ito_integral(y, x);
}

template <Scalar S>
SamplePath<S> succ(const SamplePath<S>& x, const SamplePath<S>& y) {
  require_zero_start(x, "succ", "X");
  require_zero_start(y, "succ", "Y");
  return ito_integral(x, y);
}

template <Scalar S>
SamplePath<S> tridot(const SamplePath<S>& x, const SamplePath<S>& y) {
  require_zero_start(x, "tridot", "X");
  require_zero_start(y, "tridot", "Y");
  return quadratic_covariation(x, y);
}

/// The three tridendriform operations as replaceable callables; the law suites
/// run against this table so a corrupted operation can be injected as a
/// negative control.
template <Scalar S>
struct TridendriformOps {
  using Op = SamplePath<S> (*)(const SamplePath<S>&, const SamplePath<S>&);
  Op prec_op = &prec<S>;
  Op succ_op = &succ<S>;
  Op tridot_op = &tridot<S>;

  SamplePath<S> star(const SamplePath<S>& x, const SamplePath<S>& y) const {
    SamplePath<S> a = prec_op(x, y);
    SamplePath<S> b = succ_op(x, y);
    SamplePath<S> c = tridot_op(x, y);
    std::vector<S> out(a.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = a[j] + b[j] + c[j];
    return SamplePath<S>(a.grid_ptr(), std::move(out));
  }
};

/// X * Y = prec + succ + tridot; equals the pointwise product on zero-start paths.
template <Scalar S>
SamplePath<S> star(const SamplePath<S>& x, const SamplePath<S>& y) {
  return TridendriformOps<S>{}.star(x, y);
}

template <Scalar S>
SamplePath<S> dend_left(const HParam<S>& h, const SamplePath<S>& x, const SamplePath<S>& y) {
  return linear_combine(S(1), prec(x, y), S(S(1) - h.value()), tridot(x, y));
}

template <Scalar S>
SamplePath<S> dend_right(const HParam<S>& h, const SamplePath<S>& x, const SamplePath<S>& y) {
  return linear_combine(S(1), succ(x, y), h.value(), tridot(x, y));
}

/// L{X, Y} = X |- Y - Y -| X, which collapses to (2h - 1)[X, Y].
template <Scalar S>
SamplePath<S> prelie_left(const HParam<S>& h, const SamplePath<S>& x, const SamplePath<S>& y) {
  return dend_right(h, x, y) - dend_left(h, y, x);
}

/// R{X, Y} = X -| Y - Y |- X, which collapses to (1 - 2h)[X, Y].
template <Scalar S>
SamplePath<S> prelie_right(const HParam<S>& h, const SamplePath<S>& x, const SamplePath<S>& y) {
  return dend_left(h, x, y) - dend_right(h, y, x);
}

/// Signs c_k with  (LHS_k - RHS_k) = c_k * h(h-1) * [[X,Y],Z]  for the three
/// dendriform axioms on a grid. Obtained by expanding the partition sums and
/// frozen here; the test suite re-derives them with an independent oracle.
inline constexpr std::array<int, 3> kDendriformClosedFormSign = {+1, 0, -1};

namespace detail {

template <Scalar S>
void require_zero_start_triple(const SamplePath<S>& x, const SamplePath<S>& y, const SamplePath<S>& z,
                               const char* op) {
  require_same_grid(x, y, op);
  require_same_grid(x, z, op);
  require_zero_start(x, op, "X");
  require_zero_start(y, op, "Y");
  require_zero_start(z, op, "Z");
}

}  // namespace detail

/// The seven tridendriform relations and both commutativity clauses, each as
/// LHS - RHS. All nine vanish identically on any grid.
template <Scalar S>
ResidualReport<S> check_tridendriform(const SamplePath<S>& x, const SamplePath<S>& y, const SamplePath<S>& z,
                                      const TridendriformOps<S>& ops = {}) {
  detail::require_zero_start_triple(x, y, z, "check_tridendriform");
  const auto& prec_ = ops.prec_op;
  const auto& succ_ = ops.succ_op;
  const auto& dot = ops.tridot_op;

  ResidualReport<S> report;
  report.law = "tridendriform";
  report.input_scale = magnitude_of<S>({&x, &y, &z});

  report.add("(X<Y)<Z = X<(Y*Z)", prec_(prec_(x, y), z) - prec_(x, ops.star(y, z)));
  report.add("(X>Y)<Z = X>(Y<Z)", prec_(succ_(x, y), z) - succ_(x, prec_(y, z)));
  report.add("(X*Y)>Z = X>(Y>Z)", succ_(ops.star(x, y), z) - succ_(x, succ_(y, z)));
  report.add("[X>Y,Z] = X>[Y,Z]", dot(succ_(x, y), z) - succ_(x, dot(y, z)));
  report.add("[X<Y,Z] = [X,Y>Z]", dot(prec_(x, y), z) - dot(x, succ_(y, z)));
  report.add("[X,Y]<Z = [X,Y<Z]", prec_(dot(x, y), z) - dot(x, prec_(y, z)));
  report.add("[[X,Y],Z] = [X,[Y,Z]]", dot(dot(x, y), z) - dot(x, dot(y, z)));
  report.add("X<Y = Y>X", prec_(x, y) - succ_(y, x));
  report.add("[X,Y] = [Y,X]", dot(x, y) - dot(y, x));
  return report;
}

/// Integration by parts X*Y = X.Y + Y.X + [X,Y] and the star / dendriform-sum
/// identities X * Y = X.Y (pointwise) = X -| Y + X |- Y.
template <Scalar S>
ResidualReport<S> check_star(const HParam<S>& h, const SamplePath<S>& x, const SamplePath<S>& y,
                             const TridendriformOps<S>& ops = {}) {
  require_same_grid(x, y, "check_star");
  require_zero_start(x, "check_star", "X");
  require_zero_start(y, "check_star", "Y");
  ResidualReport<S> report;
  report.law = "integration-by-parts";
  report.input_scale = magnitude_of<S>({&x, &y});
  const SamplePath<S> product = pointwise_product(x, y);
  report.add("X.Y - X*Y - Y*X - [X,Y] = 0", integration_by_parts_residual(x, y));
  report.add("X star Y = X.Y", ops.star(x, y) - product);
  report.add("X -| Y + X |- Y = X.Y", dend_left(h, x, y) + dend_right(h, x, y) - product);
  return report;
}

/// The three dendriform axioms as LHS - RHS, with the expected residual
/// c_k h(h-1) [[X,Y],Z] attached. For h in {0, 1} every residual vanishes.
template <Scalar S>
ResidualReport<S> check_dendriform(const HParam<S>& h, const SamplePath<S>& x, const SamplePath<S>& y,
                                   const SamplePath<S>& z) {
  detail::require_zero_start_triple(x, y, z, "check_dendriform");
  auto left = [&](const SamplePath<S>& a, const SamplePath<S>& b) { return dend_left(h, a, b); };
  auto right = [&](const SamplePath<S>& a, const SamplePath<S>& b) { return dend_right(h, a, b); };

  ResidualReport<S> report;
  report.law = "dendriform";
  report.input_scale = magnitude_of<S>({&x, &y, &z});
  report.closed_form_extension = true;

  const S hh = h.value() * (h.value() - S(1));
  const SamplePath<S> triple = triple_covariation(x, y, z);
  auto expected = [&](int k) { return scale(S(hh * S(kDendriformClosedFormSign[k])), triple); };

  report.add("(X-|Y)-|Z = X-|(Y-|Z) + X-|(Y|-Z)",
             left(left(x, y), z) - (left(x, left(y, z)) + left(x, right(y, z))), expected(0));
  report.add("(X|-Y)-|Z = X|-(Y-|Z)", left(right(x, y), z) - right(x, left(y, z)), expected(1));
  report.add("(X-|Y)|-Z + (X|-Y)|-Z = X|-(Y|-Z)",
             (right(left(x, y), z) + right(right(x, y), z)) - right(x, right(y, z)), expected(2));
  return report;
}

/// Zinbiel commutativity at h = 1/2: X -| Y = Y |- X.
template <Scalar S>
ResidualReport<S> check_zinbiel(const SamplePath<S>& x, const SamplePath<S>& y) {
  const HParam<S> half(ratio<S>(1, 2));
  ResidualReport<S> report;
  report.law = "zinbiel";
  report.input_scale = magnitude_of<S>({&x, &y});
  report.add("X-|Y = Y|-X (h=1/2)", dend_left(half, x, y) - dend_right(half, y, x));
  return report;
}

/// Pre-Lie products against their closed forms (2h-1)[X,Y] and (1-2h)[X,Y],
/// plus symmetry and L + R = 0.
template <Scalar S>
ResidualReport<S> check_prelie(const HParam<S>& h, const SamplePath<S>& x, const SamplePath<S>& y) {
  ResidualReport<S> report;
  report.law = "pre-lie";
  report.input_scale = magnitude_of<S>({&x, &y});
  const S two_h_minus_one = S(2) * h.value() - S(1);
  const SamplePath<S> cov = tridot(x, y);
  const SamplePath<S> left = prelie_left(h, x, y);
  const SamplePath<S> right = prelie_right(h, x, y);
  report.add("L{X,Y} = (2h-1)[X,Y]", left - scale(two_h_minus_one, cov));
  report.add("R{X,Y} = (1-2h)[X,Y]", right + scale(two_h_minus_one, cov));
  report.add("L{X,Y} + R{X,Y} = 0", left + right);
  report.add("L{X,Y} = L{Y,X}", left - prelie_left(h, y, x));
  return report;
}

}  // namespace itolab
