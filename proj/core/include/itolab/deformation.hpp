#pragma once

// Hochschild cochains C^n(S_I, S_0) = Hom(S_I^{(x)n} (x) S_0, S_0) with the
// module action xi(F) = F . (-) and the algebra product alpha = pointwise
// product. Only arities 0, 1, 2 are evaluated.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "itolab/ito.hpp"
#include "itolab/path.hpp"
#include "itolab/residual.hpp"

namespace itolab {

/// An n-cochain: takes n algebra arguments and one module argument. The
/// evaluator must be a pure function of its arguments.
template <Scalar S>
struct Cochain {
  using Evaluator = std::function<SamplePath<S>(std::span<const SamplePath<S>>, const SamplePath<S>&)>;

  std::size_t arity = 0;
  Evaluator evaluate;

  SamplePath<S> operator()(std::span<const SamplePath<S>> algebra, const SamplePath<S>& module) const {
    require(algebra.size() == arity, ErrorCode::kInvalidArgument,
            "cochain of arity " + std::to_string(arity) + " given " + std::to_string(algebra.size()) +
                " algebra arguments");
    return evaluate(algebra, module);
  }
};

/// xi(F)(X) = F . X
template <Scalar S>
SamplePath<S> xi(const SamplePath<S>& f, const SamplePath<S>& x) {
  return ito_integral(f, x);
}

/// xi_1(F)(X) = [F, X]
template <Scalar S>
SamplePath<S> xi1(const SamplePath<S>& f, const SamplePath<S>& x) {
  return quadratic_covariation(f, x);
}

template <Scalar S>
Cochain<S> xi1_cochain() {
  return {1, [](std::span<const SamplePath<S>> a, const SamplePath<S>& x) { return xi1(a[0], x); }};
}

/// Wraps an endomorphism g of S_0 as a 0-cochain.
template <Scalar S>
Cochain<S> endomorphism_cochain(std::function<SamplePath<S>(const SamplePath<S>&)> g) {
  return {0, [g = std::move(g)](std::span<const SamplePath<S>>, const SamplePath<S>& x) { return g(x); }};
}

/// (d_n f)(F_1, ..., F_{n+1}; X) =
///     F_1 . f(F_2..F_{n+1}; X)
///   + sum_{i=1..n} (-1)^i f(F_1, .., F_i F_{i+1}, .., F_{n+1}; X)
///   + (-1)^{n+1} f(F_1..F_n; F_{n+1} . X)
template <Scalar S>
SamplePath<S> hochschild_d(std::size_t n, const Cochain<S>& f, std::span<const SamplePath<S>> algebra,
                           const SamplePath<S>& module) {
  require(n <= 2, ErrorCode::kNotImplemented,
          "hochschild_d: arity " + std::to_string(n) + " is not implemented (supported: 0, 1, 2)");
  require(f.arity == n, ErrorCode::kInvalidArgument, "hochschild_d: cochain arity does not match n");
  require(algebra.size() == n + 1, ErrorCode::kInvalidArgument,
          "hochschild_d: d_n takes n + 1 algebra arguments");
  for (const auto& a : algebra) require_same_grid(a, module, "hochschild_d");

  SamplePath<S> total = xi(algebra[0], f(algebra.subspan(1), module));
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<SamplePath<S>> merged;
    merged.reserve(n);
    for (std::size_t k = 0; k < algebra.size(); ++k) {
      if (k + 1 == i) {
        merged.push_back(pointwise_product(algebra[k], algebra[k + 1]));
        ++k;
      } else {
        merged.push_back(algebra[k]);
      }
    }
    const S sign = (i % 2 == 0) ? S(1) : S(-1);
    total = linear_combine(S(1), total, sign, f(merged, module));
  }
  const S last_sign = ((n + 1) % 2 == 0) ? S(1) : S(-1);
  SamplePath<S> acted = xi(algebra[n], module);
  total = linear_combine(S(1), total, last_sign, f(algebra.first(n), acted));
  return total;
}

/// d_1(xi_1)(F, G; X), expected to equal -[[F, G], X] on the grid; the
/// 1-cocycle condition holds in the mesh limit.
template <Scalar S>
ResidualReport<S> cocycle_residual(const SamplePath<S>& f, const SamplePath<S>& g, const SamplePath<S>& x) {
  const std::vector<SamplePath<S>> algebra{f, g};
  ResidualReport<S> report;
  report.law = "hochschild-cocycle";
  report.input_scale = magnitude_of<S>({&f, &g, &x});
  report.closed_form_extension = true;
  report.add("d1(xi1)(F,G;X) = 0", hochschild_d<S>(1, xi1_cochain<S>(), algebra, x),
             scale(S(-1), triple_covariation(f, g, x)));
  return report;
}

/// xi_h(FG) - xi_h(F) o xi_h(G) applied to X; expected -h(h-1) [[F,G],X].
template <Scalar S>
ResidualReport<S> multiplicativity_residual(const HParam<S>& h, const SamplePath<S>& f, const SamplePath<S>& g,
                                            const SamplePath<S>& x) {
  ResidualReport<S> report;
  report.law = "multiplicativity";
  report.input_scale = magnitude_of<S>({&f, &g, &x});
  report.closed_form_extension = true;
  const S coeff = -(h.value() * (h.value() - S(1)));
  report.add("(F G) ._h X = F ._h (G ._h X)",
             h_integral(h, pointwise_product(f, g), x) - h_integral(h, f, h_integral(h, g, x)),
             scale(coeff, triple_covariation(f, g, x)));
  return report;
}

/// X ._h (Y ._h Z) - (X Y) ._h Z; expected h(h-1) [[X,Y],Z].
template <Scalar S>
ResidualReport<S> h_associativity_residual(const HParam<S>& h, const SamplePath<S>& x, const SamplePath<S>& y,
                                           const SamplePath<S>& z) {
  ResidualReport<S> report;
  report.law = "h-associativity";
  report.input_scale = magnitude_of<S>({&x, &y, &z});
  report.closed_form_extension = true;
  const S coeff = h.value() * (h.value() - S(1));
  report.add("X ._h (Y ._h Z) = (X Y) ._h Z",
             h_integral(h, x, h_integral(h, y, z)) - h_integral(h, pointwise_product(x, y), z),
             scale(coeff, triple_covariation(x, y, z)));
  return report;
}

/// d_1(d_0 g)(F, G; X), which vanishes exactly for any endomorphism g.
template <Scalar S>
ResidualReport<S> d_squared_residual(const std::function<SamplePath<S>(const SamplePath<S>&)>& g,
                                     const SamplePath<S>& f, const SamplePath<S>& gg, const SamplePath<S>& x) {
  const Cochain<S> g0 = endomorphism_cochain<S>(g);
  const Cochain<S> dg{1, [g0](std::span<const SamplePath<S>> a, const SamplePath<S>& m) {
                        return hochschild_d<S>(0, g0, a, m);
                      }};
  const std::vector<SamplePath<S>> algebra{f, gg};
  ResidualReport<S> report;
  report.law = "d-squared";
  report.input_scale = magnitude_of<S>({&f, &gg, &x});
  report.add("d1(d0 g)(F,G;X) = 0", hochschild_d<S>(1, dg, algebra, x));
  return report;
}

/// Tests one candidate coboundary for [F, X] = F . g(X) - g(F . X). A nonzero
/// residual shows only that this particular g fails.
template <Scalar S>
ResidualReport<S> coboundary_probe(const std::function<SamplePath<S>(const SamplePath<S>&)>& g,
                                   const SamplePath<S>& f, const SamplePath<S>& x) {
  const std::vector<SamplePath<S>> algebra{f};
  ResidualReport<S> report;
  report.law = "coboundary-probe";
  report.input_scale = magnitude_of<S>({&f, &x});
  report.add("[F,X] = F.g(X) - g(F.X)",
             quadratic_covariation(f, x) - hochschild_d<S>(0, endomorphism_cochain<S>(g), algebra, x));
  return report;
}

}  // namespace itolab
