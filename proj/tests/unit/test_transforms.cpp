#include <gtest/gtest.h>

#include "helpers.hpp"
#include "itolab/error.hpp"
#include "itolab/simulate.hpp"
#include "itolab/transforms.hpp"

using namespace itolab;
using testing_support::RPath;

namespace {

Rational q(long a, long b = 1) { return ratio<Rational>(a, b); }

const std::vector<Rational> kHs = {q(0), q(1, 3), q(1, 2), q(1)};

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kParse;
}

}  // namespace

TEST(Stopping, StopPathAndEnsemble) {
  const auto g = make_grid(q(1), 4);
  const RPath x(g, {q(0), q(1), q(3), q(-2), q(5)});
  EXPECT_EQ(stop_path(2, x).values(), (std::vector<Rational>{q(0), q(1), q(3), q(3), q(3)}));
  EXPECT_EQ(stop_path(4, x), x);
  PathEnsemble<Rational> e{g, {x, x}, 7, PathTag::kMartingale};
  const auto s = stop_ensemble(StoppingIndex{{0, 3}}, e);
  EXPECT_TRUE(s.paths[0].is_identically_zero());
  EXPECT_EQ(s.paths[1][4], q(-2));
  EXPECT_EQ(s.tag, PathTag::kMartingale);
  EXPECT_EQ(code_of([&] { stop_ensemble(StoppingIndex{{1}}, e); }), ErrorCode::kInvalidArgument);
}

TEST(Stopping, MeetJoinOrder) {
  const StoppingIndex a{{1, 4, 2}};
  const StoppingIndex b{{3, 0, 2}};
  EXPECT_EQ(stopping_meet(a, b).index, (std::vector<std::size_t>{1, 0, 2}));
  EXPECT_EQ(stopping_join(a, b).index, (std::vector<std::size_t>{3, 4, 2}));
  EXPECT_TRUE(stopping_le(stopping_meet(a, b), a));
  EXPECT_FALSE(stopping_le(a, b));
  EXPECT_EQ(code_of([&] { stopping_meet(a, StoppingIndex{{1}}); }), ErrorCode::kInvalidArgument);
}

TEST(Stopping, LatticeLawsExhaustive) {
  for (std::size_t n : {1u, 3u, 6u}) {
    const auto r = verify_stopping_lattice(n, 2);
    EXPECT_TRUE(r.holds) << r.failure;
    EXPECT_EQ(r.elements, (n + 1) * (n + 1));
  }
  EXPECT_TRUE(verify_stopping_lattice(3, 3).holds);
}

TEST(Stopping, EndomorphismExactForEveryIndex) {
  std::mt19937_64 rng(60);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testing_support::random_grid(2 + trial % 9, rng);
    const RPath x = testing_support::random_rational(g, 6, rng);
    const RPath y = testing_support::random_rational(g, 6, rng);
    const RPath f = testing_support::random_rational(g, 6, rng);
    for (std::size_t tau = 0; tau <= g->intervals(); ++tau) {
      for (const auto& h : kHs) {
        const auto r = check_stopping_endomorphism(tau, HParam<Rational>(h), x, y, std::optional<RPath>(f));
        ASSERT_TRUE(r.exact_zero()) << "tau=" << tau;
      }
    }
  }
}

TEST(TimeChange, SubsamplingExample) {
  const auto source = make_grid(std::vector<Rational>{q(0), q(1, 4), q(1, 2), q(1)});
  const auto target = make_grid(std::vector<Rational>{q(0), q(1, 2), q(1)});
  const TimeChangeMap<Rational> phi(source, target, {0, 2, 3});
  const RPath x(source, {q(0), q(1), q(4), q(9)});
  EXPECT_EQ(apply_time_change(phi, x).values(), (std::vector<Rational>{q(0), q(4), q(9)}));
  EXPECT_FALSE(phi.is_bijective());
}

TEST(TimeChange, InvalidMapsRejected) {
  const auto source = make_grid(q(1), 3);
  const auto target = make_grid(q(2), 3);
  EXPECT_EQ(code_of([&] { TimeChangeMap<Rational>(source, target, {0, 2, 1, 3}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { TimeChangeMap<Rational>(source, target, {1, 2, 3, 3}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { TimeChangeMap<Rational>(source, target, {0, 1, 2}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { TimeChangeMap<Rational>::between(source, make_grid(q(1), 2)); }),
            ErrorCode::kInvalidArgument);
  const RPath other = RPath::zero(make_grid(q(5), 3));
  EXPECT_EQ(code_of([&] { apply_time_change(TimeChangeMap<Rational>::identity(source), other); }),
            ErrorCode::kIncompatibleGrids);
}

TEST(TimeChange, GroupoidAxiomsExhaustive) {
  const auto r = verify_time_change_groupoid(6);
  EXPECT_TRUE(r.all()) << r.failure;
  EXPECT_GT(r.compositions_checked, 0u);
}

TEST(TimeChange, ComposeAndInvert) {
  const auto a = make_grid(q(1), 3);
  const auto b = make_grid(std::vector<Rational>{q(0), q(1, 5), q(1, 2), q(7)});
  const auto c = make_grid(q(2), 3);
  const auto ab = TimeChangeMap<Rational>::between(a, b);
  const auto bc = TimeChangeMap<Rational>::between(b, c);
  const auto ac = compose_time_changes(bc, ab);
  EXPECT_EQ(ac, TimeChangeMap<Rational>::between(a, c));
  EXPECT_TRUE(compose_time_changes(invert_time_change(ab), ab).is_identity());
  std::mt19937_64 rng(61);
  const RPath x = testing_support::random_rational(a, 5, rng);
  EXPECT_EQ(apply_time_change(ac, x), apply_time_change(bc, apply_time_change(ab, x)));
}

TEST(TimeChange, MorphismResidualsExact) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 10;
    const auto src = testing_support::random_grid(n, rng);
    const auto dst = testing_support::random_grid(n, rng);
    const auto phi = TimeChangeMap<Rational>::between(src, dst);
    const RPath x = testing_support::random_rational(src, 6, rng);
    const RPath y = testing_support::random_rational(src, 6, rng);
    for (const auto& h : kHs) ASSERT_TRUE(check_time_change_morphism(phi, HParam<Rational>(h), x, y).exact_zero());
  }
  const auto src = make_grid(q(1), 3);
  const TimeChangeMap<Rational> sub(src, make_grid(q(1), 2), {0, 1, 3});
  EXPECT_EQ(code_of([&] {
              check_time_change_morphism(sub, HParam<Rational>(q(0)), RPath::zero(src), RPath::zero(src));
            }),
            ErrorCode::kInvalidArgument);
}

TEST(TimeChange, EnsembleTagPreserved) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::kBvSmooth;
  const auto g = make_grid(1.0, 8);
  const auto e = bv_paths(spec, g, 3);
  const auto phi = TimeChangeMap<double>::between(g, make_grid(3.0, 8));
  const auto moved = apply_time_change(phi, e);
  EXPECT_EQ(moved.tag, PathTag::kBoundedVariation);
  EXPECT_EQ(moved.paths[2].values(), e.paths[2].values());
  EXPECT_EQ(moved.grid->horizon(), 3.0);
}

TEST(Girsanov, HandExample) {
  const auto g = make_grid(q(1), 2);
  const DensityPath<Rational> d(RPath(g, {q(1), q(2), q(1)}));
  const RPath x(g, {q(0), q(1), q(3)});
  EXPECT_EQ(girsanov(d, x).values(), (std::vector<Rational>{q(0), q(0), q(3)}));
}

TEST(Girsanov, MatchesOracle) {
  std::mt19937_64 rng(63);
  for (std::uint64_t m = 0; m < 20; ++m) {
    const auto g = make_grid(q(1), 12);
    const auto d = rational_density(g, 5, 17, m);
    const RPath x = testing_support::random_rational(g, 6, rng);
    std::vector<Rational> recip;
    for (const auto& v : d.path().values()) recip.push_back(1 / v);
    const auto expected = oracle::add(x.values(), oracle::ito(recip, oracle::cov(x.values(), d.path().values())), -1);
    ASSERT_EQ(girsanov(d, x).values(), expected);
  }
}

TEST(Girsanov, DensityValidation) {
  const auto g = make_grid(q(1), 2);
  EXPECT_EQ(code_of([&] { DensityPath<Rational>(RPath(g, {q(2), q(1), q(1)})); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { DensityPath<Rational>(RPath(g, {q(1), q(0), q(1)})); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { DensityPath<Rational>(RPath(g, {q(1), q(-1), q(1)})); }), ErrorCode::kInvalidArgument);
}

TEST(Girsanov, ModuleIdentityExact) {
  std::mt19937_64 rng(64);
  for (std::uint64_t m = 0; m < 30; ++m) {
    const auto g = make_grid(q(1), 4 + m % 13);
    const auto d = rational_density(g, 6, 5, m);
    const RPath f = testing_support::random_rational(g, 6, rng);
    const RPath x = testing_support::random_rational(g, 6, rng);
    ASSERT_TRUE(girsanov_module_residual(d, f, x).exact_zero());
  }
}

TEST(Girsanov, UnitDensityAndConstantPaths) {
  std::mt19937_64 rng(65);
  const auto g = make_grid(q(1), 9);
  const RPath x = testing_support::random_rational(g, 6, rng);
  EXPECT_EQ(girsanov(DensityPath<Rational>::unit(g), x), x);
  const auto d = rational_density(g, 4, 3, 0);
  EXPECT_TRUE(girsanov_bv_residual(d, RPath::constant(g, q(5, 2))).exact_zero());
}

TEST(Girsanov, DensityGroupStructure) {
  const auto g = make_grid(q(1), 6);
  const auto d1 = rational_density(g, 5, 1, 0);
  const auto d2 = rational_density(g, 5, 1, 1);
  EXPECT_EQ(compose_densities(d1, invert_density(d1)), DensityPath<Rational>::unit(g));
  EXPECT_EQ(compose_densities(d1, d2), compose_densities(d2, d1));
}

TEST(Girsanov, FunctorClosedFormExact) {
  std::mt19937_64 rng(66);
  for (std::uint64_t m = 0; m < 20; ++m) {
    const auto g = make_grid(q(1), 3 + m % 8);
    const auto d1 = rational_density(g, 5, 8, 2 * m);
    const auto d2 = rational_density(g, 5, 8, 2 * m + 1);
    const RPath x = testing_support::random_rational(g, 6, rng);
    ASSERT_TRUE(girsanov_functor_residual(d1, d2, x).expected_matched());
  }
}
