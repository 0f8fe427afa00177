#include <gtest/gtest.h>

#include "helpers.hpp"
#include "itolab/error.hpp"
#include "itolab/operad.hpp"
#include "itolab/simulate.hpp"

using namespace itolab;
using testing_support::RPath;
using testing_support::values_of;

namespace {

Rational q(long a, long b = 1) { return ratio<Rational>(a, b); }

const std::vector<Rational> kHs = {q(0), q(1, 3), q(1, 2), q(2, 3), q(1)};

RPath half_line() { return RPath(make_grid(q(1), 2), {q(0), q(1, 2), q(1)}); }

/// Right-endpoint sum in place of X > Y; breaks the structure on purpose.
RPath faulty_succ(const RPath& x, const RPath& y) { return h_integral(HParam<Rational>(q(1)), x, y); }

struct Triple {
  RPath x, y, z;
};

std::vector<Triple> population(std::uint64_t seed, std::size_t per_grid) {
  std::vector<Triple> out;
  for (std::size_t n : {4u, 16u, 64u}) {
    const auto g = make_grid(q(1), n);
    const auto a = rational_paths<Rational>(8, g, per_grid, true, seed + n);
    const auto b = rational_paths<Rational>(8, g, per_grid, true, seed + n + 1000);
    const auto c = rational_paths<Rational>(8, g, per_grid, true, seed + n + 2000);
    for (std::size_t i = 0; i < per_grid; ++i) out.push_back({a.paths[i], b.paths[i], c.paths[i]});
  }
  return out;
}

}  // namespace

TEST(OperadOps, WorkedExamples) {
  const auto g = make_grid(q(1), 2);
  const RPath x(g, {q(0), q(1), q(2)});
  const RPath y(g, {q(0), q(1), q(0)});
  EXPECT_EQ(succ(x, y).values(), (std::vector<Rational>{q(0), q(0), q(-1)}));
  const RPath l = half_line();
  EXPECT_EQ(tridot(l, l).values(), (std::vector<Rational>{q(0), q(1, 4), q(1, 2)}));
  EXPECT_EQ(star(l, l).values(), (std::vector<Rational>{q(0), q(1, 4), q(1)}));
  EXPECT_EQ(dend_left(HParam<Rational>(q(1, 2)), l, l).values(), (std::vector<Rational>{q(0), q(1, 8), q(1, 2)}));
  EXPECT_EQ(prelie_left(HParam<Rational>(q(0)), l, l).values(), (std::vector<Rational>{q(0), q(-1, 4), q(-1, 2)}));
  EXPECT_EQ(prelie_right(HParam<Rational>(q(1)), l, l), scale(q(-1), tridot(l, l)));
  EXPECT_TRUE(star(l, RPath::zero(g)).is_identically_zero());
  EXPECT_TRUE(succ(RPath::zero(g), y).is_identically_zero());
}

TEST(OperadOps, DendriformOperationsMatchOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = testing_support::random_grid(1 + trial % 12, rng);
    const RPath x = testing_support::random_rational(g, 6, rng);
    const RPath y = testing_support::random_rational(g, 6, rng);
    for (const auto& h : kHs) {
      ASSERT_EQ(values_of(dend_left(HParam<Rational>(h), x, y)), oracle::dend_left(h, x.values(), y.values()));
      ASSERT_EQ(values_of(dend_right(HParam<Rational>(h), x, y)), oracle::dend_right(h, x.values(), y.values()));
      ASSERT_EQ(dend_right(HParam<Rational>(h), x, y), h_integral(HParam<Rational>(h), x, y));
    }
  }
}

TEST(OperadOps, ZeroStartEnforced) {
  const auto g = make_grid(q(1), 2);
  const RPath x(g, {q(1), q(1), q(2)});
  const RPath z = RPath::zero(g);
  for (auto op : {&prec<Rational>, &succ<Rational>, &tridot<Rational>}) {
    try {
      op(x, z);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kPreconditionViolation);
    }
  }
  EXPECT_THROW(check_tridendriform(z, x, z), Error);
}

TEST(Tridendriform, ExactOnRandomPopulation) {
  for (const auto& t : population(1, 30)) {
    const auto r = check_tridendriform(t.x, t.y, t.z);
    ASSERT_EQ(r.axioms.size(), 9u);
    ASSERT_TRUE(r.exact_zero());
  }
}

TEST(Tridendriform, ExactOnRandomNonUniformGrids) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = testing_support::random_grid(1 + trial % 25, rng);
    const RPath x = testing_support::random_rational(g, 9, rng);
    const RPath y = testing_support::random_rational(g, 9, rng);
    const RPath z = testing_support::random_rational(g, 9, rng);
    ASSERT_TRUE(check_tridendriform(x, y, z).exact_zero());
  }
}

TEST(Tridendriform, SeventhRelationIsTripleCovariation) {
  std::mt19937_64 rng(32);
  const auto g = make_grid(q(1), 9);
  const RPath x = testing_support::random_rational(g, 5, rng);
  const RPath y = testing_support::random_rational(g, 5, rng);
  const RPath z = testing_support::random_rational(g, 5, rng);
  const auto expected = oracle::triple(x.values(), y.values(), z.values());
  EXPECT_EQ(values_of(tridot(tridot(x, y), z)), expected);
  EXPECT_EQ(values_of(tridot(x, tridot(y, z))), expected);
}

TEST(Tridendriform, FaultInjectionIsDetected) {
  TridendriformOps<Rational> ops;
  ops.succ_op = &faulty_succ;
  std::size_t failures = 0;
  for (const auto& t : population(2, 5)) failures += check_tridendriform(t.x, t.y, t.z, ops).exact_zero() ? 0 : 1;
  EXPECT_EQ(failures, 15u);
}

TEST(Star, IntegrationByPartsAndDendSum) {
  for (const auto& t : population(3, 20)) {
    for (const auto& h : kHs) {
      const auto r = check_star(HParam<Rational>(h), t.x, t.y);
      ASSERT_EQ(r.axioms.size(), 3u);
      ASSERT_TRUE(r.exact_zero());
    }
  }
}

// The closed-form signs are re-derived here from the oracle's own
// operations: residual_k = c_k h(h-1) [[X,Y],Z] must hold at every grid index
// with one integer c_k shared by all instances.
TEST(Dendriform, ClosedFormSignsMatchExpansionOracle) {
  std::mt19937_64 rng(41);
  std::array<std::optional<Rational>, 3> derived;
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = testing_support::random_grid(2 + trial % 10, rng);
    const auto x = oracle::random_path(g->intervals(), 7, rng);
    const auto y = oracle::random_path(g->intervals(), 7, rng);
    const auto z = oracle::random_path(g->intervals(), 7, rng);
    const auto tri = oracle::triple(x, y, z);
    if (tri.back() == 0) continue;
    for (const Rational& h : {q(1, 3), q(1, 2), q(3, 4)}) {
      auto L = [&](const oracle::Values& a, const oracle::Values& b) { return oracle::dend_left(h, a, b); };
      auto R = [&](const oracle::Values& a, const oracle::Values& b) { return oracle::dend_right(h, a, b); };
      const std::array<oracle::Values, 3> residual = {
          oracle::add(L(L(x, y), z), oracle::add(L(x, L(y, z)), L(x, R(y, z))), -1),
          oracle::add(L(R(x, y), z), R(x, L(y, z)), -1),
          oracle::add(oracle::add(R(L(x, y), z), R(R(x, y), z)), R(x, R(y, z)), -1)};
      const Rational hh = h * (h - 1);
      for (std::size_t k = 0; k < 3; ++k) {
        const Rational c = oracle::canon(residual[k].back() / (hh * tri.back()));
        ASSERT_EQ(c.get_den(), 1);
        if (!derived[k]) derived[k] = c;
        ASSERT_EQ(*derived[k], c);
        for (std::size_t j = 0; j < tri.size(); ++j) ASSERT_EQ(residual[k][j], c * hh * tri[j]);
      }
    }
  }
  for (std::size_t k = 0; k < 3; ++k) {
    ASSERT_TRUE(derived[k].has_value());
    EXPECT_EQ(*derived[k], Rational(kDendriformClosedFormSign[k])) << "axiom " << k + 1;
  }
}

TEST(Dendriform, ResidualsMatchClosedForm) {
  for (const auto& t : population(4, 20)) {
    for (const auto& h : kHs) {
      const auto r = check_dendriform(HParam<Rational>(h), t.x, t.y, t.z);
      ASSERT_TRUE(r.expected_matched());
      ASSERT_TRUE(r.axioms[1].exact_zero());
      if (h == 0 || h == 1) ASSERT_TRUE(r.exact_zero());
    }
  }
}

TEST(Dendriform, HalfLineExample) {
  const RPath l = half_line();
  const auto r = check_dendriform(HParam<Rational>(q(1, 2)), l, l, l);
  EXPECT_EQ(r.axioms[0].residual.terminal(), q(-1, 16));
  EXPECT_TRUE(r.expected_matched());
}

TEST(Zinbiel, ExactAndFloatTolerance) {
  for (const auto& t : population(5, 15)) ASSERT_TRUE(check_zinbiel(t.x, t.y).exact_zero());
  GeneratorSpec spec;
  spec.seed = 9;
  const auto g = make_grid(1.0, 256);
  const auto w = brownian_paths(spec, g, 10);
  for (std::size_t i = 0; i + 1 < w.count(); ++i) EXPECT_TRUE(check_zinbiel(w.paths[i], w.paths[i + 1]).expected_matched());
}

TEST(PreLie, ClosedFormsAndSymmetry) {
  for (const auto& t : population(6, 15)) {
    for (const auto& h : kHs) {
      const auto r = check_prelie(HParam<Rational>(h), t.x, t.y);
      ASSERT_TRUE(r.exact_zero());
    }
    ASSERT_TRUE(prelie_left(HParam<Rational>(q(1, 2)), t.x, t.y).is_identically_zero());
    ASSERT_TRUE(prelie_right(HParam<Rational>(q(1, 2)), t.x, t.y).is_identically_zero());
  }
}

TEST(FloatMode, SuitesWithinTolerance) {
  GeneratorSpec spec;
  spec.seed = 10;
  const auto g = make_grid(1.0, 512);
  const auto w = brownian_paths(spec, g, 30);
  for (std::size_t i = 0; i + 2 < w.count(); i += 3) {
    const auto& x = w.paths[i];
    const auto& y = w.paths[i + 1];
    const auto& z = w.paths[i + 2];
    EXPECT_TRUE(check_tridendriform(x, y, z).expected_matched());
    EXPECT_TRUE(check_star(HParam<double>(0.3), x, y).expected_matched());
    EXPECT_TRUE(check_dendriform(HParam<double>(0.3), x, y, z).expected_matched());
    EXPECT_TRUE(check_prelie(HParam<double>(0.8), x, y).expected_matched());
  }
}
