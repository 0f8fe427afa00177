#include <gtest/gtest.h>

#include "helpers.hpp"
#include "itolab/error.hpp"
#include "itolab/path.hpp"

using namespace itolab;
using testing_support::RPath;

namespace {

Rational q(long a, long b = 1) { return ratio<Rational>(a, b); }

std::vector<Rational> qs(std::initializer_list<std::pair<long, long>> v) {
  std::vector<Rational> out;
  for (auto [a, b] : v) out.push_back(q(a, b));
  return out;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no itolab::Error thrown";
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST(MakeGrid, UniformExamples) {
  EXPECT_EQ(make_grid(q(1), 2)->times(), qs({{0, 1}, {1, 2}, {1, 1}}));
  EXPECT_EQ(make_grid(q(1), 1)->times(), qs({{0, 1}, {1, 1}}));
  const auto g = make_grid(q(2), 4);
  EXPECT_EQ(g->times(), qs({{0, 1}, {1, 2}, {1, 1}, {3, 2}, {2, 1}}));
  EXPECT_EQ(g->mesh(), q(1, 2));
}

TEST(MakeGrid, RejectsBadArguments) {
  EXPECT_EQ(code_of([] { make_grid(q(0), 3); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { make_grid(q(-1), 3); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { make_grid(q(1), 0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { make_grid(qs({{0, 1}, {1, 2}, {1, 2}})); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { make_grid(qs({{1, 4}, {1, 2}})); }), ErrorCode::kInvalidArgument);
}

TEST(MakeGrid, FloatEndpointIsHorizon) {
  for (std::size_t n : {3u, 7u, 10u, 1000u}) {
    const auto g = make_grid(0.3, n);
    EXPECT_EQ(g->horizon(), 0.3);
    EXPECT_EQ(g->intervals(), n);
  }
}

TEST(SamplePath, ValueCountMustMatchGrid) {
  const auto g = make_grid(q(1), 2);
  EXPECT_EQ(code_of([&] { RPath(g, qs({{0, 1}, {1, 1}})); }), ErrorCode::kInvalidArgument);
}

TEST(LinearCombine, Examples) {
  const auto g = make_grid(q(1), 2);
  const RPath x(g, qs({{0, 1}, {1, 1}, {2, 1}}));
  const RPath y(g, qs({{0, 1}, {10, 1}, {20, 1}}));
  EXPECT_TRUE(linear_combine(q(1), x, q(-1), x).is_identically_zero());
  EXPECT_TRUE(linear_combine(q(2), RPath::zero(g), q(3), RPath::zero(g)).is_identically_zero());
  EXPECT_EQ(linear_combine(q(1), x, q(1), y).values(), qs({{0, 1}, {11, 1}, {22, 1}}));
}

TEST(LinearCombine, GridMismatch) {
  const RPath x = RPath::zero(make_grid(q(1), 2));
  const RPath y = RPath::zero(make_grid(q(1), 3));
  EXPECT_EQ(code_of([&] { linear_combine(q(1), x, q(1), y); }), ErrorCode::kIncompatibleGrids);
}

TEST(LinearCombine, BilinearElementwiseProperty) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coef(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = testing_support::random_grid(1 + trial % 9, rng);
    const RPath x = testing_support::random_rational(g, 6, rng);
    const RPath y = testing_support::random_rational(g, 6, rng);
    const Rational a = q(coef(rng), 1 + trial % 5);
    const Rational b = q(coef(rng), 2);
    const RPath c = linear_combine(a, x, b, y);
    for (std::size_t j = 0; j < c.size(); ++j) ASSERT_EQ(c[j], a * x[j] + b * y[j]);
  }
}

TEST(RefineLinear, Examples) {
  const auto g = make_grid(q(1), 1);
  const RPath x(g, qs({{0, 1}, {1, 1}}));
  EXPECT_EQ(refine_linear(x, 1), x);
  const RPath r2 = refine_linear(x, 2);
  EXPECT_EQ(r2.values(), qs({{0, 1}, {1, 2}, {1, 1}}));
  EXPECT_EQ(r2.grid().times(), qs({{0, 1}, {1, 2}, {1, 1}}));
  const RPath r4 = refine_linear(RPath(g, qs({{0, 1}, {2, 1}})), 4);
  EXPECT_EQ(r4.values(), qs({{0, 1}, {1, 2}, {1, 1}, {3, 2}, {2, 1}}));
  EXPECT_EQ(code_of([&] { refine_linear(x, 0); }), ErrorCode::kInvalidArgument);
}

TEST(RefineLinear, MeshShrinksByFactorAndKeepsPoints) {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::size_t k = 1; k <= 5; ++k) {
      const auto g = make_grid(q(3, 2), n);
      const RPath x = testing_support::random_rational(g, 5, rng);
      const RPath r = refine_linear(x, k);
      EXPECT_EQ(r.grid().mesh(), g->mesh() / Rational(static_cast<long>(k)));
      for (std::size_t j = 0; j <= n; ++j) {
        EXPECT_EQ(r.grid()[j * k], (*g)[j]);
        EXPECT_EQ(r[j * k], x[j]);
      }
    }
  }
}

TEST(SamplePath, Predicates) {
  const auto g = make_grid(q(1), 3);
  const RPath x(g, qs({{0, 1}, {-3, 2}, {1, 1}, {5, 4}}));
  EXPECT_TRUE(x.is_zero_start());
  EXPECT_FALSE(x.is_identically_zero());
  EXPECT_EQ(x.max_abs(), q(3, 2));
  EXPECT_EQ(x.increment(3), q(1, 4));
  EXPECT_FALSE(RPath::constant(g, q(1)).is_zero_start());
}
