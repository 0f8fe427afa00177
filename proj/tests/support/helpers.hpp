#pragma once

#include <random>
#include <vector>

#include "itolab/path.hpp"
#include "oracles.hpp"

namespace testing_support {

using itolab::Rational;
using RPath = itolab::SamplePath<Rational>;

inline oracle::Values values_of(const RPath& p) { return p.values(); }

inline RPath path_on(const itolab::GridPtr<Rational>& grid, oracle::Values v) { return RPath(grid, std::move(v)); }

/// Random zero-start rational path drawn with the oracle's own generator.
inline RPath random_rational(const itolab::GridPtr<Rational>& grid, long bound, std::mt19937_64& rng) {
  return RPath(grid, oracle::random_path(grid->intervals(), bound, rng));
}

/// Random strictly increasing rational grid on [0, T] with n intervals.
inline itolab::GridPtr<Rational> random_grid(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> step(1, 9);
  std::vector<Rational> times{Rational(0)};
  for (std::size_t j = 0; j < n; ++j) times.push_back(times.back() + oracle::canon(Rational(step(rng), 7)));
  return itolab::make_grid(std::move(times));
}

inline bool all_zero(const oracle::Values& v) {
  for (const auto& q : v) {
    if (q != 0) return false;
  }
  return true;
}

}  // namespace testing_support
