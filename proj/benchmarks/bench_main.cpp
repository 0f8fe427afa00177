#include <benchmark/benchmark.h>

#include "itolab/ito.hpp"
#include "itolab/meas_cat.hpp"
#include "itolab/operad.hpp"
#include "itolab/simulate.hpp"

using namespace itolab;

static void BM_ItoRational(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = make_grid(Rational(1), n);
  const auto e = rational_paths<Rational>(8, g, 2, true, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ito_integral(e.paths[0], e.paths[1]));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ItoRational)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

static void BM_ItoFloat(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  GeneratorSpec spec;
  const auto e = brownian_paths(spec, make_grid(1.0, n), 2);
  for (auto _ : state) benchmark::DoNotOptimize(ito_integral(e.paths[0], e.paths[1]));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ItoFloat)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

static void BM_TridendriformCheck(benchmark::State& state) {
  const auto g = make_grid(Rational(1), static_cast<std::size_t>(state.range(0)));
  const auto e = rational_paths<Rational>(8, g, 3, true, 2);
  for (auto _ : state) benchmark::DoNotOptimize(check_tridendriform(e.paths[0], e.paths[1], e.paths[2]));
}
BENCHMARK(BM_TridendriformCheck)->Arg(4)->Arg(16)->Arg(64);

static void BM_BrownianRefinement(benchmark::State& state) {
  GeneratorSpec spec;
  const auto coarse = brownian_paths(spec, make_grid(1.0, static_cast<std::size_t>(state.range(0))), 50);
  for (auto _ : state) benchmark::DoNotOptimize(refine_brownian(coarse, 1.0, 1));
}
BENCHMARK(BM_BrownianRefinement)->Arg(64)->Arg(1024);

static void BM_SigmaEnumeration(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(meas::enumerate_sigma_algebras(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_SigmaEnumeration)->DenseRange(3, 6);
BENCHMARK_MAIN();
