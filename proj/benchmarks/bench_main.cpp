#include <benchmark/benchmark.h>

#include "dtk/riley.hpp"
#include "dtk/tracer.hpp"

using namespace dtk;

static void BM_RileyPoly(benchmark::State& state) {
  const riley::KnotParams k{static_cast<int>(state.range(0)), static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(riley::riley_poly(k));
}
BENCHMARK(BM_RileyPoly)->Args({1, 1})->Args({2, 2})->Args({-3, 3})->Args({5, 5});

static void BM_RileyEval(benchmark::State& state) {
  const riley::KnotParams k{static_cast<int>(state.range(0)), static_cast<int>(state.range(1))};
  double s = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(riley::riley_eval(k, s, 1.5));
    s += 1e-9;
  }
}
BENCHMARK(BM_RileyEval)->Args({2, 2})->Args({5, 5});

static void BM_TraceBranch(benchmark::State& state) {
  const riley::KnotParams k{static_cast<int>(state.range(0)), 2};
  const auto c = state.range(1) ? riley::BranchCase::hyperbolic : riley::BranchCase::elliptic;
  for (auto _ : state) benchmark::DoNotOptimize(tracer::trace_branch(k, c, 512));
}
BENCHMARK(BM_TraceBranch)->Args({2, 0})->Args({-2, 1})->Unit(benchmark::kMillisecond);

static void BM_TraceBeyondSeed(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tracer::trace_beyond_seed({-2, 2}, 512));
}
BENCHMARK(BM_TraceBeyondSeed)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
