#include <benchmark/benchmark.h>

#include "pentalab/limits.hpp"

using namespace pentalab;

static void BM_GammaEpsilon(benchmark::State& state) {
  SmoothLiftedCurve curve = curve_library(3).front();
  IndexSchema schema = rp3_ansatz_schema(-2, 3, -5);
  for (auto _ : state) {
    VecXl v = gamma_epsilon(curve, schema, 0.2L, 1e-2L);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_GammaEpsilon);

static void BM_SegHyperEpsilon(benchmark::State& state) {
  int m = int(state.range(0));
  SmoothLiftedCurve curve = curve_library(m).front();
  std::vector<int> offsets;
  for (int i = 2; int(offsets.size()) < m - 1; ++i) {
    offsets.push_back(i);
    if (int(offsets.size()) < m - 1) offsets.push_back(-i);
  }
  IndexSchema schema = segment_hyperplane_schema(m, offsets);
  for (auto _ : state) {
    VecXl v = gamma_epsilon(curve, schema, 0.2L, 1e-2L);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_SegHyperEpsilon)->Arg(2)->Arg(3)->Arg(4)->Arg(5);

static void BM_FitLimit(benchmark::State& state) {
  SmoothLiftedCurve curve = curve_library(3).front();
  IndexSchema schema = rp3_ansatz_schema(-2, 3, -5);
  for (auto _ : state) {
    LimitReport rep = fit_limit(curve, schema, 0.2, default_epsilons(3));
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_FitLimit);

BENCHMARK_MAIN();
