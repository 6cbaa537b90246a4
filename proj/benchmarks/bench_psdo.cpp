#include <benchmark/benchmark.h>

#include "pentalab/psdo.hpp"

using namespace pentalab;

static void BM_HamiltonianDensity(benchmark::State& state) {
  int order = int(state.range(0));
  int r = int(state.range(1));
  for (auto _ : state) {
    DiffPoly d = hamiltonian_density(order, r);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_HamiltonianDensity)->Args({4, 3})->Args({5, 3})->Args({5, 4})->Args({7, 2});

static void BM_Root(benchmark::State& state) {
  int order = int(state.range(0));
  int depth = int(state.range(1));
  PseudoDiffOp L = PseudoDiffOp::wilczynski_operator(order);
  for (auto _ : state) {
    PseudoDiffOp r = psdo_root(L, order, depth);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Root)->Args({4, 7})->Args({5, 8})->Args({6, 9});

static void BM_VariationalDerivative(benchmark::State& state) {
  DiffPoly d = hamiltonian_density(5, 4);
  for (auto _ : state) {
    auto v = variational_derivative(d, JetVar::k, 4);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_VariationalDerivative);

BENCHMARK_MAIN();
