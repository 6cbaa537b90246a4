#include <benchmark/benchmark.h>

#include "pentalab/dioph.hpp"

using namespace pentalab;

static void BM_Rp3Search(benchmark::State& state) {
  int max_abs = int(state.range(0));
  int threads = int(state.range(1));
  for (auto _ : state) {
    auto hits = rp3_search(max_abs, rat(1, 8), threads);
    benchmark::DoNotOptimize(hits);
  }
}
BENCHMARK(BM_Rp3Search)->Args({5, 1})->Args({6, 1})->Args({6, 4})->Args({7, 4});

static void BM_Rp4Search(benchmark::State& state) {
  int max_abs = int(state.range(0));
  int threads = int(state.range(1));
  for (auto _ : state) {
    auto hits = rp4_search(max_abs, threads);
    benchmark::DoNotOptimize(hits);
  }
}
BENCHMARK(BM_Rp4Search)->Args({6, 1})->Args({7, 1})->Args({7, 4})->Args({8, 4});

static void BM_Rp4RatioScan(benchmark::State& state) {
  std::vector<Triple> triples = enumerate_triples(int(state.range(0)));
  for (auto _ : state) {
    long hits = 0;
    for (std::size_t i = 0; i < triples.size(); ++i) {
      SymmetricInvariants a = symmetric_invariants({triples[i][0], triples[i][1], triples[i][2]});
      for (std::size_t j = i + 1; j < triples.size(); ++j) {
        SymmetricInvariants b =
            symmetric_invariants({triples[j][0], triples[j][1], triples[j][2]});
        if (a.m1() != b.m1() || a.m3() != b.m3() || a.m2() == b.m2()) continue;
        if (rp4_two_subspace_ratio(triples[i], triples[j]) == rat(3, 10)) ++hits;
      }
    }
    benchmark::DoNotOptimize(hits);
  }
}
BENCHMARK(BM_Rp4RatioScan)->Arg(5)->Arg(7);

BENCHMARK_MAIN();
