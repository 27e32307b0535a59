#include <benchmark/benchmark.h>
#include "flagsieve/arith.hpp"
static void BM_placeholder(benchmark::State& s){ for (auto _ : s) benchmark::DoNotOptimize(flagsieve::ipow(2, 64)); }
BENCHMARK(BM_placeholder);
BENCHMARK_MAIN();
