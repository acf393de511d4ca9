// Serial vs OpenMP sweeps. Run with --benchmark_counters_tabular=true.

#include "nsfrag/strucmodel.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

using namespace nsfrag::strucmodel;

namespace {

void run_los(benchmark::State& state, Execution exec) {
  SweepBounds b{static_cast<int>(state.range(0)), 3, static_cast<int>(state.range(1))};
  std::uint64_t instances = 0;
  for (auto _ : state) {
    SweepReport r = los_sweep(b, exec);
    if (!r.passed()) state.SkipWithError("mismatch");
    instances = r.instances;
    benchmark::DoNotOptimize(r);
  }
  state.counters["instances"] = static_cast<double>(instances);
  state.counters["threads"] = exec == Execution::serial ? 1 : omp_get_max_threads();
}

void BM_los_serial(benchmark::State& s) { run_los(s, Execution::serial); }
void BM_los_parallel(benchmark::State& s) { run_los(s, Execution::parallel); }

void run_psi(benchmark::State& state, Execution exec) {
  for (auto _ : state) {
    PsiReport r = psi_sweep(SweepBounds{3, 3, 0}, exec);
    if (!r.passed()) state.SkipWithError("psi failure");
    benchmark::DoNotOptimize(r);
  }
}

void BM_psi_serial(benchmark::State& s) { run_psi(s, Execution::serial); }
void BM_psi_parallel(benchmark::State& s) { run_psi(s, Execution::parallel); }

}  // namespace

BENCHMARK(BM_los_serial)->Args({2, 2})->Args({3, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_los_parallel)->Args({2, 2})->Args({3, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_psi_serial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_psi_parallel)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
