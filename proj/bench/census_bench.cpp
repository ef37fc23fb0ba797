// Serial reference vs table kernel vs OpenMP kernel for coprime pair counts,
// and the Q-side sweep at 1 and N threads.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "ellfib/arith.hpp"
#include "ellfib/census.hpp"

namespace {

using namespace ellfib;

void BM_CoprimeReference(benchmark::State& state) {
  const FieldSpec F = FieldSpec::of_order(static_cast<std::uint64_t>(state.range(0)));
  const int d = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(count_coprime_pairs_reference(F, d, d));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(*pair_space_size(F.q(), d, d)));
}

void BM_CoprimeKernel(benchmark::State& state) {
  const FieldSpec F = FieldSpec::of_order(static_cast<std::uint64_t>(state.range(0)));
  const int d = static_cast<int>(state.range(1));
  const CensusOptions opts{kDefaultBudget, static_cast<int>(state.range(2))};
  for (auto _ : state) benchmark::DoNotOptimize(count_coprime_pairs(F, d, d, opts));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(*pair_space_size(F.q(), d, d)));
}

void BM_ZqSweep(benchmark::State& state) {
  ZqOptions o;
  o.b_max = 100'000;
  o.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(z_q_experiment(o).rows.size());
}

const int kThreads = omp_get_num_procs();

BENCHMARK(BM_CoprimeReference)->Args({5, 3})->Args({7, 3})->Args({25, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoprimeKernel)
    ->Args({5, 3, 1})
    ->Args({7, 3, 1})
    ->Args({25, 2, 1})
    ->Args({5, 5, 1})
    ->Args({5, 5, kThreads})
    ->Args({7, 4, 1})
    ->Args({7, 4, kThreads})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_ZqSweep)->Arg(1)->Arg(kThreads)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
