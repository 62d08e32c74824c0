// Serial reference versus OpenMP row kernel versus incremental accumulator.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "twc/geometry.hpp"
#include "twc/opt_ga.hpp"
#include "twc/scenario_gen.hpp"

namespace {

std::vector<twc::Disk> random_disks(std::size_t n) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> coord(-20.0, 20.0);
  std::uniform_real_distribution<double> radius(2.0, 6.0);
  std::vector<twc::Disk> disks;
  for (std::size_t i = 0; i < n; ++i) disks.push_back({{coord(rng), coord(rng)}, radius(rng)});
  return disks;
}

void BM_Reference(benchmark::State& state) {
  const twc::CoverageGrid grid(20.0, 0.1);
  const auto disks = random_disks(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(twc::covered_cells_reference(grid, disks));
}

void BM_Parallel(benchmark::State& state) {
  const twc::CoverageGrid grid(20.0, 0.1);
  const auto disks = random_disks(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(twc::covered_cells(grid, disks));
}

// One disk swapped in and out per iteration, as the simulator does per event.
void BM_AccumulatorSwap(benchmark::State& state) {
  const twc::CoverageGrid grid(20.0, 0.1);
  const auto disks = random_disks(static_cast<std::size_t>(state.range(0)));
  twc::CoverageAccumulator acc(grid);
  for (const auto& d : disks) acc.add(d);
  const twc::Disk extra{{3.0, -4.0}, 6.0};
  for (auto _ : state) {
    acc.add(extra);
    benchmark::DoNotOptimize(acc.covered());
    acc.remove(extra);
  }
}

void BM_Fitness(benchmark::State& state) {
  const auto scenario = twc::generate_scenario({});
  const twc::CoverageGrid grid(20.0, 0.2);
  const auto genome = twc::heuristic_genome(scenario, {});
  for (auto _ : state) benchmark::DoNotOptimize(twc::fitness(genome, scenario, {}, grid));
}

}  // namespace

BENCHMARK(BM_Reference)->Arg(5)->Arg(20)->Arg(70);
BENCHMARK(BM_Parallel)->Arg(5)->Arg(20)->Arg(70);
BENCHMARK(BM_AccumulatorSwap)->Arg(5)->Arg(20)->Arg(70);
BENCHMARK(BM_Fitness);

BENCHMARK_MAIN();
