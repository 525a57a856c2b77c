#include <benchmark/benchmark.h>

#include "mecsched/energy.hpp"
#include "mecsched/generate.hpp"
#include "mecsched/lp.hpp"
#include "mecsched/oracle.hpp"
#include "mecsched/rate.hpp"

namespace {

using namespace mecsched;

Instance instance_with(std::size_t users, double degradation) {
  GenerationSpec s;
  s.users = users;
  s.degradation = degradation;
  return generate_instance(s, 42);
}

Instance energy_instance(std::size_t users) {
  const Instance base = instance_with(users, 0.2);
  return base.with_deadline(1.5 * energy::feasibility_tmin(base).t_min);
}

void BM_SolveRateMax(benchmark::State& state) {
  const Instance x = instance_with(static_cast<std::size_t>(state.range(0)), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(rate::solve_rate_max(x));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveRateMax)->RangeMultiplier(2)->Range(4, 256)->Complexity();

void BM_BruteForceRate(benchmark::State& state) {
  const Instance x = instance_with(static_cast<std::size_t>(state.range(0)), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::brute_force_rate_max(x));
}
BENCHMARK(BM_BruteForceRate)->DenseRange(4, 12, 4);

void BM_BenchmarkLr(benchmark::State& state) {
  const Instance x = instance_with(static_cast<std::size_t>(state.range(0)), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(rate::benchmark_lr(x));
}
BENCHMARK(BM_BenchmarkLr)->Arg(12)->Arg(32);

void BM_FeasibilityTmin(benchmark::State& state) {
  const Instance x = instance_with(static_cast<std::size_t>(state.range(0)), 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(energy::feasibility_tmin(x));
}
BENCHMARK(BM_FeasibilityTmin)->Arg(10)->Arg(100);

void BM_SolveEnergySuboptimal(benchmark::State& state) {
  const Instance x = energy_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(energy::solve_energy_suboptimal(x));
}
BENCHMARK(BM_SolveEnergySuboptimal)->Arg(10)->Arg(50);

void BM_BruteForceEnergy(benchmark::State& state) {
  const Instance x = energy_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::brute_force_energy(x));
}
BENCHMARK(BM_BruteForceEnergy)->Arg(6)->Arg(10);

void BM_LpSolve(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Rng rng(7);
  lp::Problem p(n);
  for (double& c : p.objective) c = -rng.uniform(0.5, 2.0);
  for (std::size_t j = 0; j < n; ++j) p.set_bound(j, 0.0, 1.0);
  for (std::size_t k = 0; k < n / 2 + 1; ++k) {
    std::vector<double> row(n);
    for (double& a : row) a = rng.uniform(0.0, 1.0);
    p.add(std::move(row), lp::Relation::kLessEqual, static_cast<double>(n) / 4.0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(lp::solve(p));
}
BENCHMARK(BM_LpSolve)->Arg(8)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
