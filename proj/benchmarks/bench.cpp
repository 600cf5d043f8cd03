#include <benchmark/benchmark.h>

#include "modeq/extensions.hpp"
#include "modeq/imperfect.hpp"
#include "modeq/model.hpp"
#include "modeq/perfect.hpp"

namespace {

modeq::ModelParams base_params(double k) {
  modeq::ModelParams p;
  p.alpha = 0.2;
  p.v = 0.25;
  p.c = 0.3;
  p.k = k;
  return p;
}

void BM_SolveAdImperfect(benchmark::State& state) {
  const auto p = base_params(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(modeq::solve_ad_imperfect(p));
}
BENCHMARK(BM_SolveAdImperfect);

void BM_SolveSubImperfect(benchmark::State& state) {
  const auto p = base_params(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(modeq::solve_sub_imperfect(p));
}
BENCHMARK(BM_SolveSubImperfect);

void BM_Thresholds(benchmark::State& state) {
  const auto p = base_params(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(modeq::thresholds(p));
}
BENCHMARK(BM_Thresholds);

void BM_FixedPoint(benchmark::State& state) {
  const auto p = base_params(0.2);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(modeq::fixed_point_participation(0.5, 0.0, p, n));
}
BENCHMARK(BM_FixedPoint)->Arg(1000)->Arg(100000);

void BM_Hybrid(benchmark::State& state) {
  auto p = base_params(0.5);
  p.a = 0.2;
  p.delta = 0.8;
  for (auto _ : state) benchmark::DoNotOptimize(modeq::solve_hybrid(p));
}
BENCHMARK(BM_Hybrid);

}  // namespace

BENCHMARK_MAIN();
