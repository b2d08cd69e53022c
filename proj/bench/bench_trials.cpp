// SPDX-License-Identifier: Apache-2.0
//
// Serial reference versus OpenMP Monte Carlo trial loop, plus the closed-form
// kernels the analytic engine spends its time in.
#include <benchmark/benchmark.h>

#include <cmath>

#include "hetnet/analysis.hpp"
#include "hetnet/laplace.hpp"
#include "hetnet/mcsim.hpp"
#include "hetnet/specfun.hpp"

namespace {

using namespace hetnet;

Mode mode_arg(const benchmark::State& state) {
  return state.range(0) == 0 ? Mode::noncooperative : Mode::cooperative;
}

void BM_TrialsSerial(benchmark::State& state) {
  const Scenario sc = reference_scenario(Strategy::subf);
  const Window w = Window::auto_sized(sc);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trials_serial(sc, mode_arg(state), w, 2000, 1));
  }
  state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_TrialsSerial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TrialsOpenMP(benchmark::State& state) {
  const Scenario sc = reference_scenario(Strategy::subf);
  const Window w = Window::auto_sized(sc);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trials(sc, mode_arg(state), w, 2000, 1, static_cast<int>(state.range(1))));
  }
  state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_TrialsOpenMP)->ArgsProduct({{0, 1}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_CompIncBeta(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(comp_inc_beta(8.0 + 2.0 / 3.0, 1.0 / 3.0, x));
    x = std::fmod(x + 0.013, 0.98) + 0.01;
  }
}
BENCHMARK(BM_CompIncBeta);

void BM_GammaCcdfSum(benchmark::State& state) {
  const Scenario sc = reference_scenario(Strategy::subf);
  const LaplaceContext ctx = make_laplace_context(sc, 1e3, 20.0, 15.0);
  for (auto _ : state) benchmark::DoNotOptimize(gamma_ccdf_sum(ctx, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GammaCcdfSum)->Arg(1)->Arg(4)->Arg(8);

void BM_CoverageNoncooperative(benchmark::State& state) {
  const Scenario sc = reference_scenario(Strategy::subf);
  for (auto _ : state) benchmark::DoNotOptimize(coverage_overall(Mode::noncooperative, sc, 1.0));
}
BENCHMARK(BM_CoverageNoncooperative)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
