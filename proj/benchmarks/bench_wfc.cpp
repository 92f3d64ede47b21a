#include <benchmark/benchmark.h>

#include "wfc/analysis.hpp"
#include "wfc/simulate.hpp"

namespace {

const wfc::RaceParams kDefault{2, 2.0, 0.5};

void BM_ExpectedPayoff(benchmark::State& state) {
  wfc::RaceParams p = kDefault;
  for (auto _ : state) {
    p.mu = p.mu == 2.0 ? 2.5 : 2.0;
    benchmark::DoNotOptimize(wfc::expected_payoff(p));
  }
}
BENCHMARK(BM_ExpectedPayoff);

void BM_IndifferenceTau(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(wfc::early_indifference_tau(kDefault, 0.4));
}
BENCHMARK(BM_IndifferenceTau);

void BM_AveragedLateLimit(benchmark::State& state) {
  const wfc::RaceParams p{static_cast<int>(state.range(0)), 2.0, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(wfc::averaged_late_limit(p));
}
BENCHMARK(BM_AveragedLateLimit)->Arg(2)->Arg(10);

void BM_McExpectedPayoff(benchmark::State& state) {
  wfc::SimConfig config;
  config.trials = 100'000;
  config.threads = 1;
  const wfc::RaceParams p{static_cast<int>(state.range(0)), 2.0, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(wfc::mc_expected_payoff(p, std::nullopt, config).mean);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(config.trials));
}
BENCHMARK(BM_McExpectedPayoff)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_BestResponseCheck(benchmark::State& state) {
  const wfc::SimConfig config;
  const wfc::RaceParams p{static_cast<int>(state.range(0)), 2.0, 0.5};
  const auto profiles = wfc::sample_profiles(p, [] {
    wfc::SimConfig c;
    c.trials = 64;
    return c;
  }());
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        wfc::best_response_check(profiles[i++ % profiles.size()], p, std::nullopt, config).pass);
  }
}
BENCHMARK(BM_BestResponseCheck)->Arg(2)->Arg(10)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
