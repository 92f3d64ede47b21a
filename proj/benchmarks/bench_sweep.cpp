#include <benchmark/benchmark.h>

#include "wfc_cli/sweep.hpp"

namespace {

void BM_SweepFigure(benchmark::State& state) {
  const auto id = static_cast<wfc::cli::FigureId>(state.range(0));
  wfc::cli::SweepSpec spec = wfc::cli::default_spec(id);
  spec.threads = 1;
  for (auto _ : state) {
    const auto table = wfc::cli::run_sweep(spec);
    benchmark::DoNotOptimize(table.rows.size());
  }
  state.SetLabel(std::string(wfc::cli::to_string(id)));
}
BENCHMARK(BM_SweepFigure)
    ->Arg(static_cast<int>(wfc::cli::FigureId::kFig1))
    ->Arg(static_cast<int>(wfc::cli::FigureId::kFig4))
    ->Arg(static_cast<int>(wfc::cli::FigureId::kFig5))
    ->Unit(benchmark::kMillisecond);

}  // namespace
