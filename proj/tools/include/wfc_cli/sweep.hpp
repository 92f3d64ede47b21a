#pragma once

// Parameter sweeps behind the five published figures, plus free-form sweeps.
//
// Rows are produced in grid order (first axis outermost) regardless of how
// many threads evaluate them, so identical specs give byte-identical files.
// Column sets per figure are fixed; see docs/sweep_schema.md.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wfc/race_core.hpp"
#include "wfc/simulate.hpp"
#include "wfc_cli/table.hpp"

namespace wfc::cli {

inline constexpr int kSchemaVersion = 1;

enum class FigureId { kFig1, kFig2, kFig3a, kFig3b, kFig3c, kFig4, kFig5, kCustom };

std::optional<FigureId> parse_figure_id(std::string_view name);
std::string_view to_string(FigureId id);

// Axis names: n, mu, e, tau, ewc, stop.
struct Axis {
  std::string name;
  std::vector<double> values;
};

Axis linspace_axis(std::string name, double lo, double hi, int steps);

// "name=lo:hi:steps" or "name=v1,v2,...". Throws std::invalid_argument.
Axis parse_axis(std::string_view text);

enum class OutputFormat { kCsv, kJson };

struct SweepSpec {
  FigureId figure = FigureId::kFig1;
  std::vector<Axis> axes;
  RaceParams fixed{2, 2.0, 0.5};
  std::optional<SimConfig> sim;  // adds Monte Carlo columns where supported
  std::filesystem::path output;
  OutputFormat format = OutputFormat::kCsv;
  unsigned threads = 0;
};

// Built-in grid for a figure; custom starts with no axes.
SweepSpec default_spec(FigureId id);

// Replaces the default axis of the same name; rejects axes the figure does
// not sweep.
void override_axis(SweepSpec& spec, Axis axis);

void validate(const SweepSpec& spec);

std::vector<std::string> figure_columns(FigureId id, bool with_mc);

Table run_sweep(const SweepSpec& spec);

std::string render(const Table& table, OutputFormat format);

}  // namespace wfc::cli
