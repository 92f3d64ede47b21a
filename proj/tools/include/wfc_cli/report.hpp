#pragma once

// Human-readable single-point queries ("key = value" lines).

#include <optional>
#include <ostream>

#include "wfc/race_core.hpp"
#include "wfc/windfall.hpp"

namespace wfc::cli {

void run_point(const RaceParams& params, const std::optional<WindfallClause>& clause,
               std::ostream& out);

// Early and averaged late limits for params; with `stop`, the late limit at
// that leader safety, and with both `stop` and `ewc`, the late bounds and
// optimal pledge.
void run_limits(const RaceParams& params, std::optional<double> stop, std::optional<double> ewc,
                std::ostream& out);

}  // namespace wfc::cli
