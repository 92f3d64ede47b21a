#pragma once

#include <ostream>

namespace wfc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `wfc` executable. Subcommands: point, sweep, verify,
// limits. Flags override --config values, which override figure defaults.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wfc::cli
