#pragma once

#include <ostream>

#include "uxlens/config.hpp"

namespace uxlens {

// Exit codes: 0 all scenarios succeeded, 1 configuration error,
// 2 at least one scenario failed.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitScenarioFailed = 2;

// Prints per-scenario duration, estimated video tokens, and budget verdict.
// Returns kExitOk iff every scenario fits the context budget.
int cmd_estimate(const RunConfig& config, std::ostream& out);

// Full command-line entry point (subcommands run, estimate, evaluate,
// aggregate, rank, report).
int cli_main(int argc, const char* const* argv);

} // namespace uxlens
