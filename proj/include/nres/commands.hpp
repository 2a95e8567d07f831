#pragma once

#include <string>

#include "nres/config.hpp"

namespace nres {

/// Commands return the process exit code: 0 when every gating check passed,
/// 1 when a theorem/invariant check failed or a computation broke down.
/// Configuration and usage problems throw ConfigError (exit 2 in the CLI).
int cmd_analyze(const ExperimentConfig& cfg);
int cmd_resolve(const ExperimentConfig& cfg);
int cmd_bounds(const ExperimentConfig& cfg);
int cmd_semigroup(const ExperimentConfig& cfg);
int cmd_starlike(const ExperimentConfig& cfg);
int cmd_verify(const ExperimentConfig& cfg);

int run_command(const std::string& name, const ExperimentConfig& cfg);

/// Full argv interface; maps usage/config errors to 2, check failures to 1.
int run_cli(int argc, const char* const* argv);

}  // namespace nres
