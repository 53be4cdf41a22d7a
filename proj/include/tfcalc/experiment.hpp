#pragma once

#include <json.hpp>

#include "tfcalc/config.hpp"

namespace tfcalc {

struct RunOutcome {
  nlohmann::ordered_json report;
  bool pass = true;     // all hard assertions passed or were expected-negative
  bool aborted = false; // numerical abort (e.g. ambiguous rank decision)
};

/// Executes the configured experiment; deterministic given the seed.  The
/// report carries every assertion with its residual, tolerance and verdict.
RunOutcome run_experiment(const ExperimentConfig& c);

/// run_experiment plus report/CSV emission.  Returns the process exit code:
/// 0 all pass (or expected-negative), 1 assertion failure, 2 invalid config
/// or numerical abort.
int run_to_files(const ExperimentConfig& c);

/// One row per config, homogeneous experiment kind required.
std::string sweep_csv(std::vector<ExperimentConfig> configs);

}  // namespace tfcalc
