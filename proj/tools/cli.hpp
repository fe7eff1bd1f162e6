#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "kanpinn/training.hpp"

namespace kpinn::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kDiverged = 3,
  kGateExceeded = 4,
};

/// Everything a run can be configured with; JSON keys match the field names.
struct RunConfig {
  TrainConfig train;
  std::string out = "run";
  int grid = 101;
  int n_terms = 200;
};

/// Overlays the keys of a JSON document onto `base`. Unknown keys and
/// ill-typed values raise ConfigError.
RunConfig apply_config_json(const std::string& text, RunConfig base);
std::string config_to_json(const RunConfig& config);

/// Runs one subcommand; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kpinn::cli
