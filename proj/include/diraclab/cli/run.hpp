#pragma once

#include <iosfwd>

#include "diraclab/cli/config.hpp"

namespace dlab::cli {

enum ExitCode : int {
  kExitOk = 0,          // every verdict holds
  kExitViolation = 1,   // some verdict violated
  kExitNumerical = 2,   // numerical failure or inconclusive verdict
  kExitUsage = 64,
  kExitIo = 74,
};

/// Runs one validated experiment, writing artifacts under config.out and a
/// one-line summary per record to `log`. Returns an ExitCode.
int run(const ExperimentConfig& config, std::ostream& log);

}  // namespace dlab::cli
