#pragma once

// Batch driver behind the coblab executable. Each command maps onto the
// library pipelines; outputs depend only on the config.

#include <iosfwd>
#include <string>
#include <vector>

#include "coblab/report.hpp"

namespace coblab {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitShortfall = 3;
inline constexpr int kExitCertificationFailure = 4;

/// Tasks accepted by a command; the first is the default.
const std::vector<std::string>& command_tasks(const std::string& command);

/// Runs the configured pipeline. Library exceptions propagate.
Report execute(const ExperimentConfig& config);

/// execute + write_report, with exceptions mapped to exit codes and a
/// one-line JSON reason on `err`.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace coblab
