#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace reacting_nozzle::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitPhysical = 2,  // sonic degeneracy or CFL violation
  kExitGate = 3,      // a validation gate reported failure
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"solve2d", "quasi1d", "validate", "study",
                                                 "background-check"};
  return names;
}

struct RunOptions {
  std::filesystem::path out_dir;
  bool allow_incompatible = false;
};

/// Executes one command and writes its artifacts into opts.out_dir.
/// Diagnostics go to `log`. Returns the process exit status.
int run(const RunConfig& cfg, const std::string& command, const RunOptions& opts, std::ostream& log);

}  // namespace reacting_nozzle::cli
