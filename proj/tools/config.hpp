#pragma once

#include <cstddef>
#include <filesystem>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "reacting_nozzle/moc_solver.hpp"
#include "reacting_nozzle/problem.hpp"
#include "reacting_nozzle/validation.hpp"

namespace reacting_nozzle::cli {

struct OutputSettings {
  std::string directory = "out";
  std::size_t slice_stride = 1;  // every stride-th stored station goes to field.csv
};

struct ValidateSettings {
  double max_mass_drift = 1e-6;
  double max_error = 0.0;  // 0 disables the error gate
};

struct StudySettings {
  std::vector<double> epsilons;
};

struct RunConfig {
  Problem problem;
  SolverConfig solver;
  PipelineOptions quasi1d;
  OutputSettings outputs;
  ValidateSettings validate;
  StudySettings study;
};

/// Every schema and precondition violation found in one file, each prefixed
/// with its key path.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

private:
  std::vector<std::string> issues_;
};

/// Throws ConfigError.
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text);

/// Stable textual form of the parsed values, used for the config hash.
std::string canonical_form(const RunConfig& cfg);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);
std::string config_hash(const RunConfig& cfg);

}  // namespace reacting_nozzle::cli
