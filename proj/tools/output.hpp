#pragma once

#include <filesystem>
#include <string>
#include <utility>

#include "json.hpp"

#include "reacting_nozzle/moc_solver.hpp"
#include "reacting_nozzle/validation.hpp"

namespace reacting_nozzle::cli {

// All writers produce byte-identical files for identical inputs: fixed
// %.17g formatting, no timestamps.

void write_field_csv(const std::filesystem::path& file, const FlowField& field, const GasConstants& gas,
                     std::size_t stride);
void write_trace_csv(const std::filesystem::path& file, const PhysicalTrace& trace);
void write_drift_csv(const std::filesystem::path& file, const MassDriftReport& drift);
void write_clamp_csv(const std::filesystem::path& file, const SolverDiagnostics& diag);
void write_quasi1d_csv(const std::filesystem::path& file, const std::pair<Quasi1DRun, Quasi1DRun>& runs);
void write_averages_csv(const std::filesystem::path& file, const AverageProfile& avg);
void write_study_csv(const std::filesystem::path& file, const ConvergenceStudy& study);
void write_json(const std::filesystem::path& file, const nlohmann::json& j);

nlohmann::json to_json(const ErrorReport& e);
nlohmann::json to_json(const CompatibilityReport& r);
nlohmann::json to_json(const AbortInfo& a);

}  // namespace reacting_nozzle::cli
