#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "reacting_nozzle/moc_solver.hpp"
#include "reacting_nozzle/quasi1d.hpp"

namespace reacting_nozzle {

/// Cross-section averages (1/A) int V dy of the 2D field at every station.
struct AverageProfile {
  std::vector<double> x;
  std::vector<Quasi1DState> upper;
  std::vector<Quasi1DState> lower;
};

AverageProfile integral_average(const FlowField& field, const PhysicalTrace& trace,
                                const GasConstants& gas);

/// Normalisation for error norms: u, p, rho relative to these per side, Y absolute.
struct ErrorScales {
  Quasi1DState upper{1.0, 1.0, 1.0, 1.0};
  Quasi1DState lower{1.0, 1.0, 1.0, 1.0};

  static ErrorScales from_background(const InflowSpec& inflow);
};

struct ErrorReport {
  double sup_u = 0.0;
  double sup_p = 0.0;
  double sup_rho = 0.0;
  double sup_Y = 0.0;
  double sup_norm = 0.0;
  double deriv_sup = 0.0;  // diagnostic, centred differences
};

/// Sup-norm difference between the averages and the quasi-1D runs sampled on
/// the same abscissae. Throws DomainError on a grid mismatch.
ErrorReport compare(const AverageProfile& avg, const std::pair<Quasi1DRun, Quasi1DRun>& runs,
                    const ErrorScales& scales);

/// Same norm between two average profiles on a common grid.
ErrorReport compare(const AverageProfile& a, const AverageProfile& b, const ErrorScales& scales);

/// Averages plus the coupled quasi-1D runs for one problem.
struct PipelineResult {
  SolveResult solve;
  AverageProfile averages;
  std::pair<Quasi1DRun, Quasi1DRun> quasi1d;
  ErrorReport error;
};

struct PipelineOptions {
  std::size_t rk_substeps = 16;  // RK4 steps per output interval
  bool straight_cd = false;      // cheaper a-priori areas with g_cd = 0
};

/// solve + averages + quasi-1D on areas from the reconstructed contact.
/// Throws PhysicalAbort if the 2D march aborts.
PipelineResult run_pipeline(const Problem& problem, const SolverConfig& cfg,
                            const PipelineOptions& opts = {});

struct LogFit {
  double slope = 0.0;
  double r2 = 0.0;
};

/// Least-squares fit of log(y) against log(x).
LogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct ConvergenceStudy {
  std::vector<double> epsilons;
  std::vector<ErrorReport> errors;
  std::size_t n_eta = 0;
  // Self-refinement difference of the averages between n_eta and 2 n_eta - 1.
  double certificate = 0.0;
  double certificate_limit = 0.0;
  bool certified = false;
  double slope = 0.0;
  double r2 = 0.0;
  double slope_without_largest = 0.0;  // fit robustness diagnostic
  double deriv_slope = 0.0;            // diagnostic
  bool passed = false;
  std::string verdict;
};

/// Throws DomainError unless epsilons holds at least three strictly
/// decreasing positive values.
ConvergenceStudy convergence_study(const Problem& base, const SolverConfig& cfg,
                                   const std::vector<double>& epsilons,
                                   const PipelineOptions& opts = {});

struct BackgroundCheck {
  bool refused = false;  // input is not a background configuration
  bool passed = false;
  std::string reason;
  double max_deviation = 0.0;
  double max_abs_gcd = 0.0;
};

BackgroundCheck background_uniqueness_check(const Problem& problem, const SolverConfig& cfg);

}  // namespace reacting_nozzle
