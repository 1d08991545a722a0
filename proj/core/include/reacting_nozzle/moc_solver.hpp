#pragma once

// Marching solver in mass-flux coordinates. (omega, p) travel along the two
// acoustic characteristics as Riemann variables, (B, S, Y) along eta = const.
// Walls reflect the incoming variable; the contact pair is solved jointly.

#include <cstddef>
#include <optional>
#include <string>

#include "reacting_nozzle/lagrangian.hpp"
#include "reacting_nozzle/problem.hpp"

namespace reacting_nozzle {

struct SolverConfig {
  std::size_t n_eta = 200;
  double cfl = 0.8;
  int max_corrector_iters = 4;
  double corrector_tol = 1e-12;
  int order = 2;
  std::size_t stations = 64;  // output slices: xi_k = L k / stations
  unsigned threads = 1;

  void validate() const;
};

/// Slice 0 from the inflow data. Throws SonicDegeneracy for a non-supersonic
/// inlet node.
FlowField initialize(const Problem& problem, const SolverConfig& cfg);

/// Largest admissible step on a slice: cfl * min over regions of d_eta / max|lambda|.
double stable_step(const Slice& slice, const LagrangianGrid& grid, const GasConstants& gas,
                   double cfl);

/// Advances `slice` by d_xi. Clamp events and iteration counts are appended
/// to `diag`. Throws PhysicalAbort subclasses with the failing location.
Slice march_step(const Slice& slice, double d_xi, const Problem& problem, const LagrangianGrid& grid,
                 const SolverConfig& cfg, SolverDiagnostics& diag);

struct WallNode {
  double omega = 0.0;
  double p = 0.0;
  double z_reflected = 0.0;
};

/// Upper wall: incoming z+ = omega + Lambda p; lower wall: incoming z- = omega - Lambda p.
WallNode apply_wall_bc(Side side, double z_incoming, double g_prime, double Lambda);

struct ContactNode {
  double omega = 0.0;
  double p = 0.0;
  double z_plus_upper = 0.0;   // outgoing into the upper region
  double z_minus_lower = 0.0;  // outgoing into the lower region
};

/// Solves omega - Lp p = z_minus_up, omega + Lm p = z_plus_low.
ContactNode apply_cd_bc(double z_minus_up, double Lambda_plus, double z_plus_low,
                        double Lambda_minus);

struct AbortInfo {
  std::string kind;  // "sonic" or "cfl"
  std::string message;
  double xi = 0.0;
  double eta = 0.0;
};

struct SolveResult {
  FlowField field;
  PhysicalTrace trace;
  MassDriftReport drift;
  std::optional<AbortInfo> abort;  // set when marching stopped early

  bool ok() const { return !abort.has_value(); }
};

/// Marches to xi = L landing on every output station. On a physical abort
/// the stations reached so far are kept and `abort` describes the failure.
/// Inlet failures still throw.
SolveResult solve(const Problem& problem, const SolverConfig& cfg);

}  // namespace reacting_nozzle
