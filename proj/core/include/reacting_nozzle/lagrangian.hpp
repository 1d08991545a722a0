#pragma once

// Mass-flux coordinates: xi = x, eta = int_{g_-}^{y} rho u dy - m_-.
// The contact discontinuity is the grid line eta = 0; the upper region is
// (0, m_+], the lower one [-m_-, 0).

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "reacting_nozzle/characteristics.hpp"
#include "reacting_nozzle/gas_model.hpp"
#include "reacting_nozzle/nozzle_geometry.hpp"

namespace reacting_nozzle {

struct MassFlux {
  double m_plus = 0.0;
  double m_minus = 0.0;
};

/// Composite 5-point Gauss-Legendre rule on `panels` equal panels.
double integrate_gl5(const std::function<double(double)>& f, double a, double b, int panels);

/// Simpson on uniform samples; an odd interval count finishes with a 3/8
/// panel, two samples fall back to the trapezoid rule.
double simpson(std::span<const double> f, double h);

MassFlux mass_flux(const InflowSpec& inflow, const WallSpec& walls);

/// Upper nodes run from the contact (index 0) to the wall (index n-1); lower
/// nodes from the wall (index 0) to the contact (index n-1). Both regions
/// carry their own copy of eta = 0.
struct LagrangianGrid {
  RegionGrid upper;
  RegionGrid lower;

  static LagrangianGrid make(const MassFlux& mf, std::size_t n_eta);
  const RegionGrid& region(Side side) const { return side == Side::upper ? upper : lower; }
};

struct Slice {
  double xi = 0.0;
  std::vector<CharState> upper;
  std::vector<CharState> lower;

  const std::vector<CharState>& region(Side side) const {
    return side == Side::upper ? upper : lower;
  }
  const CharState& cd_upper() const { return upper.front(); }
  const CharState& cd_lower() const { return lower.back(); }
};

/// Maps every eta node to its inlet ordinate by bisection (tolerance 1e-12)
/// and converts the inflow state there.
Slice inflow_to_lagrangian(const InflowSpec& inflow, const WallSpec& walls, const GasConstants& gas,
                           const LagrangianGrid& grid);

/// Inlet ordinate y of a Lagrangian coordinate eta.
double inlet_ordinate(const InflowSpec& inflow, const WallSpec& walls, const MassFlux& mf,
                      double eta);

/// Lagrangian coordinate of an inlet ordinate.
double inlet_eta(const InflowSpec& inflow, const WallSpec& walls, const MassFlux& mf, double y);

struct ClampEvent {
  double xi = 0.0;
  double eta = 0.0;
  double raw_Y = 0.0;
};

struct SolverDiagnostics {
  std::size_t steps = 0;
  double max_abs_lambda = 0.0;
  double min_d_xi = 0.0;
  double max_d_xi = 0.0;
  int max_corrector_iters = 0;
  std::vector<ClampEvent> clamp_events;
};

/// Solution stored at the output stations.
struct FlowField {
  LagrangianGrid grid;
  MassFlux mass;
  std::vector<Slice> slices;
  SolverDiagnostics diagnostics;
};

struct PhysicalTrace {
  std::vector<double> x;
  std::vector<double> g_cd;
  std::vector<double> g_cd_prime;
  std::vector<double> width_upper;
  std::vector<double> width_lower;
  // Ordinates of every node per station, same layout as the slices.
  std::vector<std::vector<double>> y_upper;
  std::vector<std::vector<double>> y_lower;
  // y(xi, m_+) - g_+(xi); zero up to quadrature error.
  std::vector<double> upper_wall_mismatch;
};

/// Throws DomainError("transform degenerate") when rho u <= 0 anywhere.
PhysicalTrace inverse_transform(const FlowField& field, const WallSpec& walls,
                                const GasConstants& gas);

struct MassDriftReport {
  std::vector<double> x;
  std::vector<double> drift_upper;
  std::vector<double> drift_lower;
  double max_drift = 0.0;
};

/// Relative mismatch between the mass flux carried by each physical region
/// (walls plus the contact reconstructed from the opposite wall) and m_+-.
MassDriftReport verify_mass_conservation(const FlowField& field, const WallSpec& walls,
                                         const GasConstants& gas);

}  // namespace reacting_nozzle
