#pragma once

// Area-averaged supersonic nozzle model for one layer between a wall and the
// contact curve, integrated with fixed-step RK4.

#include <cstddef>
#include <utility>
#include <vector>

#include "reacting_nozzle/gas_model.hpp"
#include "reacting_nozzle/lagrangian.hpp"
#include "reacting_nozzle/nozzle_geometry.hpp"

namespace reacting_nozzle {

struct Quasi1DState {
  double u = 0.0;
  double p = 0.0;
  double rho = 0.0;
  double Y = 0.0;
};

struct Quasi1DRates {
  double du = 0.0;
  double dp = 0.0;
  double drho = 0.0;
  double dY = 0.0;
};

/// Piecewise cubic Hermite curve through (x_k, g_k) with slopes s_k. An
/// empty curve is the straight contact g = 0.
class ContactCurve {
public:
  ContactCurve() = default;
  ContactCurve(std::vector<double> x, std::vector<double> g, std::vector<double> slope);

  /// Curve from a solved field: values g_cd and slopes omega at the stations.
  static ContactCurve from_trace(const PhysicalTrace& trace);

  bool straight() const { return x_.empty(); }
  /// (g, g').
  std::pair<double, double> eval(double x) const;

private:
  std::vector<double> x_;
  std::vector<double> g_;
  std::vector<double> slope_;
};

struct AreaSample {
  double A = 0.0;
  double dA = 0.0;
};

/// A_+ = g_+ - g_cd (upper), A_- = g_cd - g_- (lower).
struct AreaFunction {
  Side side = Side::upper;
  WallSpec walls;
  ContactCurve cd;

  /// Throws DomainError when the ordering g_- < g_cd < g_+ fails at x.
  AreaSample operator()(double x) const;
};

std::pair<AreaFunction, AreaFunction> area_from_geometry(const WallSpec& walls,
                                                         const ContactCurve& cd = {});

/// Segment averages of (u, p, rho, Y) at the inlet, first upper then lower.
std::pair<Quasi1DState, Quasi1DState> averaged_inflow(const InflowSpec& inflow,
                                                      const WallSpec& walls);

/// Right-hand side of the averaged equations. Throws SonicDegeneracy when
/// |1 - M^2| < 1e-10.
Quasi1DRates q1d_rhs(const Quasi1DState& s, double A, double A_prime, const GasConstants& gas);

struct Quasi1DRun {
  Side side = Side::upper;
  std::vector<double> x;
  std::vector<Quasi1DState> states;
  std::vector<double> rho_u_A;
  // Total enthalpy flux (u^2/2 + gamma p/((gamma-1) rho)) rho u A.
  std::vector<double> energy_flux;
  std::vector<double> mach;
  std::size_t clamp_events = 0;

  double max_mass_drift() const;
};

/// Fixed-step RK4 on [0, length] with n_steps steps. Throws SonicDegeneracy
/// (with the station) when a state stops being supersonic.
Quasi1DRun integrate(const Quasi1DState& init, const AreaFunction& area, const GasConstants& gas,
                     double length, std::size_t n_steps);

std::pair<Quasi1DRun, Quasi1DRun> integrate_pair(const std::pair<Quasi1DState, Quasi1DState>& init,
                                                 const std::pair<AreaFunction, AreaFunction>& areas,
                                                 const GasConstants& gas, double length,
                                                 std::size_t n_steps);

}  // namespace reacting_nozzle
