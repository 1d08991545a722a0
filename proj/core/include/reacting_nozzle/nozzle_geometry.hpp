#pragma once

#include <string>
#include <vector>

#include "reacting_nozzle/gas_model.hpp"

namespace reacting_nozzle {

enum class Side { upper, lower };

const char* to_string(Side side);

/// Smooth compactly supported profile a * exp(1 - 1/(1 - t^2)), t = (x - center)/width.
struct Bump {
  double center = 0.0;
  double width = 1.0;
  double amplitude = 0.0;
};

struct BumpSample {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Value and first two derivatives of a single bump at x.
BumpSample eval_bump(const Bump& bump, double x);

/// Walls g_+(x) = 1 + sum(bumps), g_-(x) = -1 + sum(bumps) on [0, length].
/// Every bump amplitude is multiplied by amplitude_scale.
struct WallSpec {
  double length = 4.0;
  std::vector<Bump> upper_bumps;
  std::vector<Bump> lower_bumps;
  double amplitude_scale = 1.0;

  /// Throws DomainError if a bump support leaves (0, length), a width is not
  /// positive, or the channel pinches (g_+ <= g_-) on a sampling grid.
  void validate() const;
};

struct WallSample {
  double g = 0.0;
  double dg = 0.0;
  double d2g = 0.0;
};

/// Throws std::out_of_range for x outside [0, length].
WallSample eval_wall(const WallSpec& walls, Side side, double x);

enum class InflowField { u, v, p, rho, Y };

const char* to_string(InflowField field);

struct Perturbation {
  Side side = Side::upper;
  InflowField field = InflowField::p;
  Bump profile;
};

/// Inlet data: piecewise constant background plus epsilon-scaled bumps in y.
struct InflowSpec {
  EulerState upper;
  EulerState lower;
  std::vector<Perturbation> perturbations;
  double epsilon = 1.0;

  /// Background checks: p_+ = p_-, rho > 0, p > 0, u > 0, v = 0, Y in [0, 1].
  void validate() const;

  EulerState background(Side side) const { return side == Side::upper ? upper : lower; }

  /// Perturbed state at ordinate y.
  EulerState state_at(Side side, double y) const;

  /// d/dy of every primitive component at ordinate y.
  EulerState derivative_at(Side side, double y) const;

  /// True when no perturbation carries a non-zero scaled amplitude.
  bool is_constant() const;
};

struct CompatibilityResidual {
  std::string name;
  double value = 0.0;
};

struct CompatibilityReport {
  std::vector<CompatibilityResidual> residuals;
  double max_abs = 0.0;
};

/// Corner compatibility residuals (LHS - RHS) at the inlet corners:
/// flow slope, pressure, d_xi omega and d_xi p continuity at the contact
/// corner, plus slope and curvature matching at both wall corners.
CompatibilityReport check_corner_compatibility(const InflowSpec& inflow, const WallSpec& walls,
                                               const GasConstants& gas);

}  // namespace reacting_nozzle
