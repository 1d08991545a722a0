#include "reacting_nozzle/nozzle_geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "reacting_nozzle/errors.hpp"

namespace reacting_nozzle {

const char* to_string(Side side) { return side == Side::upper ? "upper" : "lower"; }

const char* to_string(InflowField field) {
  switch (field) {
    case InflowField::u: return "u";
    case InflowField::v: return "v";
    case InflowField::p: return "p";
    case InflowField::rho: return "rho";
    case InflowField::Y: return "Y";
  }
  return "?";
}

BumpSample eval_bump(const Bump& bump, double x) {
  const double t = (x - bump.center) / bump.width;
  if (!(std::abs(t) < 1.0)) return {};
  const double s = 1.0 - t * t;
  const double b = std::exp(1.0 - 1.0 / s);
  const double db = -2.0 * t * b / (s * s);
  const double d2b = -2.0 * b / (s * s) - 2.0 * t * db / (s * s) - 8.0 * t * t * b / (s * s * s);
  const double inv_w = 1.0 / bump.width;
  return {bump.amplitude * b, bump.amplitude * db * inv_w, bump.amplitude * d2b * inv_w * inv_w};
}

namespace {

WallSample sum_bumps(const std::vector<Bump>& bumps, double scale, double x) {
  WallSample out;
  for (const auto& bump : bumps) {
    const auto b = eval_bump(bump, x);
    out.g += scale * b.value;
    out.dg += scale * b.d1;
    out.d2g += scale * b.d2;
  }
  return out;
}

}  // namespace

WallSample eval_wall(const WallSpec& walls, Side side, double x) {
  if (!(x >= 0.0 && x <= walls.length)) {
    throw std::out_of_range("wall evaluation at x = " + std::to_string(x) + " outside [0, L]");
  }
  const auto& bumps = side == Side::upper ? walls.upper_bumps : walls.lower_bumps;
  WallSample s = sum_bumps(bumps, walls.amplitude_scale, x);
  s.g += side == Side::upper ? 1.0 : -1.0;
  return s;
}

void WallSpec::validate() const {
  if (!(length > 0.0)) throw DomainError("walls: length must be positive");
  for (const auto* bumps : {&upper_bumps, &lower_bumps}) {
    for (const auto& b : *bumps) {
      if (!(b.width > 0.0)) throw DomainError("walls: bump width must be positive");
      if (!(b.center - b.width > 0.0 && b.center + b.width < length)) {
        throw DomainError("walls: bump support must lie strictly inside (0, L)");
      }
    }
  }
  constexpr int kSamples = 4096;
  for (int i = 0; i <= kSamples; ++i) {
    const double x = length * i / kSamples;
    if (!(eval_wall(*this, Side::upper, x).g > eval_wall(*this, Side::lower, x).g)) {
      throw DomainError("walls: channel width must stay positive (g_+ > g_-)");
    }
  }
}

void InflowSpec::validate() const {
  for (Side side : {Side::upper, Side::lower}) {
    const auto& s = background(side);
    const std::string name = std::string("inflow.") + to_string(side);
    if (!(s.p > 0.0)) throw DomainError(name + ": p > 0 required");
    if (!(s.rho > 0.0)) throw DomainError(name + ": rho > 0 required");
    if (!(s.u > 0.0)) throw DomainError(name + ": u > 0 required");
    if (s.v != 0.0) throw DomainError(name + ": background v must be 0");
    if (!(s.Y >= 0.0 && s.Y <= 1.0)) throw DomainError(name + ": Y in [0, 1] required");
  }
  if (upper.p != lower.p) {
    throw DomainError("inflow: background pressures must match across the contact (p_+ = p_-)");
  }
  for (const auto& pert : perturbations) {
    if (!(pert.profile.width > 0.0)) throw DomainError("inflow perturbation width must be positive");
  }
}

namespace {

double& component(EulerState& s, InflowField f) {
  switch (f) {
    case InflowField::u: return s.u;
    case InflowField::v: return s.v;
    case InflowField::p: return s.p;
    case InflowField::rho: return s.rho;
    case InflowField::Y: return s.Y;
  }
  return s.u;
}

}  // namespace

EulerState InflowSpec::state_at(Side side, double y) const {
  EulerState s = background(side);
  for (const auto& pert : perturbations) {
    if (pert.side != side) continue;
    component(s, pert.field) += epsilon * eval_bump(pert.profile, y).value;
  }
  return s;
}

EulerState InflowSpec::derivative_at(Side side, double y) const {
  EulerState d{0.0, 0.0, 0.0, 0.0, 0.0};
  for (const auto& pert : perturbations) {
    if (pert.side != side) continue;
    component(d, pert.field) += epsilon * eval_bump(pert.profile, y).d1;
  }
  return d;
}

bool InflowSpec::is_constant() const {
  for (const auto& pert : perturbations) {
    if (epsilon * pert.profile.amplitude != 0.0) return false;
  }
  return true;
}

namespace {

// Streamwise derivatives of omega and p implied by the characteristic system
// at an inlet point, written with Lagrangian eta-derivatives.
struct StreamwiseRates {
  double omega = 0.0;
  double d_xi_omega = 0.0;
  double d_xi_p = 0.0;
  double p = 0.0;
};

StreamwiseRates inlet_rates(const InflowSpec& inflow, Side side, double y, const GasConstants& g) {
  const EulerState s = inflow.state_at(side, y);
  const EulerState dy = inflow.derivative_at(side, y);
  const ThermoView tv = thermo(s, g);
  const double c2 = tv.c * tv.c;
  const double rho_u = s.rho * s.u;
  const double omega_y = (dy.v * s.u - s.v * dy.u) / (s.u * s.u);
  const double omega_eta = omega_y / rho_u;
  const double p_eta = dy.p / rho_u;
  const double denom = s.u * s.u - c2;
  const double v2 = s.u * s.u + s.v * s.v;
  const double phi = reaction_rate(tv.T, g).value;
  const double heat = (g.gamma - 1.0) * g.q0 * phi * s.Y;

  StreamwiseRates r;
  r.omega = s.v / s.u;
  r.p = s.p;
  r.d_xi_omega = -s.rho * c2 * s.v / denom * omega_eta - (v2 - c2) / (s.u * denom) * p_eta +
                 heat * s.v / (s.u * s.u * denom);
  r.d_xi_p = -s.rho * s.rho * c2 * s.u * s.u * s.u / denom * omega_eta -
             s.rho * c2 * s.v / denom * p_eta + heat * rho_u / denom;
  return r;
}

}  // namespace

CompatibilityReport check_corner_compatibility(const InflowSpec& inflow, const WallSpec& walls,
                                               const GasConstants& gas) {
  const double y_top = eval_wall(walls, Side::upper, 0.0).g;
  const double y_bottom = eval_wall(walls, Side::lower, 0.0).g;

  const auto cd_up = inlet_rates(inflow, Side::upper, 0.0, gas);
  const auto cd_low = inlet_rates(inflow, Side::lower, 0.0, gas);
  const auto top = inlet_rates(inflow, Side::upper, y_top, gas);
  const auto bottom = inlet_rates(inflow, Side::lower, y_bottom, gas);
  const auto wall_up = eval_wall(walls, Side::upper, 0.0);
  const auto wall_low = eval_wall(walls, Side::lower, 0.0);

  CompatibilityReport report;
  report.residuals = {
      {"cd_flow_slope", cd_up.omega - cd_low.omega},
      {"cd_pressure", cd_up.p - cd_low.p},
      {"cd_dxi_omega", cd_up.d_xi_omega - cd_low.d_xi_omega},
      {"cd_dxi_p", cd_up.d_xi_p - cd_low.d_xi_p},
      {"upper_wall_slope", wall_up.dg - top.omega},
      {"upper_wall_curvature", wall_up.d2g - top.d_xi_omega},
      {"lower_wall_slope", wall_low.dg - bottom.omega},
      {"lower_wall_curvature", wall_low.d2g - bottom.d_xi_omega},
  };
  for (const auto& r : report.residuals) {
    if (!std::isfinite(r.value)) {
      throw DomainError("compatibility residual " + r.name + " is not finite");
    }
    report.max_abs = std::max(report.max_abs, std::abs(r.value));
  }
  return report;
}

}  // namespace reacting_nozzle
