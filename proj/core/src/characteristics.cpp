#include "reacting_nozzle/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "reacting_nozzle/errors.hpp"

namespace reacting_nozzle {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

CharCoeffs char_coeffs(const EulerState& s, const GasConstants& g) {
  const ThermoView tv = thermo(s, g);
  if (!(tv.M > 1.0)) {
    throw SonicDegeneracy("sonic degeneracy: Mach " + std::to_string(tv.M) + " <= 1", kNaN, kNaN);
  }
  const double c2 = tv.c * tv.c;
  const double u2 = s.u * s.u;
  const double denom = u2 - c2;
  if (!(denom > 0.0)) {
    throw SonicDegeneracy("sonic degeneracy: axial velocity u <= c", kNaN, kNaN);
  }
  const double root = std::sqrt((u2 + s.v * s.v) / c2 - 1.0);
  const double omega = s.v / s.u;
  const double scale = s.rho * c2 * s.u / denom;

  CharCoeffs cc;
  cc.mach = tv.M;
  cc.lambda_plus = scale * (omega + root);
  cc.lambda_minus = scale * (omega - root);
  cc.Lambda = std::sqrt(u2 + s.v * s.v - c2) / (s.rho * tv.c * u2);

  const double phi = reaction_rate(tv.T, g).value;
  const double heat = g.q0 * phi * s.Y;
  const double src = (g.gamma - 1.0) * heat / (s.rho * c2 * u2);
  cc.source_plus = src * cc.lambda_plus;
  cc.source_minus = src * cc.lambda_minus;
  cc.streamline.dB = heat / s.u;
  // Heat addition raises entropy: dS = dq / T with T = p / (R rho) = c^2 / (gamma R).
  cc.streamline.dS = g.gamma * g.R * heat / (c2 * s.u);
  cc.streamline.dY = -phi * s.Y / s.u;
  return cc;
}

CharCoeffs char_coeffs(const CharState& cs, const GasConstants& g) {
  return char_coeffs(euler_from_char(cs, g), g);
}

RiemannPair riemann_encode(double omega, double p, double Lambda) {
  if (!(Lambda > 0.0)) throw DomainError("Riemann encode: Lambda must be positive");
  return {omega + Lambda * p, omega - Lambda * p};
}

OmegaP riemann_decode(const RiemannPair& rp, double Lambda) {
  if (!(Lambda > 0.0)) throw DomainError("Riemann decode: Lambda must be positive");
  return {0.5 * (rp.z_plus + rp.z_minus), (rp.z_plus - rp.z_minus) / (2.0 * Lambda)};
}

OmegaP riemann_solve(double z_plus, double La, double z_minus, double Lb) {
  const double sum = La + Lb;
  if (!(La > 0.0 && Lb > 0.0)) throw DomainError("characteristic solve: Lambda must be positive");
  return {(Lb * z_plus + La * z_minus) / sum, (z_plus - z_minus) / sum};
}

namespace {

CharState quadratic(std::span<const CharState> slice, const RegionGrid& grid, double eta, long centre) {
  const double t = (eta - grid.eta0) / grid.d_eta;
  const long last = static_cast<long>(grid.size) - 1;
  const long i0 = std::clamp(centre - 1, 0L, last - 2);
  const double s = t - static_cast<double>(i0);
  const CharState& f0 = slice[i0];
  const CharState& f1 = slice[i0 + 1];
  const CharState& f2 = slice[i0 + 2];
  const double w = 0.5 * s * (s - 1.0);
  auto q = [&](double a, double b, double c) { return a + s * (b - a) + w * (c - 2.0 * b + a); };
  return {q(f0.omega, f1.omega, f2.omega), q(f0.p, f1.p, f2.p), q(f0.B, f1.B, f2.B),
          q(f0.S, f1.S, f2.S), q(f0.Y, f1.Y, f2.Y)};
}

}  // namespace

CharState interpolate(std::span<const CharState> slice, const RegionGrid& grid, double eta) {
  return quadratic(slice, grid, eta, std::lround((eta - grid.eta0) / grid.d_eta));
}

FootSample trace_foot(std::span<const CharState> slice, const RegionGrid& grid, double lambda,
                      double eta_target, double d_xi) {
  double foot = eta_target - d_xi * lambda;
  const double lo = grid.front();
  const double hi = grid.back();
  const double allowance = 1e-9 * grid.d_eta;
  if (foot < lo - allowance || foot > hi + allowance) {
    throw CflViolation("characteristic foot at eta = " + std::to_string(foot) +
                           " leaves its region; reduce cfl",
                       kNaN, eta_target);
  }
  foot = std::clamp(foot, lo, hi);
  // Keep the stencil centred on the target node while the foot stays within
  // one cell of it, so the weights vary smoothly with the step.
  const double t_target = (eta_target - grid.eta0) / grid.d_eta;
  const double t_foot = (foot - grid.eta0) / grid.d_eta;
  long centre = std::lround(t_target);
  if (std::abs(t_foot - static_cast<double>(centre)) > 1.0) centre = std::lround(t_foot);
  return {foot, quadratic(slice, grid, foot, centre)};
}

}  // namespace reacting_nozzle
