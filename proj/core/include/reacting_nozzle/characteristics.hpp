#pragma once

#include <cstddef>
#include <span>

#include "reacting_nozzle/gas_model.hpp"

namespace reacting_nozzle {

struct StreamlineRates {
  double dB = 0.0;
  double dS = 0.0;
  double dY = 0.0;
};

struct CharCoeffs {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double Lambda = 0.0;
  double source_plus = 0.0;
  double source_minus = 0.0;
  StreamlineRates streamline;
  double mach = 0.0;
};

/// Eigenvalues, pressure coupling weight and source terms at a state.
/// Throws SonicDegeneracy (location unset) when M <= 1.
CharCoeffs char_coeffs(const EulerState& state, const GasConstants& gas);
CharCoeffs char_coeffs(const CharState& state, const GasConstants& gas);

struct RiemannPair {
  double z_plus = 0.0;
  double z_minus = 0.0;
};

struct OmegaP {
  double omega = 0.0;
  double p = 0.0;
};

RiemannPair riemann_encode(double omega, double p, double Lambda);
OmegaP riemann_decode(const RiemannPair& rp, double Lambda);

/// Solves omega + La p = z_plus, omega - Lb p = z_minus. With La == Lb this
/// is riemann_decode.
OmegaP riemann_solve(double z_plus, double Lambda_a, double z_minus, double Lambda_b);

/// Uniform nodes eta_k = eta0 + k d_eta, k = 0..size-1, for one region. The
/// last node is pinned to eta_end so the contact sits exactly at 0.
struct RegionGrid {
  double eta0 = 0.0;
  double eta_end = 1.0;
  double d_eta = 1.0;
  std::size_t size = 0;

  static RegionGrid make(double eta0, double eta_end, std::size_t size) {
    return {eta0, eta_end, (eta_end - eta0) / static_cast<double>(size - 1), size};
  }
  double node(std::size_t k) const {
    return k + 1 == size ? eta_end : eta0 + d_eta * static_cast<double>(k);
  }
  double front() const { return eta0; }
  double back() const { return eta_end; }
};

/// Quadratic interpolation on the three nearest nodes; the stencil never
/// leaves the region. Exact for polynomials of degree <= 2.
CharState interpolate(std::span<const CharState> slice, const RegionGrid& grid, double eta);

struct FootSample {
  double eta = 0.0;
  CharState state;
};

/// Backward foot eta_target - d_xi * lambda and the interpolated state there.
/// Feet slightly outside the region (round-off) are clipped; anything further
/// throws CflViolation.
FootSample trace_foot(std::span<const CharState> slice, const RegionGrid& grid, double lambda,
                      double eta_target, double d_xi);

}  // namespace reacting_nozzle
