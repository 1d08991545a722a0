#pragma once

// Polytropic gas closure, Arrhenius kinetics and the map between primitive
// states (u, v, p, rho, Y) and the marching variables (omega, p, B, S, Y).
//
// Entropy convention: p = A(S) rho^gamma with A(S) = (gamma-1) exp((S-S0)/cv).

namespace reacting_nozzle {

/// Temperature floor used when evaluating the reaction rate.
inline constexpr double kMinTemperature = 1e-8;

struct GasConstants {
  double gamma = 1.4;
  double R = 1.0;
  double cv = 2.5;  // R / (gamma - 1); use make() to keep it consistent
  double S0 = 0.0;
  double q0 = 0.0;
  double arrhenius_E = 1.0;
  double arrhenius_theta = 0.0;

  static GasConstants make(double gamma, double R, double S0, double q0, double activation_energy,
                           double theta);

  /// Throws DomainError on gamma <= 1, R <= 0, q0 < 0, E <= 0, theta < 0 or
  /// an inconsistent cv.
  void validate() const;
};

struct EulerState {
  double u = 0.0;
  double v = 0.0;
  double p = 0.0;
  double rho = 0.0;
  double Y = 0.0;
};

struct CharState {
  double omega = 0.0;
  double p = 0.0;
  double B = 0.0;
  double S = 0.0;
  double Y = 0.0;
};

struct ThermoView {
  double c = 0.0;
  double M = 0.0;
  double T = 0.0;
  double A_of_S = 0.0;
};

struct BernoulliEntropy {
  double B = 0.0;
  double S = 0.0;
};

struct ReactionRate {
  double value = 0.0;
  bool clamped = false;  // T was raised to kMinTemperature
};

ThermoView thermo(const EulerState& state, const GasConstants& gas);

/// phi(T) = T^theta exp(-E / (R T)).
ReactionRate reaction_rate(double T, const GasConstants& gas);

/// A(S) = (gamma - 1) exp((S - S0) / cv).
double entropy_function(double S, const GasConstants& gas);

/// Inverse of entropy_function.
double entropy_from_function(double A, const GasConstants& gas);

BernoulliEntropy bernoulli_entropy(const EulerState& state, const GasConstants& gas);

/// Requires u > 0.
CharState char_from_euler(const EulerState& state, const GasConstants& gas);

/// Recovers (u, v, p, rho, Y). Throws DomainError when the kinetic part of
/// B is not positive (vacuum or no admissible velocity).
EulerState euler_from_char(const CharState& cs, const GasConstants& gas);

}  // namespace reacting_nozzle
