#include "reacting_nozzle/gas_model.hpp"

#include <cmath>
#include <string>

#include "reacting_nozzle/errors.hpp"

namespace reacting_nozzle {

GasConstants GasConstants::make(double gamma, double R, double S0, double q0,
                                double activation_energy, double theta) {
  GasConstants g;
  g.gamma = gamma;
  g.R = R;
  g.cv = R / (gamma - 1.0);
  g.S0 = S0;
  g.q0 = q0;
  g.arrhenius_E = activation_energy;
  g.arrhenius_theta = theta;
  g.validate();
  return g;
}

void GasConstants::validate() const {
  if (!(gamma > 1.0)) throw DomainError("gas constants: gamma > 1 required");
  if (!(R > 0.0)) throw DomainError("gas constants: R > 0 required");
  if (!(q0 >= 0.0)) throw DomainError("gas constants: q0 >= 0 required");
  if (!(arrhenius_E > 0.0)) throw DomainError("gas constants: arrhenius_E > 0 required");
  if (!(arrhenius_theta >= 0.0)) throw DomainError("gas constants: arrhenius_theta >= 0 required");
  const double expected_cv = R / (gamma - 1.0);
  if (std::abs(cv - expected_cv) > 1e-14 * expected_cv) {
    throw DomainError("gas constants: cv must equal R/(gamma-1)");
  }
}

namespace {

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string("non-positive ") + field + " (" + std::to_string(value) + ")");
  }
}

}  // namespace

ThermoView thermo(const EulerState& s, const GasConstants& g) {
  require_positive(s.p, "pressure p");
  require_positive(s.rho, "density rho");
  ThermoView view;
  view.c = std::sqrt(g.gamma * s.p / s.rho);
  view.M = std::sqrt(s.u * s.u + s.v * s.v) / view.c;
  view.T = s.p / (g.R * s.rho);
  view.A_of_S = s.p / std::pow(s.rho, g.gamma);
  return view;
}

ReactionRate reaction_rate(double T, const GasConstants& g) {
  ReactionRate rate;
  if (!(T >= kMinTemperature)) {
    T = kMinTemperature;
    rate.clamped = true;
  }
  rate.value = std::pow(T, g.arrhenius_theta) * std::exp(-g.arrhenius_E / (g.R * T));
  return rate;
}

double entropy_function(double S, const GasConstants& g) {
  return (g.gamma - 1.0) * std::exp((S - g.S0) / g.cv);
}

double entropy_from_function(double A, const GasConstants& g) {
  require_positive(A, "entropy function A(S)");
  return g.S0 + g.cv * std::log(A / (g.gamma - 1.0));
}

BernoulliEntropy bernoulli_entropy(const EulerState& s, const GasConstants& g) {
  require_positive(s.p, "pressure p");
  require_positive(s.rho, "density rho");
  BernoulliEntropy be;
  be.B = 0.5 * (s.u * s.u + s.v * s.v) + g.gamma * s.p / ((g.gamma - 1.0) * s.rho);
  be.S = entropy_from_function(s.p / std::pow(s.rho, g.gamma), g);
  return be;
}

CharState char_from_euler(const EulerState& s, const GasConstants& g) {
  if (!(s.u > 0.0)) {
    throw DomainError("axial velocity u must be positive (u = " + std::to_string(s.u) + ")");
  }
  const auto be = bernoulli_entropy(s, g);
  return CharState{s.v / s.u, s.p, be.B, be.S, s.Y};
}

EulerState euler_from_char(const CharState& cs, const GasConstants& g) {
  require_positive(cs.p, "pressure p");
  const double A = entropy_function(cs.S, g);
  // rho = (p / A)^(1/gamma); the enthalpy term gamma p / ((gamma-1) rho)
  const double rho = std::pow(cs.p / A, 1.0 / g.gamma);
  const double radicand = (g.gamma - 1.0) * cs.B - g.gamma * cs.p / rho;
  if (!(radicand > 0.0) || !std::isfinite(radicand)) {
    throw DomainError("subsonic/vacuum state: non-positive kinetic energy in Bernoulli function");
  }
  EulerState s;
  s.u = std::sqrt(2.0 * radicand / ((g.gamma - 1.0) * (1.0 + cs.omega * cs.omega)));
  s.v = cs.omega * s.u;
  s.p = cs.p;
  s.rho = rho;
  s.Y = cs.Y;
  return s;
}

}  // namespace reacting_nozzle
