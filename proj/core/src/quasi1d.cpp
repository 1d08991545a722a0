#include "reacting_nozzle/quasi1d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reacting_nozzle/errors.hpp"

namespace reacting_nozzle {

ContactCurve::ContactCurve(std::vector<double> x, std::vector<double> g, std::vector<double> slope)
    : x_(std::move(x)), g_(std::move(g)), slope_(std::move(slope)) {
  if (x_.size() < 2 || g_.size() != x_.size() || slope_.size() != x_.size()) {
    throw DomainError("contact curve needs at least two matching samples");
  }
  for (std::size_t k = 1; k < x_.size(); ++k) {
    if (!(x_[k] > x_[k - 1])) throw DomainError("contact curve abscissae must increase");
  }
}

ContactCurve ContactCurve::from_trace(const PhysicalTrace& trace) {
  return ContactCurve(trace.x, trace.g_cd, trace.g_cd_prime);
}

std::pair<double, double> ContactCurve::eval(double x) const {
  if (x_.empty()) return {0.0, 0.0};
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t k = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  k = std::min(k, x_.size() - 2);
  const double h = x_[k + 1] - x_[k];
  const double t = (x - x_[k]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  const double d00 = 6 * t2 - 6 * t, d10 = 3 * t2 - 4 * t + 1;
  const double d01 = -6 * t2 + 6 * t, d11 = 3 * t2 - 2 * t;
  const double g = h00 * g_[k] + h10 * h * slope_[k] + h01 * g_[k + 1] + h11 * h * slope_[k + 1];
  const double dg = (d00 * g_[k] + d01 * g_[k + 1]) / h + d10 * slope_[k] + d11 * slope_[k + 1];
  return {g, dg};
}

AreaSample AreaFunction::operator()(double x) const {
  const WallSample w = eval_wall(walls, side, x);
  const auto [g_cd, dg_cd] = cd.eval(x);
  AreaSample a;
  if (side == Side::upper) {
    a = {w.g - g_cd, w.dg - dg_cd};
  } else {
    a = {g_cd - w.g, dg_cd - w.dg};
  }
  if (!(a.A > 0.0)) {
    throw DomainError("area ordering g_- < g_cd < g_+ violated at x = " + std::to_string(x));
  }
  return a;
}

std::pair<AreaFunction, AreaFunction> area_from_geometry(const WallSpec& walls,
                                                         const ContactCurve& cd) {
  return {AreaFunction{Side::upper, walls, cd}, AreaFunction{Side::lower, walls, cd}};
}

std::pair<Quasi1DState, Quasi1DState> averaged_inflow(const InflowSpec& inflow,
                                                      const WallSpec& walls) {
  constexpr int kPanels = 512;
  auto average = [&](Side side, double a, double b) {
    auto comp = [&](auto pick) {
      return integrate_gl5([&](double y) { return pick(inflow.state_at(side, y)); }, a, b, kPanels) /
             (b - a);
    };
    return Quasi1DState{comp([](const EulerState& s) { return s.u; }),
                        comp([](const EulerState& s) { return s.p; }),
                        comp([](const EulerState& s) { return s.rho; }),
                        comp([](const EulerState& s) { return s.Y; })};
  };
  return {average(Side::upper, 0.0, eval_wall(walls, Side::upper, 0.0).g),
          average(Side::lower, eval_wall(walls, Side::lower, 0.0).g, 0.0)};
}

Quasi1DRates q1d_rhs(const Quasi1DState& s, double A, double A_prime, const GasConstants& g) {
  if (!(s.u > 0.0)) throw DomainError("quasi-1D: u must be positive");
  const EulerState e{s.u, 0.0, s.p, s.rho, s.Y};
  const ThermoView tv = thermo(e, g);
  const double c2 = tv.c * tv.c;
  const double m2 = s.u * s.u / c2;
  if (std::abs(1.0 - m2) < 1e-10) {
    throw SonicDegeneracy("quasi-1D sonic throat: |1 - M^2| < 1e-10", 0.0, 0.0);
  }
  const double phi = reaction_rate(tv.T, g).value;
  const double heat = (g.gamma - 1.0) * g.q0 * phi * s.Y / (c2 - s.u * s.u);
  const double geom = A_prime / (A * (1.0 - m2));
  Quasi1DRates r;
  r.du = heat - s.u * geom;
  r.dp = -s.rho * s.u * heat + s.rho * s.u * s.u * geom;
  // Continuity (rho u A constant) fixes the sign of the area term.
  r.drho = -s.rho * heat / s.u + s.rho * m2 * geom;
  r.dY = -phi * s.Y / s.u;
  return r;
}

double Quasi1DRun::max_mass_drift() const {
  double d = 0.0;
  for (double m : rho_u_A) d = std::max(d, std::abs(m - rho_u_A.front()) / std::abs(rho_u_A.front()));
  return d;
}

namespace {

Quasi1DState axpy(const Quasi1DState& s, double h, const Quasi1DRates& r) {
  return {s.u + h * r.du, s.p + h * r.dp, s.rho + h * r.drho, s.Y + h * r.dY};
}

void record(Quasi1DRun& run, double x, const Quasi1DState& s, const AreaSample& a,
            const GasConstants& g) {
  const double c = std::sqrt(g.gamma * s.p / s.rho);
  const double flux = s.rho * s.u * a.A;
  run.x.push_back(x);
  run.states.push_back(s);
  run.rho_u_A.push_back(flux);
  run.energy_flux.push_back((0.5 * s.u * s.u + g.gamma * s.p / ((g.gamma - 1.0) * s.rho)) * flux);
  run.mach.push_back(s.u / c);
}

}  // namespace

Quasi1DRun integrate(const Quasi1DState& init, const AreaFunction& area, const GasConstants& gas,
                     double length, std::size_t n_steps) {
  if (n_steps == 0) throw DomainError("quasi-1D: n_steps must be positive");
  Quasi1DRun run;
  run.side = area.side;
  const double h = length / static_cast<double>(n_steps);

  auto rhs = [&](double x, const Quasi1DState& s) {
    const AreaSample a = area(std::min(x, length));
    try {
      return q1d_rhs(s, a.A, a.dA, gas);
    } catch (const SonicDegeneracy& e) {
      throw SonicDegeneracy(e.what(), x, 0.0);
    } catch (const DomainError& e) {
      throw SonicDegeneracy(std::string("quasi-1D: ") + e.what(), x, 0.0);
    }
  };
  auto supersonic = [&](double x, const Quasi1DState& s) {
    if (!(s.p > 0.0 && s.rho > 0.0 && s.u > std::sqrt(gas.gamma * s.p / s.rho))) {
      throw SonicDegeneracy("quasi-1D state not supersonic at x = " + std::to_string(x), x, 0.0);
    }
  };

  Quasi1DState s = init;
  supersonic(0.0, s);
  record(run, 0.0, s, area(0.0), gas);
  for (std::size_t k = 0; k < n_steps; ++k) {
    const double x = h * static_cast<double>(k);
    const double x_next = k + 1 == n_steps ? length : h * static_cast<double>(k + 1);
    const Quasi1DRates k1 = rhs(x, s);
    const Quasi1DRates k2 = rhs(x + 0.5 * h, axpy(s, 0.5 * h, k1));
    const Quasi1DRates k3 = rhs(x + 0.5 * h, axpy(s, 0.5 * h, k2));
    const Quasi1DRates k4 = rhs(x_next, axpy(s, h, k3));
    s.u += h / 6.0 * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du);
    s.p += h / 6.0 * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
    s.rho += h / 6.0 * (k1.drho + 2.0 * k2.drho + 2.0 * k3.drho + k4.drho);
    s.Y += h / 6.0 * (k1.dY + 2.0 * k2.dY + 2.0 * k3.dY + k4.dY);
    if (s.Y < 0.0 || s.Y > 1.0) {
      ++run.clamp_events;
      s.Y = std::clamp(s.Y, 0.0, 1.0);
    }
    supersonic(x_next, s);
    record(run, x_next, s, area(x_next), gas);
  }
  return run;
}

std::pair<Quasi1DRun, Quasi1DRun> integrate_pair(const std::pair<Quasi1DState, Quasi1DState>& init,
                                                 const std::pair<AreaFunction, AreaFunction>& areas,
                                                 const GasConstants& gas, double length,
                                                 std::size_t n_steps) {
  return {integrate(init.first, areas.first, gas, length, n_steps),
          integrate(init.second, areas.second, gas, length, n_steps)};
}

}  // namespace reacting_nozzle
