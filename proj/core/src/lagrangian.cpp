#include "reacting_nozzle/lagrangian.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "reacting_nozzle/errors.hpp"

namespace reacting_nozzle {

namespace {

constexpr std::array<double, 5> kGaussNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                               0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights = {0.2369268850561891, 0.4786286704993665,
                                                 0.5688888888888889, 0.4786286704993665,
                                                 0.2369268850561891};
constexpr int kInletPanels = 512;
constexpr double kBisectionTol = 1e-12;

double gl5_panel(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < kGaussNodes.size(); ++i) sum += kGaussWeights[i] * f(mid + half * kGaussNodes[i]);
  return sum * half;
}

double mass_density(const InflowSpec& inflow, Side side, double y) {
  const EulerState s = inflow.state_at(side, y);
  const double q = s.rho * s.u;
  if (!std::isfinite(q)) throw DomainError("inlet mass flux density is not finite");
  if (!(q > 0.0)) throw DomainError("inlet mass flux density rho u must be positive");
  return q;
}

// Cumulative inlet mass flux of one segment, F(y) = int_{a}^{y} rho u dy,
// tabulated at panel boundaries.
class InletFlux {
public:
  InletFlux(const InflowSpec& inflow, Side side, double a, double b)
      : inflow_(inflow), side_(side), a_(a), b_(b), h_((b - a) / kInletPanels) {
    cumulative_.resize(kInletPanels + 1, 0.0);
    for (int k = 0; k < kInletPanels; ++k) {
      cumulative_[k + 1] = cumulative_[k] + gl5_panel(density(), y_at(k), y_at(k + 1));
    }
  }

  double total() const { return cumulative_.back(); }

  double operator()(double y) const {
    if (y <= a_) return 0.0;
    if (y >= b_) return total();
    const int k = std::min(static_cast<int>((y - a_) / h_), kInletPanels - 1);
    return cumulative_[k] + gl5_panel(density(), y_at(k), y);
  }

  // Bisection for F(y) = target.
  double invert(double target) const {
    const double slack = 1e-12 * std::max(1.0, total());
    if (target < -slack || target > total() + slack) {
      throw std::runtime_error("inlet transform: cannot bracket eta; cumulative flux not monotone");
    }
    if (target <= 0.0) return a_;
    if (target >= total()) return b_;
    double lo = a_;
    double hi = b_;
    while (hi - lo > kBisectionTol) {
      const double mid = 0.5 * (lo + hi);
      if ((*this)(mid) < target) lo = mid;
      else hi = mid;
    }
    return 0.5 * (lo + hi);
  }

private:
  std::function<double(double)> density() const {
    return [this](double y) { return mass_density(inflow_, side_, y); };
  }
  double y_at(int k) const { return k == kInletPanels ? b_ : a_ + h_ * k; }

  const InflowSpec& inflow_;
  Side side_;
  double a_;
  double b_;
  double h_;
  std::vector<double> cumulative_;
};

InletFlux upper_flux(const InflowSpec& inflow, const WallSpec& walls) {
  return InletFlux(inflow, Side::upper, 0.0, eval_wall(walls, Side::upper, 0.0).g);
}

InletFlux lower_flux(const InflowSpec& inflow, const WallSpec& walls) {
  return InletFlux(inflow, Side::lower, eval_wall(walls, Side::lower, 0.0).g, 0.0);
}

double mass_flux_density(const CharState& cs, const GasConstants& gas) {
  const EulerState s = euler_from_char(cs, gas);
  const double q = s.rho * s.u;
  if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("transform degenerate: rho u <= 0");
  return q;
}

std::vector<double> inverse_flux(const std::vector<CharState>& states, const GasConstants& gas) {
  std::vector<double> q(states.size());
  for (std::size_t k = 0; k < states.size(); ++k) q[k] = 1.0 / mass_flux_density(states[k], gas);
  return q;
}

// Running integral at every node using a local quadratic per interval.
std::vector<double> cumulative_integral(const std::vector<double>& f, double h, double start) {
  const std::size_t n = f.size();
  std::vector<double> out(n, start);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double inc;
    if (k + 2 < n) inc = h * (5.0 * f[k] + 8.0 * f[k + 1] - f[k + 2]) / 12.0;
    else inc = h * (-f[k - 1] + 8.0 * f[k] + 5.0 * f[k + 1]) / 12.0;
    out[k + 1] = out[k] + inc;
  }
  return out;
}

}  // namespace

double integrate_gl5(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + h * k;
    const double hi = k + 1 == panels ? b : a + h * (k + 1);
    sum += gl5_panel(f, lo, hi);
  }
  if (!std::isfinite(sum)) throw DomainError("quadrature of a non-finite integrand");
  return sum;
}

double simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 2) return 0.0;
  const std::size_t intervals = n - 1;
  if (intervals == 1) return 0.5 * h * (f[0] + f[1]);
  std::size_t simpson_end = intervals % 2 == 0 ? intervals : intervals - 3;
  double sum = 0.0;
  for (std::size_t k = 0; k + 2 <= simpson_end; k += 2) {
    sum += h / 3.0 * (f[k] + 4.0 * f[k + 1] + f[k + 2]);
  }
  if (simpson_end != intervals) {
    const std::size_t k = simpson_end;
    sum += 3.0 * h / 8.0 * (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]);
  }
  return sum;
}

MassFlux mass_flux(const InflowSpec& inflow, const WallSpec& walls) {
  MassFlux mf{upper_flux(inflow, walls).total(), lower_flux(inflow, walls).total()};
  if (!std::isfinite(mf.m_plus) || !std::isfinite(mf.m_minus)) {
    throw DomainError("mass flux quadrature is not finite");
  }
  return mf;
}

LagrangianGrid LagrangianGrid::make(const MassFlux& mf, std::size_t n_eta) {
  if (n_eta < 8) throw DomainError("n_eta must be at least 8 nodes per region");
  if (!(mf.m_plus > 0.0 && mf.m_minus > 0.0)) throw DomainError("mass fluxes must be positive");
  return {RegionGrid::make(0.0, mf.m_plus, n_eta), RegionGrid::make(-mf.m_minus, 0.0, n_eta)};
}

double inlet_ordinate(const InflowSpec& inflow, const WallSpec& walls, const MassFlux& mf,
                      double eta) {
  if (eta >= 0.0) return upper_flux(inflow, walls).invert(eta);
  return lower_flux(inflow, walls).invert(eta + mf.m_minus);
}

double inlet_eta(const InflowSpec& inflow, const WallSpec& walls, const MassFlux& mf, double y) {
  if (y >= 0.0) return upper_flux(inflow, walls)(y);
  return lower_flux(inflow, walls)(y) - mf.m_minus;
}

Slice inflow_to_lagrangian(const InflowSpec& inflow, const WallSpec& walls, const GasConstants& gas,
                           const LagrangianGrid& grid) {
  const InletFlux up = upper_flux(inflow, walls);
  const InletFlux low = lower_flux(inflow, walls);
  const double m_minus = low.total();

  Slice slice;
  slice.upper.resize(grid.upper.size);
  slice.lower.resize(grid.lower.size);
  for (std::size_t k = 0; k < grid.upper.size; ++k) {
    const double y = k == 0 ? 0.0 : up.invert(grid.upper.node(k));
    slice.upper[k] = char_from_euler(inflow.state_at(Side::upper, y), gas);
  }
  for (std::size_t k = 0; k < grid.lower.size; ++k) {
    const double y = k + 1 == grid.lower.size ? 0.0 : low.invert(grid.lower.node(k) + m_minus);
    slice.lower[k] = char_from_euler(inflow.state_at(Side::lower, y), gas);
  }
  return slice;
}

PhysicalTrace inverse_transform(const FlowField& field, const WallSpec& walls,
                                const GasConstants& gas) {
  PhysicalTrace tr;
  const double hu = field.grid.upper.d_eta;
  const double hl = field.grid.lower.d_eta;
  for (const Slice& s : field.slices) {
    const double x = std::min(s.xi, walls.length);
    const double g_top = eval_wall(walls, Side::upper, x).g;
    const double g_bottom = eval_wall(walls, Side::lower, x).g;
    const auto qu = inverse_flux(s.upper, gas);
    const auto ql = inverse_flux(s.lower, gas);

    auto yl = cumulative_integral(ql, hl, g_bottom);
    const double g_cd = g_bottom + simpson(ql, hl);
    yl.back() = g_cd;
    auto yu = cumulative_integral(qu, hu, g_cd);
    yu.back() = g_cd + simpson(qu, hu);

    tr.x.push_back(s.xi);
    tr.g_cd.push_back(g_cd);
    tr.g_cd_prime.push_back(s.cd_upper().omega);
    tr.width_upper.push_back(g_top - g_cd);
    tr.width_lower.push_back(g_cd - g_bottom);
    tr.upper_wall_mismatch.push_back(yu.back() - g_top);
    tr.y_upper.push_back(std::move(yu));
    tr.y_lower.push_back(std::move(yl));
  }
  return tr;
}

MassDriftReport verify_mass_conservation(const FlowField& field, const WallSpec& walls,
                                         const GasConstants& gas) {
  MassDriftReport rep;
  for (const Slice& s : field.slices) {
    const double x = std::min(s.xi, walls.length);
    const double width = eval_wall(walls, Side::upper, x).g - eval_wall(walls, Side::lower, x).g;
    const auto qu = inverse_flux(s.upper, gas);
    const auto ql = inverse_flux(s.lower, gas);
    // Geometric channel width minus the width implied by the Lagrangian field.
    const double gap = width - simpson(qu, field.grid.upper.d_eta) - simpson(ql, field.grid.lower.d_eta);
    const double du = std::abs(gap) / (qu.back() * field.mass.m_plus);
    const double dl = std::abs(gap) / (ql.front() * field.mass.m_minus);
    rep.x.push_back(s.xi);
    rep.drift_upper.push_back(du);
    rep.drift_lower.push_back(dl);
    rep.max_drift = std::max({rep.max_drift, du, dl});
  }
  return rep;
}

}  // namespace reacting_nozzle
