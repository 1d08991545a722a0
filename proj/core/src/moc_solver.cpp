#include "reacting_nozzle/moc_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "parallel.hpp"
#include "reacting_nozzle/errors.hpp"

namespace reacting_nozzle {

void SolverConfig::validate() const {
  if (n_eta < 8) throw DomainError("solver.n_eta must be >= 8");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError("solver.cfl must lie in (0, 1]");
  if (max_corrector_iters < 1) throw DomainError("solver.max_corrector_iters must be >= 1");
  if (!(corrector_tol > 0.0)) throw DomainError("solver.corrector_tol must be positive");
  if (order != 1 && order != 2) throw DomainError("solver.order must be 1 or 2");
  if (stations < 1) throw DomainError("solver.stations must be >= 1");
}

WallNode apply_wall_bc(Side side, double z_incoming, double g_prime, double Lambda) {
  if (!(Lambda > 0.0)) throw DomainError("wall condition: Lambda must be positive");
  WallNode w;
  w.omega = g_prime;
  if (side == Side::upper) {
    w.p = (z_incoming - g_prime) / Lambda;
  } else {
    w.p = (g_prime - z_incoming) / Lambda;
  }
  w.z_reflected = 2.0 * g_prime - z_incoming;
  return w;
}

ContactNode apply_cd_bc(double z_minus_up, double Lambda_plus, double z_plus_low,
                        double Lambda_minus) {
  const double sum = Lambda_plus + Lambda_minus;
  if (!(Lambda_plus > 0.0 && Lambda_minus > 0.0)) {
    throw DomainError("contact condition: impedances must be positive");
  }
  ContactNode cd;
  cd.p = (z_plus_low - z_minus_up) / sum;
  cd.omega = (Lambda_minus * z_minus_up + Lambda_plus * z_plus_low) / sum;
  cd.z_plus_upper = cd.omega + Lambda_plus * cd.p;
  cd.z_minus_lower = cd.omega - Lambda_minus * cd.p;
  return cd;
}

namespace {

struct Leg {
  FootSample foot;
  CharCoeffs c;
};

double carried(const Leg& leg, double Lambda, double source, double d_xi, int sign) {
  return leg.foot.state.omega + sign * Lambda * leg.foot.state.p + d_xi * source;
}

double state_change(const CharState& a, const CharState& b) {
  return std::max({std::abs(a.omega - b.omega), std::abs(a.p - b.p), std::abs(a.B - b.B),
                   std::abs(a.S - b.S), std::abs(a.Y - b.Y)});
}

struct NodeOutcome {
  int iters = 0;
  double raw_Y = 0.0;
  bool clamped = false;
};

class Stepper {
  const Slice& old_;
  double d_xi_;
  double xi_new_;
  const Problem& problem_;
  const LagrangianGrid& grid_;
  const SolverConfig& cfg_;
  std::vector<CharCoeffs> coeffs_upper_;
  std::vector<CharCoeffs> coeffs_lower_;

  // Attaches the node location to physical failures.
  template <class Fn>
  decltype(auto) located(Side side, std::size_t k, Fn&& fn) const {
    const double eta = grid_.region(side).node(k);
    try {
      return fn();
    } catch (const CflViolation& e) {
      throw CflViolation(e.what(), xi_new_, eta);
    } catch (const SonicDegeneracy& e) {
      throw SonicDegeneracy(e.what(), xi_new_, eta);
    } catch (const DomainError& e) {
      throw SonicDegeneracy(std::string("non-admissible state: ") + e.what(), xi_new_, eta);
    }
  }

public:
  Stepper(const Slice& old, double d_xi, const Problem& problem, const LagrangianGrid& grid,
          const SolverConfig& cfg)
      : old_(old), d_xi_(d_xi), xi_new_(old.xi + d_xi), problem_(problem), grid_(grid), cfg_(cfg) {
    coeffs_upper_.resize(old.upper.size());
    coeffs_lower_.resize(old.lower.size());
    for (std::size_t k = 0; k < old.upper.size(); ++k) {
      coeffs_upper_[k] = located(Side::upper, k, [&] { return char_coeffs(old.upper[k], gas()); });
    }
    for (std::size_t k = 0; k < old.lower.size(); ++k) {
      coeffs_lower_[k] = located(Side::lower, k, [&] { return char_coeffs(old.lower[k], gas()); });
    }
  }

  Slice run(SolverDiagnostics& diag) {
    const std::size_t n = grid_.upper.size;
    Slice next;
    next.xi = xi_new_;
    next.upper.resize(n);
    next.lower.resize(grid_.lower.size);
    std::vector<NodeOutcome> out_upper(n);
    std::vector<NodeOutcome> out_lower(grid_.lower.size);

    // Jobs: interior nodes of both regions, the two walls, the contact pair.
    const std::size_t interior = n - 2;
    const std::size_t jobs = 2 * interior + 3;
    detail::parallel_for(jobs, cfg_.threads, [&](std::size_t job) {
      if (job < interior) {
        const std::size_t j = job + 1;
        next.upper[j] = located(Side::upper, j, [&] { return interior_node(Side::upper, j, out_upper[j]); });
      } else if (job < 2 * interior) {
        const std::size_t j = job - interior + 1;
        next.lower[j] = located(Side::lower, j, [&] { return interior_node(Side::lower, j, out_lower[j]); });
      } else if (job == 2 * interior) {
        next.upper[n - 1] = located(Side::upper, n - 1, [&] { return wall_node(Side::upper, out_upper[n - 1]); });
      } else if (job == 2 * interior + 1) {
        next.lower[0] = located(Side::lower, 0, [&] { return wall_node(Side::lower, out_lower[0]); });
      } else {
        located(Side::upper, 0, [&] {
          contact_pair(next.upper[0], next.lower[grid_.lower.size - 1], out_upper[0],
                       out_lower[grid_.lower.size - 1]);
          return 0;
        });
      }
    });

    // Every accepted node must stay supersonic.
    for (std::size_t k = 0; k < n; ++k) located(Side::upper, k, [&] { return char_coeffs(next.upper[k], gas()); });
    for (std::size_t k = 0; k < grid_.lower.size; ++k) located(Side::lower, k, [&] { return char_coeffs(next.lower[k], gas()); });

    auto collect = [&](const std::vector<NodeOutcome>& outs, const RegionGrid& g) {
      for (std::size_t k = 0; k < outs.size(); ++k) {
        diag.max_corrector_iters = std::max(diag.max_corrector_iters, outs[k].iters);
        if (outs[k].clamped) diag.clamp_events.push_back({xi_new_, g.node(k), outs[k].raw_Y});
      }
    };
    collect(out_upper, grid_.upper);
    collect(out_lower, grid_.lower);
    return next;
  }

private:
  const GasConstants& gas() const { return problem_.gas; }
  const std::vector<CharState>& old_region(Side s) const { return s == Side::upper ? old_.upper : old_.lower; }
  const std::vector<CharCoeffs>& old_coeffs(Side s) const {
    return s == Side::upper ? coeffs_upper_ : coeffs_lower_;
  }

  Leg leg(Side side, double lambda, double eta) const {
    const FootSample f = trace_foot(old_region(side), grid_.region(side), lambda, eta, d_xi_);
    return {f, char_coeffs(f.state, gas())};
  }

  CharState streamline(const CharState& old, const CharCoeffs& c_old, const CharCoeffs* c_new,
                       double omega, double p, NodeOutcome& out) const {
    StreamlineRates r = c_old.streamline;
    double h = d_xi_;
    CharState s{omega, p, old.B, old.S, old.Y};
    if (c_new) {
      h *= 0.5;
      s.B += h * c_new->streamline.dB;
      s.S += h * c_new->streamline.dS;
      s.Y += h * c_new->streamline.dY;
    }
    s.B += h * r.dB;
    s.S += h * r.dS;
    s.Y += h * r.dY;
    out.raw_Y = s.Y;
    out.clamped = s.Y < 0.0 || s.Y > 1.0;
    s.Y = std::clamp(s.Y, 0.0, 1.0);
    return s;
  }

  CharState interior_node(Side side, std::size_t j, NodeOutcome& out) const {
    const double eta = grid_.region(side).node(j);
    const CharState& x_old = old_region(side)[j];
    const CharCoeffs& c_old = old_coeffs(side)[j];

    Leg a = leg(side, c_old.lambda_plus, eta);
    Leg b = leg(side, c_old.lambda_minus, eta);
    OmegaP wp = riemann_solve(carried(a, a.c.Lambda, a.c.source_plus, d_xi_, 1), a.c.Lambda,
                              carried(b, b.c.Lambda, b.c.source_minus, d_xi_, -1), b.c.Lambda);
    CharState P = streamline(x_old, c_old, nullptr, wp.omega, wp.p, out);
    if (cfg_.order == 1) return P;

    for (int it = 1; it <= cfg_.max_corrector_iters; ++it) {
      const CharCoeffs cp = char_coeffs(P, gas());
      a = leg(side, 0.5 * (a.c.lambda_plus + cp.lambda_plus), eta);
      b = leg(side, 0.5 * (b.c.lambda_minus + cp.lambda_minus), eta);
      const double La = 0.5 * (a.c.Lambda + cp.Lambda);
      const double Lb = 0.5 * (b.c.Lambda + cp.Lambda);
      wp = riemann_solve(carried(a, La, 0.5 * (a.c.source_plus + cp.source_plus), d_xi_, 1), La,
                         carried(b, Lb, 0.5 * (b.c.source_minus + cp.source_minus), d_xi_, -1), Lb);
      const CharState next = streamline(x_old, c_old, &cp, wp.omega, wp.p, out);
      const double change = state_change(next, P);
      P = next;
      out.iters = it;
      if (change < cfg_.corrector_tol) break;
    }
    return P;
  }

  CharState wall_node(Side side, NodeOutcome& out) const {
    const RegionGrid& g = grid_.region(side);
    const std::size_t j = side == Side::upper ? g.size - 1 : 0;
    const double eta = g.node(j);
    const CharState& x_old = old_region(side)[j];
    const CharCoeffs& c_old = old_coeffs(side)[j];
    const double slope = eval_wall(problem_.walls, side, std::min(xi_new_, problem_.walls.length)).dg;
    const int sign = side == Side::upper ? 1 : -1;

    auto lam = [&](const CharCoeffs& c) { return side == Side::upper ? c.lambda_plus : c.lambda_minus; };
    auto src = [&](const CharCoeffs& c) { return side == Side::upper ? c.source_plus : c.source_minus; };

    Leg a = leg(side, lam(c_old), eta);
    WallNode w = apply_wall_bc(side, carried(a, a.c.Lambda, src(a.c), d_xi_, sign), slope, a.c.Lambda);
    CharState P = streamline(x_old, c_old, nullptr, w.omega, w.p, out);
    if (cfg_.order == 1) return P;

    for (int it = 1; it <= cfg_.max_corrector_iters; ++it) {
      const CharCoeffs cp = char_coeffs(P, gas());
      a = leg(side, 0.5 * (lam(a.c) + lam(cp)), eta);
      const double La = 0.5 * (a.c.Lambda + cp.Lambda);
      w = apply_wall_bc(side, carried(a, La, 0.5 * (src(a.c) + src(cp)), d_xi_, sign), slope, La);
      const CharState next = streamline(x_old, c_old, &cp, w.omega, w.p, out);
      const double change = state_change(next, P);
      P = next;
      out.iters = it;
      if (change < cfg_.corrector_tol) break;
    }
    return P;
  }

  void contact_pair(CharState& up, CharState& low, NodeOutcome& out_up, NodeOutcome& out_low) const {
    const std::size_t jl = grid_.lower.size - 1;
    const CharState& xu = old_.upper[0];
    const CharState& xl = old_.lower[jl];
    const CharCoeffs& cu = coeffs_upper_[0];
    const CharCoeffs& cl = coeffs_lower_[jl];

    // Upper side receives z- from inside the upper region, lower side z+.
    Leg b = leg(Side::upper, cu.lambda_minus, 0.0);
    Leg a = leg(Side::lower, cl.lambda_plus, 0.0);
    ContactNode cd = apply_cd_bc(carried(b, b.c.Lambda, b.c.source_minus, d_xi_, -1), b.c.Lambda,
                                 carried(a, a.c.Lambda, a.c.source_plus, d_xi_, 1), a.c.Lambda);
    up = streamline(xu, cu, nullptr, cd.omega, cd.p, out_up);
    low = streamline(xl, cl, nullptr, cd.omega, cd.p, out_low);
    if (cfg_.order == 1) return;

    for (int it = 1; it <= cfg_.max_corrector_iters; ++it) {
      const CharCoeffs cpu = char_coeffs(up, gas());
      const CharCoeffs cpl = char_coeffs(low, gas());
      b = leg(Side::upper, 0.5 * (b.c.lambda_minus + cpu.lambda_minus), 0.0);
      a = leg(Side::lower, 0.5 * (a.c.lambda_plus + cpl.lambda_plus), 0.0);
      const double Lu = 0.5 * (b.c.Lambda + cpu.Lambda);
      const double Ll = 0.5 * (a.c.Lambda + cpl.Lambda);
      cd = apply_cd_bc(carried(b, Lu, 0.5 * (b.c.source_minus + cpu.source_minus), d_xi_, -1), Lu,
                       carried(a, Ll, 0.5 * (a.c.source_plus + cpl.source_plus), d_xi_, 1), Ll);
      const CharState nu = streamline(xu, cu, &cpu, cd.omega, cd.p, out_up);
      const CharState nl = streamline(xl, cl, &cpl, cd.omega, cd.p, out_low);
      const double change = std::max(state_change(nu, up), state_change(nl, low));
      up = nu;
      low = nl;
      out_up.iters = out_low.iters = it;
      if (change < cfg_.corrector_tol) break;
    }
  }

};

}  // namespace

FlowField initialize(const Problem& problem, const SolverConfig& cfg) {
  cfg.validate();
  problem.validate();
  FlowField field;
  field.mass = mass_flux(problem.inflow, problem.walls);
  field.grid = LagrangianGrid::make(field.mass, cfg.n_eta);
  Slice s0 = inflow_to_lagrangian(problem.inflow, problem.walls, problem.gas, field.grid);

  auto check = [&](const std::vector<CharState>& nodes, const RegionGrid& g) {
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const EulerState e = euler_from_char(nodes[k], problem.gas);
      const ThermoView tv = thermo(e, problem.gas);
      if (!(tv.M > 1.0) || !(e.u > tv.c)) {
        throw SonicDegeneracy("inlet state not supersonic (Mach " + std::to_string(tv.M) +
                                  "); supersonic inflow with u > c is required",
                              0.0, g.node(k));
      }
      if (!(e.Y >= 0.0 && e.Y <= 1.0)) {
        throw DomainError("inlet mass fraction Y outside [0, 1] at eta = " + std::to_string(g.node(k)));
      }
    }
  };
  check(s0.upper, field.grid.upper);
  check(s0.lower, field.grid.lower);
  field.slices.push_back(std::move(s0));
  return field;
}

double stable_step(const Slice& slice, const LagrangianGrid& grid, const GasConstants& gas,
                   double cfl) {
  auto region_step = [&](const std::vector<CharState>& nodes, const RegionGrid& g) {
    double lam = 0.0;
    for (const auto& cs : nodes) {
      const CharCoeffs c = char_coeffs(cs, gas);
      lam = std::max({lam, std::abs(c.lambda_plus), std::abs(c.lambda_minus)});
    }
    return g.d_eta / lam;
  };
  return cfl * std::min(region_step(slice.upper, grid.upper), region_step(slice.lower, grid.lower));
}

Slice march_step(const Slice& slice, double d_xi, const Problem& problem, const LagrangianGrid& grid,
                 const SolverConfig& cfg, SolverDiagnostics& diag) {
  Stepper stepper(slice, d_xi, problem, grid, cfg);
  return stepper.run(diag);
}

SolveResult solve(const Problem& problem, const SolverConfig& cfg) {
  SolveResult res;
  res.field = initialize(problem, cfg);
  FlowField& field = res.field;
  SolverDiagnostics& diag = field.diagnostics;
  const double L = problem.walls.length;

  Slice current = field.slices.front();
  diag.min_d_xi = std::numeric_limits<double>::infinity();
  try {
    for (std::size_t k = 1; k <= cfg.stations; ++k) {
      const double target = k == cfg.stations ? L : L * static_cast<double>(k) / cfg.stations;
      while (current.xi < target) {
        double d_xi = stable_step(current, field.grid, problem.gas, cfg.cfl);
        const double lam = cfg.cfl * std::min(field.grid.upper.d_eta, field.grid.lower.d_eta) / d_xi;
        diag.max_abs_lambda = std::max(diag.max_abs_lambda, lam);
        const bool land = current.xi + d_xi >= target - 1e-12 * L;
        if (land) d_xi = target - current.xi;
        current = march_step(current, d_xi, problem, field.grid, cfg, diag);
        current.xi = land ? target : current.xi;
        ++diag.steps;
        diag.min_d_xi = std::min(diag.min_d_xi, d_xi);
        diag.max_d_xi = std::max(diag.max_d_xi, d_xi);
      }
      field.slices.push_back(current);
    }
  } catch (const PhysicalAbort& e) {
    const bool cfl = dynamic_cast<const CflViolation*>(&e) != nullptr;
    res.abort = AbortInfo{cfl ? "cfl" : "sonic", e.what(), e.xi(), e.eta()};
  }
  if (diag.steps == 0) diag.min_d_xi = 0.0;

  res.trace = inverse_transform(field, problem.walls, problem.gas);
  res.drift = verify_mass_conservation(field, problem.walls, problem.gas);
  return res;
}

}  // namespace reacting_nozzle
