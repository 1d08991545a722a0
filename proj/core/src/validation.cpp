#include "reacting_nozzle/validation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reacting_nozzle/errors.hpp"

namespace reacting_nozzle {

namespace {

Quasi1DState region_average(const std::vector<CharState>& nodes, double d_eta, double width,
                            const GasConstants& gas) {
  const std::size_t n = nodes.size();
  std::vector<double> fu(n), fp(n), frho(n), fY(n);
  for (std::size_t k = 0; k < n; ++k) {
    const EulerState e = euler_from_char(nodes[k], gas);
    const double q = 1.0 / (e.rho * e.u);  // dy = q d(eta)
    fu[k] = e.u * q;
    fp[k] = e.p * q;
    frho[k] = e.rho * q;
    fY[k] = e.Y * q;
  }
  return {simpson(fu, d_eta) / width, simpson(fp, d_eta) / width, simpson(frho, d_eta) / width,
          simpson(fY, d_eta) / width};
}

struct Diff {
  double u, p, rho, Y;
};

Diff scaled_diff(const Quasi1DState& a, const Quasi1DState& b, const Quasi1DState& scale) {
  return {(a.u - b.u) / scale.u, (a.p - b.p) / scale.p, (a.rho - b.rho) / scale.rho,
          (a.Y - b.Y) / scale.Y};
}

ErrorReport sup_report(const std::vector<double>& x, const std::vector<Diff>& up,
                       const std::vector<Diff>& low) {
  ErrorReport r;
  for (const auto* side : {&up, &low}) {
    for (const Diff& d : *side) {
      r.sup_u = std::max(r.sup_u, std::abs(d.u));
      r.sup_p = std::max(r.sup_p, std::abs(d.p));
      r.sup_rho = std::max(r.sup_rho, std::abs(d.rho));
      r.sup_Y = std::max(r.sup_Y, std::abs(d.Y));
    }
    for (std::size_t k = 1; k + 1 < side->size(); ++k) {
      const double h = x[k + 1] - x[k - 1];
      const Diff& a = (*side)[k + 1];
      const Diff& b = (*side)[k - 1];
      r.deriv_sup = std::max({r.deriv_sup, std::abs(a.u - b.u) / h, std::abs(a.p - b.p) / h,
                              std::abs(a.rho - b.rho) / h, std::abs(a.Y - b.Y) / h});
    }
  }
  r.sup_norm = std::max({r.sup_u, r.sup_p, r.sup_rho, r.sup_Y});
  return r;
}

bool same_abscissa(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

}  // namespace

AverageProfile integral_average(const FlowField& field, const PhysicalTrace& trace,
                                const GasConstants& gas) {
  if (trace.x.size() != field.slices.size()) {
    throw DomainError("integral average: trace and field have different station counts");
  }
  AverageProfile avg;
  for (std::size_t k = 0; k < field.slices.size(); ++k) {
    const Slice& s = field.slices[k];
    avg.x.push_back(s.xi);
    avg.upper.push_back(region_average(s.upper, field.grid.upper.d_eta, trace.width_upper[k], gas));
    avg.lower.push_back(region_average(s.lower, field.grid.lower.d_eta, trace.width_lower[k], gas));
  }
  return avg;
}

ErrorScales ErrorScales::from_background(const InflowSpec& inflow) {
  ErrorScales s;
  s.upper = {inflow.upper.u, inflow.upper.p, inflow.upper.rho, 1.0};
  s.lower = {inflow.lower.u, inflow.lower.p, inflow.lower.rho, 1.0};
  return s;
}

ErrorReport compare(const AverageProfile& avg, const std::pair<Quasi1DRun, Quasi1DRun>& runs,
                    const ErrorScales& scales) {
  const std::size_t stations = avg.x.size();
  if (stations < 2) throw DomainError("compare: need at least two stations");
  std::vector<Diff> up, low;
  for (const Quasi1DRun* run : {&runs.first, &runs.second}) {
    const std::size_t nodes = run->x.size();
    if (nodes < stations || (nodes - 1) % (stations - 1) != 0) {
      throw DomainError("compare: quasi-1D grid does not contain the field stations");
    }
    const std::size_t stride = (nodes - 1) / (stations - 1);
    const bool is_upper = run->side == Side::upper;
    for (std::size_t k = 0; k < stations; ++k) {
      if (!same_abscissa(run->x[k * stride], avg.x[k])) {
        throw DomainError("compare: grid mismatch at station " + std::to_string(k));
      }
      const Quasi1DState& v = is_upper ? avg.upper[k] : avg.lower[k];
      (is_upper ? up : low).push_back(scaled_diff(v, run->states[k * stride], is_upper ? scales.upper : scales.lower));
    }
  }
  return sup_report(avg.x, up, low);
}

ErrorReport compare(const AverageProfile& a, const AverageProfile& b, const ErrorScales& scales) {
  if (a.x.size() != b.x.size()) throw DomainError("compare: profiles have different station counts");
  std::vector<Diff> up, low;
  for (std::size_t k = 0; k < a.x.size(); ++k) {
    if (!same_abscissa(a.x[k], b.x[k])) {
      throw DomainError("compare: grid mismatch at station " + std::to_string(k));
    }
    up.push_back(scaled_diff(a.upper[k], b.upper[k], scales.upper));
    low.push_back(scaled_diff(a.lower[k], b.lower[k], scales.lower));
  }
  return sup_report(a.x, up, low);
}

PipelineResult run_pipeline(const Problem& problem, const SolverConfig& cfg,
                            const PipelineOptions& opts) {
  PipelineResult out;
  out.solve = solve(problem, cfg);
  if (!out.solve.ok()) {
    const AbortInfo& a = *out.solve.abort;
    throw PhysicalAbort(a.message, a.xi, a.eta);
  }
  out.averages = integral_average(out.solve.field, out.solve.trace, problem.gas);
  const ContactCurve cd = opts.straight_cd ? ContactCurve{} : ContactCurve::from_trace(out.solve.trace);
  out.quasi1d = integrate_pair(averaged_inflow(problem.inflow, problem.walls),
                               area_from_geometry(problem.walls, cd), problem.gas,
                               problem.walls.length, cfg.stations * opts.rk_substeps);
  out.error = compare(out.averages, out.quasi1d, ErrorScales::from_background(problem.inflow));
  return out;
}

LogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("log-log fit needs >= 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw DomainError("log-log fit needs positive data");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double vxx = sxx - sx * sx / n;
  const double vxy = sxy - sx * sy / n;
  const double vyy = syy - sy * sy / n;
  LogFit fit;
  fit.slope = vxy / vxx;
  fit.r2 = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
  return fit;
}

ConvergenceStudy convergence_study(const Problem& base, const SolverConfig& cfg,
                                   const std::vector<double>& epsilons,
                                   const PipelineOptions& opts) {
  if (epsilons.size() < 3) throw DomainError("study: at least three epsilon values are required");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw DomainError("study: epsilon values must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
      throw DomainError("study: epsilon values must be strictly decreasing");
    }
  }
  ConvergenceStudy st;
  st.epsilons = epsilons;
  st.n_eta = cfg.n_eta;
  const ErrorScales scales = ErrorScales::from_background(base.inflow);

  // The largest perturbation carries the largest discretisation error.
  const Problem loudest = with_epsilon(base, epsilons.front());
  PipelineResult coarse = run_pipeline(loudest, cfg, opts);
  SolverConfig fine_cfg = cfg;
  fine_cfg.n_eta = 2 * cfg.n_eta - 1;
  const SolveResult fine = solve(loudest, fine_cfg);
  if (!fine.ok()) throw PhysicalAbort(fine.abort->message, fine.abort->xi, fine.abort->eta);
  const AverageProfile fine_avg = integral_average(fine.field, fine.trace, base.gas);
  st.certificate = compare(coarse.averages, fine_avg, scales).sup_norm;
  const double eps_min = epsilons.back();
  st.certificate_limit = eps_min * eps_min / 10.0;
  st.certified = st.certificate < st.certificate_limit;

  st.errors.push_back(coarse.error);
  for (std::size_t i = 1; i < epsilons.size(); ++i) {
    st.errors.push_back(run_pipeline(with_epsilon(base, epsilons[i]), cfg, opts).error);
  }

  if (!st.certified) {
    st.verdict = "discretization-dominated";
    st.passed = false;
    return st;
  }
  std::vector<double> err, derr;
  for (const auto& e : st.errors) {
    err.push_back(e.sup_norm);
    derr.push_back(e.deriv_sup);
  }
  const LogFit fit = fit_loglog(epsilons, err);
  st.slope = fit.slope;
  st.r2 = fit.r2;
  st.slope_without_largest = fit_loglog({epsilons.begin() + 1, epsilons.end()}, {err.begin() + 1, err.end()}).slope;
  st.deriv_slope = fit_loglog(epsilons, derr).slope;
  st.passed = st.slope >= 1.8 && st.r2 >= 0.98;
  st.verdict = st.passed ? "pass" : "fail";
  return st;
}

BackgroundCheck background_uniqueness_check(const Problem& problem, const SolverConfig& cfg) {
  BackgroundCheck bc;
  auto refuse = [&](std::string why) {
    bc.refused = true;
    bc.reason = std::move(why);
    return bc;
  };
  for (const auto* bumps : {&problem.walls.upper_bumps, &problem.walls.lower_bumps}) {
    for (const Bump& b : *bumps) {
      if (b.amplitude * problem.walls.amplitude_scale != 0.0) return refuse("walls are not straight");
    }
  }
  if (!problem.inflow.is_constant()) return refuse("inflow is not constant");
  if (problem.inflow.upper.Y != 0.0 || problem.inflow.lower.Y != 0.0) {
    return refuse("background states require Y = 0");
  }

  const SolveResult res = solve(problem, cfg);
  if (!res.ok()) {
    bc.reason = "march aborted: " + res.abort->message;
    return bc;
  }
  auto deviation = [&](const std::vector<CharState>& nodes, const EulerState& ref) {
    for (const CharState& cs : nodes) {
      const EulerState e = euler_from_char(cs, problem.gas);
      bc.max_deviation = std::max({bc.max_deviation, std::abs(e.u - ref.u), std::abs(e.v - ref.v),
                                   std::abs(e.p - ref.p), std::abs(e.rho - ref.rho),
                                   std::abs(e.Y - ref.Y)});
    }
  };
  for (const Slice& s : res.field.slices) {
    deviation(s.upper, problem.inflow.upper);
    deviation(s.lower, problem.inflow.lower);
  }
  for (double g : res.trace.g_cd) bc.max_abs_gcd = std::max(bc.max_abs_gcd, std::abs(g));
  bc.passed = bc.max_deviation <= 1e-12 && bc.max_abs_gcd <= 1e-12;
  bc.reason = bc.passed ? "background reproduced" : "deviation from background exceeds 1e-12";
  return bc;
}

}  // namespace reacting_nozzle
