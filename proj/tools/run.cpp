#include "run.hpp"

#include <ostream>

#include "output.hpp"
#include "reacting_nozzle/errors.hpp"

namespace reacting_nozzle::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kCompatibilityTolerance = 1e-10;

json header(const RunConfig& cfg, const std::string& command) {
  return {{"command", command}, {"config_hash", config_hash(cfg)}};
}

json solver_json(const SolverConfig& s) {
  return {{"n_eta", s.n_eta},   {"cfl", s.cfl},           {"order", s.order},
          {"stations", s.stations}, {"max_corrector_iters", s.max_corrector_iters},
          {"corrector_tol", s.corrector_tol}};
}

json diagnostics_json(const SolveResult& r) {
  const SolverDiagnostics& d = r.field.diagnostics;
  return {{"steps", d.steps},
          {"stations_reached", r.field.slices.size()},
          {"max_abs_lambda", d.max_abs_lambda},
          {"min_d_xi", d.min_d_xi},
          {"max_d_xi", d.max_d_xi},
          {"max_corrector_iters", d.max_corrector_iters},
          {"clamp_events", d.clamp_events.size()},
          {"m_plus", r.field.mass.m_plus},
          {"m_minus", r.field.mass.m_minus},
          {"max_mass_drift", r.drift.max_drift}};
}

json quasi1d_json(const std::pair<Quasi1DRun, Quasi1DRun>& runs) {
  json out = json::object();
  for (const Quasi1DRun* run : {&runs.first, &runs.second}) {
    double energy = 0.0;
    for (double e : run->energy_flux) {
      energy = std::max(energy, std::abs(e - run->energy_flux.front()) / std::abs(run->energy_flux.front()));
    }
    out[to_string(run->side)] = {{"max_mass_drift", run->max_mass_drift()},
                                 {"max_energy_flux_change", energy},
                                 {"min_mach", *std::min_element(run->mach.begin(), run->mach.end())},
                                 {"clamp_events", run->clamp_events}};
  }
  return out;
}

// Corner compatibility gate shared by every command that marches the 2D field.
bool compatible(const Problem& problem, const RunOptions& opts, json& summary, std::ostream& log) {
  const CompatibilityReport rep = check_corner_compatibility(problem.inflow, problem.walls, problem.gas);
  summary["compatibility"] = to_json(rep);
  if (rep.max_abs <= kCompatibilityTolerance) return true;
  if (opts.allow_incompatible) {
    log << "warning: corner compatibility residual " << rep.max_abs << " exceeds "
        << kCompatibilityTolerance << "; continuing (--allow-incompatible)\n";
    return true;
  }
  log << "error: corner compatibility residual " << rep.max_abs << " exceeds " << kCompatibilityTolerance
      << "; pass --allow-incompatible to run anyway\n";
  for (const auto& r : rep.residuals) {
    if (std::abs(r.value) > kCompatibilityTolerance) log << "  " << r.name << " = " << r.value << '\n';
  }
  return false;
}

void write_solution(const fs::path& dir, const SolveResult& r, const RunConfig& cfg) {
  write_field_csv(dir / "field.csv", r.field, cfg.problem.gas, cfg.outputs.slice_stride);
  write_trace_csv(dir / "trace.csv", r.trace);
  write_drift_csv(dir / "mass_drift.csv", r.drift);
  write_clamp_csv(dir / "clamp_events.csv", r.field.diagnostics);
}

int report_abort(const AbortInfo& a, std::ostream& log) {
  log << "physical abort (" << a.kind << ") at xi = " << a.xi << ", eta = " << a.eta << ": " << a.message
      << '\n';
  return kExitPhysical;
}

int cmd_solve2d(const RunConfig& cfg, const RunOptions& opts, std::ostream& log) {
  json summary = header(cfg, "solve2d");
  if (!compatible(cfg.problem, opts, summary, log)) return kExitUsage;
  const SolveResult r = solve(cfg.problem, cfg.solver);
  write_solution(opts.out_dir, r, cfg);
  summary["solver"] = solver_json(cfg.solver);
  summary["diagnostics"] = diagnostics_json(r);
  summary["status"] = r.ok() ? "ok" : "aborted";
  if (!r.ok()) summary["abort"] = to_json(*r.abort);
  write_json(opts.out_dir / "summary.json", summary);
  if (!r.ok()) return report_abort(*r.abort, log);
  log << "solve2d: " << r.field.diagnostics.steps << " steps, max mass drift " << r.drift.max_drift << '\n';
  return kExitOk;
}

int cmd_quasi1d(const RunConfig& cfg, const RunOptions& opts, std::ostream& log) {
  json summary = header(cfg, "quasi1d");
  ContactCurve cd;
  if (!cfg.quasi1d.straight_cd) {
    // Areas follow the contact reconstructed by a 2D march.
    if (!compatible(cfg.problem, opts, summary, log)) return kExitUsage;
    const SolveResult r = solve(cfg.problem, cfg.solver);
    if (!r.ok()) {
      summary["status"] = "aborted";
      summary["abort"] = to_json(*r.abort);
      write_json(opts.out_dir / "summary.json", summary);
      return report_abort(*r.abort, log);
    }
    write_trace_csv(opts.out_dir / "trace.csv", r.trace);
    cd = ContactCurve::from_trace(r.trace);
  }
  const auto runs = integrate_pair(averaged_inflow(cfg.problem.inflow, cfg.problem.walls),
                                   area_from_geometry(cfg.problem.walls, cd), cfg.problem.gas,
                                   cfg.problem.walls.length, cfg.solver.stations * cfg.quasi1d.rk_substeps);
  write_quasi1d_csv(opts.out_dir / "quasi1d.csv", runs);
  summary["contact"] = cfg.quasi1d.straight_cd ? "straight" : "reconstructed";
  summary["rk_steps"] = cfg.solver.stations * cfg.quasi1d.rk_substeps;
  summary["runs"] = quasi1d_json(runs);
  summary["status"] = "ok";
  write_json(opts.out_dir / "summary.json", summary);
  log << "quasi1d: mass drift " << runs.first.max_mass_drift() << " (upper), "
      << runs.second.max_mass_drift() << " (lower)\n";
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg, const RunOptions& opts, std::ostream& log) {
  json summary = header(cfg, "validate");
  if (!compatible(cfg.problem, opts, summary, log)) return kExitUsage;
  const PipelineResult pr = run_pipeline(cfg.problem, cfg.solver, cfg.quasi1d);
  write_trace_csv(opts.out_dir / "trace.csv", pr.solve.trace);
  write_drift_csv(opts.out_dir / "mass_drift.csv", pr.solve.drift);
  write_averages_csv(opts.out_dir / "averages.csv", pr.averages);
  write_quasi1d_csv(opts.out_dir / "quasi1d.csv", pr.quasi1d);

  const double drift = pr.solve.drift.max_drift;
  const bool drift_ok = drift <= cfg.validate.max_mass_drift;
  const bool error_ok = cfg.validate.max_error == 0.0 || pr.error.sup_norm <= cfg.validate.max_error;
  summary["solver"] = solver_json(cfg.solver);
  summary["diagnostics"] = diagnostics_json(pr.solve);
  summary["error"] = to_json(pr.error);
  summary["runs"] = quasi1d_json(pr.quasi1d);
  summary["gates"] = {{"mass_drift", {{"value", drift}, {"limit", cfg.validate.max_mass_drift}, {"passed", drift_ok}}},
                      {"error", {{"value", pr.error.sup_norm}, {"limit", cfg.validate.max_error}, {"passed", error_ok}}}};
  summary["status"] = drift_ok && error_ok ? "pass" : "fail";
  write_json(opts.out_dir / "validate.json", summary);
  log << "validate: sup error " << pr.error.sup_norm << ", mass drift " << drift << '\n';
  return drift_ok && error_ok ? kExitOk : kExitGate;
}

int cmd_study(const RunConfig& cfg, const RunOptions& opts, std::ostream& log) {
  const auto& eps = cfg.study.epsilons;
  if (eps.size() < 3) {
    log << "error: study.epsilons needs at least three values (got " << eps.size() << ")\n";
    return kExitUsage;
  }
  json summary = header(cfg, "study");
  if (!compatible(with_epsilon(cfg.problem, eps.front()), opts, summary, log)) return kExitUsage;
  const ConvergenceStudy st = convergence_study(cfg.problem, cfg.solver, eps, cfg.quasi1d);
  write_study_csv(opts.out_dir / "study.csv", st);
  summary["slope"] = st.slope;
  summary["r2"] = st.r2;
  summary["certified"] = st.certified;
  summary["n_eta"] = st.n_eta;
  summary["certificate"] = st.certificate;
  summary["certificate_limit"] = st.certificate_limit;
  summary["slope_without_largest"] = st.slope_without_largest;
  summary["deriv_slope"] = st.deriv_slope;
  summary["verdict"] = st.verdict;
  write_json(opts.out_dir / "study.json", summary);
  log << "study: " << st.verdict;
  if (st.certified) log << ", slope " << st.slope << ", r2 " << st.r2;
  log << " (certificate " << st.certificate << " vs " << st.certificate_limit << ")\n";
  return st.passed ? kExitOk : kExitGate;
}

int cmd_background(const RunConfig& cfg, const RunOptions& opts, std::ostream& log) {
  json summary = header(cfg, "background-check");
  const BackgroundCheck bc = background_uniqueness_check(cfg.problem, cfg.solver);
  summary["refused"] = bc.refused;
  summary["passed"] = bc.passed;
  summary["reason"] = bc.reason;
  summary["max_deviation"] = bc.max_deviation;
  summary["max_abs_gcd"] = bc.max_abs_gcd;
  write_json(opts.out_dir / "background.json", summary);
  log << "background-check: " << bc.reason << '\n';
  if (bc.refused) return kExitUsage;
  return bc.passed ? kExitOk : kExitGate;
}

}  // namespace

int run(const RunConfig& cfg, const std::string& command, const RunOptions& opts, std::ostream& log) {
  try {
    fs::create_directories(opts.out_dir);
    if (command == "solve2d") return cmd_solve2d(cfg, opts, log);
    if (command == "quasi1d") return cmd_quasi1d(cfg, opts, log);
    if (command == "validate") return cmd_validate(cfg, opts, log);
    if (command == "study") return cmd_study(cfg, opts, log);
    if (command == "background-check") return cmd_background(cfg, opts, log);
    log << "error: unknown command '" << command << "'\n";
    return kExitUsage;
  } catch (const PhysicalAbort& e) {
    log << "physical abort at xi = " << e.xi() << ", eta = " << e.eta() << ": " << e.what() << '\n';
    return kExitPhysical;
  } catch (const DomainError& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace reacting_nozzle::cli
