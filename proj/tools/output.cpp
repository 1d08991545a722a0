#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace reacting_nozzle::cli {

namespace {

class CsvWriter {
public:
  CsvWriter(const std::filesystem::path& file, const char* header) : out_(file, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot write " + file.string());
    out_ << header << '\n';
  }

  CsvWriter& num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return text(buf);
  }

  CsvWriter& text(const char* s) {
    if (!first_) out_ << ',';
    out_ << s;
    first_ = false;
    return *this;
  }

  void end() {
    out_ << '\n';
    first_ = true;
  }

private:
  std::ofstream out_;
  bool first_ = true;
};

void field_rows(CsvWriter& w, double xi, const std::vector<CharState>& nodes, const RegionGrid& grid,
                const char* region, const GasConstants& gas) {
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const CharState& c = nodes[k];
    const EulerState e = euler_from_char(c, gas);
    w.num(xi).num(grid.node(k)).text(region);
    w.num(c.omega).num(c.p).num(c.B).num(c.S).num(c.Y);
    w.num(e.u).num(e.v).num(e.rho).num(thermo(e, gas).M);
    w.end();
  }
}

}  // namespace

void write_field_csv(const std::filesystem::path& file, const FlowField& field, const GasConstants& gas,
                     std::size_t stride) {
  CsvWriter w(file, "xi,eta,region,omega,p,B,S,Y,u,v,rho,mach");
  const std::size_t n = field.slices.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (k % stride != 0 && k + 1 != n) continue;
    const Slice& s = field.slices[k];
    field_rows(w, s.xi, s.upper, field.grid.upper, "U", gas);
    field_rows(w, s.xi, s.lower, field.grid.lower, "L", gas);
  }
}

void write_trace_csv(const std::filesystem::path& file, const PhysicalTrace& trace) {
  CsvWriter w(file, "x,g_cd,g_cd_prime,width_upper,width_lower");
  for (std::size_t k = 0; k < trace.x.size(); ++k) {
    w.num(trace.x[k]).num(trace.g_cd[k]).num(trace.g_cd_prime[k]);
    w.num(trace.width_upper[k]).num(trace.width_lower[k]);
    w.end();
  }
}

void write_drift_csv(const std::filesystem::path& file, const MassDriftReport& drift) {
  CsvWriter w(file, "x,drift_upper,drift_lower");
  for (std::size_t k = 0; k < drift.x.size(); ++k) {
    w.num(drift.x[k]).num(drift.drift_upper[k]).num(drift.drift_lower[k]);
    w.end();
  }
}

void write_clamp_csv(const std::filesystem::path& file, const SolverDiagnostics& diag) {
  CsvWriter w(file, "xi,eta,raw_Y");
  for (const ClampEvent& e : diag.clamp_events) {
    w.num(e.xi).num(e.eta).num(e.raw_Y);
    w.end();
  }
}

void write_quasi1d_csv(const std::filesystem::path& file, const std::pair<Quasi1DRun, Quasi1DRun>& runs) {
  CsvWriter w(file, "x,side,u,p,rho,Y,rhoUA,mach");
  for (const Quasi1DRun* run : {&runs.first, &runs.second}) {
    for (std::size_t k = 0; k < run->x.size(); ++k) {
      const Quasi1DState& s = run->states[k];
      w.num(run->x[k]).text(to_string(run->side));
      w.num(s.u).num(s.p).num(s.rho).num(s.Y).num(run->rho_u_A[k]).num(run->mach[k]);
      w.end();
    }
  }
}

void write_averages_csv(const std::filesystem::path& file, const AverageProfile& avg) {
  CsvWriter w(file, "x,side,u,p,rho,Y");
  for (Side side : {Side::upper, Side::lower}) {
    const auto& states = side == Side::upper ? avg.upper : avg.lower;
    for (std::size_t k = 0; k < avg.x.size(); ++k) {
      const Quasi1DState& s = states[k];
      w.num(avg.x[k]).text(to_string(side)).num(s.u).num(s.p).num(s.rho).num(s.Y);
      w.end();
    }
  }
}

void write_study_csv(const std::filesystem::path& file, const ConvergenceStudy& study) {
  CsvWriter w(file, "epsilon,err_sup_u,err_sup_p,err_sup_rho,err_sup_Y,err_sup_total");
  for (std::size_t i = 0; i < study.errors.size(); ++i) {
    const ErrorReport& e = study.errors[i];
    w.num(study.epsilons[i]).num(e.sup_u).num(e.sup_p).num(e.sup_rho).num(e.sup_Y).num(e.sup_norm);
    w.end();
  }
}

void write_json(const std::filesystem::path& file, const nlohmann::json& j) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << j.dump(2) << '\n';
}

nlohmann::json to_json(const ErrorReport& e) {
  return {{"sup_u", e.sup_u},         {"sup_p", e.sup_p},         {"sup_rho", e.sup_rho},
          {"sup_Y", e.sup_Y},         {"sup_norm", e.sup_norm},   {"deriv_sup", e.deriv_sup}};
}

nlohmann::json to_json(const CompatibilityReport& r) {
  nlohmann::json res = nlohmann::json::object();
  for (const auto& c : r.residuals) res[c.name] = c.value;
  return {{"residuals", res}, {"max_abs", r.max_abs}};
}

nlohmann::json to_json(const AbortInfo& a) {
  return {{"kind", a.kind}, {"message", a.message}, {"xi", a.xi}, {"eta", a.eta}};
}

}  // namespace reacting_nozzle::cli
