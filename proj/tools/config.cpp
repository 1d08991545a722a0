#include "config.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <type_traits>

#include "reacting_nozzle/errors.hpp"

namespace reacting_nozzle::cli {

namespace {

std::string join(const std::vector<std::string>& issues) {
  std::string out = "invalid configuration:";
  for (const auto& s : issues) out += "\n  " + s;
  return out;
}

// Missing keys and explicit nulls both count as absent.
bool absent(const YAML::Node& n) { return !n || n.IsNull(); }

// Walks one YAML mapping, remembering which keys were consumed so that the
// leftovers can be reported as unknown.
class Section {
public:
  Section(const YAML::Node& node, std::string path, std::vector<std::string>& issues)
      : node_(node), path_(std::move(path)), issues_(issues) {
    if (!absent(node_) && !node_.IsMap()) {
      issue(path_, "expected a mapping");
      valid_ = false;
    }
  }

  ~Section() {
    if (!valid_ || absent(node_)) return;
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!seen_.count(key)) issue(key_path(key), "unknown key");
    }
  }

  Section(const Section&) = delete;
  Section& operator=(const Section&) = delete;

  bool present() const { return valid_ && !absent(node_); }

  std::string key_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void issue(const std::string& where, const std::string& what) {
    issues_.push_back(where + ": " + what);
  }

  YAML::Node child(const std::string& key) {
    seen_.insert(key);
    if (!valid_ || absent(node_)) return {};
    const YAML::Node& n = node_;
    return n[key];
  }

  template <class T>
  void get(const std::string& key, T& out, bool required) {
    const YAML::Node n = child(key);
    if (absent(n)) {
      if (required && valid_) issue(key_path(key), "missing required key");
      return;
    }
    if (!n.IsScalar()) {
      issue(key_path(key), "expected a scalar");
      return;
    }
    try {
      out = n.as<T>();
    } catch (const YAML::Exception&) {
      issue(key_path(key), std::string("type mismatch, expected ") + type_name<T>());
    }
  }

  void require(const std::string& key, double& out) { get(key, out, true); }
  void optional(const std::string& key, double& out) { get(key, out, false); }

private:
  template <class T>
  static const char* type_name() {
    if constexpr (std::is_same_v<T, bool>) return "a boolean";
    else if constexpr (std::is_integral_v<T>) return "an integer";
    else if constexpr (std::is_floating_point_v<T>) return "a number";
    else return "a string";
  }

  YAML::Node node_;
  std::string path_;
  std::vector<std::string>& issues_;
  std::set<std::string> seen_;
  bool valid_ = true;
};

void check(std::vector<std::string>& issues, bool ok, const std::string& path, const std::string& what) {
  if (!ok) issues.push_back(path + ": " + what);
}

// Collects the first failure of a core validator under `path`.
void revalidate(std::vector<std::string>& issues, const std::string& path,
                const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    issues.push_back(path + ": " + e.what());
  }
}

Side parse_side(Section& s, const std::string& key) {
  std::string v;
  s.get(key, v, true);
  if (v == "lower") return Side::lower;
  if (v != "upper" && !v.empty()) s.issue(s.key_path(key), "expected 'upper' or 'lower'");
  return Side::upper;
}

InflowField parse_field(Section& s, const std::string& key) {
  std::string v;
  s.get(key, v, true);
  if (v == "u") return InflowField::u;
  if (v == "v") return InflowField::v;
  if (v == "rho") return InflowField::rho;
  if (v == "Y") return InflowField::Y;
  if (v != "p" && !v.empty()) s.issue(s.key_path(key), "expected one of u, v, p, rho, Y");
  return InflowField::p;
}

Bump parse_bump(Section& s) {
  Bump b;
  s.require("center", b.center);
  s.require("width", b.width);
  s.require("amplitude", b.amplitude);
  if (s.present() && !(b.width > 0.0)) s.issue(s.key_path("width"), "width > 0 required");
  return b;
}

std::vector<Bump> parse_bumps(const YAML::Node& n, const std::string& path,
                              std::vector<std::string>& issues) {
  std::vector<Bump> out;
  if (absent(n)) return out;
  if (!n.IsSequence()) {
    issues.push_back(path + ": expected a list");
    return out;
  }
  for (std::size_t i = 0; i < n.size(); ++i) {
    Section s(n[i], path + "[" + std::to_string(i) + "]", issues);
    out.push_back(parse_bump(s));
  }
  return out;
}

EulerState parse_state(Section& s) {
  EulerState e;
  s.require("u", e.u);
  s.optional("v", e.v);
  s.require("p", e.p);
  s.require("rho", e.rho);
  s.optional("Y", e.Y);
  return e;
}

void parse_gas(const YAML::Node& root, RunConfig& cfg, std::vector<std::string>& issues) {
  const std::size_t before = issues.size();
  double gamma = 1.4, R = 1.0, S0 = 0.0, q0 = 0.0, E = 1.0, theta = 0.0;
  {
    Section s(root["gas"], "gas", issues);
    if (!s.present()) {
      if (absent(root["gas"])) issues.push_back("gas: missing required section");
      return;
    }
    s.require("gamma", gamma);
    s.require("R", R);
    s.optional("S0", S0);
    s.require("q0", q0);
    s.require("activation_energy", E);
    s.require("theta", theta);
  }
  check(issues, gamma > 1.0, "gas.gamma", "gamma > 1 required");
  check(issues, R > 0.0, "gas.R", "R > 0 required");
  check(issues, q0 >= 0.0, "gas.q0", "q0 >= 0 required");
  check(issues, E > 0.0, "gas.activation_energy", "activation_energy > 0 required");
  check(issues, theta >= 0.0, "gas.theta", "theta >= 0 required");
  if (issues.size() == before) {
    cfg.problem.gas = GasConstants::make(gamma, R, S0, q0, E, theta);
    revalidate(issues, "gas", [&] { cfg.problem.gas.validate(); });
  }
}

void parse_walls(const YAML::Node& root, RunConfig& cfg, std::vector<std::string>& issues) {
  const std::size_t before = issues.size();
  WallSpec& w = cfg.problem.walls;
  {
    Section s(root["walls"], "walls", issues);
    if (!s.present()) {
      if (absent(root["walls"])) issues.push_back("walls: missing required section");
      return;
    }
    s.require("length", w.length);
    w.upper_bumps = parse_bumps(s.child("upper_bumps"), "walls.upper_bumps", issues);
    w.lower_bumps = parse_bumps(s.child("lower_bumps"), "walls.lower_bumps", issues);
  }
  check(issues, w.length > 0.0, "walls.length", "length > 0 required");
  // The wall bumps share the inflow scale so that a single epsilon drives both.
  w.amplitude_scale = cfg.problem.inflow.epsilon;
  if (issues.size() == before) revalidate(issues, "walls", [&] { w.validate(); });
}

void parse_inflow(const YAML::Node& root, RunConfig& cfg, std::vector<std::string>& issues) {
  const std::size_t before = issues.size();
  InflowSpec& in = cfg.problem.inflow;
  {
    Section s(root["inflow"], "inflow", issues);
    if (!s.present()) {
      if (absent(root["inflow"])) issues.push_back("inflow: missing required section");
      return;
    }
    s.optional("epsilon", in.epsilon);
    for (Side side : {Side::upper, Side::lower}) {
      const std::string name = to_string(side);
      const YAML::Node n = s.child(name);
      if (absent(n)) {
        issues.push_back("inflow." + name + ": missing required section");
        continue;
      }
      Section st(n, "inflow." + name, issues);
      EulerState e = parse_state(st);
      const std::string p = "inflow." + name;
      check(issues, e.u > 0.0, p + ".u", "u > 0 required");
      check(issues, e.p > 0.0, p + ".p", "p > 0 required");
      check(issues, e.rho > 0.0, p + ".rho", "rho > 0 required");
      check(issues, e.v == 0.0, p + ".v", "background v must be 0");
      check(issues, e.Y >= 0.0 && e.Y <= 1.0, p + ".Y", "Y in [0, 1] required");
      (side == Side::upper ? in.upper : in.lower) = e;
    }
    const YAML::Node list = s.child("perturbations");
    if (!absent(list) && !list.IsSequence()) {
      issues.push_back("inflow.perturbations: expected a list");
    } else if (!absent(list)) {
      for (std::size_t i = 0; i < list.size(); ++i) {
        Section ps(list[i], "inflow.perturbations[" + std::to_string(i) + "]", issues);
        Perturbation pert;
        pert.side = parse_side(ps, "side");
        pert.field = parse_field(ps, "field");
        pert.profile = parse_bump(ps);
        in.perturbations.push_back(pert);
      }
    }
  }
  check(issues, in.epsilon >= 0.0, "inflow.epsilon", "epsilon >= 0 required");
  if (issues.size() == before) revalidate(issues, "inflow", [&] { in.validate(); });
}

void parse_solver(const YAML::Node& root, RunConfig& cfg, std::vector<std::string>& issues) {
  const std::size_t before = issues.size();
  SolverConfig& sc = cfg.solver;
  {
    Section s(root["solver"], "solver", issues);
    s.get("n_eta", sc.n_eta, false);
    s.get("cfl", sc.cfl, false);
    s.get("max_corrector_iters", sc.max_corrector_iters, false);
    s.get("corrector_tol", sc.corrector_tol, false);
    s.get("order", sc.order, false);
    s.get("stations", sc.stations, false);
    s.get("threads", sc.threads, false);
  }
  check(issues, sc.threads >= 1, "solver.threads", "threads >= 1 required");
  if (issues.size() == before) revalidate(issues, "solver", [&] { sc.validate(); });
}

void parse_rest(const YAML::Node& root, RunConfig& cfg, std::vector<std::string>& issues) {
  {
    Section s(root["quasi1d"], "quasi1d", issues);
    s.get("rk_substeps", cfg.quasi1d.rk_substeps, false);
    s.get("straight_cd", cfg.quasi1d.straight_cd, false);
  }
  check(issues, cfg.quasi1d.rk_substeps >= 1, "quasi1d.rk_substeps", "rk_substeps >= 1 required");
  {
    Section s(root["outputs"], "outputs", issues);
    s.get("directory", cfg.outputs.directory, false);
    s.get("slice_stride", cfg.outputs.slice_stride, false);
  }
  check(issues, cfg.outputs.slice_stride >= 1, "outputs.slice_stride", "slice_stride >= 1 required");
  check(issues, !cfg.outputs.directory.empty(), "outputs.directory", "must not be empty");
  {
    Section s(root["validate"], "validate", issues);
    s.get("max_mass_drift", cfg.validate.max_mass_drift, false);
    s.get("max_error", cfg.validate.max_error, false);
  }
  check(issues, cfg.validate.max_mass_drift > 0.0, "validate.max_mass_drift", "must be positive");
  check(issues, cfg.validate.max_error >= 0.0, "validate.max_error", "must be >= 0");
  {
    Section s(root["study"], "study", issues);
    const YAML::Node eps = s.child("epsilons");
    if (!absent(eps) && !eps.IsSequence()) {
      issues.push_back("study.epsilons: expected a list");
    } else if (!absent(eps)) {
      for (std::size_t i = 0; i < eps.size(); ++i) {
        const std::string path = "study.epsilons[" + std::to_string(i) + "]";
        try {
          cfg.study.epsilons.push_back(eps[i].as<double>());
        } catch (const YAML::Exception&) {
          issues.push_back(path + ": type mismatch, expected a number");
          continue;
        }
        const double e = cfg.study.epsilons.back();
        check(issues, e > 0.0, path, "epsilon > 0 required");
        if (cfg.study.epsilons.size() > 1) {
          check(issues, e < cfg.study.epsilons[cfg.study.epsilons.size() - 2], path,
                "epsilons must be strictly decreasing");
        }
      }
    }
  }
}

RunConfig parse_node(const YAML::Node& root) {
  std::vector<std::string> issues;
  RunConfig cfg;
  if (!root.IsMap()) throw ConfigError({"<root>: expected a mapping"});
  static const std::set<std::string> known = {"gas",     "walls",   "inflow",   "solver",
                                              "quasi1d", "outputs", "validate", "study"};
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    if (!known.count(key)) issues.push_back(key + ": unknown key");
  }
  parse_gas(root, cfg, issues);
  parse_inflow(root, cfg, issues);
  parse_walls(root, cfg, issues);
  parse_solver(root, cfg, issues);
  parse_rest(root, cfg, issues);
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

RunConfig parse_config_text(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError({std::string("<syntax>: ") + e.what()});
  }
  return parse_node(root);
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path.string() + ": cannot read file"});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string canonical_form(const RunConfig& cfg) {
  std::ostringstream o;
  const Problem& p = cfg.problem;
  const GasConstants& g = p.gas;
  o << "gas " << num(g.gamma) << ' ' << num(g.R) << ' ' << num(g.S0) << ' ' << num(g.q0) << ' '
    << num(g.arrhenius_E) << ' ' << num(g.arrhenius_theta) << '\n';
  o << "walls " << num(p.walls.length) << '\n';
  for (const auto* list : {&p.walls.upper_bumps, &p.walls.lower_bumps}) {
    o << "bumps";
    for (const Bump& b : *list) o << ' ' << num(b.center) << ' ' << num(b.width) << ' ' << num(b.amplitude);
    o << '\n';
  }
  for (const EulerState* e : {&p.inflow.upper, &p.inflow.lower}) {
    o << "state " << num(e->u) << ' ' << num(e->v) << ' ' << num(e->p) << ' ' << num(e->rho) << ' '
      << num(e->Y) << '\n';
  }
  o << "epsilon " << num(p.inflow.epsilon) << '\n';
  for (const Perturbation& q : p.inflow.perturbations) {
    o << "pert " << to_string(q.side) << ' ' << to_string(q.field) << ' ' << num(q.profile.center)
      << ' ' << num(q.profile.width) << ' ' << num(q.profile.amplitude) << '\n';
  }
  const SolverConfig& s = cfg.solver;
  // threads and output placement do not change results and stay out of the hash.
  o << "solver " << s.n_eta << ' ' << num(s.cfl) << ' ' << s.max_corrector_iters << ' '
    << num(s.corrector_tol) << ' ' << s.order << ' ' << s.stations << '\n';
  o << "quasi1d " << cfg.quasi1d.rk_substeps << ' ' << cfg.quasi1d.straight_cd << '\n';
  o << "validate " << num(cfg.validate.max_mass_drift) << ' ' << num(cfg.validate.max_error) << '\n';
  o << "study";
  for (double e : cfg.study.epsilons) o << ' ' << num(e);
  o << '\n';
  return o.str();
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash(const RunConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical_form(cfg))));
  return buf;
}

}  // namespace reacting_nozzle::cli
