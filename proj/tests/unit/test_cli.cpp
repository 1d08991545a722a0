#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "config.hpp"
#include "json.hpp"
#include "run.hpp"

namespace fs = std::filesystem;
using namespace reacting_nozzle;
using namespace reacting_nozzle::cli;

namespace {

const char* kSmall = R"(
gas: {gamma: 1.4, R: 1.0, q0: 0.5, activation_energy: 2.0, theta: 1.0}
walls:
  length: 4.0
  upper_bumps: [{center: 2.0, width: 1.9, amplitude: 0.25}]
inflow:
  epsilon: 0.04
  upper: {u: 2.0, p: 1.0, rho: 1.4}
  lower: {u: 3.0, p: 1.0, rho: 0.7}
  perturbations:
    - {side: upper, field: Y, center: 0.5, width: 0.45, amplitude: 1.0}
solver: {n_eta: 24, stations: 8}
)";

const char* kBackground = R"(
gas: {gamma: 1.4, R: 1.0, q0: 0.5, activation_energy: 2.0, theta: 1.0}
walls: {length: 4.0}
inflow:
  upper: {u: 2.0, p: 1.0, rho: 1.4}
  lower: {u: 3.0, p: 1.0, rho: 0.7}
solver: {n_eta: 16, stations: 4}
)";

std::string replaced(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  if (pos != std::string::npos) text.replace(pos, from.size(), to);
  return text;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("reacting_nozzle_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_command(const std::string& text, const std::string& command, const fs::path& out) {
  std::ostringstream log;
  return run(parse_config_text(text), command, {out, false}, log);
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(REACTING_NOZZLE_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config_issue(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Config, ShippedExamplesParse) {
  for (const char* name : {"background.yaml", "reacting.yaml", "study.yaml"}) {
    const RunConfig c = parse_config(fs::path(REACTING_NOZZLE_CONFIG_DIR) / name);
    EXPECT_NO_THROW(c.problem.validate()) << name;
  }
  const RunConfig study = parse_config(fs::path(REACTING_NOZZLE_CONFIG_DIR) / "study.yaml");
  EXPECT_EQ(study.study.epsilons.size(), 3u);
}

TEST(Config, ValuesReachTheProblem) {
  const RunConfig c = parse_config_text(kSmall);
  EXPECT_EQ(c.problem.gas.gamma, 1.4);
  EXPECT_EQ(c.problem.walls.amplitude_scale, 0.04);
  EXPECT_EQ(c.problem.inflow.epsilon, 0.04);
  EXPECT_EQ(c.solver.n_eta, 24u);
  EXPECT_EQ(c.solver.cfl, 0.8);
  ASSERT_EQ(c.problem.inflow.perturbations.size(), 1u);
  EXPECT_EQ(c.problem.inflow.perturbations[0].field, InflowField::Y);
}

TEST(Config, RejectsSubUnitGamma) {
  const std::string msg = config_issue(replaced(kSmall, "gamma: 1.4", "gamma: 0.9"));
  EXPECT_NE(msg.find("gas.gamma"), std::string::npos) << msg;
  EXPECT_NE(msg.find("gamma > 1"), std::string::npos) << msg;
}

TEST(Config, UnknownKeyNamesItsPath) {
  const std::string msg = config_issue(replaced(kSmall, "theta: 1.0}", "theta: 1.0, viscosity: 0.1}"));
  EXPECT_NE(msg.find("gas.viscosity"), std::string::npos) << msg;
}

TEST(Config, ReportsEveryIssue) {
  std::string text = replaced(kSmall, "gamma: 1.4", "gamma: 0.9");
  text = replaced(text, "n_eta: 24", "n_eta: many");
  try {
    parse_config_text(text);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_GE(e.issues().size(), 2u);
  }
}

TEST(Config, MissingSectionAndMalformedYaml) {
  EXPECT_NE(config_issue("gas: {gamma: 1.4}\n").find("walls"), std::string::npos);
  EXPECT_FALSE(config_issue("gas: [unclosed\n").empty());
}

TEST(Config, HashIgnoresThreadsAndOutputs) {
  const RunConfig a = parse_config_text(kSmall);
  RunConfig b = a;
  b.solver.threads = 8;
  b.outputs.directory = "elsewhere";
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.solver.cfl = 0.5;
  EXPECT_NE(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
}

TEST(Run, BackgroundCheckSucceeds) {
  const fs::path out = scratch("bg");
  EXPECT_EQ(run_command(kBackground, "background-check", out), kExitOk);
  const auto j = nlohmann::json::parse(slurp(out / "background.json"));
  EXPECT_TRUE(j.at("passed").get<bool>());
}

TEST(Run, BackgroundCheckRefusesBumpedInput) {
  EXPECT_EQ(run_command(kSmall, "background-check", scratch("bg_refused")), kExitUsage);
}

TEST(Run, StudyNeedsThreeEpsilons) {
  const std::string text = std::string(kSmall) + "study: {epsilons: [0.04, 0.02]}\n";
  EXPECT_EQ(run_command(text, "study", scratch("study2")), kExitUsage);
}

TEST(Run, SubsonicInletIsPhysicalAbort) {
  const std::string text = replaced(kBackground, "upper: {u: 2.0", "upper: {u: 0.9");
  EXPECT_EQ(run_command(text, "solve2d", scratch("subsonic")), kExitPhysical);
}

TEST(Run, Solve2dWritesArtifacts) {
  const fs::path out = scratch("solve");
  ASSERT_EQ(run_command(kSmall, "solve2d", out), kExitOk);
  for (const char* f : {"field.csv", "trace.csv", "mass_drift.csv", "summary.json"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  const auto j = nlohmann::json::parse(slurp(out / "summary.json"));
  EXPECT_EQ(j.at("status").get<std::string>(), "ok");
  EXPECT_EQ(slurp(out / "trace.csv").substr(0, 36), "x,g_cd,g_cd_prime,width_upper,width_");
}

TEST(Run, ValidateGateFailsOnTightDrift) {
  const std::string text = std::string(kSmall) + "validate: {max_mass_drift: 1.0e-15}\n";
  EXPECT_EQ(run_command(text, "validate", scratch("gate")), kExitGate);
}

TEST(Run, OutputsAreByteIdenticalOnRepeat) {
  const fs::path a = scratch("repeat_a");
  const fs::path b = scratch("repeat_b");
  // The coarse grid misses the default drift gate; only determinism matters here.
  const std::string text = std::string(kSmall) + "validate: {max_mass_drift: 1.0}\n";
  ASSERT_EQ(run_command(text, "validate", a), kExitOk);
  ASSERT_EQ(run_command(text, "validate", b), kExitOk);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path().filename();
  }
  EXPECT_GE(files, 4u);
}

TEST(Binary, ExitCodes) {
  const fs::path dir = scratch("binary");
  const fs::path bg = dir / "bg.yaml";
  const fs::path sub = dir / "sub.yaml";
  std::ofstream(bg) << kBackground;
  std::ofstream(sub) << replaced(kBackground, "upper: {u: 2.0", "upper: {u: 0.9");
  EXPECT_EQ(run_binary("background-check --config " + bg.string() + " --out " + (dir / "o1").string()), 0);
  EXPECT_EQ(run_binary("solve2d --config " + sub.string() + " --out " + (dir / "o2").string()), 2);
  EXPECT_EQ(run_binary("no-such-command --config " + bg.string()), 1);
  EXPECT_EQ(run_binary("solve2d --config " + (dir / "missing.yaml").string()), 1);
  EXPECT_EQ(run_binary("--help"), 0);
}

TEST(Binary, ThreadsFromEnvironmentDoNotChangeOutput) {
  const fs::path dir = scratch("threads");
  const fs::path cfg = dir / "small.yaml";
  std::ofstream(cfg) << kSmall;
  ASSERT_EQ(run_binary("solve2d --config " + cfg.string() + " --out " + (dir / "t1").string()), 0);
  ASSERT_EQ(run_binary("solve2d --config " + cfg.string() + " --out " + (dir / "t4").string() + " --threads 4"), 0);
  ::setenv("REACTING_NOZZLE_THREADS", "3", 1);
  const int env_status = run_binary("solve2d --config " + cfg.string() + " --out " + (dir / "t3").string());
  ::setenv("REACTING_NOZZLE_THREADS", "zero", 1);
  const int bad_env = run_binary("solve2d --config " + cfg.string() + " --out " + (dir / "tx").string());
  ::unsetenv("REACTING_NOZZLE_THREADS");
  EXPECT_EQ(env_status, 0);
  EXPECT_EQ(bad_env, 1);
  EXPECT_EQ(slurp(dir / "t1" / "field.csv"), slurp(dir / "t4" / "field.csv"));
  EXPECT_EQ(slurp(dir / "t1" / "field.csv"), slurp(dir / "t3" / "field.csv"));
}
