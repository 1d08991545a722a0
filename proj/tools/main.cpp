// Command line driver: reacting_nozzle <command> --config run.yaml [--out DIR]

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "config.hpp"
#include "run.hpp"

using namespace reacting_nozzle::cli;

int main(int argc, char** argv) {
  CLI::App app{"Marching solver for steady supersonic reacting flow in a two-layer nozzle"};
  std::string command;
  std::string config_path;
  std::string out_dir;
  bool allow_incompatible = false;
  std::size_t stride = 0;
  unsigned threads = 0;

  app.add_option("command", command, "solve2d | quasi1d | validate | study | background-check")
      ->required()
      ->check(CLI::IsMember(commands()));
  app.add_option("--config", config_path, "Run configuration (YAML)")->required();
  app.add_option("--out", out_dir, "Output directory (overrides outputs.directory)");
  app.add_flag("--allow-incompatible", allow_incompatible,
               "Run even when the inlet corner compatibility residuals are non-zero");
  app.add_option("--stride", stride, "Store every N-th station in field.csv")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "Worker threads (default: REACTING_NOZZLE_THREADS or config)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  RunConfig cfg;
  try {
    cfg = parse_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }

  if (threads == 0) {
    if (const char* env = std::getenv("REACTING_NOZZLE_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end == env || *end != '\0' || v < 1) {
        std::cerr << "error: REACTING_NOZZLE_THREADS must be a positive integer\n";
        return kExitUsage;
      }
      threads = static_cast<unsigned>(v);
    }
  }
  if (threads > 0) cfg.solver.threads = threads;
  if (stride > 0) cfg.outputs.slice_stride = stride;

  RunOptions opts;
  opts.out_dir = out_dir.empty() ? cfg.outputs.directory : out_dir;
  opts.allow_incompatible = allow_incompatible;
  return run(cfg, command, opts, std::cerr);
}
