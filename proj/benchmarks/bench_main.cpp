#include <benchmark/benchmark.h>

#include "reacting_nozzle/moc_solver.hpp"
#include "reacting_nozzle/quasi1d.hpp"

using namespace reacting_nozzle;

namespace {

Problem bump(double eps) {
  Problem p;
  p.gas = GasConstants::make(1.4, 1.0, 0.0, 0.5, 2.0, 1.0);
  p.walls.length = 4.0;
  p.walls.upper_bumps = {{2.0, 1.9, 0.25}};
  p.inflow.upper = {2.0, 0.0, 1.0, 1.4, 0.0};
  p.inflow.lower = {3.0, 0.0, 1.0, 0.7, 0.0};
  p.inflow.perturbations = {{Side::upper, InflowField::Y, {0.5, 0.45, 1.0}},
                            {Side::lower, InflowField::u, {-0.5, 0.45, 1.0}}};
  return with_epsilon(p, eps);
}

void BM_CharCoeffs(benchmark::State& state) {
  const GasConstants g = GasConstants::make(1.4, 1.0, 0.0, 0.5, 2.0, 1.0);
  EulerState s{2.0, 0.03, 1.0, 1.4, 0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(char_coeffs(s, g));
    s.v = -s.v;
  }
}
BENCHMARK(BM_CharCoeffs);

void BM_MarchStep(benchmark::State& state) {
  const Problem p = bump(0.04);
  SolverConfig cfg;
  cfg.n_eta = static_cast<std::size_t>(state.range(0));
  cfg.threads = static_cast<unsigned>(state.range(1));
  const FlowField f = initialize(p, cfg);
  const double d_xi = stable_step(f.slices[0], f.grid, p.gas, cfg.cfl);
  SolverDiagnostics diag;
  for (auto _ : state) {
    benchmark::DoNotOptimize(march_step(f.slices[0], d_xi, p, f.grid, cfg, diag));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(2 * cfg.n_eta));
}
BENCHMARK(BM_MarchStep)->Args({100, 1})->Args({200, 1})->Args({400, 1})->Args({400, 4});

void BM_Solve(benchmark::State& state) {
  const Problem p = bump(0.04);
  SolverConfig cfg;
  cfg.n_eta = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve(p, cfg));
}
BENCHMARK(BM_Solve)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Quasi1D(benchmark::State& state) {
  const Problem p = bump(0.04);
  const auto areas = area_from_geometry(p.walls);
  const auto init = averaged_inflow(p.inflow, p.walls);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_pair(init, areas, p.gas, p.walls.length, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_Quasi1D)->Arg(1024)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
