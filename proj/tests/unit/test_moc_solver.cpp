#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "problems.hpp"
#include "reacting_nozzle/errors.hpp"
#include "reacting_nozzle/moc_solver.hpp"

using namespace reacting_nozzle;

namespace {

constexpr double kLambdaUp = 0.3092952;
constexpr double kLambdaLow = 0.2969568;

SolverConfig small_cfg(std::size_t n = 48, std::size_t stations = 16) {
  SolverConfig cfg;
  cfg.n_eta = n;
  cfg.stations = stations;
  return cfg;
}

}  // namespace

TEST(WallCondition, ReflectsIncomingVariable) {
  const WallNode w = apply_wall_bc(Side::upper, 0.3323882, 0.01, kLambdaUp);
  EXPECT_EQ(w.omega, 0.01);
  EXPECT_NEAR(w.z_reflected, -0.3123882, 1e-15);
  EXPECT_NEAR(w.p, (0.3323882 - 0.01) / kLambdaUp, 1e-15);
  // The outgoing variable satisfies omega - Lambda p = z_reflected.
  EXPECT_NEAR(w.omega - kLambdaUp * w.p, w.z_reflected, 1e-15);

  const WallNode flat = apply_wall_bc(Side::upper, 0.3323882, 0.0, kLambdaUp);
  EXPECT_NEAR(flat.z_reflected, -0.3323882, 1e-16);
}

TEST(WallCondition, LowerWallMirrorsUpper) {
  const WallNode w = apply_wall_bc(Side::lower, -0.2969568, -0.02, kLambdaLow);
  EXPECT_EQ(w.omega, -0.02);
  EXPECT_NEAR(w.omega + kLambdaLow * w.p, w.z_reflected, 1e-15);
  EXPECT_NEAR(w.p, (-0.02 + 0.2969568) / kLambdaLow, 1e-15);
  EXPECT_THROW(apply_wall_bc(Side::lower, 0.0, 0.0, 0.0), DomainError);
}

TEST(ContactCondition, WorkedExample) {
  const ContactNode cd = apply_cd_bc(-0.01, kLambdaUp, 0.02, kLambdaLow);
  EXPECT_NEAR(cd.p, 0.0494844, 5e-8);
  EXPECT_NEAR(cd.omega, 0.0053053, 5e-8);
  EXPECT_NEAR(cd.z_plus_upper, 0.0206106, 5e-8);
  EXPECT_NEAR(cd.omega - kLambdaUp * cd.p, -0.01, 1e-16);
  EXPECT_NEAR(cd.omega + kLambdaLow * cd.p, 0.02, 1e-16);
}

TEST(ContactCondition, SymmetricStateHasNoPressureJump) {
  const ContactNode cd = apply_cd_bc(0.04, 0.5, 0.04, 0.5);
  EXPECT_EQ(cd.p, 0.0);
  EXPECT_EQ(cd.omega, 0.04);
}

TEST(ContactCondition, EqualImpedancesTransmitFully) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> z(-0.5, 0.5), lam(0.1, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double L = lam(rng), zm = z(rng), zp = z(rng);
    const ContactNode cd = apply_cd_bc(zm, L, zp, L);
    // Each outgoing variable is the incoming one from the other side.
    EXPECT_NEAR(cd.z_plus_upper, zp, 1e-15);
    EXPECT_NEAR(cd.z_minus_lower, zm, 1e-15);
  }
  EXPECT_THROW(apply_cd_bc(0.0, 0.0, 0.0, 1.0), DomainError);
}

TEST(Config, Validation) {
  EXPECT_NO_THROW(SolverConfig{}.validate());
  SolverConfig c;
  c.cfl = 1.2;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.order = 3;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.n_eta = 4;
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(Streamline, FuelDepletionStep) {
  Problem p = fixtures::background(0.0);
  p.inflow.upper.Y = 0.1;
  const SolverConfig cfg = small_cfg();
  const FlowField f = initialize(p, cfg);
  SolverDiagnostics diag;
  const Slice next = march_step(f.slices[0], 1e-2, p, f.grid, cfg, diag);
  for (std::size_t j = 0; j < next.upper.size(); ++j) {
    EXPECT_NEAR(next.upper[j].Y, 0.0999783, 5e-8);
    // Y' = -k Y with k frozen (q0 = 0 leaves T alone); the converged
    // corrector is the trapezoidal rule.
    const double a = 1e-2 * (1.0 / 1.4) * std::exp(-2.8) / 2.0;
    EXPECT_NEAR(next.upper[j].Y, 0.1 * (1.0 - 0.5 * a) / (1.0 + 0.5 * a), 1e-15);
    EXPECT_EQ(next.upper[j].B, f.slices[0].upper[j].B);
  }
}

TEST(Streamline, HeatReleaseStep) {
  Problem p = fixtures::background(0.5);
  p.inflow.upper.Y = 0.1;
  const SolverConfig cfg = small_cfg();
  const FlowField f = initialize(p, cfg);
  SolverDiagnostics diag;
  const Slice next = march_step(f.slices[0], 1e-2, p, f.grid, cfg, diag);
  const std::size_t mid = next.upper.size() / 2;
  EXPECT_NEAR(next.upper[mid].B - f.slices[0].upper[mid].B, 1.0859e-5, 5e-9);
  EXPECT_GT(next.upper[mid].S, f.slices[0].upper[mid].S);
}

TEST(Solve, BackgroundStaysConstant) {
  const Problem p = fixtures::background();
  const SolveResult r = solve(p, small_cfg(64, 8));
  ASSERT_TRUE(r.ok());
  const Slice& inlet = r.field.slices.front();
  for (const Slice& s : r.field.slices) {
    for (Side side : {Side::upper, Side::lower}) {
      for (std::size_t j = 0; j < s.region(side).size(); ++j) {
        const CharState& a = s.region(side)[j];
        const CharState& b = inlet.region(side)[j];
        EXPECT_NEAR(a.omega, b.omega, 1e-12);
        EXPECT_NEAR(a.p, b.p, 1e-12);
        EXPECT_NEAR(a.B, b.B, 1e-12);
        EXPECT_NEAR(a.S, b.S, 1e-12);
      }
    }
  }
  EXPECT_NEAR(r.field.slices.back().xi, 4.0, 1e-14);
}

TEST(Solve, LandsOnEveryStation) {
  const SolveResult r = solve(with_epsilon(fixtures::bump_problem(), 0.04), small_cfg(32, 10));
  ASSERT_EQ(r.field.slices.size(), 11u);
  for (std::size_t k = 0; k < r.field.slices.size(); ++k) {
    EXPECT_NEAR(r.field.slices[k].xi, 0.4 * static_cast<double>(k), 1e-12);
  }
}

TEST(Solve, SubsonicInletThrows) {
  Problem p = fixtures::background();
  p.inflow.upper.u = 0.9;  // c = 1
  EXPECT_THROW(solve(p, small_cfg()), SonicDegeneracy);
}

TEST(Solve, ContactCouplingHoldsExactly) {
  const SolveResult r = solve(with_epsilon(fixtures::bump_problem(), 0.08), small_cfg(64, 32));
  ASSERT_TRUE(r.ok());
  for (const Slice& s : r.field.slices) {
    EXPECT_LE(std::abs(s.cd_upper().omega - s.cd_lower().omega), 1e-12) << "xi = " << s.xi;
    EXPECT_LE(std::abs(s.cd_upper().p - s.cd_lower().p), 1e-12) << "xi = " << s.xi;
  }
}

TEST(Solve, InertFlowKeepsStreamlineInvariants) {
  const Problem p = with_epsilon(fixtures::bump_problem(0.0), 0.08);
  const SolveResult r = solve(p, small_cfg(48, 8));
  ASSERT_TRUE(r.ok());
  const Slice& inlet = r.field.slices.front();
  for (const Slice& s : r.field.slices) {
    for (Side side : {Side::upper, Side::lower}) {
      for (std::size_t j = 0; j < s.region(side).size(); ++j) {
        EXPECT_NEAR(s.region(side)[j].B, inlet.region(side)[j].B, 1e-13);
        EXPECT_NEAR(s.region(side)[j].S, inlet.region(side)[j].S, 1e-13);
      }
    }
  }
}

TEST(Solve, StaysSupersonicWithMonotoneFuel) {
  const Problem p = with_epsilon(fixtures::bump_problem(), 0.08);
  const SolveResult r = solve(p, small_cfg(48, 8));
  ASSERT_TRUE(r.ok());
  for (std::size_t k = 1; k < r.field.slices.size(); ++k) {
    const Slice& s = r.field.slices[k];
    const Slice& prev = r.field.slices[k - 1];
    for (Side side : {Side::upper, Side::lower}) {
      for (std::size_t j = 0; j < s.region(side).size(); ++j) {
        const CharState& c = s.region(side)[j];
        EXPECT_GT(thermo(euler_from_char(c, p.gas), p.gas).M, 1.0);
        EXPECT_LE(c.Y, prev.region(side)[j].Y);
        EXPECT_GE(c.Y, 0.0);
        EXPECT_GE(c.B, prev.region(side)[j].B);
      }
    }
  }
  EXPECT_GT(r.field.diagnostics.steps, 0u);
  EXPECT_GT(r.field.diagnostics.min_d_xi, 0.0);
}

TEST(Solve, ThreadCountDoesNotChangeResults) {
  const Problem p = with_epsilon(fixtures::bump_problem(), 0.04);
  SolverConfig one = small_cfg(64, 8);
  SolverConfig four = one;
  four.threads = 4;
  const SolveResult a = solve(p, one);
  const SolveResult b = solve(p, four);
  ASSERT_EQ(a.field.slices.size(), b.field.slices.size());
  for (std::size_t k = 0; k < a.field.slices.size(); ++k) {
    for (Side side : {Side::upper, Side::lower}) {
      const auto& x = a.field.slices[k].region(side);
      const auto& y = b.field.slices[k].region(side);
      for (std::size_t j = 0; j < x.size(); ++j) {
        EXPECT_EQ(x[j].omega, y[j].omega);
        EXPECT_EQ(x[j].p, y[j].p);
        EXPECT_EQ(x[j].Y, y[j].Y);
      }
    }
  }
  EXPECT_EQ(a.field.diagnostics.steps, b.field.diagnostics.steps);
}

TEST(StableStep, ScalesWithCfl) {
  const Problem p = fixtures::background();
  const FlowField f = initialize(p, small_cfg());
  const double a = stable_step(f.slices[0], f.grid, p.gas, 0.8);
  const double b = stable_step(f.slices[0], f.grid, p.gas, 0.4);
  EXPECT_NEAR(a, 2.0 * b, 1e-15);
  // Upper region: d_eta = 2.8/47, |lambda| = 2.8/sqrt(3); lower: 2.1/47 and 1.1224972.
  const double upper = (2.8 / 47.0) / (2.8 / std::sqrt(3.0));
  const double lower = (2.1 / 47.0) / (0.7 * 3.0 * std::sqrt(2.0) / std::sqrt(7.0));
  EXPECT_NEAR(a, 0.8 * std::min(upper, lower), 1e-14);
}
