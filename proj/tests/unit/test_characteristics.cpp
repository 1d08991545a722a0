#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "problems.hpp"
#include "reacting_nozzle/characteristics.hpp"
#include "reacting_nozzle/errors.hpp"

using namespace reacting_nozzle;
using reacting_nozzle::fixtures::desk_gas;

TEST(CharCoeffs, UpperBackground) {
  const CharCoeffs cc = char_coeffs(EulerState{2.0, 0.0, 1.0, 1.4, 0.0}, desk_gas());
  // rho u c / sqrt(u^2 - c^2) = 2.8 / sqrt(3); sqrt(3) / 5.6.
  EXPECT_NEAR(cc.lambda_plus, 2.8 / std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(cc.lambda_minus, -2.8 / std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(cc.lambda_plus, 1.6165808, 5e-8);
  EXPECT_NEAR(cc.Lambda, std::sqrt(3.0) / 5.6, 1e-15);
  EXPECT_NEAR(cc.Lambda, 0.3092952, 1e-6);
}

TEST(CharCoeffs, LowerBackground) {
  const CharCoeffs cc = char_coeffs(EulerState{3.0, 0.0, 1.0, 0.7, 0.0}, desk_gas());
  const double c = std::sqrt(2.0);
  EXPECT_NEAR(cc.lambda_plus, 0.7 * 3.0 * c / std::sqrt(7.0), 1e-14);
  EXPECT_NEAR(cc.lambda_plus, 1.1224972, 5e-8);
  EXPECT_NEAR(cc.lambda_minus, -1.1224972, 5e-8);
  EXPECT_NEAR(cc.Lambda, std::sqrt(7.0) / (0.7 * c * 9.0), 1e-15);
  EXPECT_NEAR(cc.Lambda, 0.2969568, 1e-6);
}

TEST(CharCoeffs, NoSourcesWithoutFuel) {
  const CharCoeffs cc = char_coeffs(EulerState{2.0, 0.05, 1.0, 1.4, 0.0}, desk_gas(5.0));
  EXPECT_EQ(cc.source_plus, 0.0);
  EXPECT_EQ(cc.source_minus, 0.0);
  EXPECT_EQ(cc.streamline.dB, 0.0);
  EXPECT_EQ(cc.streamline.dS, 0.0);
  EXPECT_EQ(cc.streamline.dY, 0.0);
  const CharCoeffs inert = char_coeffs(EulerState{2.0, 0.05, 1.0, 1.4, 0.3}, desk_gas(0.0));
  EXPECT_EQ(inert.source_plus, 0.0);
  EXPECT_EQ(inert.streamline.dB, 0.0);
  EXPECT_EQ(inert.streamline.dS, 0.0);
  EXPECT_LT(inert.streamline.dY, 0.0);
}

TEST(CharCoeffs, StreamlineRatesSatisfyGibbsRelation) {
  // Along a streamline the momentum equation gives V dV = -dp/rho, so
  // dB = dh - dp/rho = T dS: the entropy rate must equal dB / T.
  std::mt19937_64 rng(5);
  const GasConstants g = desk_gas(0.7);
  for (int i = 0; i < 200; ++i) {
    const EulerState s = fixtures::random_state(rng);
    const CharCoeffs cc = char_coeffs(s, g);
    const double T = s.p / (g.R * s.rho);
    const double phi = reaction_rate(T, g).value;
    EXPECT_NEAR(cc.streamline.dB, g.q0 * phi * s.Y / s.u, 1e-14);
    EXPECT_NEAR(cc.streamline.dS, cc.streamline.dB / T, 1e-12 * std::abs(cc.streamline.dB / T) + 1e-300);
    EXPECT_NEAR(cc.streamline.dS, g.R * g.q0 * phi * s.Y * s.rho / (s.u * s.p), 1e-12 * std::abs(cc.streamline.dS) + 1e-300);
    EXPECT_GE(cc.streamline.dS, 0.0);
    EXPECT_NEAR(cc.streamline.dY, -phi * s.Y / s.u, 1e-15);
  }
}

TEST(CharCoeffs, SonicStateIsRejected) {
  EXPECT_THROW(char_coeffs(EulerState{1.0, 0.0, 1.0, 1.4, 0.0}, desk_gas()), SonicDegeneracy);
  EXPECT_THROW(char_coeffs(EulerState{0.5, 0.0, 1.0, 1.4, 0.0}, desk_gas()), SonicDegeneracy);
}

TEST(CharCoeffs, SignStructureAndSymmetry) {
  std::mt19937_64 rng(99);
  const GasConstants g = desk_gas();
  for (int i = 0; i < 1000; ++i) {
    EulerState s = fixtures::random_state(rng);
    const CharCoeffs cc = char_coeffs(s, g);
    EXPECT_GT(cc.lambda_plus, 0.0);
    EXPECT_LT(cc.lambda_minus, 0.0);
    EXPECT_GT(cc.Lambda, 0.0);

    // Product of the eigenvalues from the factored form.
    const double c2 = g.gamma * s.p / s.rho;
    const double k = s.rho * c2 * s.u / (s.u * s.u - c2);
    const double omega = s.v / s.u;
    const double root2 = (s.u * s.u + s.v * s.v) / c2 - 1.0;
    const double product = k * k * (omega * omega - root2);
    EXPECT_NEAR(cc.lambda_plus * cc.lambda_minus, product, 1e-12 * std::abs(product));
    EXPECT_NEAR(cc.lambda_plus + cc.lambda_minus, 2.0 * k * omega, 1e-12 * std::abs(k));

    s.v = 0.0;
    const CharCoeffs sym = char_coeffs(s, g);
    EXPECT_EQ(sym.lambda_plus, -sym.lambda_minus);
  }
}

TEST(Riemann, EncodeExample) {
  const RiemannPair rp = riemann_encode(0.02, 1.01, 0.3092952);
  EXPECT_NEAR(rp.z_plus, 0.02 + 0.3092952 * 1.01, 1e-16);
  EXPECT_NEAR(rp.z_plus, 0.3323882, 5e-8);
  EXPECT_NEAR(rp.z_minus, -0.2923882, 5e-8);
}

TEST(Riemann, DecodeInvertsEncode) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> om(-0.3, 0.3), pr(0.1, 3.0), lam(0.05, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const double w = om(rng), p = pr(rng), L = lam(rng);
    const OmegaP back = riemann_decode(riemann_encode(w, p, L), L);
    EXPECT_NEAR(back.omega, w, 4e-16 * (1.0 + L * p));
    EXPECT_NEAR(back.p, p, 4e-16 * (p + std::abs(w) / L));
  }
  const OmegaP zero = riemann_decode(riemann_encode(0.0, 0.0, 0.3), 0.3);
  EXPECT_EQ(zero.omega, 0.0);
  EXPECT_EQ(zero.p, 0.0);
}

TEST(Riemann, NonPositiveImpedanceThrows) {
  EXPECT_THROW(riemann_encode(0.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(riemann_decode({0.1, 0.1}, -1.0), DomainError);
  EXPECT_THROW(riemann_solve(0.1, 0.0, 0.1, 0.3), DomainError);
}

TEST(Riemann, SolveWithDistinctImpedances) {
  const OmegaP s = riemann_solve(0.4, 0.3, -0.2, 0.5);
  EXPECT_NEAR(s.omega + 0.3 * s.p, 0.4, 1e-15);
  EXPECT_NEAR(s.omega - 0.5 * s.p, -0.2, 1e-15);
}

namespace {

RegionGrid grid() { return RegionGrid::make(0.0, 2.0, 21); }

std::vector<CharState> slice_from(double (*f)(double)) {
  const RegionGrid g = grid();
  std::vector<CharState> s(g.size);
  for (std::size_t k = 0; k < g.size; ++k) {
    const double v = f(g.node(k));
    s[k] = {v, 1.0 + v, 4.0 - v, 1.1 * v, 0.5 * v};
  }
  return s;
}

}  // namespace

TEST(TraceFoot, ConstantSlice) {
  std::vector<CharState> s(grid().size, CharState{0.01, 1.0, 4.5, 1.1, 0.2});
  for (double eta : {0.0, 0.37, 1.0, 2.0}) {
    const FootSample f = trace_foot(s, grid(), 0.0, eta, 1e-3);
    EXPECT_DOUBLE_EQ(f.state.omega, 0.01);
    EXPECT_DOUBLE_EQ(f.state.B, 4.5);
  }
}

TEST(TraceFoot, QuadraticDataReproduced) {
  const auto s = slice_from([](double x) { return 0.3 + 0.2 * x - 0.05 * x * x; });
  const RegionGrid g = grid();
  for (double lambda : {-1.5, -0.4, 0.0, 0.9, 1.6165808}) {
    for (std::size_t j = 0; j < g.size; ++j) {
      const double d_xi = 0.08;
      const double foot = g.node(j) - d_xi * lambda;
      if (foot < g.front() || foot > g.back()) continue;
      const FootSample f = trace_foot(s, g, lambda, g.node(j), d_xi);
      const double expect = 0.3 + 0.2 * foot - 0.05 * foot * foot;
      EXPECT_NEAR(f.eta, foot, 1e-15);
      EXPECT_NEAR(f.state.omega, expect, 1e-14);
      EXPECT_NEAR(f.state.Y, 0.5 * expect, 1e-14);
    }
  }
}

TEST(TraceFoot, PredictorFootLocation) {
  std::vector<CharState> s(grid().size, CharState{0.0, 1.0, 4.5, 1.1, 0.0});
  const FootSample f = trace_foot(s, grid(), 1.6165808, 1.0, 1e-3);
  EXPECT_NEAR(f.eta, 1.0 - 1.6165808e-3, 1e-15);
}

TEST(TraceFoot, FootOutsideRegionIsCflViolation) {
  std::vector<CharState> s(grid().size, CharState{0.0, 1.0, 4.5, 1.1, 0.0});
  EXPECT_THROW(trace_foot(s, grid(), 1.0, 0.05, 0.1), CflViolation);
  EXPECT_THROW(trace_foot(s, grid(), -1.0, 1.95, 0.1), CflViolation);
  EXPECT_NO_THROW(trace_foot(s, grid(), 1.0, 0.1, 0.1));
}

TEST(Interpolate, StaysInsideRegion) {
  const auto s = slice_from([](double x) { return x * x; });
  const RegionGrid g = grid();
  EXPECT_NEAR(interpolate(s, g, 0.0).omega, 0.0, 1e-15);
  EXPECT_NEAR(interpolate(s, g, 2.0).omega, 4.0, 1e-14);
  EXPECT_NEAR(interpolate(s, g, 1.234).omega, 1.234 * 1.234, 1e-14);
}
