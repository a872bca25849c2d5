#include "torsionlab/torsion.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

using namespace tlab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(BallTorsion, ClosedFormValues) {
  EXPECT_NEAR(ball_torsion(2, 1.0).torsion, kPi * kPi / 16.0, 1e-14);
  const double omega3 = 4.0 * kPi / 3.0;
  EXPECT_NEAR(ball_torsion(3, 1.0).torsion, std::pow(omega3, 3) / 125.0, 1e-14);
  // int_{B_1} (-u) = omega_n / (n+2)
  for (int n : {2, 3, 4}) {
    EXPECT_NEAR(ball_torsion(n, 1.0).l1_norm, unit_ball_volume(n) / (n + 2.0), 1e-14);
  }
  EXPECT_THROW(ball_torsion(2, -1.0), std::invalid_argument);
}

TEST(EllipsoidTorsion, ConsistencyAndValues) {
  // equal axes reduce to the ball
  for (int n : {2, 3}) {
    for (double radius : {0.5, 1.0, 2.0}) {
      std::vector<double> axes(static_cast<std::size_t>(n), radius);
      EXPECT_NEAR(ellipsoid_torsion(axes).torsion, ball_torsion(n, radius).torsion,
                  1e-12 * ball_torsion(n, radius).torsion);
    }
  }
  // (2, 1/2): area pi, T = (pi)^4 / (16 pi^2) = pi^2/16
  const std::vector<double> axes{2.0, 0.5};
  EXPECT_NEAR(ellipsoid_torsion(axes).torsion, kPi * kPi / 16.0, 1e-13);
}

TEST(EllipsoidTorsion, HessianDeterminantIsOne) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.4, 2.5);
  for (int n : {2, 3, 4}) {
    std::vector<double> axes(static_cast<std::size_t>(n));
    for (auto& a : axes) a = u(rng);
    EXPECT_NEAR(ellipsoid_hessian_det(axes), 1.0, 1e-12);
    // u < 0 inside, 0 on the boundary
    std::vector<double> x(axes.size(), 0.0);
    EXPECT_LT(ellipsoid_solution(axes, x), 0.0);
    x[0] = axes[0];
    EXPECT_NEAR(ellipsoid_solution(axes, x), 0.0, 1e-13);
  }
}

TEST(TorsionDeficit, BallIsZero) {
  for (int n : {2, 3}) {
    const StarBody b = ball_body(n, 1.0);
    const QuermassProfile p = quermass(b);
    EXPECT_NEAR(torsion_deficit(ball_torsion(n, 1.0).torsion, p), 0.0, 1e-10);
  }
}

TEST(HarmonicExtensionOp, SingleModeClosedForm) {
  ModeVector m(2, 4);
  m.at(2, 0) = 1.0;
  const HarmonicExtension ext = harmonic_extension(m);
  // v = -r^2 cos(2 theta)/sqrt(pi)
  EXPECT_NEAR(ext.eval(0.5, 0.3), -0.25 * std::cos(0.6) / std::sqrt(kPi), 1e-14);

  auto grid = make_grid(2, 128);
  const SurfaceField dr = ext.radial_derivative_at_one(grid);
  const auto expected = sample(grid, [](double t) { return -2.0 * std::cos(2.0 * t) / std::sqrt(kPi); });
  EXPECT_LT((dr.values - expected.values).cwiseAbs().maxCoeff(), 1e-12);

  const SurfaceField trace = ext.boundary_trace(grid);
  const auto v = sample(grid, [](double t) { return -std::cos(2.0 * t) / std::sqrt(kPi); });
  EXPECT_LT((trace.values - v.values).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(HarmonicExtensionOp, ZeroModesAndResidual) {
  ModeVector zero(2, 4);
  const HarmonicExtension ext0 = harmonic_extension(zero);
  EXPECT_EQ(ext0.eval(0.7, 1.1), 0.0);
  EXPECT_LT(ext0.laplacian_residual(), 1e-14);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {2, 3}) {
    ModeVector m(n, 5);
    for (int b = 1; b < m.size(); ++b) m.coeffs()[b] = u(rng);
    EXPECT_LT(harmonic_extension(m).laplacian_residual(), 1e-8) << "n=" << n;
  }

  ModeVector bad(2, 4);
  bad.at(0, 0) = 1.0;
  EXPECT_THROW(harmonic_extension(bad), std::invalid_argument);
}

TEST(NtTerm, SingleModeValues) {
  // V = cos(2 theta): a^2 = pi, closed form = (1/2) pi (4 - 2) = pi
  ModeVector m(2, 8);
  m.at(2, 0) = std::sqrt(kPi);
  const NtTermResult r = nt_term(m);
  EXPECT_NEAR(r.closed_form, kPi, 1e-14);
  ASSERT_TRUE(r.quadrature_available);
  EXPECT_NEAR(r.quadrature, kPi, 1e-6);

  // degree-1 modes carry no nonlinearity
  ModeVector m1(2, 8);
  m1.at(1, 0) = 0.8;
  m1.at(1, 1) = -0.2;
  const NtTermResult r1 = nt_term(m1);
  EXPECT_EQ(r1.closed_form, 0.0);
  EXPECT_NEAR(r1.quadrature, 0.0, 1e-12);

  EXPECT_EQ(nt_term(ModeVector(2, 4)).closed_form, 0.0);
}

TEST(NtTerm, QuadratureMatchesClosedFormForLowModes) {
  for (int k = 2; k <= 4; ++k) {
    for (int branch : {0, 1}) {
      ModeVector m(2, 8);
      m.at(k, branch) = 0.9;
      const NtTermResult r = nt_term(m);
      ASSERT_TRUE(r.quadrature_available);
      ASSERT_NEAR(r.quadrature, r.closed_form, 1e-6) << "k=" << k << " branch=" << branch;
    }
  }
  // mixed modes: cross terms integrate away
  ModeVector mix(2, 8);
  mix.at(2, 0) = 0.5;
  mix.at(3, 1) = 0.4;
  mix.at(4, 0) = -0.3;
  const NtTermResult r = nt_term(mix);
  EXPECT_NEAR(r.quadrature, r.closed_form, 1e-6);
}

TEST(NtTerm, ClosedFormOnlyIn3d) {
  ModeVector m(3, 6);
  m.at(2, 0) = 1.0;
  const NtTermResult r = nt_term(m);
  EXPECT_FALSE(r.quadrature_available);
  EXPECT_NEAR(r.closed_form, 2.0 / 3.0, 1e-14);  // (1/3) * (4 - 2)
}

TEST(ReillyCheck, RadialClosedForms) {
  // k = 2 at rho = 1: Gauss-curvature case for the circle when n = 2
  {
    const auto [lhs, rhs] = reilly_check(2, 2, 1.0);
    EXPECT_NEAR(lhs, 1.0, 1e-12);
    EXPECT_NEAR(rhs, 1.0, 1e-12);
  }
  // n=3, k=3, rho=0.5: rhs = C(2,2) * 0.5^{-2} = 4
  {
    const auto [lhs, rhs] = reilly_check(3, 3, 0.5);
    EXPECT_NEAR(rhs, 4.0, 1e-13);
    EXPECT_NEAR(lhs, rhs, 1e-10);
  }
  // k = 1 reduces to |grad u|^2 / |grad u|^2 = 1 at every level
  for (int n : {2, 3}) {
    for (double rho : {0.5, 1.0}) {
      const auto [lhs, rhs] = reilly_check(n, 1, rho);
      ASSERT_NEAR(lhs, 1.0, 1e-12);
      ASSERT_NEAR(rhs, 1.0, 1e-12);
    }
  }
  // full sweep at the spec tolerance
  for (int n : {2, 3}) {
    for (int k = 1; k <= n; ++k) {
      for (double rho : {0.5, 1.0}) {
        const auto [lhs, rhs] = reilly_check(n, k, rho);
        ASSERT_NEAR(lhs, rhs, 1e-10) << "n=" << n << " k=" << k << " rho=" << rho;
      }
    }
  }
}
