#include "torsionlab/expansion.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "torsionlab/torsion.hpp"

using namespace tlab;

namespace {
constexpr double kPi = std::numbers::pi;

ModeVector cos2theta_mode() {
  ModeVector v(2, 8);
  v.at(2, 0) = std::sqrt(kPi);  // V = cos(2 theta)
  return v;
}
}  // namespace

TEST(Acceleration, ModeFormulaAndQuadrature) {
  EXPECT_NEAR(acceleration_integral(cos2theta_mode()), -4.0 * kPi, 1e-12);
  EXPECT_EQ(acceleration_integral(ModeVector(2, 4)), 0.0);

  ModeVector l3(3, 6);
  l3.at(3, 2) = 1.0;
  EXPECT_NEAR(acceleration_integral(l3), -12.0, 1e-12);  // k(k+n-2) = 3*4

  // n = 2: int A = -int |grad V|^2, by quadrature on the circle
  ModeVector v(2, 8);
  v.at(2, 0) = 0.7;
  v.at(3, 1) = -0.4;
  v.at(5, 0) = 0.2;
  const auto grid = make_grid(2, 256);
  const SurfaceField field = synthesize(v, grid);
  const double grad_energy = integrate(surface_gradient_sq(field, 8));
  EXPECT_NEAR(acceleration_integral(v), -grad_energy, 1e-8);

  ModeVector bad(2, 4);
  bad.at(0, 0) = 0.3;
  EXPECT_THROW(acceleration_integral(bad), std::invalid_argument);
}

TEST(Family, ConstraintHoldsToThirdOrder) {
  const std::vector<double> ts{0.04, 0.02, 0.01};
  const PerturbationFamily fam = build_family(cos2theta_mode(), ts);
  const double omega = unit_ball_volume(2);
  double prev_err = 1.0;
  for (double t : ts) {
    const QuermassProfile p = quermass(fam.body_at(t));
    const double err = std::abs(p.w[1] - omega);
    EXPECT_LT(err, 2.0 * t * t * t) << "t=" << t;
    prev_err = err;
  }
  (void)prev_err;

  // zero mode: family of unit balls
  const PerturbationFamily trivial = build_family(ModeVector(2, 4), ts);
  const QuermassProfile p = quermass(trivial.body_at(0.02));
  EXPECT_NEAR(p.w[0], omega, 1e-10);
}

TEST(Family, ConvexityViolationNamesOffendingT) {
  ModeVector v(2, 8);
  v.at(3, 0) = 1.0;
  const std::vector<double> ts{0.5};
  try {
    build_family(v, ts);
    FAIL() << "expected convexity error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("0.5"), std::string::npos);
  }
}

TEST(WExpansion, ZeroAndConstrainedCoefficients) {
  const WExpansion none = w_expansion(ModeVector(2, 4), 0.0);
  EXPECT_DOUBLE_EQ(none.volume.c0, kPi);
  EXPECT_EQ(none.volume.c1, 0.0);
  EXPECT_EQ(none.volume.c2, 0.0);
  EXPECT_EQ(none.quermass_top.c2, 0.0);

  // constrained family kills the second-order W_{n-1} coefficient
  for (int n : {2, 3}) {
    ModeVector v(n, 6);
    v.at(2, 0) = n == 2 ? std::sqrt(kPi) : 1.0;
    const double accel = acceleration_integral(v) / (n * unit_ball_volume(n));
    const WExpansion w = w_expansion(v, accel);
    EXPECT_NEAR(w.quermass_top.c2, 0.0, 1e-12) << "n=" << n;
    EXPECT_DOUBLE_EQ(w.quermass_top.c0, unit_ball_volume(n));
  }
}

TEST(DeficitExpansion, ModeTwoCoefficients) {
  const DeficitCoeffs c = deficit_expansion(cos2theta_mode());
  EXPECT_TRUE(c.ratio_defined);
  EXPECT_NEAR(c.c_af, 6.0, 1e-12);
  EXPECT_NEAR(c.c_torsion, 8.0, 1e-12);  // series value; the exact-family ratio is 1

  ModeVector translation(2, 4);
  translation.at(1, 0) = 0.3;
  translation.at(1, 1) = -0.1;
  const DeficitCoeffs c1 = deficit_expansion(translation);
  EXPECT_FALSE(c1.ratio_defined);
  EXPECT_NEAR(c1.c_torsion, 0.0, 1e-13);
  EXPECT_NEAR(c1.c_af, 0.0, 1e-13);
}

TEST(ModeRatio, ClosedFormValues) {
  EXPECT_NEAR(mode_ratio(2, 2), 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(mode_ratio(2, 3), 4.0 / 3.0, 1e-14);  // (n^2+3n-2)/(n(n+1)) = 16/12
  EXPECT_NEAR(mode_ratio_limit(2), 0.5, 1e-15);
  EXPECT_NEAR(mode_ratio_limit(3), 2.0 / 3.0, 1e-15);
  // f(2) = (n^2 + 3n - 2) / (n (n+1)) across dimensions
  for (int n = 2; n <= 10; ++n)
    EXPECT_NEAR(mode_ratio(2, n), (n * n + 3.0 * n - 2.0) / (n * (n + 1.0)), 1e-14);
  // exact gap: f(k) - (n-1)/n = (3n-1) / (n (k+n-1))
  for (int n : {2, 3, 5}) {
    for (int k : {2, 5, 17, 400}) {
      const double gap = mode_ratio(k, n) - mode_ratio_limit(n);
      EXPECT_NEAR(gap, (3.0 * n - 1.0) / (n * (k + n - 1.0)), 1e-13);
    }
  }
  EXPECT_THROW(mode_ratio(1, 2), std::invalid_argument);
  EXPECT_THROW(f_tilde(1.5, 2), std::invalid_argument);
}

TEST(InfimumAnalysis, StructureAcrossDimensions) {
  for (int n : {2, 3, 5}) {
    const InfimumReport rep = infimum_analysis(n, 10000);
    EXPECT_TRUE(rep.all_above_limit) << "n=" << n;
    EXPECT_TRUE(rep.monotone_decreasing);
    EXPECT_EQ(rep.argmin, rep.kmax);  // infimum attained in the tail
    EXPECT_GT(rep.f2, rep.limit);     // equivalent to 3n - 1 > 0
    EXPECT_LT(std::abs(rep.min_f - rep.limit), 3.0 / rep.kmax);
    EXPECT_EQ(rep.derivative_sign_changes, 0);
    EXPECT_TRUE(rep.critical_points.empty());
    EXPECT_TRUE(rep.critical_points_all_maxima);
    EXPECT_LT(rep.threshold, 2.0);
  }
  EXPECT_NEAR(infimum_analysis(2, 1000).threshold, 0.2, 1e-15);
}

TEST(EllipsoidOracle, MatchedAxesFixTopQuermass) {
  for (int n : {2, 3}) {
    const std::vector<double> axes = matched_ellipsoid_axes(n, 0.05);
    EXPECT_NEAR(axes[0], 1.05, 1e-14);
    const QuermassProfile p = quermass(ellipsoid_body(axes));
    EXPECT_NEAR(p.w[static_cast<std::size_t>(n - 1)], unit_ball_volume(n), 1e-10);
  }
}

TEST(EllipsoidOracle, RatioIsOneAtFixedTopQuermass) {
  for (int n : {2, 3}) {
    const std::vector<double> ts{0.02, 0.05};
    const PerturbationFamily fam = build_family(ellipsoid_mode_vector(n), ts);
    const RatioExperiment exp = ratio_experiment(fam, RatioOracle::kEllipsoid);
    for (const auto& rep : exp.reports) {
      ASSERT_TRUE(rep.ratio_defined);
      ASSERT_NEAR(rep.ratio_oracle, 1.0, 1e-10) << "n=" << n << " t=" << rep.t;
      // the exact construction keeps both deficits equal, not merely close
      ASSERT_NEAR(rep.delta_t_oracle, rep.delta_af_oracle,
                  1e-10 * std::abs(rep.delta_af_oracle));
    }
    EXPECT_NEAR(exp.expansion_ratio, 4.0 / 3.0, 1e-12);
  }
}

TEST(EllipsoidOracle, ExactEllipseDeficitMatchesSeriesCoefficient) {
  // n = 2: delta_AF of the matched ellipse is 1 - (ab)^4 and behaves like 6 t^2
  const std::vector<double> axes = matched_ellipsoid_axes(2, 0.01);
  const QuermassProfile p = quermass(ellipsoid_body(axes));
  const double exact = 1.0 - std::pow(axes[0] * axes[1], 4.0);
  EXPECT_NEAR(af_deficit(p), exact, 1e-10);
  EXPECT_NEAR(af_deficit(p) / 1e-4, 6.0, 0.06);  // within 1% at t = 0.01
}

TEST(Ma2dOracle, ModeThreeRatioWithinTheoremBounds) {
  ModeVector v(2, 8);
  v.at(3, 0) = 1.0;
  const std::vector<double> ts{0.02, 0.04};
  const PerturbationFamily fam = build_family(v, ts);
  MaSolveParams params;
  params.nrho = 64;
  params.ntheta = 128;
  const RatioExperiment exp = ratio_experiment(fam, RatioOracle::kMa2d, params);
  for (const auto& rep : exp.reports) {
    ASSERT_TRUE(rep.ratio_defined);
    EXPECT_GE(rep.delta_t_oracle, -1e-8);
    EXPECT_LE(rep.delta_t_oracle, rep.delta_af_oracle + 2.0 * rep.solver_tolerance + 1e-8);
  }
  EXPECT_GT(exp.extrapolated_ratio, mode_ratio_limit(2) - 0.1);
  EXPECT_LT(exp.extrapolated_ratio, 1.0 + 0.1);
}
