#include "torsionlab/ma_solver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "torsionlab/torsion.hpp"

using namespace tlab;

namespace {

constexpr double kPi = std::numbers::pi;

StarBody perturbed_disk(double eps, int degree, int resolution = 512) {
  auto grid = make_grid(2, resolution);
  const auto r =
      sample(grid, [&](double t) { return 1.0 + eps * std::cos(degree * t); });
  return from_radial(r);
}

double ellipse_perimeter(double a, double b, int samples = 1 << 14) {
  double p = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * kPi * i / samples;
    p += std::sqrt(a * a * std::sin(t) * std::sin(t) + b * b * std::cos(t) * std::cos(t));
  }
  return p * 2.0 * kPi / samples;
}

double ellipse_axis_for_unit_perimeter(double a) {
  double lo = 0.05, hi = a;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ellipse_perimeter(a, mid) > 2.0 * kPi ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

StarBody ellipse_body(double a, double b) {
  auto grid = make_grid(2, 512);
  const auto r = sample(grid, [&](double t) {
    const double c = std::cos(t), s = std::sin(t);
    return a * b / std::sqrt(b * b * c * c + a * a * s * s);
  });
  return from_radial(r);
}

}  // namespace

TEST(MappedOperators, SecondOrderConsistency) {
  // det D^2 of the quadratic (2x^2 + y^2)/2 + xy/2 is exactly 2 - 1/4
  const StarBody body = perturbed_disk(0.08, 3);
  auto quad = [](double x, double y) { return x * x + 0.5 * y * y + 0.5 * x * y; };
  const Eigen::VectorXd coarse = ma_discrete_det(body, 32, 64, quad);
  const Eigen::VectorXd fine = ma_discrete_det(body, 64, 128, quad);
  const double exact = 2.0 - 0.25;
  const double e_coarse = (coarse.array() - exact).abs().maxCoeff();
  const double e_fine = (fine.array() - exact).abs().maxCoeff();
  EXPECT_LT(e_fine, 2e-2);
  EXPECT_GT(e_coarse / e_fine, 3.0);  // second-order decay
}

TEST(MaSolve, UnitDiskReference) {
  const StarBody disk = ball_body(2, 1.0);
  MaSolveParams p;
  p.nrho = 128;
  p.ntheta = 256;
  const MaSolution sol = ma_solve_2d(disk, p);
  EXPECT_TRUE(sol.converged);
  EXPECT_LE(sol.residual, 1e-6);
  EXPECT_TRUE(sol.discrete_convex);
  const double exact = kPi * kPi / 16.0;
  EXPECT_LT(std::abs(sol.torsion - exact) / exact, 1e-3);
  // center value of u = (|x|^2 - 1)/2
  EXPECT_NEAR(sol.u[0], -0.5, 1e-4);
}

TEST(MaSolve, EllipseMatchesClosedForm) {
  const double a = 1.1;
  const double b = ellipse_axis_for_unit_perimeter(a);
  const StarBody body = ellipse_body(a, b);
  ASSERT_TRUE(body.convex);
  MaSolveParams p;
  p.nrho = 64;
  p.ntheta = 128;
  const MaSolution sol = ma_solve_2d(body, p);
  EXPECT_TRUE(sol.converged);
  const double exact = ellipsoid_torsion(std::vector<double>{a, b}).torsion;
  EXPECT_LT(std::abs(sol.torsion - exact) / exact, 1e-3);

  const RichardsonTorsion rich = ma_torsion_2d(body, p);
  EXPECT_LT(std::abs(rich.extrapolated - exact) / exact, 2e-4);
  EXPECT_LT(std::abs(rich.fine - exact) / exact, rich.rel_error_estimate * 10.0 + 1e-6);
}

TEST(MaSolve, PerturbedBodyDeficitNonnegative) {
  const StarBody body = perturbed_disk(0.05, 3);
  ASSERT_TRUE(body.convex);
  MaSolveParams p;
  p.nrho = 64;
  p.ntheta = 128;
  const MaSolution sol = ma_solve_2d(body, p);
  EXPECT_TRUE(sol.converged);
  EXPECT_TRUE(sol.discrete_convex);
  const QuermassProfile prof = quermass(body);
  const double deficit = torsion_deficit(sol.torsion, prof);
  EXPECT_GE(deficit, -1e-6);
  EXPECT_LE(deficit, af_deficit(prof) + 1e-5);
}

TEST(MaSolve, RejectsNonConvexBody) {
  const StarBody wild = perturbed_disk(0.9, 2, 256);
  ASSERT_FALSE(wild.convex);
  EXPECT_THROW(ma_solve_2d(wild), std::invalid_argument);
}

TEST(MaSolve, CsvExport) {
  const StarBody disk = ball_body(2, 1.0);
  MaSolveParams p;
  p.nrho = 16;
  p.ntheta = 32;
  const MaSolution sol = ma_solve_2d(disk, p);
  const std::string csv = solution_csv(sol);
  EXPECT_EQ(csv.rfind("rho,theta,u\n", 0), 0u);
  // header + center + nrho * ntheta rows
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'),
            2 + static_cast<long>(sol.nrho) * sol.ntheta);
}
