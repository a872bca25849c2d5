#include "torsionlab/torsion.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "torsionlab/symm.hpp"

namespace tlab {

namespace {

constexpr double kPi = std::numbers::pi;

double product(std::span<const double> axes) {
  double p = 1.0;
  for (double a : axes) {
    if (a <= 0.0) throw std::invalid_argument("ellipsoid axes must be positive");
    p *= a;
  }
  return p;
}

void require_zero_mean(const ModeVector& modes, const char* who) {
  if (std::abs(modes.at(0, 0)) > 0.0)
    throw std::invalid_argument(std::string(who) + ": modes must have a_0 = 0");
}

}  // namespace

TorsionValue ball_torsion(int n, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("ball_torsion: radius must be positive");
  TorsionValue tv;
  tv.l1_norm = unit_ball_volume(n) * std::pow(radius, n + 2.0) / (n + 2.0);
  tv.torsion = std::pow(tv.l1_norm, n);
  return tv;
}

TorsionValue ellipsoid_torsion(std::span<const double> axes) {
  const int n = static_cast<int>(axes.size());
  if (n < 2) throw std::invalid_argument("ellipsoid_torsion: need at least two axes");
  const double omega = unit_ball_volume(n);
  TorsionValue tv;
  tv.l1_norm = std::pow(product(axes), 1.0 + 2.0 / n) * omega / (n + 2.0);
  tv.torsion = std::pow(tv.l1_norm, n);
  return tv;
}

double ellipsoid_solution(std::span<const double> axes, std::span<const double> x) {
  const int n = static_cast<int>(axes.size());
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("ellipsoid_solution: point dimension mismatch");
  const double scale = std::pow(product(axes), 2.0 / n);
  double q = -1.0;
  for (int i = 0; i < n; ++i) q += x[i] * x[i] / (axes[i] * axes[i]);
  return 0.5 * scale * q;
}

double ellipsoid_hessian_det(std::span<const double> axes) {
  const int n = static_cast<int>(axes.size());
  const double scale = std::pow(product(axes), 2.0 / n);
  double det = 1.0;
  for (int i = 0; i < n; ++i) det *= scale / (axes[i] * axes[i]);
  return det;
}

double torsion_of_matched_ball(const QuermassProfile& profile) {
  const int n = profile.n;
  const double zeta = profile.zeta_of(n - 1);
  return std::pow(unit_ball_volume(n), n) * std::pow(zeta, n * (n + 2.0)) /
         std::pow(n + 2.0, n);
}

double torsion_deficit(double torsion, const QuermassProfile& profile) {
  return 1.0 - torsion / torsion_of_matched_ball(profile);
}

HarmonicExtension::HarmonicExtension(ModeVector modes) : modes_(std::move(modes)) {
  require_zero_mean(modes_, "harmonic_extension");
}

HarmonicExtension harmonic_extension(const ModeVector& modes) {
  return HarmonicExtension(modes);
}

double HarmonicExtension::radial_profile(int degree, double r) const {
  return -std::pow(r, degree);
}

double HarmonicExtension::eval(double r, double theta, double phi) const {
  const HarmonicBasis basis(modes_.n(), modes_.kmax());
  HarmonicBasis::NodeEval e;
  basis.resize(e);
  basis.eval_node(theta, phi, e);
  double v = 0.0;
  for (int b = 0; b < modes_.size(); ++b) {
    const double a = modes_.coeffs()[b];
    if (a == 0.0) continue;
    v -= a * std::pow(r, modes_.degree_of(b)) * e.y[b];
  }
  return v;
}

SurfaceField HarmonicExtension::boundary_trace(std::shared_ptr<const SphereGrid> grid) const {
  ModeVector neg = modes_;
  neg.coeffs() *= -1.0;
  return synthesize(neg, std::move(grid));
}

SurfaceField HarmonicExtension::radial_derivative_at_one(
    std::shared_ptr<const SphereGrid> grid) const {
  ModeVector scaled = modes_;
  for (int b = 0; b < scaled.size(); ++b)
    scaled.coeffs()[b] *= -static_cast<double>(scaled.degree_of(b));
  return synthesize(scaled, std::move(grid));
}

double HarmonicExtension::laplacian_residual(int radial_samples) const {
  const int n = modes_.n();
  const auto grid = make_grid(n, n == 2 ? 64 : 16);
  const HarmonicBasis basis(n, modes_.kmax());
  HarmonicBasis::NodeEval e;
  basis.resize(e);

  // 4th-order central stencils in r; angular Laplacian through eigenvalues
  const double h = 1e-3;
  double worst = 0.0;
  for (int s = 1; s <= radial_samples; ++s) {
    const double r = 0.15 + 0.7 * (s - 1) / std::max(1, radial_samples - 1);
    for (int i = 0; i < grid->node_count(); i += 7) {
      const double th = grid->theta[i];
      const double ph = n == 3 ? grid->phi[i] : 0.0;
      double stencil[5];
      for (int t = -2; t <= 2; ++t) stencil[t + 2] = eval(r + t * h, th, ph);
      const double vr =
          (stencil[0] - 8.0 * stencil[1] + 8.0 * stencil[3] - stencil[4]) / (12.0 * h);
      const double vrr = (-stencil[0] + 16.0 * stencil[1] - 30.0 * stencil[2] +
                          16.0 * stencil[3] - stencil[4]) /
                         (12.0 * h * h);
      basis.eval_node(th, ph, e);
      double ang = 0.0;  // Lap_xi v at radius r
      for (int b = 0; b < modes_.size(); ++b) {
        const double a = modes_.coeffs()[b];
        if (a == 0.0) continue;
        const int k = modes_.degree_of(b);
        ang += a * std::pow(r, k) * basis.eigenvalue(k) * e.y[b];
      }
      const double lap = vrr + (n - 1.0) / r * vr + ang / (r * r);
      worst = std::max(worst, std::abs(lap));
    }
  }
  return worst;
}

NtTermResult nt_term(const ModeVector& modes) {
  require_zero_mean(modes, "nt_term");
  const int n = modes.n();
  NtTermResult out;
  for (int k = 1; k <= modes.kmax(); ++k)
    out.closed_form += modes.degree_power(k) * (static_cast<double>(k) * k - k) / n;
  if (n != 2) return out;  // closed form only

  // quadrature of (1/n) [ (Lap u_t)^2 - sum u_t,ij^2 ] u over B_1 with
  // u = (r^2 - 1)/2 and u_t = -sum a_k r^k Y_k; the Cartesian Hessian of each
  // mode is k(k-1) r^{k-2} times a rotation of (cos, sin)((k-2) theta)
  const int nr = 48, nt = 512;
  std::vector<double> gx, gw;
  gauss_legendre(nr, gx, gw);
  for (int i = 0; i < nr; ++i) {  // map to [0, 1]
    gx[i] = 0.5 * (gx[i] + 1.0);
    gw[i] = 0.5 * gw[i];
  }

  const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
  double integral = 0.0;
  for (int ir = 0; ir < nr; ++ir) {
    const double r = gx[ir];
    const double u = 0.5 * (r * r - 1.0);
    for (int it = 0; it < nt; ++it) {
      const double th = 2.0 * kPi * it / nt;
      double vxx = 0.0, vxy = 0.0;
      for (int k = 2; k <= modes.kmax(); ++k) {
        const double amp = static_cast<double>(k) * (k - 1) * std::pow(r, k - 2);
        const double cm = std::cos((k - 2) * th), sm = std::sin((k - 2) * th);
        const double ac = -modes.at(k, 0) * inv_sqrt_pi;  // cos branch coefficient of Re z^k
        const double as = -modes.at(k, 1) * inv_sqrt_pi;  // sin branch coefficient of Im z^k
        vxx += amp * (ac * cm + as * sm);
        vxy += amp * (-ac * sm + as * cm);
      }
      const double vyy = -vxx;
      const double lap = vxx + vyy;
      const double frob = vxx * vxx + 2.0 * vxy * vxy + vyy * vyy;
      integral += gw[ir] * (2.0 * kPi / nt) * r * (lap * lap - frob) * u / n;
    }
  }
  out.quadrature = integral;
  out.quadrature_available = true;
  return out;
}

std::pair<double, double> reilly_check(int n, int k, double rho) {
  if (n < 2) throw std::invalid_argument("reilly_check: n must be >= 2");
  if (k < 1 || k > n) throw std::invalid_argument("reilly_check: need 1 <= k <= n");
  if (rho <= 0.0 || rho > 1.0) throw std::invalid_argument("reilly_check: need 0 < rho <= 1");

  const Eigen::MatrixXd cof = cofactor_matrix(Eigen::MatrixXd::Identity(n, n), k);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  // any direction works for the radial solution; pick a generic one
  for (int i = 0; i < n; ++i) x[i] = std::sqrt(2.0 + i);
  x *= rho / x.norm();
  const double lhs = (x.transpose() * cof * x).value() / std::pow(rho, k + 1.0);

  double binom = 1.0;
  for (int t = 1; t <= k - 1; ++t) binom = binom * (n - k + t) / t;
  const double rhs = binom * std::pow(rho, -(k - 1.0));
  return {lhs, rhs};
}

}  // namespace tlab
