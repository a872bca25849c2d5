#include "torsionlab/body.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "torsionlab/symm.hpp"

namespace tlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kConvexityTol = 1e-9;

int default_resolution(int n) { return n == 2 ? 512 : 64; }

void finalize(StarBody& body) {
  const auto& r = body.r.value;
  if (r.minCoeff() <= 0.0)
    throw std::invalid_argument("star body: radial function must be positive");
  const CurvatureField c = curvatures(body);
  body.min_principal_curvature = c.kappa.minCoeff();
  body.convex = body.min_principal_curvature >= -kConvexityTol;
}

}  // namespace

double unit_ball_volume(int n) {
  if (n < 1) throw std::invalid_argument("unit_ball_volume: n must be positive");
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double QuermassProfile::zeta_of(int j) const {
  if (j < 0 || j >= n) throw std::invalid_argument("zeta_of: j out of range");
  return std::pow(w[static_cast<std::size_t>(j)] / unit_ball_volume(n),
                  1.0 / static_cast<double>(n - j));
}

StarBody from_modes(const ModeVector& r_modes, std::shared_ptr<const SphereGrid> grid) {
  if (!grid) throw std::invalid_argument("from_modes: null grid");
  if (grid->n != r_modes.n()) throw std::invalid_argument("from_modes: dimension mismatch");
  StarBody body;
  body.n = grid->n;
  body.modes = r_modes;
  body.r = derivatives(r_modes, grid);
  body.grid = std::move(grid);
  finalize(body);
  return body;
}

StarBody from_radial(const SurfaceField& r, int kmax) {
  if (!r.grid) throw std::invalid_argument("from_radial: field has no grid");
  if (r.values.minCoeff() <= 0.0)
    throw std::invalid_argument("from_radial: radial function must be positive");
  kmax = std::min(kmax, r.grid->max_degree());
  const ModeVector modes = analyze(r, kmax);
  StarBody body = from_modes(modes, r.grid);
  body.representation_error = (body.r.value - r.values).cwiseAbs().maxCoeff();
  return body;
}

StarBody ball_body(int n, double radius, int resolution) {
  if (radius <= 0.0) throw std::invalid_argument("ball_body: radius must be positive");
  auto grid = make_grid(n, resolution > 0 ? resolution : default_resolution(n));
  ModeVector modes(n, 2);
  // constant radius: coefficient of the constant basis element 1/sqrt(|S^{n-1}|)
  modes.at(0, 0) = radius * std::sqrt(n * unit_ball_volume(n));
  return from_modes(modes, std::move(grid));
}

CurvatureField curvatures(const StarBody& body) {
  const int n = body.n;
  const int count = body.grid->node_count();
  CurvatureField out;
  out.kappa.resize(count, n - 1);
  out.sigma.resize(count, n);
  out.mean_h.resize(count);
  out.gauss.resize(count);
  out.sigma.col(0).setOnes();

  if (n == 2) {
    for (int i = 0; i < count; ++i) {
      const double r = body.r.value[i];
      const double rp = body.r.g1[i];
      const double rpp = body.r.h11[i];
      const double g = r * r + rp * rp;
      if (g < 1e-14) throw std::runtime_error("curvatures: degenerate metric");
      const double k = (r * r + 2.0 * rp * rp - r * rpp) / std::pow(g, 1.5);
      out.kappa(i, 0) = k;
      out.sigma(i, 1) = k;
      out.mean_h[i] = k;
      out.gauss[i] = k;
    }
    return out;
  }

  for (int i = 0; i < count; ++i) {
    const double th = body.grid->theta[i];
    const double ph = body.grid->phi[i];
    const double st = std::sin(th), ct = std::cos(th);
    const double sp = std::sin(ph), cp = std::cos(ph);

    const Eigen::Vector3d xi(st * cp, st * sp, ct);
    const Eigen::Vector3d xi_t(ct * cp, ct * sp, -st);
    const Eigen::Vector3d xi_p(-st * sp, st * cp, 0.0);
    const Eigen::Vector3d xi_tt = -xi;
    const Eigen::Vector3d xi_tp(-ct * sp, ct * cp, 0.0);
    const Eigen::Vector3d xi_pp(-st * cp, -st * sp, 0.0);

    const double r = body.r.value[i];
    const double rt = body.r.ft[i], rp = body.r.fp[i];
    const double rtt = body.r.ftt[i], rtp = body.r.ftp[i], rpp = body.r.fpp[i];

    const Eigen::Vector3d xt = rt * xi + r * xi_t;
    const Eigen::Vector3d xp = rp * xi + r * xi_p;
    const Eigen::Vector3d xtt = rtt * xi + 2.0 * rt * xi_t + r * xi_tt;
    const Eigen::Vector3d xtp = rtp * xi + rt * xi_p + rp * xi_t + r * xi_tp;
    const Eigen::Vector3d xpp = rpp * xi + 2.0 * rp * xi_p + r * xi_pp;

    Eigen::Matrix2d first;
    first << xt.dot(xt), xt.dot(xp), xt.dot(xp), xp.dot(xp);
    const double detI = first.determinant();
    if (detI < 1e-14) throw std::runtime_error("curvatures: degenerate metric");

    Eigen::Vector3d nu = xt.cross(xp);
    nu /= nu.norm();
    if (nu.dot(xi) < 0.0) nu = -nu;  // outward

    // second fundamental form with respect to the inward direction, so the
    // unit sphere has kappa = +1
    Eigen::Matrix2d second;
    second << -nu.dot(xtt), -nu.dot(xtp), -nu.dot(xtp), -nu.dot(xpp);

    const Eigen::Matrix2d shape = first.inverse() * second;
    const double tr = shape.trace();
    const double det = shape.determinant();
    double disc = tr * tr - 4.0 * det;
    if (disc < 0.0) disc = 0.0;  // self-adjoint w.r.t. the metric, clamp roundoff
    const double k1 = 0.5 * (tr - std::sqrt(disc));
    const double k2 = 0.5 * (tr + std::sqrt(disc));
    out.kappa(i, 0) = k1;
    out.kappa(i, 1) = k2;
    out.sigma(i, 1) = 0.5 * tr;
    out.sigma(i, 2) = det;
    out.mean_h[i] = tr;
    out.gauss[i] = det;
  }
  return out;
}

Eigen::VectorXd sigma_via_lemma(const StarBody& body, int k) {
  const int n = body.n;
  const int d = n - 1;  // boundary dimension
  if (n != 2 && n != 3) throw std::invalid_argument("sigma_via_lemma: n must be 2 or 3");
  if (k < 0 || k > n - 1) throw std::invalid_argument("sigma_via_lemma: need 0 <= k <= n-1");

  const int count = body.grid->node_count();
  Eigen::VectorXd out(count);

  auto binom = [](int a, int b) -> double {
    if (b < 0 || b > a) return 0.0;
    double v = 1.0;
    for (int t = 1; t <= b; ++t) v = v * (a - b + t) / t;
    return v;
  };

  Eigen::MatrixXd hess(d, d);
  Eigen::VectorXd grad(d);
  for (int i = 0; i < count; ++i) {
    const double r = body.r.value[i];
    grad[0] = body.r.g1[i];
    hess(0, 0) = body.r.h11[i];
    if (d == 2) {
      grad[1] = body.r.g2[i];
      hess(0, 1) = hess(1, 0) = body.r.h12[i];
      hess(1, 1) = body.r.h22[i];
    }
    const double g = r * r + grad.squaredNorm();
    double sum = 0.0;
    for (int m = 0; m <= k; ++m) {
      const double s_term = elem_sym(hess, m);  // m <= k <= d always holds here
      double tangential = 0.0;
      if (m < d) {
        // [T_m] of the covariant Hessian contracted with the surface gradient
        const Eigen::MatrixXd tm = newton_tensor(hess, m);
        tangential = (grad.transpose() * tm * grad).value() *
                     (static_cast<double>(n - 1 + k - 2 * m) / (n - 1 - m));
      }
      const double bracket = r * r * s_term + tangential;
      sum += ((m % 2 == 0) ? 1.0 : -1.0) * binom(n - 1 - m, k - m) * std::pow(r, -m) * bracket;
    }
    out[i] = sum / (binom(n - 1, k) * std::pow(g, 0.5 * (k + 2)));
  }
  return out;
}

QuermassProfile quermass(const StarBody& body) {
  const int n = body.n;
  const auto& g = *body.grid;
  const CurvatureField curv = curvatures(body);

  QuermassProfile p;
  p.n = n;
  p.w.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < g.node_count(); ++i) {
    const double r = body.r.value[i];
    double grad2 = body.r.g1[i] * body.r.g1[i];
    if (n == 3) grad2 += body.r.g2[i] * body.r.g2[i];
    const double area = std::pow(r, n - 2) * std::sqrt(r * r + grad2);
    p.w[0] += g.w[i] * std::pow(r, n) / n;
    for (int j = 1; j <= n - 1; ++j)
      p.w[static_cast<std::size_t>(j)] += g.w[i] * curv.sigma(i, j - 1) * area / n;
  }
  for (int j = 1; j <= n - 1; ++j) p.zeta.push_back(p.zeta_of(j));
  return p;
}

double af_deficit(const QuermassProfile& p) {
  const int n = p.n;
  const double omega = unit_ball_volume(n);
  const double ratio = std::pow(omega, (n - 1.0) * (n + 2.0)) *
                       std::pow(p.w[0], n + 2.0) /
                       std::pow(p.w[static_cast<std::size_t>(n - 1)], n * (n + 2.0));
  return 1.0 - ratio;
}

}  // namespace tlab
