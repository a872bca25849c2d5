#include "torsionlab/sphere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tlab {

namespace {
constexpr double kPi = std::numbers::pi;
}  // namespace

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

namespace {

void check_same_grid(const SurfaceField& f) {
  if (!f.grid) throw std::invalid_argument("surface field has no grid");
  if (f.values.size() != f.grid->node_count())
    throw std::invalid_argument("surface field size does not match its grid");
}

}  // namespace

int SphereGrid::max_degree() const {
  if (n == 2) return resolution / 2 - 1;
  return std::min(nlat - 1, nlon / 2 - 1);
}

std::shared_ptr<const SphereGrid> make_grid(int n, int resolution) {
  if (n != 2 && n != 3) throw std::invalid_argument("make_grid: n must be 2 or 3");
  if (resolution < 8) throw std::invalid_argument("make_grid: resolution must be >= 8");

  auto g = std::make_shared<SphereGrid>();
  g->n = n;
  g->resolution = resolution;
  if (n == 2) {
    const int m = resolution;
    g->w.assign(m, 2.0 * kPi / m);
    g->theta.resize(m);
    g->xi.resize(m);
    for (int i = 0; i < m; ++i) {
      const double t = 2.0 * kPi * i / m;
      g->theta[i] = t;
      g->xi[i] = Eigen::Vector3d(std::cos(t), std::sin(t), 0.0);
    }
  } else {
    g->nlat = resolution;
    g->nlon = 2 * resolution;
    std::vector<double> mu, gw;
    gauss_legendre(g->nlat, mu, gw);
    const int count = g->nlat * g->nlon;
    g->w.resize(count);
    g->theta.resize(count);
    g->phi.resize(count);
    g->xi.resize(count);
    const double dphi = 2.0 * kPi / g->nlon;
    for (int a = 0; a < g->nlat; ++a) {
      const double th = std::acos(mu[a]);
      const double st = std::sin(th);
      for (int b = 0; b < g->nlon; ++b) {
        const int i = a * g->nlon + b;
        const double ph = dphi * b;
        g->w[i] = gw[a] * dphi;
        g->theta[i] = th;
        g->phi[i] = ph;
        g->xi[i] = Eigen::Vector3d(st * std::cos(ph), st * std::sin(ph), mu[a]);
      }
    }
  }
  return g;
}

double integrate(const SphereGrid& grid, const Eigen::VectorXd& values) {
  if (values.size() != grid.node_count())
    throw std::invalid_argument("integrate: field/grid size mismatch");
  double s = 0.0;
  for (int i = 0; i < grid.node_count(); ++i) s += grid.w[i] * values[i];
  return s;
}

double integrate(const SurfaceField& f) {
  check_same_grid(f);
  return integrate(*f.grid, f.values);
}

ModeVector::ModeVector(int n, int kmax) : n_(n), kmax_(kmax) {
  if (n != 2 && n != 3) throw std::invalid_argument("ModeVector: n must be 2 or 3");
  if (kmax < 0) throw std::invalid_argument("ModeVector: kmax must be nonnegative");
  a_ = Eigen::VectorXd::Zero(HarmonicBasis::basis_size(n, kmax));
}

int ModeVector::flat_index(int degree, int m) const {
  if (degree < 0 || degree > kmax_) throw std::invalid_argument("ModeVector: degree out of range");
  if (n_ == 2) {
    if (degree == 0) return 0;
    if (m != 0 && m != 1) throw std::invalid_argument("ModeVector: n=2 expects m in {0, 1}");
    return 2 * degree - 1 + m;
  }
  if (m < -degree || m > degree) throw std::invalid_argument("ModeVector: order out of range");
  return degree * degree + degree + m;
}

double& ModeVector::at(int degree, int m) { return a_[flat_index(degree, m)]; }
double ModeVector::at(int degree, int m) const { return a_[flat_index(degree, m)]; }

int ModeVector::degree_of(int index) const {
  if (n_ == 2) return index == 0 ? 0 : (index + 1) / 2;
  return static_cast<int>(std::sqrt(static_cast<double>(index)) + 1e-9);
}

double ModeVector::degree_power(int degree) const {
  double s = 0.0;
  if (n_ == 2) {
    if (degree == 0) return a_[0] * a_[0];
    s = a_[2 * degree - 1] * a_[2 * degree - 1] + a_[2 * degree] * a_[2 * degree];
  } else {
    for (int m = -degree; m <= degree; ++m) {
      const double c = a_[degree * degree + degree + m];
      s += c * c;
    }
  }
  return s;
}

double ModeVector::sum_sq(int kmin) const {
  double s = 0.0;
  for (int k = kmin; k <= kmax_; ++k) s += degree_power(k);
  return s;
}

ModeVector analyze(const SurfaceField& f, int kmax) {
  check_same_grid(f);
  const auto& g = *f.grid;
  if (kmax > g.max_degree())
    throw std::invalid_argument("analyze: kmax exceeds the grid Nyquist degree");
  ModeVector modes(g.n, kmax);
  HarmonicBasis basis(g.n, kmax);
  HarmonicBasis::NodeEval e;
  basis.resize(e);
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(basis.size());
  for (int i = 0; i < g.node_count(); ++i) {
    basis.eval_node(g.theta[i], g.n == 3 ? g.phi[i] : 0.0, e);
    acc += (g.w[i] * f.values[i]) * e.y;
  }
  modes.coeffs() = acc;
  return modes;
}

SurfaceField synthesize(const ModeVector& modes, std::shared_ptr<const SphereGrid> grid) {
  if (!grid) throw std::invalid_argument("synthesize: null grid");
  if (grid->n != modes.n()) throw std::invalid_argument("synthesize: dimension mismatch");
  HarmonicBasis basis(grid->n, modes.kmax());
  HarmonicBasis::NodeEval e;
  basis.resize(e);
  SurfaceField out;
  out.values.resize(grid->node_count());
  for (int i = 0; i < grid->node_count(); ++i) {
    basis.eval_node(grid->theta[i], grid->n == 3 ? grid->phi[i] : 0.0, e);
    out.values[i] = e.y.dot(modes.coeffs());
  }
  out.grid = std::move(grid);
  return out;
}

double spectral_tail(const SurfaceField& f, int kmax) {
  const ModeVector modes = analyze(f, kmax);
  double tail = 0.0;
  for (int k = std::max(0, kmax - 1); k <= kmax; ++k) tail += modes.degree_power(k);
  const double total = modes.sum_sq();
  return total > 0.0 ? tail / total : 0.0;
}

FieldDerivs derivatives(const ModeVector& modes, const std::shared_ptr<const SphereGrid>& grid) {
  if (!grid) throw std::invalid_argument("derivatives: null grid");
  if (grid->n != modes.n()) throw std::invalid_argument("derivatives: dimension mismatch");
  const auto& g = *grid;
  const int count = g.node_count();
  HarmonicBasis basis(g.n, modes.kmax());
  HarmonicBasis::NodeEval e;
  basis.resize(e);

  FieldDerivs d;
  d.value.resize(count);
  d.g1.resize(count);
  d.h11.resize(count);
  if (g.n == 3) {
    d.g2.resize(count);
    d.h12.resize(count);
    d.h22.resize(count);
    d.ft.resize(count);
    d.fp.resize(count);
    d.ftt.resize(count);
    d.ftp.resize(count);
    d.fpp.resize(count);
  }

  const Eigen::VectorXd& a = modes.coeffs();
  for (int i = 0; i < count; ++i) {
    basis.eval_node(g.theta[i], g.n == 3 ? g.phi[i] : 0.0, e);
    const double f = e.y.dot(a);
    const double ft = e.dt.dot(a);
    const double ftt = e.dtt.dot(a);
    d.value[i] = f;
    if (g.n == 2) {
      d.g1[i] = ft;
      d.h11[i] = ftt;
    } else {
      const double fp = e.dp.dot(a);
      const double ftp = e.dtp.dot(a);
      const double fpp = e.dpp.dot(a);
      const double st = std::sin(g.theta[i]);
      const double cot = std::cos(g.theta[i]) / st;
      d.ft[i] = ft;
      d.fp[i] = fp;
      d.ftt[i] = ftt;
      d.ftp[i] = ftp;
      d.fpp[i] = fpp;
      // orthonormal frame (e_theta, e_phi / sin theta)
      d.g1[i] = ft;
      d.g2[i] = fp / st;
      // covariant Hessian components in the same frame
      d.h11[i] = ftt;
      d.h12[i] = (ftp - cot * fp) / st;
      d.h22[i] = fpp / (st * st) + cot * ft;
    }
  }
  return d;
}

namespace {

SurfaceField spectral_op(const SurfaceField& f, int kmax, bool laplacian) {
  check_same_grid(f);
  const double tail = spectral_tail(f, kmax);
  ModeVector modes = analyze(f, kmax);
  const int n = f.grid->n;
  if (laplacian) {
    HarmonicBasis basis(n, kmax);
    for (int b = 0; b < modes.size(); ++b)
      modes.coeffs()[b] *= -basis.eigenvalue(modes.degree_of(b));
    SurfaceField out = synthesize(modes, f.grid);
    out.tail_warning = tail > 1e-6;
    return out;
  }
  const FieldDerivs d = derivatives(modes, f.grid);
  SurfaceField out;
  out.grid = f.grid;
  out.values = d.g1.array().square();
  if (n == 3) out.values += d.g2.array().square().matrix();
  out.tail_warning = tail > 1e-6;
  return out;
}

}  // namespace

SurfaceField laplace_beltrami(const SurfaceField& f, int kmax) {
  return spectral_op(f, kmax, true);
}

SurfaceField surface_gradient_sq(const SurfaceField& f, int kmax) {
  return spectral_op(f, kmax, false);
}

std::pair<double, double> s2_identity_check(const SurfaceField& v, int kmax) {
  check_same_grid(v);
  const int n = v.grid->n;
  if (n != 3)
    throw std::invalid_argument("s2_identity_check: S_2 of the surface Hessian needs n = 3");
  const ModeVector modes = analyze(v, kmax);
  const FieldDerivs d = derivatives(modes, v.grid);
  Eigen::VectorXd s2 = (d.h11.array() * d.h22.array() - d.h12.array().square()).matrix();
  Eigen::VectorXd grad2 = (d.g1.array().square() + d.g2.array().square()).matrix();
  const double lhs = integrate(*v.grid, s2);
  const double rhs = 0.5 * (n - 2) * integrate(*v.grid, grad2);
  return {lhs, rhs};
}

}  // namespace tlab
