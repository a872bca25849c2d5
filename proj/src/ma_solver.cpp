#include "torsionlab/ma_solver.hpp"

#include <Eigen/Sparse>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "torsionlab/harmonics.hpp"

namespace tlab {

namespace {

constexpr double kPi = std::numbers::pi;

struct Coef5 {
  double rr = 0.0, rt = 0.0, tt = 0.0, r = 0.0, t = 0.0;
};

Coef5 combine(const Coef5& a, double fa, const Coef5& b, double fb, const Coef5& c, double fc) {
  return {fa * a.rr + fb * b.rr + fc * c.rr, fa * a.rt + fb * b.rt + fc * c.rt,
          fa * a.tt + fb * b.tt + fc * c.tt, fa * a.r + fb * b.r + fc * c.r,
          fa * a.t + fb * b.t + fc * c.t};
}

struct Derivs {
  double xx = 0.0, yy = 0.0, xy = 0.0;
};

// Discretization of the mapped plane: x = rho * r(theta) * (cos, sin)(theta),
// one shared center unknown, Dirichlet boundary ring.
class MappedDisk {
 public:
  MappedDisk(const StarBody& body, int nrho, int ntheta)
      : nrho_(nrho), ntheta_(ntheta), hr_(1.0 / nrho), ht_(2.0 * kPi / ntheta) {
    if (nrho < 8 || nrho % 2 != 0)
      throw std::invalid_argument("ma_solve_2d: nrho must be even and >= 8");
    if (ntheta < 16) throw std::invalid_argument("ma_solve_2d: ntheta must be >= 16");

    rho_.resize(nrho + 1);
    for (int j = 0; j <= nrho; ++j) rho_[j] = hr_ * j;
    theta_.resize(ntheta);
    s_.resize(ntheta);
    sp_.resize(ntheta);
    spp_.resize(ntheta);
    const HarmonicBasis basis(2, body.modes.kmax());
    HarmonicBasis::NodeEval e;
    basis.resize(e);
    for (int i = 0; i < ntheta; ++i) {
      theta_[i] = ht_ * i;
      basis.eval_node(theta_[i], 0.0, e);
      s_[i] = e.y.dot(body.modes.coeffs());
      sp_[i] = e.dt.dot(body.modes.coeffs());
      spp_[i] = e.dtt.dot(body.modes.coeffs());
      if (s_[i] <= 0.0) throw std::invalid_argument("ma_solve_2d: nonpositive radius");
    }

    const int interior = (nrho - 1) * ntheta;
    cxx_.resize(interior);
    cyy_.resize(interior);
    cxy_.resize(interior);
    for (int j = 1; j <= nrho - 1; ++j)
      for (int i = 0; i < ntheta; ++i) build_coefficients(j, i);

    build_center_fit();
  }

  int size() const { return 1 + nrho_ * ntheta_; }
  int nrho() const { return nrho_; }
  int ntheta() const { return ntheta_; }
  double hr() const { return hr_; }

  int index(int j, int i) const {
    if (j == 0) return 0;
    const int w = ((i % ntheta_) + ntheta_) % ntheta_;
    return 1 + (j - 1) * ntheta_ + w;
  }

  int interior_index(int j, int i) const { return (j - 1) * ntheta_ + i; }

  // five-point mapped derivative values at an interior node
  void fd_slots(const Eigen::VectorXd& u, int j, int i, double out[5]) const {
    const double uc = u[index(j, i)];
    const double up = u[index(j + 1, i)], um = u[index(j - 1, i)];
    const double ur = u[index(j, i + 1)], ul = u[index(j, i - 1)];
    out[0] = (up - 2.0 * uc + um) / (hr_ * hr_);
    out[1] = (u[index(j + 1, i + 1)] - u[index(j + 1, i - 1)] - u[index(j - 1, i + 1)] +
              u[index(j - 1, i - 1)]) /
             (4.0 * hr_ * ht_);
    out[2] = (ur - 2.0 * uc + ul) / (ht_ * ht_);
    out[3] = (up - um) / (2.0 * hr_);
    out[4] = (ur - ul) / (2.0 * ht_);
  }

  Derivs hessian(const Eigen::VectorXd& u, int j, int i) const {
    double f[5];
    fd_slots(u, j, i, f);
    const int p = interior_index(j, i);
    const auto dot = [&](const Coef5& c) {
      return c.rr * f[0] + c.rt * f[1] + c.tt * f[2] + c.r * f[3] + c.t * f[4];
    };
    return {dot(cxx_[p]), dot(cyy_[p]), dot(cxy_[p])};
  }

  // Hessian of the quadratic least-squares fit through the center and ring 1
  Derivs center_hessian(const Eigen::VectorXd& u) const {
    double acc[3] = {0.0, 0.0, 0.0};
    for (int i = 0; i < ntheta_; ++i) {
      const double d = u[index(1, i)] - u[0];
      acc[0] += fitw_(2, i) * d;
      acc[1] += fitw_(3, i) * d;
      acc[2] += fitw_(4, i) * d;
    }
    const double h2 = hr_ * hr_;
    return {acc[0] / h2, acc[2] / h2, acc[1] / h2};
  }

  // derivative of the center-fit Hessian entries w.r.t. (u_ring1[i] - u_c)
  void center_weights(int i, double& wa, double& wb, double& wc) const {
    wa = fitw_(2, i);
    wb = fitw_(3, i);
    wc = fitw_(4, i);
  }

  const Coef5& cxx(int j, int i) const { return cxx_[interior_index(j, i)]; }
  const Coef5& cyy(int j, int i) const { return cyy_[interior_index(j, i)]; }
  const Coef5& cxy(int j, int i) const { return cxy_[interior_index(j, i)]; }

  double rho(int j) const { return rho_[j]; }
  double theta(int i) const { return theta_[i]; }
  double radius(int i) const { return s_[i]; }

  // scatter a 5-slot stencil row scaled by `eff` into the triplet list
  void scatter(std::vector<Eigen::Triplet<double>>& trip, int row, int j, int i,
               const Coef5& eff) const {
    const double h2 = hr_ * hr_, q2 = ht_ * ht_;
    const auto add = [&](int jj, int ii, double v) {
      trip.emplace_back(row, index(jj, ii), v);
    };
    add(j + 1, i, eff.rr / h2 + eff.r / (2.0 * hr_));
    add(j - 1, i, eff.rr / h2 - eff.r / (2.0 * hr_));
    add(j, i, -2.0 * eff.rr / h2 - 2.0 * eff.tt / q2);
    add(j, i + 1, eff.tt / q2 + eff.t / (2.0 * ht_));
    add(j, i - 1, eff.tt / q2 - eff.t / (2.0 * ht_));
    const double c = eff.rt / (4.0 * hr_ * ht_);
    add(j + 1, i + 1, c);
    add(j + 1, i - 1, -c);
    add(j - 1, i + 1, -c);
    add(j - 1, i - 1, c);
  }

 private:
  void build_coefficients(int j, int i) {
    const double rho = rho_[j];
    const double th = theta_[i];
    const double s = s_[i], sp = sp_[i], spp = spp_[i];
    const double ct = std::cos(th), st = std::sin(th);
    const double s2 = s * s, s3 = s2 * s;

    const double tx = -st / (rho * s);
    const double ty = ct / (rho * s);
    const double rx = (s * ct + sp * st) / s2;
    const double ry = (s * st - sp * ct) / s2;

    // theta-partials of the inverse-map gradients
    const double tx_r = st / (rho * rho * s);
    const double tx_t = (sp * st - s * ct) / (rho * s2);
    const double ty_r = -ct / (rho * rho * s);
    const double ty_t = (-s * st - sp * ct) / (rho * s2);
    const double rx_t = (2.0 * sp * ct - s * st + spp * st) / s2 -
                        2.0 * sp * (s * ct + sp * st) / s3;
    const double ry_t = (2.0 * sp * st + s * ct - spp * ct) / s2 -
                        2.0 * sp * (s * st - sp * ct) / s3;

    const double txx = tx_r * rx + tx_t * tx;
    const double txy = tx_r * ry + tx_t * ty;
    const double tyy = ty_r * ry + ty_t * ty;
    const double rxx = rx_t * tx;  // rho-gradients have no rho dependence
    const double rxy = rx_t * ty;
    const double ryy = ry_t * ty;

    const int p = interior_index(j, i);
    cxx_[p] = {rx * rx, 2.0 * rx * tx, tx * tx, rxx, txx};
    cyy_[p] = {ry * ry, 2.0 * ry * ty, ty * ty, ryy, tyy};
    cxy_[p] = {rx * ry, rx * ty + ry * tx, tx * ty, rxy, txy};
  }

  void build_center_fit() {
    // quadratic model through ring 1 in coordinates scaled by 1/hr:
    // d_i = a x + b y + A x^2/2 + B x y + C y^2/2, x = s(theta) cos, ...
    Eigen::MatrixXd m(ntheta_, 5);
    for (int i = 0; i < ntheta_; ++i) {
      const double x = s_[i] * std::cos(theta_[i]);
      const double y = s_[i] * std::sin(theta_[i]);
      m(i, 0) = x;
      m(i, 1) = y;
      m(i, 2) = 0.5 * x * x;
      m(i, 3) = x * y;
      m(i, 4) = 0.5 * y * y;
    }
    fitw_ = (m.transpose() * m).ldlt().solve(m.transpose());
  }

  int nrho_, ntheta_;
  double hr_, ht_;
  std::vector<double> rho_, theta_, s_, sp_, spp_;
  std::vector<Coef5> cxx_, cyy_, cxy_;
  Eigen::MatrixXd fitw_;  // 5 x ntheta pseudo-inverse of the center fit
};

struct SystemEval {
  Eigen::VectorXd g;        // residual
  double max_residual = 0;  // over PDE rows only
};

SystemEval evaluate(const MappedDisk& disk, const Eigen::VectorXd& u) {
  SystemEval out;
  out.g = Eigen::VectorXd::Zero(disk.size());
  const Derivs c = disk.center_hessian(u);
  out.g[0] = c.xx * c.yy - c.xy * c.xy - 1.0;
  out.max_residual = std::abs(out.g[0]);
  for (int j = 1; j <= disk.nrho() - 1; ++j) {
    for (int i = 0; i < disk.ntheta(); ++i) {
      const Derivs d = disk.hessian(u, j, i);
      const double r = d.xx * d.yy - d.xy * d.xy - 1.0;
      out.g[disk.index(j, i)] = r;
      out.max_residual = std::max(out.max_residual, std::abs(r));
    }
  }
  for (int i = 0; i < disk.ntheta(); ++i)
    out.g[disk.index(disk.nrho(), i)] = u[disk.index(disk.nrho(), i)];
  return out;
}

void assemble_jacobian(const MappedDisk& disk, const Eigen::VectorXd& u,
                       Eigen::SparseMatrix<double>& jac) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(disk.size()) * 12);

  // center row: d(det)/d(ring-1 values) via the fit weights
  {
    const Derivs c = disk.center_hessian(u);
    const double h2 = disk.hr() * disk.hr();
    double diag = 0.0;
    for (int i = 0; i < disk.ntheta(); ++i) {
      double wa, wb, wc;
      disk.center_weights(i, wa, wb, wc);
      const double v = (c.yy * wa + c.xx * wc - 2.0 * c.xy * wb) / h2;
      trip.emplace_back(0, disk.index(1, i), v);
      diag -= v;
    }
    trip.emplace_back(0, 0, diag);
  }

  for (int j = 1; j <= disk.nrho() - 1; ++j) {
    for (int i = 0; i < disk.ntheta(); ++i) {
      const Derivs d = disk.hessian(u, j, i);
      const Coef5 eff =
          combine(disk.cxx(j, i), d.yy, disk.cyy(j, i), d.xx, disk.cxy(j, i), -2.0 * d.xy);
      disk.scatter(trip, disk.index(j, i), j, i, eff);
    }
  }
  for (int i = 0; i < disk.ntheta(); ++i) {
    const int b = disk.index(disk.nrho(), i);
    trip.emplace_back(b, b, 1.0);
  }

  jac.resize(disk.size(), disk.size());
  jac.setFromTriplets(trip.begin(), trip.end());
}

// Laplacian of the mapped discretization, for the fixed-point fallback
void assemble_laplacian(const MappedDisk& disk, Eigen::SparseMatrix<double>& lap) {
  std::vector<Eigen::Triplet<double>> trip;
  const double h2 = disk.hr() * disk.hr();
  double diag = 0.0;
  for (int i = 0; i < disk.ntheta(); ++i) {
    double wa, wb, wc;
    disk.center_weights(i, wa, wb, wc);
    const double v = (wa + wc) / h2;
    trip.emplace_back(0, disk.index(1, i), v);
    diag -= v;
  }
  trip.emplace_back(0, 0, diag);
  for (int j = 1; j <= disk.nrho() - 1; ++j)
    for (int i = 0; i < disk.ntheta(); ++i) {
      const Coef5 eff = combine(disk.cxx(j, i), 1.0, disk.cyy(j, i), 1.0, disk.cxy(j, i), 0.0);
      disk.scatter(trip, disk.index(j, i), j, i, eff);
    }
  for (int i = 0; i < disk.ntheta(); ++i) {
    const int b = disk.index(disk.nrho(), i);
    trip.emplace_back(b, b, 1.0);
  }
  lap.resize(disk.size(), disk.size());
  lap.setFromTriplets(trip.begin(), trip.end());
}

}  // namespace

double MaSolution::value(int j, int i) const {
  if (j == 0) return u[0];
  const int w = ((i % ntheta) + ntheta) % ntheta;
  return u[1 + (j - 1) * ntheta + w];
}

MaSolution ma_solve_2d(const StarBody& body, const MaSolveParams& params) {
  if (body.n != 2) throw std::invalid_argument("ma_solve_2d: only n = 2 is supported");
  if (!body.convex) throw std::invalid_argument("ma_solve_2d: body failed the convexity check");

  const MappedDisk disk(body, params.nrho, params.ntheta);
  const int nr = disk.nrho(), nt = disk.ntheta();

  // initial guess u = r(theta)^2 (rho^2 - 1)/2: exact for the disk, close for
  // mild perturbations
  Eigen::VectorXd u(disk.size());
  double center = 0.0;
  for (int i = 0; i < nt; ++i) center -= 0.5 * disk.radius(i) * disk.radius(i) / nt;
  u[0] = center;
  for (int j = 1; j <= nr; ++j)
    for (int i = 0; i < nt; ++i) {
      const double s = disk.radius(i);
      u[disk.index(j, i)] = 0.5 * s * s * (disk.rho(j) * disk.rho(j) - 1.0);
    }

  std::vector<double> history;
  SystemEval sys = evaluate(disk, u);
  history.push_back(sys.max_residual);

  Eigen::SparseMatrix<double> jac;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  bool pattern_analyzed = false;

  Eigen::SparseMatrix<double> lap;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lap_lu;
  bool lap_ready = false;

  // det = 1 has non-convex discrete roots as well; keep the iterate inside a
  // loose convex cone so Newton cannot drift onto them
  const auto in_convex_cone = [&](const Eigen::VectorXd& v) {
    const Derivs c = disk.center_hessian(v);
    if (c.xx < 0.05 || c.yy < 0.05) return false;
    for (int j = 1; j <= nr - 1; ++j)
      for (int i = 0; i < nt; ++i) {
        const Derivs d = disk.hessian(v, j, i);
        if (d.xx < 0.05 || d.yy < 0.05) return false;
      }
    return true;
  };

  // Poisson fixed point on Lap u = sqrt((uxx-uyy)^2 + 4 uxy^2 + 4); its fixed
  // point is the convex-branch root of the same discrete system
  int fallback_sweeps = 0;
  const auto poisson_sweeps = [&](int count) {
    if (!lap_ready) {
      assemble_laplacian(disk, lap);
      lap_lu.analyzePattern(lap);
      lap_lu.factorize(lap);
      if (lap_lu.info() != Eigen::Success)
        throw std::runtime_error("ma_solve_2d: mapped Laplacian factorization failed");
      lap_ready = true;
    }
    for (int sweep = 0; sweep < count && fallback_sweeps < params.max_fallback; ++sweep) {
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(disk.size());
      const Derivs c = disk.center_hessian(u);
      rhs[0] = std::sqrt((c.xx - c.yy) * (c.xx - c.yy) + 4.0 * c.xy * c.xy + 4.0);
      for (int j = 1; j <= nr - 1; ++j)
        for (int i = 0; i < nt; ++i) {
          const Derivs d = disk.hessian(u, j, i);
          rhs[disk.index(j, i)] =
              std::sqrt((d.xx - d.yy) * (d.xx - d.yy) + 4.0 * d.xy * d.xy + 4.0);
        }
      u = lap_lu.solve(rhs);
      ++fallback_sweeps;
    }
    sys = evaluate(disk, u);
    history.push_back(sys.max_residual);
  };

  // contract globally first, then switch to Newton
  while (sys.max_residual > 1e-2 && fallback_sweeps < params.max_fallback)
    poisson_sweeps(4);

  int newton_steps = 0;
  double best = sys.max_residual;
  int stagnant = 0;
  while (sys.max_residual > params.tol && newton_steps < params.max_newton &&
         fallback_sweeps < params.max_fallback) {
    assemble_jacobian(disk, u, jac);
    if (!pattern_analyzed) {
      lu.analyzePattern(jac);
      pattern_analyzed = true;
    }
    lu.factorize(jac);
    bool stepped = false;
    if (lu.info() == Eigen::Success) {
      const Eigen::VectorXd delta = lu.solve(-sys.g);
      const double base_norm = sys.g.norm();
      double lambda = 1.0;
      for (int bt = 0; bt < 12; ++bt) {
        const Eigen::VectorXd trial = u + lambda * delta;
        const SystemEval trial_sys = evaluate(disk, trial);
        if (trial_sys.g.norm() < base_norm * (1.0 - 1e-4 * lambda) && in_convex_cone(trial)) {
          u = trial;
          sys = trial_sys;
          stepped = true;
          break;
        }
        lambda *= 0.5;
      }
    }
    ++newton_steps;
    history.push_back(sys.max_residual);
    if (!stepped) {
      if (sys.max_residual <= 1e-6) break;  // roundoff floor of the discrete residual
      poisson_sweeps(8);
    }
    if (sys.max_residual < 0.7 * best) {
      stagnant = 0;
    } else if (++stagnant >= 4) {
      break;
    }
    best = std::min(best, sys.max_residual);
  }

  // the iteration targets params.tol; anything above the 1e-6 gate is a failure
  if (sys.max_residual > 1e-6) {
    std::ostringstream os;
    os << "ma_solve_2d: no convergence after " << newton_steps << " Newton steps and "
       << fallback_sweeps << " fallback sweeps; residual history:";
    for (double r : history) os << " " << r;
    throw std::runtime_error(os.str());
  }

  MaSolution sol;
  sol.nrho = nr;
  sol.ntheta = nt;
  sol.rho.resize(nr + 1);
  for (int j = 0; j <= nr; ++j) sol.rho[j] = disk.rho(j);
  sol.theta.resize(nt);
  sol.radius.resize(nt);
  for (int i = 0; i < nt; ++i) {
    sol.theta[i] = disk.theta(i);
    sol.radius[i] = disk.radius(i);
  }
  sol.u = u;
  sol.residual = sys.max_residual;
  sol.iterations = newton_steps;
  sol.converged = sys.max_residual <= 1e-6;

  // pointwise convexity of the discrete Hessian
  sol.discrete_convex = true;
  const Derivs c = disk.center_hessian(u);
  if (c.xx < -1e-8 || c.xx * c.yy - c.xy * c.xy < -1e-8) sol.discrete_convex = false;
  for (int j = 1; j <= nr - 1 && sol.discrete_convex; ++j)
    for (int i = 0; i < nt; ++i) {
      const Derivs d = disk.hessian(u, j, i);
      if (d.xx < -1e-8 || d.xx * d.yy - d.xy * d.xy < -1e-8) {
        sol.discrete_convex = false;
        break;
      }
    }

  // T = (int -u)^2 by composite Simpson in rho, exact trapezoid in theta
  double integral = 0.0;
  for (int j = 0; j <= nr; ++j) {
    double ring = 0.0;
    for (int i = 0; i < nt; ++i)
      ring += -u[disk.index(j, i)] * disk.radius(i) * disk.radius(i);
    ring *= disk.rho(j) * (2.0 * kPi / nt);
    const double w = (j == 0 || j == nr) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    integral += w * ring;
  }
  integral *= disk.hr() / 3.0;
  sol.l1_norm = integral;
  sol.torsion = integral * integral;
  return sol;
}

RichardsonTorsion ma_torsion_2d(const StarBody& body, const MaSolveParams& params) {
  MaSolveParams coarse = params;
  coarse.nrho = params.nrho / 2;
  coarse.ntheta = params.ntheta / 2;
  const MaSolution fine = ma_solve_2d(body, params);
  const MaSolution half = ma_solve_2d(body, coarse);
  RichardsonTorsion out;
  out.fine = fine.torsion;
  out.coarse = half.torsion;
  out.extrapolated = (4.0 * fine.torsion - half.torsion) / 3.0;
  out.rel_error_estimate = std::abs(out.fine - out.extrapolated) / out.extrapolated;
  return out;
}

Eigen::VectorXd ma_discrete_det(const StarBody& body, int nrho, int ntheta,
                                const std::function<double(double, double)>& u) {
  if (body.n != 2) throw std::invalid_argument("ma_discrete_det: only n = 2 is supported");
  const MappedDisk disk(body, nrho, ntheta);
  Eigen::VectorXd field(disk.size());
  field[0] = u(0.0, 0.0);
  for (int j = 1; j <= disk.nrho(); ++j)
    for (int i = 0; i < disk.ntheta(); ++i) {
      const double x = disk.rho(j) * disk.radius(i) * std::cos(disk.theta(i));
      const double y = disk.rho(j) * disk.radius(i) * std::sin(disk.theta(i));
      field[disk.index(j, i)] = u(x, y);
    }
  Eigen::VectorXd out(1 + (disk.nrho() - 1) * disk.ntheta());
  const Derivs c = disk.center_hessian(field);
  out[0] = c.xx * c.yy - c.xy * c.xy;
  int p = 1;
  for (int j = 1; j <= disk.nrho() - 1; ++j)
    for (int i = 0; i < disk.ntheta(); ++i) {
      const Derivs d = disk.hessian(field, j, i);
      out[p++] = d.xx * d.yy - d.xy * d.xy;
    }
  return out;
}

std::string solution_csv(const MaSolution& sol) {
  std::ostringstream os;
  os.precision(12);
  os << "rho,theta,u\n";
  os << 0.0 << "," << 0.0 << "," << sol.u[0] << "\n";
  for (int j = 1; j <= sol.nrho; ++j)
    for (int i = 0; i < sol.ntheta; ++i)
      os << sol.rho[static_cast<std::size_t>(j)] << "," << sol.theta[static_cast<std::size_t>(i)]
         << "," << sol.value(j, i) << "\n";
  return os.str();
}

}  // namespace tlab
