#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "torsionlab/body.hpp"

namespace tlab {

struct MaSolveParams {
  int nrho = 128;           // radial intervals
  int ntheta = 256;         // angular nodes
  double tol = 1e-10;       // max-norm residual target of the discrete system
  int max_newton = 40;
  int max_fallback = 200;   // Poisson fixed-point sweeps when Newton stalls
};

/// Discrete solution of det D^2 u = 1, u = 0 on the boundary, on the
/// boundary-fitted polar grid x = rho r(theta) (cos theta, sin theta).
struct MaSolution {
  int nrho = 0, ntheta = 0;
  std::vector<double> rho;      // 0 .. 1, nrho + 1 levels
  std::vector<double> theta;    // ntheta angles
  std::vector<double> radius;   // r(theta) samples
  Eigen::VectorXd u;            // [center, ring 1, ..., boundary ring]
  double residual = 0.0;        // max |det D^2 u - 1| of the discrete system
  int iterations = 0;
  bool converged = false;
  bool discrete_convex = false;
  double l1_norm = 0.0;         // int (-u)
  double torsion = 0.0;         // l1_norm^2

  double value(int j, int i) const;  // j = 0 center .. nrho boundary
};

/// Damped Newton iteration on the mapped discretization, with a Poisson
/// fixed-point fallback. Requires a convex 2-d body. Throws on non-convex
/// input; non-convergence raises a runtime error carrying the residual
/// history.
MaSolution ma_solve_2d(const StarBody& body, const MaSolveParams& params = {});

/// Torsion by Richardson extrapolation over the (h, 2h) grid pair.
struct RichardsonTorsion {
  double fine = 0.0;
  double coarse = 0.0;
  double extrapolated = 0.0;
  double rel_error_estimate = 0.0;  // |fine - extrapolated| / extrapolated
};
RichardsonTorsion ma_torsion_2d(const StarBody& body, const MaSolveParams& params = {});

/// CSV export (rho, theta, u), one row per node including the center.
std::string solution_csv(const MaSolution& sol);

/// Discrete Hessian determinant of an externally supplied field u(x, y)
/// sampled on the mapped grid; entry 0 is the center, the rest are the
/// interior nodes in ring-major order. Diagnostic for operator consistency.
Eigen::VectorXd ma_discrete_det(const StarBody& body, int nrho, int ntheta,
                                const std::function<double(double, double)>& u);

}  // namespace tlab
