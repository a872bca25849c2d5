#pragma once

#include <Eigen/Dense>

#include <memory>
#include <vector>

#include "torsionlab/sphere.hpp"

namespace tlab {

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Star-shaped body given by a radial graph r(xi) over S^{n-1}. Holds the
/// harmonic representation of r, its surface derivatives at the grid nodes,
/// and a pointwise convexity certificate.
struct StarBody {
  int n = 2;
  std::shared_ptr<const SphereGrid> grid;
  ModeVector modes{2, 0};
  FieldDerivs r;
  bool convex = false;
  double min_principal_curvature = 0.0;
  /// max |r - synthesized representation| of the input field (0 when built
  /// directly from modes)
  double representation_error = 0.0;
};

/// Principal curvatures and normalized mean-curvature functions of the
/// boundary, from the first/second fundamental forms of the radial graph.
struct CurvatureField {
  Eigen::MatrixXd kappa;   // node x (n-1) principal curvatures
  Eigen::MatrixXd sigma;   // node x n, columns sigma_0 .. sigma_{n-1}
  Eigen::VectorXd mean_h;  // non-normalized mean curvature H = (n-1) sigma_1
  Eigen::VectorXd gauss;   // Gaussian curvature sigma_{n-1}
};

struct QuermassProfile {
  int n = 2;
  std::vector<double> w;     // W_0 .. W_{n-1}
  std::vector<double> zeta;  // zeta_1 .. zeta_{n-1}

  /// (W_j / omega_n)^{1/(n-j)} for j = 0 .. n-1; j = 0 is the volume radius.
  double zeta_of(int j) const;
};

StarBody from_modes(const ModeVector& r_modes, std::shared_ptr<const SphereGrid> grid);
StarBody from_radial(const SurfaceField& r, int kmax = 16);
/// Ball of radius R sampled on a fresh default grid.
StarBody ball_body(int n, double radius, int resolution = 0);

CurvatureField curvatures(const StarBody& body);

/// sigma_k evaluated through the radial-graph expansion in Newton tensors of
/// the covariant Hessian of r; independent of the fundamental-forms path.
Eigen::VectorXd sigma_via_lemma(const StarBody& body, int k);

QuermassProfile quermass(const StarBody& body);

/// 1 - omega_n^{(n-1)(n+2)} W_0^{n+2} / W_{n-1}^{n(n+2)}
double af_deficit(const QuermassProfile& p);

}  // namespace tlab
