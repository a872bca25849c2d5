#pragma once

#include <Eigen/Dense>

#include <vector>

namespace tlab {

/// Real orthonormal harmonic basis on S^{n-1}, n = 2 or 3, together with
/// analytic first and second angular derivatives.
///
/// n = 2 layout: index 0 -> 1/sqrt(2 pi); for k >= 1 index 2k-1 -> cos(k t)/sqrt(pi),
/// index 2k -> sin(k t)/sqrt(pi).
/// n = 3 layout: index l^2 + (l + m) for degree l and order m in [-l, l];
/// m > 0 are the cos(m phi) branch, m < 0 the sin(|m| phi) branch. Functions are
/// L^2(S^2)-orthonormal with respect to the surface measure.
///
/// Every basis element satisfies -Lap_xi Y = k (k + n - 2) Y.
class HarmonicBasis {
 public:
  HarmonicBasis(int n, int kmax);

  int n() const { return n_; }
  int kmax() const { return kmax_; }
  int size() const { return size_; }
  int degree_of(int index) const;
  double eigenvalue(int degree) const { return static_cast<double>(degree) * (degree + n_ - 2); }

  static int basis_size(int n, int kmax);

  /// Workspace for a single-node evaluation of all basis functions.
  struct NodeEval {
    Eigen::VectorXd y;       // values
    Eigen::VectorXd dt;      // d/dtheta
    Eigen::VectorXd dp;      // d/dphi          (n = 3)
    Eigen::VectorXd dtt;     // d2/dtheta2
    Eigen::VectorXd dtp;     // d2/dtheta dphi  (n = 3)
    Eigen::VectorXd dpp;     // d2/dphi2        (n = 3)
  };

  void resize(NodeEval& e) const;

  /// n = 2: theta is the polar angle, phi is ignored.
  /// n = 3: theta is the colatitude in (0, pi), phi the longitude.
  void eval_node(double theta, double phi, NodeEval& e) const;

 private:
  void eval_node_circle(double theta, NodeEval& e) const;
  void eval_node_sphere(double theta, double phi, NodeEval& e) const;

  int n_;
  int kmax_;
  int size_;
};

}  // namespace tlab
