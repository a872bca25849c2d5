#pragma once

#include <span>
#include <utility>

#include "torsionlab/body.hpp"
#include "torsionlab/sphere.hpp"

namespace tlab {

/// Torsional rigidity T = (int -u)^n of the solution of det D^2 u = 1 with
/// zero boundary data, plus the L1 norm it is built from.
struct TorsionValue {
  double l1_norm = 0.0;  // int_Omega (-u)
  double torsion = 0.0;  // l1_norm^n
};

/// Ball: u = (|x|^2 - R^2)/2, T = omega_n^n R^{n(n+2)} / (n+2)^n.
TorsionValue ball_torsion(int n, double radius);

/// Ellipsoid with semi-axes a_i: u = ((prod a)^{2/n}/2)(sum x_i^2/a_i^2 - 1),
/// T = |Omega|^{n+2} / ((n+2)^n omega_n^2).
TorsionValue ellipsoid_torsion(std::span<const double> axes);

/// Closed-form ellipsoid solution and its (constant) Hessian determinant.
double ellipsoid_solution(std::span<const double> axes, std::span<const double> x);
double ellipsoid_hessian_det(std::span<const double> axes);

/// T of the ball with the same W_{n-1} as the profile.
double torsion_of_matched_ball(const QuermassProfile& profile);

/// 1 - T / T(matched ball).
double torsion_deficit(double torsion, const QuermassProfile& profile);

/// Harmonic function on B_1 with boundary trace -V, V = sum a_k Y_k:
/// v(r, xi) = -sum a_k r^k Y_k(xi).
class HarmonicExtension {
 public:
  explicit HarmonicExtension(ModeVector modes);

  const ModeVector& modes() const { return modes_; }
  double radial_profile(int degree, double r) const;  // -a_{k,m=0} r^k convention free
  double eval(double r, double theta, double phi = 0.0) const;

  SurfaceField boundary_trace(std::shared_ptr<const SphereGrid> grid) const;
  SurfaceField radial_derivative_at_one(std::shared_ptr<const SphereGrid> grid) const;

  /// max |Lap v| over an interior sample, radial part by high-order finite
  /// differences, angular part through the eigenvalue relation.
  double laplacian_residual(int radial_samples = 8) const;

 private:
  ModeVector modes_;
};

HarmonicExtension harmonic_extension(const ModeVector& modes);

/// The Monge-Ampere nonlinearity term of the second shape derivative at the
/// ball, in the normalization (1/n) sum a_k^2 (k^2 - k). The quadrature route
/// evaluates (1/n)[(Lap u_t)^2 - sum u_t,ij^2] u over B_1 on a polar grid and
/// is available for n = 2.
struct NtTermResult {
  double closed_form = 0.0;
  double quadrature = 0.0;
  bool quadrature_available = false;
};
NtTermResult nt_term(const ModeVector& modes);

/// Level-set curvature identity for radial u = (|x|^2 - 1)/2: returns
/// ( S_k^{ij}(D^2 u) u_i u_j / |grad u|^{k+1} ,  C(n-1, k-1) rho^{-(k-1)} )
/// evaluated on |x| = rho.
std::pair<double, double> reilly_check(int n, int k, double rho);

}  // namespace tlab
