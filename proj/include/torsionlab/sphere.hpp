#pragma once

#include <Eigen/Dense>

#include <memory>
#include <utility>
#include <vector>

#include "torsionlab/harmonics.hpp"

namespace tlab {

/// Quadrature grid on S^{n-1}.
/// n = 2: uniform angles with trapezoid weights (spectrally exact below the
/// Nyquist degree). n = 3: Gauss-Legendre in the colatitude (nodes strictly
/// interior, no poles) times a uniform longitude rule; `resolution` latitude
/// rings and 2 * resolution longitudes.
struct SphereGrid {
  int n = 2;
  int resolution = 0;
  int nlat = 0, nlon = 0;
  std::vector<double> w;
  std::vector<double> theta;
  std::vector<double> phi;                // n = 3 only
  std::vector<Eigen::Vector3d> xi;        // unit vectors (z = 0 for n = 2)

  int node_count() const { return static_cast<int>(w.size()); }
  /// Largest harmonic degree the quadrature resolves exactly for products
  /// of two basis functions.
  int max_degree() const;
};

std::shared_ptr<const SphereGrid> make_grid(int n, int resolution);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

struct SurfaceField {
  std::shared_ptr<const SphereGrid> grid;
  Eigen::VectorXd values;
  bool tail_warning = false;
};

/// Samples a callable f(theta) for n = 2 or f(theta, phi) for n = 3.
template <typename Fn>
SurfaceField sample(std::shared_ptr<const SphereGrid> grid, Fn&& f) {
  SurfaceField out;
  out.values.resize(grid->node_count());
  for (int i = 0; i < grid->node_count(); ++i) {
    if constexpr (std::is_invocable_v<Fn, double, double>)
      out.values[i] = f(grid->theta[i], grid->n == 3 ? grid->phi[i] : 0.0);
    else
      out.values[i] = f(grid->theta[i]);
  }
  out.grid = std::move(grid);
  return out;
}

double integrate(const SurfaceField& f);
double integrate(const SphereGrid& grid, const Eigen::VectorXd& values);

/// Real harmonic coefficients a_{k,m} grouped by degree k, truncated at kmax.
/// Index layout matches HarmonicBasis.
class ModeVector {
 public:
  ModeVector(int n, int kmax);

  int n() const { return n_; }
  int kmax() const { return kmax_; }
  int size() const { return static_cast<int>(a_.size()); }
  const Eigen::VectorXd& coeffs() const { return a_; }
  Eigen::VectorXd& coeffs() { return a_; }

  /// n = 3: m in [-k, k]. n = 2: m = 0 selects the cos branch, m = 1 the sin
  /// branch (any m for k = 0).
  double& at(int degree, int m);
  double at(int degree, int m) const;
  int flat_index(int degree, int m) const;
  int degree_of(int index) const;

  /// sum over m of a_{k,m}^2 for one degree
  double degree_power(int degree) const;
  /// sum of a^2 over all degrees >= kmin
  double sum_sq(int kmin = 0) const;
  /// sum of a_k^2 * g(k) over degrees >= kmin
  template <typename Fn>
  double weighted_sum(Fn&& g, int kmin = 0) const {
    double s = 0.0;
    for (int k = kmin; k <= kmax_; ++k) s += degree_power(k) * g(k);
    return s;
  }

 private:
  int n_, kmax_;
  Eigen::VectorXd a_;
};

/// Quadrature projection of a field onto the harmonic basis. Throws if kmax
/// exceeds the grid's Nyquist bound.
ModeVector analyze(const SurfaceField& f, int kmax);
SurfaceField synthesize(const ModeVector& modes, std::shared_ptr<const SphereGrid> grid);

/// Relative L2 energy of the top two degrees of f below kmax; a proxy for the
/// spectral tail of non-band-limited data.
double spectral_tail(const SurfaceField& f, int kmax);

/// Value, orthonormal-frame surface gradient and covariant (metric) Hessian
/// of a band-limited field, plus the raw coordinate partials for n = 3.
struct FieldDerivs {
  Eigen::VectorXd value;
  Eigen::VectorXd g1, g2;                 // gradient components (g2 empty for n = 2)
  Eigen::VectorXd h11, h12, h22;          // Hessian components (h12/h22 empty for n = 2)
  Eigen::VectorXd ft, fp, ftt, ftp, fpp;  // coordinate partials (n = 3)
};
FieldDerivs derivatives(const ModeVector& modes, const std::shared_ptr<const SphereGrid>& grid);

/// Spectral Laplace-Beltrami and squared surface gradient; both flag
/// tail_warning when the input is not numerically band-limited at kmax.
SurfaceField laplace_beltrami(const SurfaceField& f, int kmax);
SurfaceField surface_gradient_sq(const SurfaceField& f, int kmax);

/// Integral identity for the covariant Hessian on S^2:
/// returns ( int S_2(D^2 V), (n-2)/2 * int |grad V|^2 ); n = 3 required.
std::pair<double, double> s2_identity_check(const SurfaceField& v, int kmax);

}  // namespace tlab
