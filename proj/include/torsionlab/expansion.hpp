#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "torsionlab/body.hpp"
#include "torsionlab/ma_solver.hpp"
#include "torsionlab/sphere.hpp"

namespace tlab {

/// int A over S^{n-1} for the constrained second-order boundary coefficient:
/// -sum_k a_k^2 k (k + n - 2). Requires a_0 = 0.
double acceleration_integral(const ModeVector& v);

/// One-parameter family r(xi, t) = 1 + t V(xi) + (t^2/2) A with A constant,
/// chosen so the (n-1)-quermassintegral is stationary to second order.
struct PerturbationFamily {
  ModeVector v{2, 0};
  double accel_constant = 0.0;  // A(xi) = accel_constant everywhere
  std::vector<double> t_values;
  std::shared_ptr<const SphereGrid> grid;

  ModeVector radius_modes_at(double t) const;
  StarBody body_at(double t) const;
};

/// Builds the family and certifies convexity of every listed member; a
/// violation reports the offending t.
PerturbationFamily build_family(const ModeVector& v, std::span<const double> t_values,
                                std::shared_ptr<const SphereGrid> grid = nullptr);

/// Coefficients of c0 + c1 t + c2 t^2.
struct ExpansionCoeffs {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;
};
struct WExpansion {
  ExpansionCoeffs volume;      // W_0(t)
  ExpansionCoeffs quermass_top;  // W_{n-1}(t)
};
/// Mode-space second-order expansions of W_0 and W_{n-1} for boundary data
/// (V, A = const); the S_2 surface term enters through its gradient reduction.
WExpansion w_expansion(const ModeVector& v, double accel_constant);

/// Second-order deficit coefficients delta ~ c t^2 along the constrained
/// family, in the series normalization carrying the (1/n)-weighted
/// nonlinearity term.
struct DeficitCoeffs {
  double c_torsion = 0.0;
  double c_af = 0.0;
  bool ratio_defined = false;  // false when no degree >= 2 content is present
};
DeficitCoeffs deficit_expansion(const ModeVector& v);

/// Predicted t->0 ratio of the two deficits along a pure degree-k family.
double mode_ratio(int k, int n);
/// Real-variable extension of mode_ratio on x >= 2.
double f_tilde(double x, int n);
/// lim_{k->inf} f = (n-1)/n.
double mode_ratio_limit(int n);
/// Critical points of f_tilde below this value could be minima; it is < 1.
double critical_point_threshold(int n);

struct InfimumReport {
  int n = 0, kmax = 0;
  double f2 = 0.0;
  double limit = 0.0;
  double min_f = 0.0;
  int argmin = 0;
  bool all_above_limit = false;
  bool monotone_decreasing = false;
  int derivative_sign_changes = 0;
  std::vector<double> critical_points;       // roots of f_tilde' in [2, kmax]
  bool critical_points_all_maxima = true;    // vacuously true when none exist
  double threshold = 0.0;                    // (n-1)/(3n-1)
};
/// Samples f over [2, kmax] and f_tilde' for sign changes; verifies the
/// infimum structure (attained in the tail, f(2) above the limit).
InfimumReport infimum_analysis(int n, int kmax);

enum class RatioOracle { kEllipsoid, kMa2d };

struct DeficitReport {
  double t = 0.0;
  double delta_t_oracle = 0.0;
  double delta_af_oracle = 0.0;
  double ratio_oracle = 0.0;
  double delta_t_expansion = 0.0;
  double delta_af_expansion = 0.0;
  double ratio_expansion = 0.0;
  std::string method;
  double solver_tolerance = 0.0;  // relative T error estimate of the oracle
  bool ratio_defined = false;
};

struct RatioExperiment {
  std::vector<DeficitReport> reports;
  double extrapolated_ratio = 0.0;
  double extrapolation_error = 0.0;
  double expansion_ratio = 0.0;
};

/// Deficits along the family against the chosen oracle, with the series
/// predictions side by side and a t->0 extrapolation of the oracle ratio.
RatioExperiment ratio_experiment(const PerturbationFamily& family, RatioOracle oracle,
                                 const MaSolveParams& solver_params = {});

/// Semi-axes of the ellipsoid family member at parameter t with
/// W_{n-1} = omega_n: n = 2 gives (1+t, b), n = 3 gives (1+t, 1+t, c).
std::vector<double> matched_ellipsoid_axes(int n, double t);

/// Radial-graph body of an origin-centered ellipsoid.
StarBody ellipsoid_body(std::span<const double> axes,
                        std::shared_ptr<const SphereGrid> grid = nullptr);

/// The degree-2 mode vector whose family the matched ellipsoids realize at
/// leading order (amplitude convention fixed by d(axes)/dt at t = 0).
ModeVector ellipsoid_mode_vector(int n);

}  // namespace tlab
