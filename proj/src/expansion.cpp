#include "torsionlab/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "torsionlab/torsion.hpp"

namespace tlab {

namespace {

constexpr double kPi = std::numbers::pi;

void require_zero_mean(const ModeVector& v, const char* who) {
  if (std::abs(v.at(0, 0)) > 0.0)
    throw std::invalid_argument(std::string(who) + ": modes must have a_0 = 0");
}

double sphere_area(int n) { return n * unit_ball_volume(n); }

int default_resolution(int n) { return n == 2 ? 512 : 64; }

double eigenvalue(int k, int n) { return static_cast<double>(k) * (k + n - 2); }

}  // namespace

double acceleration_integral(const ModeVector& v) {
  require_zero_mean(v, "acceleration_integral");
  const int n = v.n();
  double s = 0.0;
  for (int k = 1; k <= v.kmax(); ++k) s -= v.degree_power(k) * eigenvalue(k, n);
  return s;
}

ModeVector PerturbationFamily::radius_modes_at(double t) const {
  ModeVector r = v;
  r.coeffs() *= t;
  r.at(0, 0) += std::sqrt(sphere_area(v.n())) *
                (1.0 + 0.5 * t * t * accel_constant);
  return r;
}

StarBody PerturbationFamily::body_at(double t) const {
  return from_modes(radius_modes_at(t), grid);
}

PerturbationFamily build_family(const ModeVector& v, std::span<const double> t_values,
                                std::shared_ptr<const SphereGrid> grid) {
  require_zero_mean(v, "build_family");
  PerturbationFamily fam;
  fam.v = v;
  fam.accel_constant = acceleration_integral(v) / sphere_area(v.n());
  fam.t_values.assign(t_values.begin(), t_values.end());
  fam.grid = grid ? std::move(grid) : make_grid(v.n(), default_resolution(v.n()));
  for (double t : fam.t_values) {
    const StarBody body = fam.body_at(t);
    if (!body.convex) {
      std::ostringstream os;
      os << "build_family: member at t = " << t << " is not convex";
      throw std::invalid_argument(os.str());
    }
  }
  return fam;
}

WExpansion w_expansion(const ModeVector& v, double accel_constant) {
  const int n = v.n();
  const double omega = unit_ball_volume(n);
  const double area = sphere_area(n);
  const double int_v = v.at(0, 0) * std::sqrt(area);
  const double int_v2 = v.sum_sq();
  double int_grad2 = 0.0;
  for (int k = 1; k <= v.kmax(); ++k) int_grad2 += v.degree_power(k) * eigenvalue(k, n);
  const double int_s2 = 0.5 * (n - 2) * int_grad2;  // gradient reduction of S_2(D^2 V)
  const double int_a = accel_constant * area;

  WExpansion out;
  out.volume = {omega, int_v, 0.5 * (int_a + (n - 1) * int_v2)};
  out.quermass_top = {omega, int_v / n,
                      ((n - 1) * int_a + 2.0 * (n - 3) * int_s2 -
                       (n * n - 6.0 * n + 7.0) * int_grad2) /
                          (2.0 * n * (n - 1))};
  return out;
}

DeficitCoeffs deficit_expansion(const ModeVector& v) {
  require_zero_mean(v, "deficit_expansion");
  const int n = v.n();
  const double omega = unit_ball_volume(n);
  const double int_a = acceleration_integral(v);

  double sum = 0.0, ksum = 0.0, nt = 0.0, high = 0.0;
  for (int k = 1; k <= v.kmax(); ++k) {
    const double p = v.degree_power(k);
    sum += p;
    ksum += k * p;
    nt += p * (static_cast<double>(k) * k - k) / n;
    if (k >= 2) high += p;
  }

  DeficitCoeffs out;
  out.c_torsion = -0.5 * (n + 2.0) / omega * ((n + 1.0) * sum - 2.0 * ksum + int_a + nt);
  out.c_af = -0.5 * (n + 2.0) / omega * (int_a + (n - 1.0) * sum);
  out.ratio_defined = high > 0.0;
  return out;
}

double mode_ratio(int k, int n) {
  if (k < 2) throw std::invalid_argument("mode_ratio: k must be >= 2");
  if (n < 2) throw std::invalid_argument("mode_ratio: n must be >= 2");
  return f_tilde(static_cast<double>(k), n);
}

double f_tilde(double x, int n) {
  if (x < 2.0) throw std::invalid_argument("f_tilde: x must be >= 2");
  if (n < 2) throw std::invalid_argument("f_tilde: n must be >= 2");
  const double num = n + 1.0 - 2.0 * x - x * (x + n - 2.0) + (x * x - x) / n;
  const double den = n - 1.0 - x * (x + n - 2.0);
  // den = -(x-1)(x+n-1) never vanishes on x >= 2
  return num / den;
}

double mode_ratio_limit(int n) { return (n - 1.0) / n; }

double critical_point_threshold(int n) { return (n - 1.0) / (3.0 * n - 1.0); }

InfimumReport infimum_analysis(int n, int kmax) {
  if (kmax < 100) throw std::invalid_argument("infimum_analysis: kmax must be >= 100");
  InfimumReport rep;
  rep.n = n;
  rep.kmax = kmax;
  rep.limit = mode_ratio_limit(n);
  rep.threshold = critical_point_threshold(n);
  rep.f2 = mode_ratio(2, n);

  rep.min_f = rep.f2;
  rep.argmin = 2;
  rep.all_above_limit = true;
  rep.monotone_decreasing = true;
  double prev = rep.f2;
  for (int k = 3; k <= kmax; ++k) {
    const double f = mode_ratio(k, n);
    if (f < rep.min_f) {
      rep.min_f = f;
      rep.argmin = k;
    }
    if (f <= rep.limit) rep.all_above_limit = false;
    if (f >= prev) rep.monotone_decreasing = false;
    prev = f;
  }

  // f_tilde' has the sign of N'D - ND'; sample for sign changes on [2, kmax]
  const auto dnum = [&](double x) {
    const double num = n + 1.0 - 2.0 * x - x * (x + n - 2.0) + (x * x - x) / n;
    const double den = n - 1.0 - x * (x + n - 2.0);
    const double num_p = -2.0 - (2.0 * x + n - 2.0) + (2.0 * x - 1.0) / n;
    const double den_p = -(2.0 * x + n - 2.0);
    return num_p * den - num * den_p;
  };
  const int samples = 4000;
  double x_prev = 2.0;
  double d_prev = dnum(x_prev);
  for (int s = 1; s <= samples; ++s) {
    // geometric spacing reaches large kmax without starving the small-x end
    const double x = 2.0 * std::pow(static_cast<double>(kmax) / 2.0,
                                    static_cast<double>(s) / samples);
    const double d = dnum(x);
    if (d_prev == 0.0 || d * d_prev < 0.0) {
      ++rep.derivative_sign_changes;
      // bisect for the critical point and classify it by second differences
      double lo = x_prev, hi = x;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (dnum(mid) * dnum(lo) <= 0.0 ? hi : lo) = mid;
      }
      const double root = 0.5 * (lo + hi);
      rep.critical_points.push_back(root);
      const double h = 1e-4 * std::max(1.0, root);
      const double second =
          f_tilde(root + h, n) - 2.0 * f_tilde(root, n) + f_tilde(root - h, n);
      if (second >= 0.0) rep.critical_points_all_maxima = false;
    }
    x_prev = x;
    d_prev = d;
  }
  return rep;
}

std::vector<double> matched_ellipsoid_axes(int n, double t) {
  if (n != 2 && n != 3) throw std::invalid_argument("matched_ellipsoid_axes: n must be 2 or 3");
  const double omega = unit_ball_volume(n);
  const double a = 1.0 + t;
  const auto grid = make_grid(n, default_resolution(n));
  const auto residual = [&](double last_axis) {
    std::vector<double> axes(static_cast<std::size_t>(n), a);
    axes.back() = last_axis;
    const StarBody body = ellipsoid_body(axes, grid);
    return quermass(body).w[static_cast<std::size_t>(n - 1)] - omega;
  };
  // secant iteration; W_{n-1} is smooth and increasing in the free axis
  double c0 = 1.0 / (a * a), c1 = c0 - 0.05 * t - 1e-4;
  double f0 = residual(c0), f1 = residual(c1);
  for (int it = 0; it < 60 && std::abs(f1) > 1e-13 * omega; ++it) {
    const double step = f1 * (c1 - c0) / (f1 - f0);
    c0 = c1;
    f0 = f1;
    c1 = std::clamp(c1 - step, 0.1, 3.0);
    f1 = residual(c1);
  }
  std::vector<double> axes(static_cast<std::size_t>(n), a);
  axes.back() = c1;
  return axes;
}

StarBody ellipsoid_body(std::span<const double> axes, std::shared_ptr<const SphereGrid> grid) {
  const int n = static_cast<int>(axes.size());
  if (n != 2 && n != 3) throw std::invalid_argument("ellipsoid_body: n must be 2 or 3");
  if (!grid) grid = make_grid(n, default_resolution(n));
  SurfaceField r;
  if (n == 2) {
    r = sample(grid, [&](double th) {
      const double c = std::cos(th), s = std::sin(th);
      return 1.0 / std::sqrt(c * c / (axes[0] * axes[0]) + s * s / (axes[1] * axes[1]));
    });
  } else {
    r = sample(grid, [&](double th, double ph) {
      const double st = std::sin(th), ct = std::cos(th);
      const double x = st * std::cos(ph), y = st * std::sin(ph);
      return 1.0 / std::sqrt(x * x / (axes[0] * axes[0]) + y * y / (axes[1] * axes[1]) +
                             ct * ct / (axes[2] * axes[2]));
    });
  }
  return from_radial(r);
}

ModeVector ellipsoid_mode_vector(int n) {
  if (n == 2) {
    // (1+t, 1-t+...) ellipses: V = cos(2 theta) = sqrt(pi) Y_2cos
    ModeVector v(2, 4);
    v.at(2, 0) = std::sqrt(kPi);
    return v;
  }
  if (n == 3) {
    // (1+t, 1+t, c(t)) spheroids: V = 1 - 3 cos^2(theta) = -sqrt(16 pi / 5) Y_20
    ModeVector v(3, 4);
    v.at(2, 0) = -std::sqrt(16.0 * kPi / 5.0);
    return v;
  }
  throw std::invalid_argument("ellipsoid_mode_vector: n must be 2 or 3");
}

RatioExperiment ratio_experiment(const PerturbationFamily& family, RatioOracle oracle,
                                 const MaSolveParams& solver_params) {
  const int n = family.v.n();
  const DeficitCoeffs coeffs = deficit_expansion(family.v);

  if (oracle == RatioOracle::kEllipsoid) {
    for (int k = 0; k <= family.v.kmax(); ++k)
      if (k != 2 && family.v.degree_power(k) > 0.0)
        throw std::invalid_argument(
            "ratio_experiment: the ellipsoid oracle needs a pure degree-2 mode");
  } else if (n != 2) {
    throw std::invalid_argument("ratio_experiment: the 2-d solver oracle needs n = 2");
  }

  RatioExperiment out;
  out.expansion_ratio = coeffs.ratio_defined ? coeffs.c_torsion / coeffs.c_af : 0.0;

  for (double t : family.t_values) {
    DeficitReport rep;
    rep.t = t;
    rep.delta_t_expansion = coeffs.c_torsion * t * t;
    rep.delta_af_expansion = coeffs.c_af * t * t;
    rep.ratio_expansion = out.expansion_ratio;

    if (oracle == RatioOracle::kEllipsoid) {
      const std::vector<double> axes = matched_ellipsoid_axes(n, t);
      const StarBody body = ellipsoid_body(axes, family.grid);
      const QuermassProfile prof = quermass(body);
      rep.delta_t_oracle = torsion_deficit(ellipsoid_torsion(axes).torsion, prof);
      rep.delta_af_oracle = af_deficit(prof);
      rep.method = "ellipsoid-oracle";
      rep.solver_tolerance = 0.0;
    } else {
      const StarBody body = family.body_at(t);
      const RichardsonTorsion rich = ma_torsion_2d(body, solver_params);
      const QuermassProfile prof = quermass(body);
      rep.delta_t_oracle = torsion_deficit(rich.extrapolated, prof);
      rep.delta_af_oracle = af_deficit(prof);
      rep.method = "ma2d-oracle";
      rep.solver_tolerance = rich.rel_error_estimate;
    }
    rep.ratio_defined = rep.delta_af_oracle > 1e-12;
    rep.ratio_oracle = rep.ratio_defined ? rep.delta_t_oracle / rep.delta_af_oracle : 0.0;
    out.reports.push_back(rep);
  }

  // linear extrapolation of the oracle ratio from the two smallest t
  std::vector<const DeficitReport*> defined;
  for (const auto& r : out.reports)
    if (r.ratio_defined) defined.push_back(&r);
  std::sort(defined.begin(), defined.end(),
            [](const DeficitReport* a, const DeficitReport* b) { return a->t < b->t; });
  if (defined.size() >= 2) {
    const auto& r1 = *defined[0];
    const auto& r2 = *defined[1];
    out.extrapolated_ratio =
        r1.ratio_oracle + (r1.ratio_oracle - r2.ratio_oracle) * r1.t / (r2.t - r1.t);
    out.extrapolation_error = std::abs(out.extrapolated_ratio - r1.ratio_oracle) +
                              r1.solver_tolerance * 10.0;
  } else if (defined.size() == 1) {
    out.extrapolated_ratio = defined[0]->ratio_oracle;
    out.extrapolation_error = std::abs(out.extrapolated_ratio);
  }
  return out;
}

}  // namespace tlab
