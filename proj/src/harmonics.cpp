#include "torsionlab/harmonics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

int HarmonicBasis::basis_size(int n, int kmax) {
  return n == 2 ? 2 * kmax + 1 : (kmax + 1) * (kmax + 1);
}

HarmonicBasis::HarmonicBasis(int n, int kmax) : n_(n), kmax_(kmax) {
  if (n != 2 && n != 3) throw std::invalid_argument("HarmonicBasis: n must be 2 or 3");
  if (kmax < 0) throw std::invalid_argument("HarmonicBasis: kmax must be nonnegative");
  size_ = basis_size(n, kmax);
}

int HarmonicBasis::degree_of(int index) const {
  if (n_ == 2) return index == 0 ? 0 : (index + 1) / 2;
  return static_cast<int>(std::sqrt(static_cast<double>(index)) + 1e-9);
}

void HarmonicBasis::resize(NodeEval& e) const {
  e.y.resize(size_);
  e.dt.resize(size_);
  e.dtt.resize(size_);
  if (n_ == 3) {
    e.dp.resize(size_);
    e.dtp.resize(size_);
    e.dpp.resize(size_);
  } else {
    e.dp.resize(0);
    e.dtp.resize(0);
    e.dpp.resize(0);
  }
}

void HarmonicBasis::eval_node(double theta, double phi, NodeEval& e) const {
  if (e.y.size() != size_) resize(e);
  if (n_ == 2)
    eval_node_circle(theta, e);
  else
    eval_node_sphere(theta, phi, e);
}

void HarmonicBasis::eval_node_circle(double theta, NodeEval& e) const {
  const double c0 = 1.0 / std::sqrt(2.0 * kPi);
  const double cn = 1.0 / std::sqrt(kPi);
  e.y[0] = c0;
  e.dt[0] = 0.0;
  e.dtt[0] = 0.0;
  for (int k = 1; k <= kmax_; ++k) {
    const double ck = std::cos(k * theta), sk = std::sin(k * theta);
    e.y[2 * k - 1] = cn * ck;
    e.dt[2 * k - 1] = -cn * k * sk;
    e.dtt[2 * k - 1] = -cn * k * k * ck;
    e.y[2 * k] = cn * sk;
    e.dt[2 * k] = cn * k * ck;
    e.dtt[2 * k] = -cn * k * k * sk;
  }
}

void HarmonicBasis::eval_node_sphere(double theta, double phi, NodeEval& e) const {
  const int L = kmax_;
  const double mu = std::cos(theta);
  const double st = std::sin(theta);
  if (st <= 0.0) throw std::invalid_argument("HarmonicBasis: node at a pole");
  const double cot = mu / st;

  // fully normalized associated Legendre values and theta-derivatives,
  // p(l,m) with 0 <= m <= l <= L
  const auto idx = [L](int l, int m) { return l * (L + 1) + m; };
  std::vector<double> p(static_cast<std::size_t>((L + 1) * (L + 1)), 0.0);
  std::vector<double> pt(p.size(), 0.0);

  p[idx(0, 0)] = 1.0 / std::sqrt(4.0 * kPi);
  for (int m = 1; m <= L; ++m)
    p[idx(m, m)] = std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * st * p[idx(m - 1, m - 1)];
  for (int m = 0; m < L; ++m)
    p[idx(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * mu * p[idx(m, m)];
  for (int m = 0; m <= L; ++m) {
    for (int l = m + 2; l <= L; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
      const double am1 = std::sqrt((4.0 * (l - 1.0) * (l - 1.0) - 1.0) /
                                   ((l - 1.0) * (l - 1.0) - static_cast<double>(m) * m));
      p[idx(l, m)] = a * (mu * p[idx(l - 1, m)] - p[idx(l - 2, m)] / am1);
    }
  }
  // d/dtheta via  p'(l,m) = ( l mu p(l,m) - e(l,m) p(l-1,m) ) / sin(theta)
  for (int m = 0; m <= L; ++m) {
    for (int l = m; l <= L; ++l) {
      const double em =
          (l == 0) ? 0.0
                   : std::sqrt(((2.0 * l + 1.0) * (static_cast<double>(l) * l - m * m)) /
                               (2.0 * l - 1.0));
      const double below = (l > m) ? p[idx(l - 1, m)] : 0.0;
      pt[idx(l, m)] = (l * mu * p[idx(l, m)] - em * below) / st;
    }
  }

  const double sq2 = std::sqrt(2.0);
  for (int l = 0; l <= L; ++l) {
    const double lam = static_cast<double>(l) * (l + 1);
    for (int m = -l; m <= l; ++m) {
      const int b = l * l + (l + m);
      const int ma = std::abs(m);
      const double P = p[idx(l, ma)];
      const double Pt = pt[idx(l, ma)];
      // second theta-derivative from the associated Legendre ODE
      const double Ptt = -cot * Pt - (lam - (static_cast<double>(ma) * ma) / (st * st)) * P;
      double az, azp, azpp;  // azimuthal factor and its phi-derivatives
      if (m == 0) {
        az = 1.0;
        azp = 0.0;
        azpp = 0.0;
      } else if (m > 0) {
        az = sq2 * std::cos(m * phi);
        azp = -sq2 * m * std::sin(m * phi);
        azpp = -static_cast<double>(m) * m * az;
      } else {
        az = sq2 * std::sin(ma * phi);
        azp = sq2 * ma * std::cos(ma * phi);
        azpp = -static_cast<double>(ma) * ma * az;
      }
      e.y[b] = P * az;
      e.dt[b] = Pt * az;
      e.dp[b] = P * azp;
      e.dtt[b] = Ptt * az;
      e.dtp[b] = Pt * azp;
      e.dpp[b] = P * azpp;
    }
  }
}

}  // namespace tlab
