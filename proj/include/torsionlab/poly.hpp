#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>

namespace tlab {

/// Dense-enough multivariate polynomial in up to three variables with exact
/// coefficient arithmetic (coefficients are doubles; differentiation and the
/// ring operations introduce no truncation). Supports what the generic
/// delta/Newton-tensor algebra needs.
class Poly {
 public:
  using Key = std::array<int, 3>;  // exponents of x0, x1, x2

  Poly() = default;
  explicit Poly(double c) {
    if (c != 0.0) terms_[{0, 0, 0}] = c;
  }
  static Poly variable(int i) {
    Poly p;
    Key k{0, 0, 0};
    k[static_cast<std::size_t>(i)] = 1;
    p.terms_[k] = 1.0;
    return p;
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) {
    for (const auto& [k, c] : b.terms_) a.add_term(k, -c);
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_)
        out.add_term({ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]}, ca * cb);
    return out;
  }
  friend Poly operator*(Poly a, double s) {
    for (auto& [k, c] : a.terms_) c *= s;
    if (s == 0.0) a.terms_.clear();
    return a;
  }

  Poly derivative(int var) const {
    Poly out;
    const auto v = static_cast<std::size_t>(var);
    for (const auto& [k, c] : terms_) {
      if (k[v] == 0) continue;
      Key kd = k;
      kd[v] -= 1;
      out.add_term(kd, c * k[v]);
    }
    return out;
  }

  double eval(std::span<const double> x) const {
    double s = 0.0;
    for (const auto& [k, c] : terms_) {
      double t = c;
      for (std::size_t v = 0; v < 3; ++v)
        for (int e = 0; e < k[v]; ++e) t *= (v < x.size() ? x[v] : 0.0);
      s += t;
    }
    return s;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

 private:
  void add_term(const Key& k, double c) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      if (c != 0.0) terms_[k] = c;
    } else {
      it->second += c;
      if (it->second == 0.0) terms_.erase(it);
    }
  }

  std::map<Key, double> terms_;
};

}  // namespace tlab
