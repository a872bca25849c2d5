#include "torsionlab/symm.hpp"

#include <algorithm>
#include <cstdlib>

namespace tlab {

namespace {

// integer determinant by cofactor expansion over an active-column mask
int det_recursive(const std::vector<int>& m, int k, int row, unsigned colmask) {
  if (row == k) return 1;
  int det = 0;
  int sign = 1;
  for (int c = 0; c < k; ++c) {
    if (colmask & (1u << c)) continue;
    const int entry = m[static_cast<std::size_t>(row) * k + c];
    if (entry != 0)
      det += sign * entry * det_recursive(m, k, row + 1, colmask | (1u << c));
    sign = -sign;
  }
  return det;
}

}  // namespace

int gen_delta_perm(std::span<const int> upper, std::span<const int> lower, int n) {
  if (upper.size() != lower.size())
    throw std::invalid_argument("gen_delta: tuple length mismatch");
  detail::check_tuple(upper, n);
  detail::check_tuple(lower, n);
  const int k = static_cast<int>(upper.size());
  if (k > n) throw std::invalid_argument("gen_delta: tuple longer than dimension");
  if (k == 0) return 1;

  // repeated indices annihilate the delta
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (upper[a] == upper[b] || lower[a] == lower[b]) return 0;

  // permutation sigma with upper[a] = lower[sigma[a]]; zero if sets differ
  std::vector<int> sigma(k, -1);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      if (upper[a] == lower[b]) {
        sigma[a] = b;
        break;
      }
    }
    if (sigma[a] < 0) return 0;
  }
  int inversions = 0;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (sigma[a] > sigma[b]) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

int gen_delta_det(std::span<const int> upper, std::span<const int> lower, int n) {
  if (upper.size() != lower.size())
    throw std::invalid_argument("gen_delta: tuple length mismatch");
  detail::check_tuple(upper, n);
  detail::check_tuple(lower, n);
  const int k = static_cast<int>(upper.size());
  if (k > n) throw std::invalid_argument("gen_delta: tuple longer than dimension");
  if (k == 0) return 1;
  std::vector<int> m(static_cast<std::size_t>(k) * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      m[static_cast<std::size_t>(a) * k + b] = (upper[a] == lower[b]) ? 1 : 0;
  return det_recursive(m, k, 0, 0u);
}

int gen_delta(std::span<const int> upper, std::span<const int> lower, int n) {
  return upper.size() <= 4 ? gen_delta_perm(upper, lower, n)
                           : gen_delta_det(upper, lower, n);
}

std::int64_t contract_delta(std::span<const int> rem_upper,
                            std::span<const int> rem_lower, int p, int n) {
  if (rem_upper.size() != rem_lower.size())
    throw std::invalid_argument("contract_delta: tuple length mismatch");
  const int rem = static_cast<int>(rem_upper.size());
  const int k = p + rem;
  if (p <= 0 || p >= k) throw std::invalid_argument("contract_delta: need 0 < p < k");
  if (k > n) throw std::invalid_argument("contract_delta: k exceeds dimension");
  detail::check_tuple(rem_upper, n);
  detail::check_tuple(rem_lower, n);

  std::vector<int> up(k), lo(k), c(p, 1), d(p, 1);
  std::copy(rem_upper.begin(), rem_upper.end(), up.begin() + p);
  std::copy(rem_lower.begin(), rem_lower.end(), lo.begin() + p);

  std::int64_t sum = 0;
  auto advance = [n](std::vector<int>& idx) {
    for (std::size_t t = 0; t < idx.size(); ++t) {
      if (idx[t] < n) {
        ++idx[t];
        return true;
      }
      idx[t] = 1;
    }
    return false;
  };
  do {
    std::copy(c.begin(), c.end(), up.begin());
    std::fill(d.begin(), d.end(), 1);
    do {
      const int small = gen_delta(std::span<const int>(c), std::span<const int>(d), n);
      if (small == 0) continue;
      std::copy(d.begin(), d.end(), lo.begin());
      sum += static_cast<std::int64_t>(small) *
             gen_delta(std::span<const int>(up), std::span<const int>(lo), n);
    } while (advance(d));
  } while (advance(c));
  return sum;
}

double elem_sym(std::span<const double> lambda, int k) {
  const int n = static_cast<int>(lambda.size());
  if (k < 0 || k > n) throw std::invalid_argument("elem_sym: need 0 <= k <= n");
  // O(n k) recurrence: fold entries into the running coefficient table
  std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::min(k, i + 1); j >= 1; --j) e[j] += lambda[i] * e[j - 1];
  return e[k];
}

double elem_sym(const Eigen::MatrixXd& a, int k) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("elem_sym: matrix not square");
  if (k < 0 || k > n) throw std::invalid_argument("elem_sym: need 0 <= k <= n");
  if (k == 0) return 1.0;

  double kfact = 1.0;
  for (int m = 2; m <= k; ++m) kfact *= m;

  std::vector<int> pool(n);
  for (int v = 0; v < n; ++v) pool[v] = v + 1;

  double sum = 0.0;
  std::vector<int> jt_sorted;
  detail::for_each_ordered_tuple(std::span<const int>(pool), k, [&](std::span<const int> it) {
    // the lower tuple must be an arrangement of the same set
    jt_sorted.assign(it.begin(), it.end());
    detail::for_each_ordered_tuple(std::span<const int>(jt_sorted), k, [&](std::span<const int> jt) {
      const int sign = gen_delta_perm(jt, it, n);
      double prod = sign;
      for (int t = 0; t < k; ++t) prod *= a(it[t] - 1, jt[t] - 1);
      sum += prod;
    });
  });
  return sum / kfact;
}

Eigen::MatrixXd newton_tensor(std::span<const Eigen::MatrixXd> factors, int n) {
  std::vector<GenericMatrix<double>> gm;
  gm.reserve(factors.size());
  for (const auto& f : factors) {
    if (f.rows() != n || f.cols() != n)
      throw std::invalid_argument("newton_tensor: factor dimension mismatch");
    GenericMatrix<double> g(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = f(i, j);
    gm.push_back(std::move(g));
  }
  const GenericMatrix<double> t =
      newton_tensor_generic<double>(std::span<const GenericMatrix<double>>(gm), n);
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = t(i, j);
  return out;
}

Eigen::MatrixXd newton_tensor(const Eigen::MatrixXd& a, int k) {
  const int n = static_cast<int>(a.rows());
  std::vector<Eigen::MatrixXd> factors(static_cast<std::size_t>(k), a);
  return newton_tensor(std::span<const Eigen::MatrixXd>(factors), n);
}

Eigen::MatrixXd cofactor_matrix(const Eigen::MatrixXd& a, int k) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("cofactor_matrix: matrix not square");
  if (k < 1 || k > n) throw std::invalid_argument("cofactor_matrix: need 1 <= k <= n");
  return newton_tensor(a, k - 1);
}

}  // namespace tlab
