#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace tlab {

/// Generalized Kronecker delta on 1-based index tuples with entries in [1, n].
/// Returns +1 / -1 when the upper tuple is distinct and an even / odd
/// permutation of the lower tuple, 0 otherwise.
/// Dispatches to a permutation-sign evaluation for |tuple| <= 4 and to the
/// determinant-of-single-deltas expansion for longer tuples.
int gen_delta(std::span<const int> upper, std::span<const int> lower, int n);

/// Permutation-sign route, valid for any tuple length. Exposed so the two
/// evaluation strategies can be cross-checked.
int gen_delta_perm(std::span<const int> upper, std::span<const int> lower, int n);

/// Determinant route: integer determinant of the k x k matrix of single deltas.
int gen_delta_det(std::span<const int> upper, std::span<const int> lower, int n);

/// Brute-force contraction of the first p index pairs of a generalized delta
/// of total order k = p + |rem_upper|. Sums delta(c,d) * delta(c+rem_upper,
/// d+rem_lower) over all c, d in [1,n]^p. The result equals
/// p! (n-k+p)! / (n-k)! times gen_delta(rem_upper, rem_lower).
std::int64_t contract_delta(std::span<const int> rem_upper,
                            std::span<const int> rem_lower, int p, int n);

/// k-th elementary symmetric polynomial of a real vector; S_0 = 1.
double elem_sym(std::span<const double> lambda, int k);

/// S_k of a square matrix by direct summation of the generalized-delta
/// formula (1/k!) delta^{j...}_{i...} A^{i1}_{j1} ... A^{ik}_{jk}.
/// Agrees with elem_sym of the eigenvalues for symmetric A.
double elem_sym(const Eigen::MatrixXd& a, int k);

/// Newton transformation tensor [T_k]^j_i of k matrix arguments
/// (1/k!) delta^{j j1..jk}_{i i1..ik} (A_1)^{i1}_{j1} ... (A_k)^{ik}_{jk};
/// symmetric in the arguments. k = 0 yields the identity.
Eigen::MatrixXd newton_tensor(std::span<const Eigen::MatrixXd> factors, int n);

/// Newton tensor with k equal arguments.
Eigen::MatrixXd newton_tensor(const Eigen::MatrixXd& a, int k);

/// Cofactor matrix S_k^{ij}(A) = dS_k/dA^i_j = [T_{k-1}]^j_i(A).
/// For k = n this is the classical adjugate.
Eigen::MatrixXd cofactor_matrix(const Eigen::MatrixXd& a, int k);

namespace detail {

inline void check_tuple(std::span<const int> t, int n) {
  for (int v : t)
    if (v < 1 || v > n) throw std::invalid_argument("index out of range [1,n]");
}

/// Enumerates every ordered tuple of k distinct values drawn from `pool`,
/// invoking f(tuple).
template <typename F>
void for_each_ordered_tuple(std::span<const int> pool, int k, F&& f) {
  const int p = static_cast<int>(pool.size());
  if (k > p) return;
  std::vector<int> tuple(k);
  std::vector<char> used(p, 0);
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == k) {
      f(std::span<const int>(tuple));
      return;
    }
    for (int s = 0; s < p; ++s) {
      if (used[s]) continue;
      used[s] = 1;
      tuple[depth] = pool[s];
      self(self, depth + 1);
      used[s] = 0;
    }
  };
  rec(rec, 0);
}

}  // namespace detail

/// Minimal dense square matrix over an arbitrary commutative ring; lets the
/// delta/Newton-tensor algebra run over polynomial entries as well as doubles.
template <typename T>
struct GenericMatrix {
  int n = 0;
  std::vector<T> v;

  GenericMatrix() = default;
  explicit GenericMatrix(int dim) : n(dim), v(static_cast<std::size_t>(dim) * dim) {}
  T& operator()(int i, int j) { return v[static_cast<std::size_t>(i) * n + j]; }
  const T& operator()(int i, int j) const { return v[static_cast<std::size_t>(i) * n + j]; }
};

/// Ring-generic Newton tensor. Entry requirements on T: value-initialization
/// to zero, construction from double, +=, binary *, and scaling by double.
template <typename T>
GenericMatrix<T> newton_tensor_generic(std::span<const GenericMatrix<T>> factors, int n) {
  const int k = static_cast<int>(factors.size());
  for (const auto& m : factors)
    if (m.n != n) throw std::invalid_argument("newton_tensor: factor dimension mismatch");

  GenericMatrix<T> out(n);
  if (k == 0) {
    for (int i = 0; i < n; ++i) out(i, i) = T(1.0);
    return out;
  }

  double kfact = 1.0;
  for (int m = 2; m <= k; ++m) kfact *= m;
  const double inv_kfact = 1.0 / kfact;

  std::vector<int> upper(k + 1), lower(k + 1), pool, rest;
  for (int jj = 1; jj <= n; ++jj) {
    pool.clear();
    for (int v = 1; v <= n; ++v)
      if (v != jj) pool.push_back(v);
    upper[0] = jj;
    for (int ii = 1; ii <= n; ++ii) {
      lower[0] = ii;
      T acc{};
      // ordered distinct (j_1..j_k) avoiding the free upper index; the lower
      // tuple (i, i_1..i_k) must then be an arrangement of the same index set
      detail::for_each_ordered_tuple(std::span<const int>(pool), k, [&](std::span<const int> jt) {
        bool contains_i = (ii == jj);
        for (int t = 0; t < k && !contains_i; ++t) contains_i = (jt[t] == ii);
        if (!contains_i) return;
        for (int t = 0; t < k; ++t) upper[1 + t] = jt[t];
        rest.clear();
        bool skipped = (ii == jj);
        for (int t = 0; t < k; ++t) {
          if (!skipped && jt[t] == ii) { skipped = true; continue; }
          rest.push_back(jt[t]);
        }
        if (ii != jj) rest.push_back(jj);
        detail::for_each_ordered_tuple(std::span<const int>(rest), k, [&](std::span<const int> it) {
          for (int t = 0; t < k; ++t) lower[1 + t] = it[t];
          const int sign = gen_delta_perm(std::span<const int>(upper), std::span<const int>(lower), n);
          if (sign == 0) return;
          T prod = factors[0](lower[1] - 1, upper[1] - 1);
          for (int t = 1; t < k; ++t) prod = prod * factors[t](lower[1 + t] - 1, upper[1 + t] - 1);
          acc += prod * static_cast<double>(sign);
        });
      });
      out(ii - 1, jj - 1) = acc * inv_kfact;
    }
  }
  return out;
}

}  // namespace tlab
