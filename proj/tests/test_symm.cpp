#include "torsionlab/symm.hpp"

#include <gtest/gtest.h>

#include <array>
#include <random>
#include <vector>

#include "torsionlab/poly.hpp"

using tlab::cofactor_matrix;
using tlab::contract_delta;
using tlab::elem_sym;
using tlab::gen_delta;
using tlab::gen_delta_det;
using tlab::gen_delta_perm;
using tlab::newton_tensor;

namespace {

std::vector<int> tup(std::initializer_list<int> v) { return {v}; }

Eigen::MatrixXd random_symmetric(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a(i, j) = a(j, i) = u(rng);
  return a;
}

}  // namespace

TEST(GenDelta, BasicValues) {
  EXPECT_EQ(gen_delta(tup({1, 2}), tup({1, 2}), 3), 1);
  EXPECT_EQ(gen_delta(tup({1, 2}), tup({2, 1}), 3), -1);
  EXPECT_EQ(gen_delta(tup({1, 1}), tup({1, 2}), 3), 0);
  EXPECT_EQ(gen_delta(tup({2, 3}), tup({1, 2}), 3), 0);
}

TEST(GenDelta, InvalidInput) {
  EXPECT_THROW(gen_delta(tup({1, 2}), tup({1}), 3), std::invalid_argument);
  EXPECT_THROW(gen_delta(tup({0, 2}), tup({1, 2}), 3), std::invalid_argument);
  EXPECT_THROW(gen_delta(tup({1, 4}), tup({1, 4}), 3), std::invalid_argument);
  EXPECT_THROW(gen_delta(tup({1, 2, 3, 4}), tup({1, 2, 3, 4}), 3), std::invalid_argument);
}

TEST(GenDelta, SwapAntisymmetry) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 5;
    const int k = 2 + static_cast<int>(rng() % 4);  // 2..5
    std::vector<int> up(k), lo(k);
    for (int t = 0; t < k; ++t) {
      up[t] = pick(rng);
      lo[t] = pick(rng);
    }
    const int base = gen_delta_perm(up, lo, n);
    auto swapped = up;
    std::swap(swapped[0], swapped[1]);
    EXPECT_EQ(gen_delta_perm(swapped, lo, n), -base);
    auto lswapped = lo;
    std::swap(lswapped[0], lswapped[1]);
    EXPECT_EQ(gen_delta_perm(up, lswapped, n), -base);
  }
}

TEST(GenDelta, PermutationAndDeterminantRoutesAgree) {
  for (int n = 1; n <= 4; ++n) {
    for (int k = 1; k <= n; ++k) {
      std::vector<int> up(k, 1), lo(k, 1);
      auto advance = [&](std::vector<int>& idx) {
        for (int t = 0; t < k; ++t) {
          if (idx[t] < n) {
            ++idx[t];
            return true;
          }
          idx[t] = 1;
        }
        return false;
      };
      do {
        std::fill(lo.begin(), lo.end(), 1);
        do {
          ASSERT_EQ(gen_delta_perm(up, lo, n), gen_delta_det(up, lo, n));
        } while (advance(lo));
      } while (advance(up));
    }
  }
  // sampled at n = 5, k = 5 (the determinant dispatch path)
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(1, 5);
  for (int trial = 0; trial < 5000; ++trial) {
    std::vector<int> up(5), lo(5);
    for (int t = 0; t < 5; ++t) {
      up[t] = pick(rng);
      lo[t] = pick(rng);
    }
    ASSERT_EQ(gen_delta_perm(up, lo, 5), gen_delta_det(up, lo, 5));
    ASSERT_EQ(gen_delta(up, lo, 5), gen_delta_det(up, lo, 5));
  }
}

TEST(ContractDelta, SingleContractionExamples) {
  // n=3, k=2, p=1, remaining identity pair: (n-k+1) * delta = 2
  EXPECT_EQ(contract_delta(tup({2}), tup({2}), 1, 3), 2);
  // n=4, k=3, p=2, remaining identity pair: 2! * 3! / 1! = 12
  EXPECT_EQ(contract_delta(tup({1}), tup({1}), 2, 4), 12);
  // remaining pair with a repeated index
  EXPECT_EQ(contract_delta(tup({1, 1}), tup({1, 2}), 1, 4), 0);
}

TEST(ContractDelta, IdentityExhaustiveSmall) {
  // p!(n-k+p)!/(n-k)! * gen_delta(rest), all remaining tuples for n <= 4
  for (int n = 2; n <= 4; ++n) {
    for (int k = 2; k <= n; ++k) {
      for (int p = 1; p < k; ++p) {
        double factor = 1.0;
        for (int t = 2; t <= p; ++t) factor *= t;
        for (int t = n - k + 1; t <= n - k + p; ++t) factor *= t;
        const int rem = k - p;
        std::vector<int> up(rem, 1), lo(rem, 1);
        auto advance = [&](std::vector<int>& idx) {
          for (int t = 0; t < rem; ++t) {
            if (idx[t] < n) {
              ++idx[t];
              return true;
            }
            idx[t] = 1;
          }
          return false;
        };
        do {
          std::fill(lo.begin(), lo.end(), 1);
          do {
            const auto brute = contract_delta(up, lo, p, n);
            const auto expected =
                static_cast<std::int64_t>(factor) * gen_delta(up, lo, n);
            ASSERT_EQ(brute, expected) << "n=" << n << " k=" << k << " p=" << p;
          } while (advance(lo));
        } while (advance(up));
      }
    }
  }
}

TEST(ContractDelta, InvalidInput) {
  EXPECT_THROW(contract_delta(tup({1}), tup({1}), 0, 3), std::invalid_argument);
  EXPECT_THROW(contract_delta(tup({}), tup({}), 2, 3), std::invalid_argument);
  EXPECT_THROW(contract_delta(tup({1, 2, 3}), tup({1, 2, 3}), 1, 3), std::invalid_argument);
}

TEST(ElemSym, VectorValues) {
  const std::vector<double> lam{1.0, 2.0, 3.0};
  EXPECT_DOUBLE_EQ(elem_sym(std::span<const double>(lam), 2), 11.0);
  EXPECT_DOUBLE_EQ(elem_sym(std::span<const double>(lam), 3), 6.0);
  EXPECT_DOUBLE_EQ(elem_sym(std::span<const double>(lam), 0), 1.0);
  EXPECT_THROW(elem_sym(std::span<const double>(lam), 4), std::invalid_argument);
}

TEST(ElemSym, MatrixValues) {
  EXPECT_NEAR(elem_sym(Eigen::MatrixXd::Identity(3, 3), 2), 3.0, 1e-14);
  Eigen::MatrixXd d = Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal();
  EXPECT_NEAR(elem_sym(d, 2), 11.0, 1e-14);

  std::mt19937_64 rng(3);
  const Eigen::MatrixXd a = random_symmetric(4, rng);
  EXPECT_NEAR(elem_sym(a, 1), a.trace(), 1e-13);
  EXPECT_NEAR(elem_sym(a, 4), a.determinant(), 1e-13);
}

TEST(ElemSym, MatrixMatchesEigenvalues) {
  std::mt19937_64 rng(17);
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 25; ++trial) {
      const Eigen::MatrixXd a = random_symmetric(n, rng);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
      const Eigen::VectorXd lam = es.eigenvalues();
      std::vector<double> lv(lam.data(), lam.data() + n);
      for (int k = 0; k <= n; ++k)
        ASSERT_NEAR(elem_sym(a, k), elem_sym(std::span<const double>(lv), k), 1e-12);
    }
  }
}

TEST(NewtonTensor, SmallCases) {
  // empty product convention
  const Eigen::MatrixXd t0 = newton_tensor(Eigen::MatrixXd::Identity(3, 3), 0);
  EXPECT_TRUE(t0.isApprox(Eigen::MatrixXd::Identity(3, 3)));

  // [T_1](I) = (n-1) I
  for (int n = 2; n <= 4; ++n) {
    const Eigen::MatrixXd t1 = newton_tensor(Eigen::MatrixXd::Identity(n, n), 1);
    EXPECT_TRUE(t1.isApprox((n - 1.0) * Eigen::MatrixXd::Identity(n, n)))
        << "n=" << n << "\n" << t1;
  }
}

TEST(NewtonTensor, MixedArgumentSymmetry) {
  std::mt19937_64 rng(23);
  const int n = 3;
  const Eigen::MatrixXd a = random_symmetric(n, rng);
  const Eigen::MatrixXd b = random_symmetric(n, rng);
  const std::vector<Eigen::MatrixXd> ab{a, b}, ba{b, a};
  const Eigen::MatrixXd tab = newton_tensor(std::span<const Eigen::MatrixXd>(ab), n);
  const Eigen::MatrixXd tba = newton_tensor(std::span<const Eigen::MatrixXd>(ba), n);
  EXPECT_LT((tab - tba).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(NewtonTensor, MatchesClassicalRecursion) {
  // T_k(A) = S_k(A) I - A T_{k-1}(A)
  std::mt19937_64 rng(29);
  for (int n = 2; n <= 5; ++n) {
    const Eigen::MatrixXd a = random_symmetric(n, rng);
    Eigen::MatrixXd prev = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= n - 1; ++k) {
      const Eigen::MatrixXd expected =
          elem_sym(a, k) * Eigen::MatrixXd::Identity(n, n) - a * prev;
      const Eigen::MatrixXd got = newton_tensor(a, k);
      ASSERT_LT((got - expected).cwiseAbs().maxCoeff(), 1e-12) << "n=" << n << " k=" << k;
      prev = got;
    }
  }
}

TEST(Cofactor, AdjugateValues) {
  EXPECT_TRUE(cofactor_matrix(Eigen::MatrixXd::Identity(2, 2), 2)
                  .isApprox(Eigen::MatrixXd::Identity(2, 2)));
  Eigen::MatrixXd d2 = Eigen::Vector2d(2.0, 3.0).asDiagonal();
  Eigen::MatrixXd adj = Eigen::Vector2d(3.0, 2.0).asDiagonal();
  EXPECT_TRUE(cofactor_matrix(d2, 2).isApprox(adj));

  // k = n on invertible A: det(A) * inverse(A)^T
  std::mt19937_64 rng(31);
  for (int n = 2; n <= 4; ++n) {
    const Eigen::MatrixXd a = random_symmetric(n, rng) + 3.0 * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd expected = a.determinant() * a.inverse().transpose();
    ASSERT_LT((cofactor_matrix(a, n) - expected).cwiseAbs().maxCoeff(), 1e-11);
  }
}

TEST(Cofactor, EulerIdentity) {
  // k S_k(A) = sum_ij S_k^{ij}(A) A_ij
  std::mt19937_64 rng(37);
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::MatrixXd a = random_symmetric(n, rng);
      for (int k = 1; k <= n; ++k) {
        const double lhs = k * elem_sym(a, k);
        const double rhs = cofactor_matrix(a, k).cwiseProduct(a).sum();
        ASSERT_NEAR(lhs, rhs, 1e-12) << "n=" << n << " k=" << k;
      }
    }
  }
}

TEST(Cofactor, MatchesDerivativeOfElemSym) {
  std::mt19937_64 rng(41);
  const int n = 3;
  const Eigen::MatrixXd a = random_symmetric(n, rng);
  const double h = 1e-6;
  for (int k = 1; k <= n; ++k) {
    const Eigen::MatrixXd cof = cofactor_matrix(a, k);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Eigen::MatrixXd ap = a, am = a;
        ap(i, j) += h;
        am(i, j) -= h;
        const double fd = (elem_sym(ap, k) - elem_sym(am, k)) / (2.0 * h);
        ASSERT_NEAR(cof(i, j), fd, 1e-7) << "k=" << k;
      }
    }
  }
}

namespace {

// random polynomial of total degree <= 3 in dim variables
tlab::Poly random_cubic(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  tlab::Poly p;
  std::array<int, 3> e{0, 0, 0};
  auto rec = [&](auto&& self, int var, int remaining) -> void {
    if (var == dim) {
      tlab::Poly mono(u(rng));
      for (int v = 0; v < dim; ++v)
        for (int t = 0; t < e[static_cast<std::size_t>(v)]; ++t)
          mono = mono * tlab::Poly::variable(v);
      p += mono;
      return;
    }
    for (int d = 0; d <= remaining; ++d) {
      e[static_cast<std::size_t>(var)] = d;
      self(self, var + 1, remaining - d);
    }
    e[static_cast<std::size_t>(var)] = 0;
  };
  rec(rec, 0, 3);
  return p;
}

}  // namespace

TEST(Cofactor, DivergenceFreeRowsOnCubics) {
  // sum_i d_i [ S_k^{ij}(D^2 u) ] = 0 identically for polynomial u of degree <= 3
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 2; n <= 3; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      const tlab::Poly poly = random_cubic(n, rng);
      tlab::GenericMatrix<tlab::Poly> hess(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) hess(i, j) = poly.derivative(i).derivative(j);
      for (int k = 1; k <= n; ++k) {
        const std::vector<tlab::GenericMatrix<tlab::Poly>> factors(
            static_cast<std::size_t>(k - 1), hess);
        const auto cof = tlab::newton_tensor_generic<tlab::Poly>(
            std::span<const tlab::GenericMatrix<tlab::Poly>>(factors), n);
        for (int j = 0; j < n; ++j) {
          tlab::Poly div;
          for (int i = 0; i < n; ++i) div += cof(i, j).derivative(i);
          EXPECT_LT(div.max_abs_coeff(), 1e-12) << "n=" << n << " k=" << k;
          for (int pt = 0; pt < 100; ++pt) {
            const std::array<double, 3> x{u(rng), u(rng), u(rng)};
            ASSERT_LT(std::abs(div.eval(std::span<const double>(x.data(), 3))), 1e-12);
          }
        }
      }
    }
  }
}
