#include "chpolar/linalg.hpp"

#include <gtest/gtest.h>

using namespace chpolar::linalg;

TEST(Linalg, ApplyJMatchesComplexMultiplication) {
  std::mt19937_64 rng(3);
  const VectorXd v = random_unit_vector(6, rng);
  const VectorXcd z = to_complex(v);
  const VectorXd jv = apply_j(v);
  EXPECT_LT((to_complex(jv) - std::complex<double>(0, 1) * z).norm(), 1e-15);
  EXPECT_LT((apply_j(jv) + v).norm(), 1e-15);
  EXPECT_LT((j_matrix(3) * v - jv).norm(), 1e-15);
}

TEST(Linalg, RealifyIsMultiplicative) {
  std::mt19937_64 rng(5);
  const MatrixXcd a = random_unitary(3, rng);
  const MatrixXcd b = MatrixXcd::Random(3, 3);
  EXPECT_LT((realify(a * b) - realify(a) * realify(b)).norm(), 1e-12);
  const VectorXd v = random_unit_vector(6, rng);
  EXPECT_LT((realify(a) * v - to_real(a * to_complex(v))).norm(), 1e-12);
}

TEST(Linalg, OrthonormalizeDropsDependentColumns) {
  MatrixXd m(3, 3);
  m << 1, 2, 0,
       0, 0, 1,
       1, 2, 0;
  const MatrixXd q = orthonormalize(m);
  ASSERT_EQ(q.cols(), 2);
  EXPECT_LT((q.transpose() * q - MatrixXd::Identity(2, 2)).norm(), 1e-14);
}

TEST(Linalg, RankAndNullSpace) {
  MatrixXd a(2, 4);
  a << 1, 0, 1, 0,
       0, 1, 0, 1;
  EXPECT_EQ(rank(a, 1e-10), 2);
  const MatrixXd k = null_space(a, 1e-10);
  ASSERT_EQ(k.cols(), 2);
  EXPECT_LT((a * k).norm(), 1e-14);
  EXPECT_EQ(rank(MatrixXd::Zero(3, 3), 1e-10), 0);
  // Absolute floor: tiny matrices are numerically zero.
  EXPECT_EQ(rank(1e-12 * MatrixXd::Identity(2, 2), 1e-8), 0);
}

TEST(Linalg, RelativeComplement) {
  const MatrixXd v = MatrixXd::Identity(4, 3);
  const MatrixXd u = MatrixXd::Identity(4, 1);
  const MatrixXd c = relative_complement(v, u);
  ASSERT_EQ(c.cols(), 2);
  EXPECT_LT((u.transpose() * c).norm(), 1e-14);
}

TEST(Linalg, RandomUnitaryIsUnitary) {
  std::mt19937_64 rng(11);
  for (int m = 1; m <= 6; ++m) {
    const MatrixXcd u = random_unitary(m, rng);
    EXPECT_LT((u.adjoint() * u - MatrixXcd::Identity(m, m)).norm(), 1e-12);
  }
}

TEST(Linalg, MaxAbsDiff) {
  EXPECT_EQ(max_abs_diff(MatrixXd(0, 0), MatrixXd(0, 0)), 0.0);
  MatrixXd a = MatrixXd::Zero(2, 2);
  MatrixXd b = a;
  b(1, 0) = -0.25;
  EXPECT_DOUBLE_EQ(max_abs_diff(a, b), 0.25);
}
