#include "chpolar/errors.hpp"
#include "chpolar/su1n_model.hpp"

#include <gtest/gtest.h>

#include <array>
#include <random>

using namespace chpolar;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

constexpr std::array<RootSpace, 6> kSpaces = {RootSpace::MinusTwoAlpha, RootSpace::MinusAlpha, RootSpace::K0,
                                              RootSpace::A,             RootSpace::Alpha,      RootSpace::TwoAlpha};

// Root of each space as a multiple of alpha; k_0 and a both sit at 0.
int root_of(RootSpace s) {
  switch (s) {
    case RootSpace::MinusTwoAlpha: return -2;
    case RootSpace::MinusAlpha: return -1;
    case RootSpace::K0:
    case RootSpace::A: return 0;
    case RootSpace::Alpha: return 1;
    case RootSpace::TwoAlpha: return 2;
  }
  return 0;
}

VectorXd gaussian(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0, 1);
  VectorXd v(d);
  for (auto& x : v) x = g(rng);
  return v;
}

AlgElement random_element(const RootDecomposition& rd, std::mt19937_64& rng) {
  return rd.element(gaussian(rd.dim(), rng));
}

AlgElement random_in(const RootDecomposition& rd, RootSpace s, std::mt19937_64& rng) {
  return rd.element(rd.columns(s) * gaussian(rd.range(s).size, rng));
}

}  // namespace

TEST(AlgElement, RejectsNonMembers) {
  MatrixXcd m = MatrixXcd::Zero(3, 3);
  m(0, 1) = 1.0;  // not in su(1,2) alone
  EXPECT_THROW(AlgElement(2, m), DomainError);
  EXPECT_THROW(AlgElement(2, MatrixXcd::Zero(4, 4)), DomainError);
  m(1, 0) = 1.0;
  EXPECT_NO_THROW(AlgElement(2, m));
  EXPECT_THROW(build_root_decomposition(1), DomainError);
}

TEST(Bracket, Examples) {
  const auto rd = build_root_decomposition(3);
  std::mt19937_64 rng(1);
  const AlgElement x = random_element(*rd, rng);
  EXPECT_LT(norm(bracket(x, x)), 1e-14);
  const AlgElement u = random_in(*rd, RootSpace::Alpha, rng);
  EXPECT_LT(norm(bracket(rd->B(), u) - 0.5 * u), 1e-12);
  const double u2 = inner(u, u);
  EXPECT_LT(norm(bracket(u, rd->J(u)) - (0.5 * u2) * rd->Z()), 1e-12);
  EXPECT_THROW(bracket(x, AlgElement::zero(2)), DomainError);
}

TEST(Bracket, AntisymmetryAndJacobi) {
  for (int n : {2, 3, 5}) {
    const auto rd = build_root_decomposition(n);
    std::mt19937_64 rng(n);
    for (int s = 0; s < 20; ++s) {
      const AlgElement x = random_element(*rd, rng);
      const AlgElement y = random_element(*rd, rng);
      const AlgElement z = random_element(*rd, rng);
      EXPECT_LT(norm(bracket(x, y) + bracket(y, x)), 1e-12);
      const AlgElement jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
      EXPECT_LT(norm(jac), 1e-9);
    }
  }
}

TEST(Theta, Examples) {
  const auto rd = build_root_decomposition(3);
  std::mt19937_64 rng(2);
  const AlgElement x = random_element(*rd, rng);
  EXPECT_LT(norm(theta(theta(x)) - x), 1e-14);
  const AlgElement t = random_in(*rd, RootSpace::K0, rng);
  EXPECT_LT(norm(theta(t) - t), 1e-14);
  const AlgElement p = rd->p_vector(Eigen::Vector3cd(1.0, {0.0, 2.0}, -0.5));
  EXPECT_LT(norm(theta(p) + p), 1e-14);
  for (const auto& e : rd->basis_of(RootSpace::Alpha)) {
    const AlgElement te = theta(e);
    EXPECT_LT(norm(te - rd->project(te, RootSpace::MinusAlpha)), 1e-12);
  }
}

TEST(Inner, Examples) {
  for (int n : {2, 3, 5}) {
    const auto rd = build_root_decomposition(n);
    EXPECT_NEAR(inner(rd->B(), rd->B()), 1.0, 1e-12);
    EXPECT_NEAR(inner(rd->Z(), rd->Z()), 2.0, 1e-12);
    EXPECT_NEAR(rd->inner_an(rd->Z(), rd->Z()), 1.0, 1e-12);
    EXPECT_NEAR(rd->inner_an(rd->B(), rd->B()), 1.0, 1e-12);
  }
  EXPECT_DOUBLE_EQ(metric_scale(), 2.0);
  const auto rd = build_root_decomposition(2);
  const AlgElement t = rd->basis_of(RootSpace::K0)[0];
  EXPECT_THROW(rd->inner_an(t, rd->B()), DomainError);
}

TEST(Inner, SkewAdjointness) {
  // Standard identity <ad(X)Y, W> + <Y, ad(theta X)W> = 0.
  for (int n : {2, 3, 5}) {
    const auto rd = build_root_decomposition(n);
    std::mt19937_64 rng(10 + n);
    for (int s = 0; s < 20; ++s) {
      const AlgElement x = random_element(*rd, rng);
      const AlgElement y = random_element(*rd, rng);
      const AlgElement w = random_element(*rd, rng);
      EXPECT_NEAR(inner(bracket(x, y), w) + inner(y, bracket(theta(x), w)), 0.0, 1e-10);
      EXPECT_NEAR(inner(x, y), inner(y, x), 1e-12);
    }
  }
}

TEST(RootDecomposition, FrozenMatricesN2) {
  const auto rd = build_root_decomposition(2);
  const MatrixXcd& b = rd->B().matrix();
  EXPECT_NEAR(b(0, 1).real(), 0.5, 1e-15);
  EXPECT_NEAR(b(1, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(b.cwiseAbs().sum(), 1.0, 1e-15);
  const MatrixXcd& z = rd->Z().matrix();
  EXPECT_NEAR(z(0, 0).imag(), 0.5, 1e-12);
  EXPECT_NEAR(z(0, 1).imag(), -0.5, 1e-12);
  EXPECT_NEAR(z(1, 0).imag(), 0.5, 1e-12);
  EXPECT_NEAR(z(1, 1).imag(), -0.5, 1e-12);
  EXPECT_NEAR(z.cwiseAbs().sum(), 2.0, 1e-12);
  const MatrixXcd u = rd->basis_of(RootSpace::Alpha)[0].matrix();
  EXPECT_NEAR(std::abs(u(0, 2)), 0.35355339059327373, 1e-12);
  EXPECT_NEAR(std::abs(u(2, 1)), 0.35355339059327373, 1e-12);
  const MatrixXcd t = rd->basis_of(RootSpace::K0)[0].matrix();
  EXPECT_NEAR(std::abs(t(2, 2)), 0.57735026918962584, 1e-12);
  EXPECT_NEAR(std::abs(t(0, 0)), 0.28867513459481287, 1e-12);
}

TEST(RootDecomposition, Dimensions) {
  for (int n : {2, 3, 4, 5, 7}) {
    const auto rd = build_root_decomposition(n);
    EXPECT_EQ(rd->range(RootSpace::Alpha).size, 2 * n - 2);
    EXPECT_EQ(rd->range(RootSpace::MinusAlpha).size, 2 * n - 2);
    EXPECT_EQ(rd->range(RootSpace::TwoAlpha).size, 1);
    EXPECT_EQ(rd->range(RootSpace::MinusTwoAlpha).size, 1);
    EXPECT_EQ(rd->range(RootSpace::A).size, 1);
    EXPECT_EQ(rd->range(RootSpace::K0).size, (n - 1) * (n - 1));
    EXPECT_EQ(rd->dim(), (n + 1) * (n + 1) - 1);
    EXPECT_EQ(rd->k_columns().cols(), n * n);
    EXPECT_EQ(rd->p_columns().cols(), 2 * n);
  }
  EXPECT_EQ(build_root_decomposition(3).get(), build_root_decomposition(3).get());
}

TEST(RootDecomposition, BasisIsOrthonormalAndProjectorsSum) {
  for (int n : {2, 3, 5}) {
    const auto rd = build_root_decomposition(n);
    const auto& basis = rd->basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = i; j < basis.size(); ++j) {
        EXPECT_NEAR(inner(basis[i], basis[j]), i == j ? 1.0 : 0.0, 1e-12);
      }
    }
    MatrixXd sum = MatrixXd::Zero(rd->dim(), rd->dim());
    for (RootSpace s : kSpaces) sum += rd->projector(s);
    EXPECT_LT((sum - MatrixXd::Identity(rd->dim(), rd->dim())).cwiseAbs().maxCoeff(), 1e-14);
    std::mt19937_64 rng(n);
    const AlgElement x = random_element(*rd, rng);
    EXPECT_LT((rd->coordinates(rd->element(rd->coordinates(x))) - rd->coordinates(x)).norm(), 1e-12);
  }
}

TEST(RootDecomposition, RootSpaceBracketsAndTheta) {
  for (int n : {2, 3, 4}) {
    const auto rd = build_root_decomposition(n);
    std::mt19937_64 rng(100 + n);
    for (RootSpace s : kSpaces) {
      const AlgElement x = random_in(*rd, s, rng);
      // theta g_lambda = g_{-lambda}
      const VectorXd tx = rd->coordinates(theta(x));
      double outside = 0.0;
      for (RootSpace t : kSpaces) {
        if (root_of(t) != -root_of(s)) outside = std::max(outside, (rd->projector(t) * tx).norm());
      }
      EXPECT_LT(outside, 1e-10);
      for (RootSpace t : kSpaces) {
        const AlgElement y = random_in(*rd, t, rng);
        const VectorXd c = rd->coordinates(bracket(x, y));
        const int target = root_of(s) + root_of(t);
        double stray = 0.0;
        for (RootSpace u : kSpaces) {
          if (root_of(u) != target) stray = std::max(stray, (rd->projector(u) * c).norm());
        }
        EXPECT_LT(stray, 1e-10);
      }
    }
  }
}

TEST(RootDecomposition, ComplexStructure) {
  for (int n : {2, 3, 5}) {
    const auto rd = build_root_decomposition(n);
    std::mt19937_64 rng(7 * n);
    for (const auto& x : rd->basis_of(RootSpace::Alpha)) {
      EXPECT_LT(norm(rd->J(rd->J(x)) + x), 1e-12);
      EXPECT_LT(norm(bracket(theta(x), rd->Z()) + rd->J(x)), 1e-10);
    }
    const VectorXd u = gaussian(2 * n - 2, rng);
    const AlgElement ju = rd->J(rd->alpha_vector(u));
    Eigen::VectorXd expected(u.size());
    for (int k = 0; k + 1 < u.size(); k += 2) {
      expected[k] = -u[k + 1];
      expected[k + 1] = u[k];
    }
    EXPECT_LT((rd->alpha_coords(ju) - expected).norm(), 1e-12);
  }
}

TEST(RootDecomposition, LemmaInnerProductIdentity) {
  // <T, (1 + theta)[theta X, Y]> = 2 <[T, X], Y> for T in k_0, X, Y in g_alpha.
  for (int n : {2, 3, 5}) {
    const auto rd = build_root_decomposition(n);
    std::mt19937_64 rng(20 + n);
    for (int s = 0; s < 30; ++s) {
      const AlgElement t = random_in(*rd, RootSpace::K0, rng);
      const AlgElement x = random_in(*rd, RootSpace::Alpha, rng);
      const AlgElement y = random_in(*rd, RootSpace::Alpha, rng);
      const AlgElement c = bracket(theta(x), y);
      EXPECT_NEAR(inner(t, c + theta(c)), 2.0 * inner(bracket(t, x), y), 1e-10);
    }
  }
}

TEST(RootDecomposition, K0ActionBridge) {
  for (int n : {2, 3, 5}) {
    const auto rd = build_root_decomposition(n);
    std::mt19937_64 rng(30 + n);
    const int m = n - 1;
    MatrixXcd g = MatrixXcd::Random(m, m);
    const MatrixXcd a = g - g.adjoint();
    const AlgElement t = rd->k0_from_action(a);
    EXPECT_LT((rd->k0_action(t) - a).cwiseAbs().maxCoeff(), 1e-12);
    const VectorXd u = gaussian(2 * m, rng);
    VectorXcd z(m);
    for (int j = 0; j < m; ++j) z[j] = {u[2 * j], u[2 * j + 1]};
    const VectorXcd az = a * z;
    VectorXd expected(2 * m);
    for (int j = 0; j < m; ++j) {
      expected[2 * j] = az[j].real();
      expected[2 * j + 1] = az[j].imag();
    }
    EXPECT_LT((rd->alpha_coords(bracket(t, rd->alpha_vector(u))) - expected).norm(), 1e-10);
  }
}

TEST(RootDecomposition, IntertwinerOntoPAlpha) {
  // U -> (1 - theta) U / 2 commutes with k_0, is complex linear onto p_alpha
  // and maps the AN metric on g_alpha to the metric of p.
  for (int n : {2, 3, 5}) {
    const auto rd = build_root_decomposition(n);
    std::mt19937_64 rng(40 + n);
    for (int s = 0; s < 10; ++s) {
      const AlgElement t = random_in(*rd, RootSpace::K0, rng);
      const AlgElement u = random_in(*rd, RootSpace::Alpha, rng);
      const AlgElement v = random_in(*rd, RootSpace::Alpha, rng);
      auto phi = [](const AlgElement& x) { return 0.5 * (x - theta(x)); };
      EXPECT_LT(norm(bracket(t, phi(u)) - phi(bracket(t, u))), 1e-12);
      const VectorXcd pu = rd->p_coords(phi(u));
      const VectorXcd pju = rd->p_coords(phi(rd->J(u)));
      EXPECT_LT((pju - std::complex<double>(0, 1) * pu).norm(), 1e-12);
      EXPECT_LT(std::abs(pu[0]), 1e-12);  // orthogonal to the a-direction and iB
      EXPECT_NEAR(inner(phi(u), phi(v)), rd->inner_an(u, v), 1e-12);
    }
  }
}

TEST(RootDecomposition, PVector) {
  const auto rd = build_root_decomposition(3);
  EXPECT_LT(norm(rd->p_vector(Eigen::Vector3cd(0.5, 0, 0)) - rd->B()), 1e-15);
  const Eigen::Vector3cd z(1.0, {0, 1}, 2.0);
  const AlgElement x = rd->p_vector(z);
  EXPECT_NEAR(inner(x, x), 4.0 * z.squaredNorm(), 1e-12);
  EXPECT_LT((rd->p_coords(x) - z).norm(), 1e-14);
  EXPECT_LT(((MatrixXd::Identity(rd->dim(), rd->dim()) - rd->p_columns() * rd->p_columns().transpose()) *
             rd->coordinates(x))
                .norm(),
            1e-12);
}

TEST(Adjoint, Examples) {
  for (int n : {2, 3, 5}) {
    const auto rd = build_root_decomposition(n);
    const int d = rd->dim();
    EXPECT_LT((rd->Ad_exp(AlgElement::zero(n)) - MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-15);
    std::mt19937_64 rng(50 + n);
    const AlgElement x = 0.5 * random_element(*rd, rng);
    const MatrixXd ad = rd->ad(x);
    const AlgElement y = random_element(*rd, rng);
    EXPECT_LT((ad * rd->coordinates(y) - rd->coordinates(bracket(x, y))).norm(), 1e-12);
    const MatrixXd e = rd->Ad_exp(x);
    EXPECT_LT((e * rd->Ad_exp(-x) - MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((e - rd->Ad_conjugation(x)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Adjoint, NilpotentExpansionOnK0) {
  for (int n : {2, 3, 5}) {
    const auto rd = build_root_decomposition(n);
    std::mt19937_64 rng(60 + n);
    const AlgElement xi = random_in(*rd, RootSpace::Alpha, rng);
    const MatrixXd ad = rd->ad(xi);
    const MatrixXd pk = rd->columns(RootSpace::K0);
    EXPECT_LT((ad * ad * ad * pk).cwiseAbs().maxCoeff(), 1e-10);
    for (double lambda : {-2.0, 0.3, 1.7}) {
      const MatrixXd expansion = pk + lambda * ad * pk + 0.5 * lambda * lambda * ad * ad * pk;
      EXPECT_LT((rd->Ad_exp(lambda * xi) * pk - expansion).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}
