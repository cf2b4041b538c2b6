#include "chpolar/an_geometry.hpp"
#include "chpolar/errors.hpp"
#include "chpolar/linalg.hpp"
#include "oracles.hpp"
#include "random_subspaces.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace chpolar;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

VectorXd gaussian(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0, 1);
  VectorXd v(d);
  for (auto& x : v) x = g(rng);
  return v;
}

ANVector random_an(int n, std::mt19937_64& rng) { return ANVector::from_vector(gaussian(2 * n, rng)); }

ANVector basis_b(int n) { return {1.0, VectorXd::Zero(2 * n - 2), 0.0}; }
ANVector basis_z(int n) { return {0.0, VectorXd::Zero(2 * n - 2), 1.0}; }

double max_abs(const ANVector& v) { return v.to_vector().cwiseAbs().maxCoeff(); }

VectorXcd as_complex(const VectorXd& u) {
  VectorXcd z(u.size() / 2);
  for (Eigen::Index j = 0; j < z.size(); ++j) z[j] = {u[2 * j], u[2 * j + 1]};
  return z;
}

}  // namespace

TEST(ANVector, RoundTripAndErrors) {
  const VectorXd v = (VectorXd(6) << 1, 2, 3, 4, 5, 6).finished();
  const ANVector x = ANVector::from_vector(v);
  EXPECT_EQ(x.n(), 3);
  EXPECT_EQ(x.a, 1.0);
  EXPECT_EQ(x.z, 6.0);
  EXPECT_EQ(x.to_vector(), v);
  EXPECT_THROW(ANVector::from_vector(VectorXd::Zero(3)), DomainError);
  EXPECT_THROW(an_inner(ANVector::zero(2), ANVector::zero(3)), DomainError);
  EXPECT_NEAR(an_inner(x, x), 1 + 0.5 * (4 + 9 + 16 + 25) + 36, 1e-12);
}

TEST(ANBracket, MatchesMatrixCommutator) {
  for (int n : {2, 3, 5}) {
    const auto rd = build_root_decomposition(n);
    std::mt19937_64 rng(n);
    for (int s = 0; s < 30; ++s) {
      const ANVector x = random_an(n, rng);
      const ANVector y = random_an(n, rng);
      const ANVector br = an_bracket(x, y);
      // Written out: -(b/2)U + (a/2)V + (-bx + ay + (1/2)<JU, V>)Z with the g-metric.
      const VectorXd ju = linalg::apply_j(x.u);
      const ANVector expected(0.0, -0.5 * y.a * x.u + 0.5 * x.a * y.u,
                              -y.a * x.z + x.a * y.z + 0.5 * ju.dot(y.u));
      EXPECT_LT(max_abs(br - expected), 1e-12);
      const AlgElement m = bracket(to_algebra(*rd, x), to_algebra(*rd, y));
      EXPECT_LT(max_abs(from_algebra(*rd, m) - br), 1e-10);
    }
  }
}

TEST(ANBridge, InnerProductsAndErrors) {
  const auto rd = build_root_decomposition(3);
  std::mt19937_64 rng(4);
  const ANVector x = random_an(3, rng);
  const ANVector y = random_an(3, rng);
  EXPECT_NEAR(rd->inner_an(to_algebra(*rd, x), to_algebra(*rd, y)), an_inner(x, y), 1e-12);
  EXPECT_LT(max_abs(from_algebra(*rd, to_algebra(*rd, x)) - x), 1e-12);
  EXPECT_THROW(from_algebra(*rd, rd->basis_of(RootSpace::K0)[0]), DomainError);
  EXPECT_LT(max_abs(an_complex_structure(basis_b(3)) - basis_z(3)), 1e-15);
  EXPECT_LT(max_abs(an_complex_structure(basis_z(3)) + basis_b(3)), 1e-15);
}

TEST(LeviCivita, Examples) {
  for (int n : {2, 4}) {
    EXPECT_LT(max_abs(levi_civita(basis_b(n), basis_b(n))), 1e-15);
    EXPECT_LT(max_abs(levi_civita(basis_z(n), basis_z(n)) - basis_b(n)), 1e-15);
    std::mt19937_64 rng(n);
    const ANVector u(0.0, gaussian(2 * n - 2, rng), 0.0);
    EXPECT_LT(max_abs(levi_civita(u, u) - (0.5 * an_inner(u, u)) * basis_b(n)), 1e-12);
  }
}

TEST(LeviCivita, TorsionFreeAndCompatible) {
  for (int n : {2, 3, 5}) {
    std::mt19937_64 rng(10 + n);
    for (int s = 0; s < 50; ++s) {
      const ANVector x = random_an(n, rng);
      const ANVector y = random_an(n, rng);
      const ANVector z = random_an(n, rng);
      EXPECT_LT(max_abs(levi_civita(x, y) - levi_civita(y, x) - an_bracket(x, y)), 1e-10);
      EXPECT_NEAR(an_inner(levi_civita(x, y), z) + an_inner(y, levi_civita(x, z)), 0.0, 1e-10);
    }
  }
}

TEST(Curvature, Examples) {
  for (int n : {2, 3, 5}) {
    EXPECT_NEAR(sectional_curvature(basis_b(n), basis_z(n)), -1.0, 1e-12);
    std::mt19937_64 rng(20 + n);
    for (int s = 0; s < 30; ++s) {
      const ANVector x = random_an(n, rng);
      const ANVector y = random_an(n, rng);
      const ANVector z = random_an(n, rng);
      const ANVector w = random_an(n, rng);
      EXPECT_NEAR(curvature(x, y, z, w) + curvature(y, x, z, w), 0.0, 1e-9);
      EXPECT_NEAR(curvature(x, y, z, w) + curvature(x, y, w, z), 0.0, 1e-9);
      EXPECT_NEAR(holomorphic_sectional_curvature(x), -1.0, 1e-7);
      // Range of the sectional curvature of CH^n: [-1, -1/4].
      const double k = sectional_curvature(x, y);
      EXPECT_LE(k, -0.25 + 1e-9);
      EXPECT_GE(k, -1.0 - 1e-9);
    }
  }
  EXPECT_THROW(sectional_curvature(basis_b(2), 2.0 * basis_b(2)), DomainError);
}

TEST(Orbit, Construction) {
  const RealSubspace w = make_constant_angle(1, std::numbers::pi / 2, 2);
  const OrbitModel o = OrbitModel::standard(3, true, w);
  EXPECT_EQ(o.tangent().cols(), 3);
  EXPECT_EQ(o.normal().cols(), 3);
  EXPECT_THROW(OrbitModel::tilted(3, 0.0, VectorXd::Zero(4), w), DomainError);
  VectorXd inside = VectorXd::Zero(4);
  inside[0] = 1.0;
  EXPECT_THROW(OrbitModel::tilted(3, 1.0, inside, w), DomainError);
  // B and g_alpha alone do not close up: [B, U] = U/2 is fine but [U, JU] lies in g_2alpha.
  VectorXd u = VectorXd::Zero(4);
  u[0] = 1.0;
  EXPECT_THROW(OrbitModel::from_tangent(3, {ANVector(0.0, u, 0.0), ANVector(0.0, linalg::apply_j(u), 0.0)}),
               ConsistencyError);
  const OrbitModel g = OrbitModel::from_tangent(3, {basis_b(3)});
  EXPECT_EQ(g.shape(), OrbitModel::Shape::General);
  EXPECT_THROW(mean_curvature(g), DomainError);
}

TEST(ShapeOperator, TiltedExample) {
  for (int n : {3, 4}) {
    std::mt19937_64 rng(30 + n);
    const double a = 0.7;
    VectorXd x = VectorXd::Zero(2 * n - 2);
    x[0] = 1.3;
    const RealSubspace w(n - 1, MatrixXd::Identity(2 * n - 2, 2 * n - 2).rightCols(2 * n - 4));
    const OrbitModel o = OrbitModel::tilted(n, a, x, w);
    const ANVector xv(0.0, x, 0.0);
    const double xx = an_inner(xv, xv);
    const double xn = std::sqrt(xx);
    const double r = std::sqrt(a * a + xx);
    const ANVector xi = (1.0 / (xn * r)) * (xx * basis_b(n) - a * xv);
    const MatrixXd s = shape_operator(o, xi);
    EXPECT_LT((s - s.transpose()).cwiseAbs().maxCoeff(), 1e-9);
    // S_xi(aB + X) = |X| / (2 sqrt(a^2 + |X|^2)) (aB + X).
    const ANVector t = a * basis_b(n) + xv;
    VectorXd coeff(o.tangent().cols());
    for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff[i] = an_inner(o.tangent_vector(static_cast<int>(i)), t);
    const VectorXd image = s * coeff;
    EXPECT_LT((image - xn / (2.0 * r) * coeff).norm(), 1e-10);
    // A normal direction inside g_alpha minus (w + RX) is traceless.
    VectorXd u = VectorXd::Zero(2 * n - 2);
    u[1] = std::sqrt(2.0);
    EXPECT_NEAR(shape_operator(o, ANVector(0.0, u, 0.0)).trace(), 0.0, 1e-10);
    EXPECT_THROW(shape_operator(o, 2.0 * xi), DomainError);
    EXPECT_THROW(shape_operator(o, basis_z(n)), DomainError);
  }
}

TEST(MeanCurvature, Examples) {
  for (int n : {2, 3, 5}) {
    std::mt19937_64 rng(40 + n);
    for (int m = 0; m <= 2 * n - 2; ++m) {
      const RealSubspace w(n - 1, MatrixXd::Identity(2 * n - 2, m));
      const ANVector full = mean_curvature(OrbitModel::standard(n, true, w));
      EXPECT_LT(max_abs(full), 1e-10);
      const ANVector zero_b = mean_curvature(OrbitModel::standard(n, false, w));
      EXPECT_LT(max_abs(zero_b - (0.5 * (2.0 + m)) * basis_b(n)), 1e-10);
      if (m < 2 * n - 2) {
        // a = 1, |X|_AN = 1, so H = ((3 + m) / 4)(B - X).
        VectorXd x = VectorXd::Zero(2 * n - 2);
        x[m] = std::sqrt(2.0);
        const ANVector h = mean_curvature(OrbitModel::tilted(n, 1.0, x, w));
        const ANVector expected = ((3.0 + m) / 4.0) * (basis_b(n) - ANVector(0.0, x, 0.0));
        EXPECT_LT(max_abs(h - expected), 1e-10);
      }
    }
  }
}

TEST(MeanCurvature, RandomMatchesClosedForm) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> pick_n(2, 5);
  std::uniform_real_distribution<double> pick_a(-2.0, 2.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = pick_n(rng);
    const auto assembled = testutil::random_assembled(n - 1, rng);
    const RealSubspace& w = assembled.space;
    if (w.dim() == 2 * n - 2) continue;
    const RealSubspace perp = orthogonal_complement(w);
    const VectorXd x = perp.basis() * gaussian(perp.dim(), rng);
    const double a = pick_a(rng);
    const OrbitModel o = OrbitModel::tilted(n, a, x, w);
    const ANVector h = mean_curvature(o);
    const ANVector xv(0.0, x, 0.0);
    const auto ref = oracle::tilted_mean_curvature(a, an_inner(xv, xv), w.dim());
    EXPECT_LT(max_abs(h - (ref.b_coeff * basis_b(n) + ref.x_coeff * xv)), 1e-9);
    EXPECT_LT(max_abs(h - mean_curvature_formula(o)), 1e-9);
  }
}

TEST(Isotropy, Examples) {
  for (int n : {2, 3, 4}) {
    const auto rd = build_root_decomposition(n);
    const auto k0 = rd->basis_of(RootSpace::K0);
    EXPECT_EQ(isotropy_at(*rd, k0, AlgElement::zero(n)).size(), k0.size());
    VectorXd e1 = VectorXd::Zero(2 * n - 2);
    e1[0] = 1.0;
    EXPECT_EQ(static_cast<int>(isotropy_at(*rd, k0, rd->alpha_vector(e1)).size()), (n - 2) * (n - 2));
    const AlgElement center = rd->k0_from_action(std::complex<double>(0, 1) * MatrixXcd::Identity(n - 1, n - 1));
    EXPECT_TRUE(isotropy_at(*rd, {center}, rd->alpha_vector(e1)).empty());
  }
}

TEST(Isotropy, MatchesOracle) {
  std::mt19937_64 rng(88);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 4;
    const auto rd = build_root_decomposition(n);
    const auto assembled = testutil::random_assembled(n - 1, rng);
    const auto q = normalizer_algebra(assembled.space);
    std::vector<AlgElement> qa;
    for (const auto& t : q) qa.push_back(rd->k0_from_action(t));
    VectorXd xi = assembled.space.dim() > 0 && trial % 2 == 0 ? assembled.space.basis().col(0)
                                                                : gaussian(2 * n - 2, rng);
    const auto iso = isotropy_at(*rd, qa, rd->alpha_vector(xi));
    EXPECT_EQ(static_cast<int>(iso.size()), oracle::annihilator_dimension(q, as_complex(xi)));
    for (const auto& t : iso) EXPECT_LT(norm(bracket(t, rd->alpha_vector(xi))), 1e-9);
  }
}

TEST(ConjugateSubalgebra, Examples) {
  const int n = 4;
  const auto rd = build_root_decomposition(n);
  std::mt19937_64 rng(99);
  const RealSubspace w = make_constant_angle(1, std::numbers::pi / 3, n - 1);
  std::vector<AlgElement> h;
  for (Eigen::Index c = 0; c < w.dim(); ++c) h.push_back(rd->alpha_vector(w.basis().col(c)));
  h.push_back((1.0 / std::sqrt(2.0)) * rd->Z());

  auto span_distance = [&](const std::vector<AlgElement>& a, const std::vector<AlgElement>& b) {
    MatrixXd ca(rd->dim(), static_cast<Eigen::Index>(a.size()));
    MatrixXd cb(rd->dim(), static_cast<Eigen::Index>(b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) ca.col(static_cast<Eigen::Index>(i)) = rd->coordinates(a[i]);
    for (std::size_t i = 0; i < b.size(); ++i) cb.col(static_cast<Eigen::Index>(i)) = rd->coordinates(b[i]);
    const MatrixXd qa = linalg::orthonormalize(ca);
    const MatrixXd qb = linalg::orthonormalize(cb);
    if (qa.cols() != qb.cols()) return 1e9;
    return (qa * qa.transpose() - qb * qb.transpose()).norm();
  };

  EXPECT_LT(span_distance(conjugate_subalgebra(*rd, h, ANVector::zero(n)), h), 1e-12);
  // w + g_2alpha is an ideal of a + n, hence Ad(AN)-stable.
  const ANVector g = random_an(n, rng);
  EXPECT_LT(span_distance(conjugate_subalgebra(*rd, h, g), h), 1e-9);

  // a + w + g_2alpha moved by exp(X0), X0 orthogonal to w: B goes to B - X0/2.
  std::vector<AlgElement> h2 = h;
  h2.push_back(rd->B());
  const RealSubspace perp = orthogonal_complement(w);
  const VectorXd x0 = perp.basis() * gaussian(perp.dim(), rng);
  const auto moved = conjugate_subalgebra(*rd, h2, ANVector(0.0, x0, 0.0));
  std::vector<AlgElement> expected = h;
  expected.push_back(rd->B() - 0.5 * rd->alpha_vector(x0));
  EXPECT_LT(span_distance(moved, expected), 1e-9);

  EXPECT_THROW(conjugate_subalgebra(*rd, {rd->p_vector(VectorXcd::Unit(n, 1))}, g), DomainError);
}
