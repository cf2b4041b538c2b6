#include "chpolar/an_geometry.hpp"

#include "chpolar/errors.hpp"
#include "chpolar/linalg.hpp"

#include <cmath>
#include <string>

namespace chpolar {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// ---------------------------------------------------------------------------
// ANVector

ANVector ANVector::zero(int n) { return {0.0, VectorXd::Zero(2 * n - 2), 0.0}; }

ANVector ANVector::from_vector(const VectorXd& v) {
  if (v.size() < 4 || v.size() % 2 != 0) throw DomainError("ANVector: expected a vector of even length 2n >= 4");
  return {v[0], v.segment(1, v.size() - 2), v[v.size() - 1]};
}

VectorXd ANVector::to_vector() const {
  VectorXd v(u.size() + 2);
  v << a, u, z;
  return v;
}

ANVector& ANVector::operator+=(const ANVector& o) {
  if (o.u.size() != u.size()) throw DomainError("ANVector: dimension mismatch");
  a += o.a;
  u += o.u;
  z += o.z;
  return *this;
}

ANVector& ANVector::operator*=(double s) {
  a *= s;
  u *= s;
  z *= s;
  return *this;
}

namespace {

void same_n(const ANVector& x, const ANVector& y) {
  if (x.u.size() != y.u.size()) throw DomainError("AN vectors of different dimension");
}

VectorXd j_alpha(const VectorXd& u) { return linalg::apply_j(u); }

}  // namespace

double an_inner(const ANVector& x, const ANVector& y) {
  same_n(x, y);
  return x.a * y.a + 0.5 * x.u.dot(y.u) + x.z * y.z;
}

double an_norm(const ANVector& x) { return std::sqrt(an_inner(x, x)); }

ANVector an_bracket(const ANVector& x, const ANVector& y) {
  same_n(x, y);
  // [aB + U + xZ, bB + V + yZ] = -(b/2)U + (a/2)V + (-bx + ay + (1/2)<JU, V>)Z
  return {0.0, -0.5 * y.a * x.u + 0.5 * x.a * y.u, -y.a * x.z + x.a * y.z + 0.5 * j_alpha(x.u).dot(y.u)};
}

ANVector an_complex_structure(const ANVector& x) { return {-x.z, j_alpha(x.u), x.a}; }

ANVector levi_civita(const ANVector& x, const ANVector& y) {
  same_n(x, y);
  const VectorXd ju = j_alpha(x.u);
  const VectorXd jv = j_alpha(y.u);
  const double uv_an = 0.5 * x.u.dot(y.u);
  const double juv_an = 0.5 * ju.dot(y.u);
  return {0.5 * uv_an + x.z * y.z, -0.5 * (y.a * x.u + y.z * ju + x.z * jv), 0.5 * juv_an - y.a * x.z};
}

double curvature(const ANVector& x, const ANVector& y, const ANVector& z, const ANVector& w) {
  const ANVector r = levi_civita(x, levi_civita(y, z)) - levi_civita(y, levi_civita(x, z)) -
                     levi_civita(an_bracket(x, y), z);
  return an_inner(r, w);
}

double sectional_curvature(const ANVector& x, const ANVector& y) {
  const double area = an_inner(x, x) * an_inner(y, y) - std::pow(an_inner(x, y), 2);
  if (area <= 1e-14) throw DomainError("sectional_curvature: vectors are linearly dependent");
  return curvature(x, y, y, x) / area;
}

double holomorphic_sectional_curvature(const ANVector& x) {
  return sectional_curvature(x, an_complex_structure(x));
}

// ---------------------------------------------------------------------------
// OrbitModel

namespace {

// Gram matrix square root trick: orthonormalise in the AN metric by scaling
// the u-block to the Euclidean picture and back.
MatrixXd an_orthonormalize(const MatrixXd& cols) {
  const Eigen::Index d = cols.rows();
  VectorXd s = VectorXd::Constant(d, std::sqrt(0.5));
  s[0] = 1.0;
  s[d - 1] = 1.0;
  const MatrixXd scaled = s.asDiagonal() * cols;
  const MatrixXd q = linalg::orthonormalize(scaled);
  return s.cwiseInverse().asDiagonal() * q;
}

MatrixXd an_complement(const MatrixXd& tangent) {
  const Eigen::Index d = tangent.rows();
  VectorXd s = VectorXd::Constant(d, std::sqrt(0.5));
  s[0] = 1.0;
  s[d - 1] = 1.0;
  const MatrixXd full = MatrixXd::Identity(d, d);
  const MatrixXd comp = linalg::relative_complement(full, s.asDiagonal() * tangent);
  return s.cwiseInverse().asDiagonal() * comp;
}

MatrixXd w_block(int n, const RealSubspace& w) {
  if (w.ambient_dim() != n - 1) {
    throw DomainError("orbit: w must be a subspace of g_alpha = C^" + std::to_string(n - 1));
  }
  MatrixXd cols = MatrixXd::Zero(2 * n, w.dim());
  cols.block(1, 0, 2 * n - 2, w.dim()) = w.basis();
  return cols;
}

void check_closed(const MatrixXd& tangent) {
  const int k = static_cast<int>(tangent.cols());
  const Eigen::Index d = tangent.rows();
  VectorXd s = VectorXd::Constant(d, std::sqrt(0.5));
  s[0] = 1.0;
  s[d - 1] = 1.0;
  const MatrixXd e = s.asDiagonal() * tangent;  // Euclidean-orthonormal picture
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const VectorXd br = an_bracket(ANVector::from_vector(tangent.col(i)), ANVector::from_vector(tangent.col(j)))
                              .to_vector();
      const VectorXd sb = s.asDiagonal() * br;
      if ((sb - e * (e.transpose() * sb)).norm() > 1e-10 * std::max(1.0, sb.norm())) {
        throw ConsistencyError("orbit: tangent space is not a subalgebra of a + n");
      }
    }
  }
}

}  // namespace

OrbitModel OrbitModel::tilted(int n, double a, const VectorXd& x, const RealSubspace& w) {
  if (n < 2) throw DomainError("orbit: n must be at least 2");
  if (x.size() != 2 * n - 2) throw DomainError("orbit: X must have 2n-2 coordinates");
  if (!std::isfinite(a) || !x.allFinite()) throw DomainError("orbit: non-finite data");
  if (a == 0.0 && x.norm() == 0.0) throw DomainError("orbit: aB + X must be nonzero");
  MatrixXd wb = w_block(n, w);
  if (w.dim() > 0 && (w.basis().transpose() * x).norm() > 1e-10 * std::max(1.0, x.norm())) {
    throw DomainError("orbit: X must be orthogonal to w");
  }
  MatrixXd cols(2 * n, 2 + w.dim());
  VectorXd lead = VectorXd::Zero(2 * n);
  lead[0] = a;
  lead.segment(1, 2 * n - 2) = x;
  cols.col(0) = lead;
  cols.middleCols(1, w.dim()) = wb;
  cols.col(1 + w.dim()) = VectorXd::Unit(2 * n, 2 * n - 1);
  OrbitModel o;
  o.n_ = n;
  o.shape_ = Shape::Tilted;
  o.tangent_ = an_orthonormalize(cols);
  o.normal_ = an_complement(o.tangent_);
  o.a_ = a;
  o.x_ = x;
  o.w_dim_ = w.dim();
  check_closed(o.tangent_);
  return o;
}

OrbitModel OrbitModel::standard(int n, bool b_full, const RealSubspace& w) {
  if (b_full) return tilted(n, 1.0, VectorXd::Zero(2 * n - 2), w);
  // b = 0: split off one direction of w as the X of the tilted form when possible.
  if (w.dim() == 0) {
    OrbitModel o = from_tangent(n, {ANVector(0.0, VectorXd::Zero(2 * n - 2), 1.0)});
    o.shape_ = Shape::Tilted;
    o.a_ = 0.0;
    o.x_ = VectorXd::Zero(2 * n - 2);
    o.w_dim_ = 0;
    return o;
  }
  const VectorXd x = w.basis().col(0);
  const RealSubspace rest(n - 1, w.basis().rightCols(w.dim() - 1));
  return tilted(n, 0.0, x, rest);
}

OrbitModel OrbitModel::from_tangent(int n, const std::vector<ANVector>& spanning) {
  if (n < 2) throw DomainError("orbit: n must be at least 2");
  MatrixXd cols(2 * n, static_cast<Eigen::Index>(spanning.size()));
  for (std::size_t i = 0; i < spanning.size(); ++i) {
    if (spanning[i].n() != n || spanning[i].u.size() != 2 * n - 2) throw DomainError("orbit: vector dimension mismatch");
    cols.col(static_cast<Eigen::Index>(i)) = spanning[i].to_vector();
  }
  OrbitModel o;
  o.n_ = n;
  o.tangent_ = an_orthonormalize(cols);
  o.normal_ = an_complement(o.tangent_);
  check_closed(o.tangent_);
  return o;
}

ANVector OrbitModel::tangent_vector(int i) const { return ANVector::from_vector(tangent_.col(i)); }
ANVector OrbitModel::normal_vector(int i) const { return ANVector::from_vector(normal_.col(i)); }

MatrixXd shape_operator(const OrbitModel& orbit, const ANVector& xi) {
  if (xi.u.size() != 2 * orbit.n() - 2) throw DomainError("shape_operator: dimension mismatch");
  if (std::abs(an_norm(xi) - 1.0) > 1e-9) throw DomainError("shape_operator: normal vector must be a unit vector");
  const int k = static_cast<int>(orbit.tangent().cols());
  for (int i = 0; i < k; ++i) {
    if (std::abs(an_inner(orbit.tangent_vector(i), xi)) > 1e-9) {
      throw DomainError("shape_operator: vector is not normal to the orbit");
    }
  }
  MatrixXd s(k, k);
  for (int j = 0; j < k; ++j) {
    const ANVector image = -1.0 * levi_civita(orbit.tangent_vector(j), xi);
    for (int i = 0; i < k; ++i) s(i, j) = an_inner(image, orbit.tangent_vector(i));
  }
  return s;
}

ANVector mean_curvature(const OrbitModel& orbit) {
  if (orbit.shape() != OrbitModel::Shape::Tilted) {
    throw DomainError("mean_curvature: tangent space must be R(aB + X) + w + g_2alpha or b + w + g_2alpha");
  }
  ANVector h = ANVector::zero(orbit.n());
  for (Eigen::Index j = 0; j < orbit.normal().cols(); ++j) {
    const ANVector xi = orbit.normal_vector(static_cast<int>(j));
    h += shape_operator(orbit, xi).trace() * xi;
  }
  return h;
}

ANVector mean_curvature_formula(const OrbitModel& orbit) {
  if (orbit.shape() != OrbitModel::Shape::Tilted) throw DomainError("mean_curvature_formula: unsupported orbit shape");
  const int n = orbit.n();
  const double a = orbit.tilt_a();
  const ANVector x(0.0, orbit.tilt_x(), 0.0);
  const double xx = an_inner(x, x);
  const double m = orbit.w_dim();
  if (a == 0.0 && xx == 0.0) return {0.5 * (2.0 + m), VectorXd::Zero(2 * n - 2), 0.0};
  const double c = (3.0 + m) / (2.0 * (a * a + xx));
  return {c * xx, -c * a * orbit.tilt_x(), 0.0};
}

// ---------------------------------------------------------------------------
// Matrix model bridge

AlgElement to_algebra(const RootDecomposition& rd, const ANVector& x) {
  if (x.u.size() != rd.alpha_dim()) throw DomainError("to_algebra: dimension mismatch");
  return x.a * rd.B() + rd.alpha_vector(x.u) + x.z * rd.Z();
}

ANVector from_algebra(const RootDecomposition& rd, const AlgElement& x) {
  const VectorXd c = rd.coordinates(x);
  const CoordinateRange a = rd.range(RootSpace::A);
  if (c.head(a.offset).norm() > 1e-9 * std::max(1.0, c.norm())) throw DomainError("from_algebra: element is not in a + n");
  const CoordinateRange al = rd.range(RootSpace::Alpha);
  const CoordinateRange ta = rd.range(RootSpace::TwoAlpha);
  // The g_2alpha basis vector is Z / |Z| with |Z| = sqrt(2).
  return {c[a.offset], c.segment(al.offset, al.size), c[ta.offset] / norm(rd.Z())};
}

std::vector<AlgElement> isotropy_at(const RootDecomposition& rd, const std::vector<AlgElement>& q, const AlgElement& xi,
                                    double tol_rank) {
  if (q.empty()) return {};
  MatrixXd system(rd.dim(), static_cast<Eigen::Index>(q.size()));
  for (std::size_t i = 0; i < q.size(); ++i) {
    system.col(static_cast<Eigen::Index>(i)) = rd.coordinates(bracket(q[i], xi));
  }
  // Work in an orthonormal parametrisation of q so the kernel is metric.
  MatrixXd qc(rd.dim(), static_cast<Eigen::Index>(q.size()));
  for (std::size_t i = 0; i < q.size(); ++i) qc.col(static_cast<Eigen::Index>(i)) = rd.coordinates(q[i]);
  const MatrixXd kernel = linalg::null_space(system, tol_rank);
  MatrixXd out_cols = linalg::orthonormalize(qc * kernel);
  std::vector<AlgElement> out;
  for (Eigen::Index c = 0; c < out_cols.cols(); ++c) out.push_back(rd.element(out_cols.col(c)));
  return out;
}

std::vector<AlgElement> conjugate_subalgebra(const RootDecomposition& rd, const std::vector<AlgElement>& h,
                                             const ANVector& g_exponent) {
  const CoordinateRange k0 = rd.range(RootSpace::K0);
  auto outside = [&](const VectorXd& c) { return c.head(k0.offset).norm(); };
  MatrixXd cols(rd.dim(), static_cast<Eigen::Index>(h.size()));
  for (std::size_t i = 0; i < h.size(); ++i) {
    const VectorXd c = rd.coordinates(h[i]);
    if (outside(c) > 1e-9 * std::max(1.0, c.norm())) {
      throw DomainError("conjugate_subalgebra: h must lie in k_0 + a + n");
    }
    cols.col(static_cast<Eigen::Index>(i)) = c;
  }
  const MatrixXd ad = rd.Ad_exp(to_algebra(rd, g_exponent));
  const MatrixXd image = linalg::orthonormalize(ad * cols);
  std::vector<AlgElement> out;
  for (Eigen::Index c = 0; c < image.cols(); ++c) {
    const VectorXd v = image.col(c);
    if (outside(v) > 1e-9) throw ConsistencyError("conjugate_subalgebra: image leaves k_0 + a + n");
    out.push_back(rd.element(v));
  }
  return out;
}

}  // namespace chpolar
