#include "chpolar/su1n_model.hpp"

#include "chpolar/errors.hpp"
#include "chpolar/kahler_linear.hpp"
#include "chpolar/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace chpolar {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cd = std::complex<double>;

// ---------------------------------------------------------------------------
// AlgElement

MatrixXcd signature_matrix(int n) {
  MatrixXcd s = MatrixXcd::Identity(n + 1, n + 1);
  s(0, 0) = -1.0;
  return s;
}

bool in_su1n(const MatrixXcd& m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 2) return false;
  const int n = static_cast<int>(m.rows()) - 1;
  const MatrixXcd s = signature_matrix(n);
  const double scale = std::max(1.0, m.norm());
  return std::abs(m.trace()) <= tol * scale && (m.adjoint() * s + s * m).norm() <= tol * scale;
}

AlgElement::AlgElement(int n, MatrixXcd matrix) : n_(n), m_(std::move(matrix)) {
  if (n < 1 || m_.rows() != n + 1 || m_.cols() != n + 1) {
    throw DomainError("AlgElement: expected a " + std::to_string(n + 1) + "x" + std::to_string(n + 1) + " matrix");
  }
  if (!m_.allFinite()) throw DomainError("AlgElement: non-finite entries");
  if (!in_su1n(m_, 1e-9)) throw DomainError("AlgElement: matrix is not in su(1,n)");
}

AlgElement AlgElement::zero(int n) { return AlgElement(n, MatrixXcd::Zero(n + 1, n + 1), Unchecked{}); }

AlgElement& AlgElement::operator+=(const AlgElement& o) {
  if (o.n_ != n_) throw DomainError("AlgElement: dimension mismatch");
  m_ += o.m_;
  return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& o) {
  if (o.n_ != n_) throw DomainError("AlgElement: dimension mismatch");
  m_ -= o.m_;
  return *this;
}

AlgElement& AlgElement::operator*=(double s) {
  m_ *= s;
  return *this;
}

AlgElement bracket(const AlgElement& x, const AlgElement& y) {
  if (x.n() != y.n()) throw DomainError("bracket: dimension mismatch");
  return AlgElement(x.n(), x.matrix() * y.matrix() - y.matrix() * x.matrix(), AlgElement::Unchecked{});
}

AlgElement theta(const AlgElement& x) {
  const MatrixXcd s = signature_matrix(x.n());
  return AlgElement(x.n(), s * x.matrix() * s, AlgElement::Unchecked{});
}

double metric_scale() {
  // <B, B> = 1 for B = (E_01 + E_10) / 2; the value does not depend on n.
  static const double c = [] {
    MatrixXcd b = MatrixXcd::Zero(2, 2);
    b(0, 1) = b(1, 0) = 0.5;
    const MatrixXcd s = signature_matrix(1);
    return 1.0 / -(s * b * s * b).trace().real();
  }();
  return c;
}

double inner(const AlgElement& x, const AlgElement& y) {
  if (x.n() != y.n()) throw DomainError("inner: dimension mismatch");
  // -c Re tr(theta(X) Y) = c Re tr(X^* Y)
  return metric_scale() * (x.matrix().conjugate().cwiseProduct(y.matrix())).sum().real();
}

double norm(const AlgElement& x) { return std::sqrt(inner(x, x)); }

// ---------------------------------------------------------------------------
// RootDecomposition

namespace {

constexpr std::array<double, 5> kEigenvalues = {-1.0, -0.5, 0.0, 0.5, 1.0};

// Gram-Schmidt on matrices under `inner`.
std::vector<AlgElement> orthonormal(const std::vector<AlgElement>& in, double drop = 1e-8) {
  std::vector<AlgElement> out;
  for (const auto& x : in) {
    AlgElement v = x;
    const double original = norm(v);
    if (original == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : out) v -= inner(e, v) * e;
    }
    const double nv = norm(v);
    if (nv <= drop * std::max(1.0, original)) continue;
    out.push_back((1.0 / nv) * v);
  }
  return out;
}

AlgElement combination(const std::vector<AlgElement>& basis, const VectorXd& c, int n) {
  MatrixXcd m = MatrixXcd::Zero(n + 1, n + 1);
  for (std::size_t i = 0; i < basis.size(); ++i) m += c[static_cast<Eigen::Index>(i)] * basis[i].matrix();
  return AlgElement(n, m);
}

}  // namespace

RootDecomposition::RootDecomposition(int n) : n_(n) {
  if (n < 2) throw DomainError("RootDecomposition: n must be at least 2, got " + std::to_string(n));
  const int N = n + 1;
  const MatrixXcd sig = signature_matrix(n);

  // Orthonormal basis of su(1,n): I S for S in u(n+1), made traceless.
  std::vector<AlgElement> raw;
  for (const MatrixXcd& s : unitary_algebra_basis(N)) {
    MatrixXcd x = sig * s;
    x -= (x.trace() / static_cast<double>(N)) * MatrixXcd::Identity(N, N);
    raw.emplace_back(n, x);
  }
  raw = orthonormal(raw);
  const int d = N * N - 1;
  if (static_cast<int>(raw.size()) != d) throw ConsistencyError("RootDecomposition: wrong dimension of su(1,n)");

  MatrixXcd bm = MatrixXcd::Zero(N, N);
  bm(0, 1) = bm(1, 0) = 0.5;
  b_ = AlgElement(n, bm);

  // ad(B) is symmetric for the inner product since B is in p.
  MatrixXd adb(d, d);
  for (int j = 0; j < d; ++j) {
    const AlgElement image = bracket(b_, raw[static_cast<std::size_t>(j)]);
    for (int i = 0; i < d; ++i) adb(i, j) = inner(raw[static_cast<std::size_t>(i)], image);
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(0.5 * (adb + adb.transpose()));
  std::array<std::vector<VectorXd>, 5> spaces;
  for (int i = 0; i < d; ++i) {
    const double lambda = eig.eigenvalues()[i];
    int slot = -1;
    for (int k = 0; k < 5; ++k) {
      if (std::abs(lambda - kEigenvalues[static_cast<std::size_t>(k)]) <= 1e-8) slot = k;
    }
    if (slot < 0) throw ConsistencyError("RootDecomposition: unexpected eigenvalue of ad(B): " + std::to_string(lambda));
    spaces[static_cast<std::size_t>(slot)].push_back(eig.eigenvectors().col(i));
  }
  auto to_elements = [&](const std::vector<VectorXd>& cols) {
    std::vector<AlgElement> out;
    for (const auto& c : cols) out.push_back(combination(raw, c, n));
    return out;
  };
  auto projector_onto = [&](const std::vector<AlgElement>& onb) {
    return [onb](const AlgElement& x) {
      AlgElement out = AlgElement::zero(x.n());
      for (const auto& e : onb) out += inner(e, x) * e;
      return out;
    };
  };
  const std::vector<AlgElement> eig_alpha = to_elements(spaces[3]);
  const std::vector<AlgElement> eig_two_alpha = to_elements(spaces[4]);
  const std::vector<AlgElement> eig_zero = to_elements(spaces[2]);
  if (static_cast<int>(eig_alpha.size()) != 2 * n - 2 || eig_two_alpha.size() != 1 ||
      static_cast<int>(eig_zero.size()) != n * n - 2 * n + 2) {
    throw ConsistencyError("RootDecomposition: root space dimensions are wrong");
  }

  // Z: the g_{2 alpha}-component of iB, doubled (the p-part of Z is iB).
  VectorXcd ie1 = VectorXcd::Zero(n);
  ie1[0] = cd(0.0, 0.5);
  z_ = 2.0 * projector_onto(eig_two_alpha)(p_vector(ie1));

  // g_alpha: project the seeds E_0j + E_j0 and complete J-adapted.
  const auto proj_alpha = projector_onto(eig_alpha);
  std::vector<AlgElement> alpha;
  for (int j = 2; j <= n; ++j) {
    MatrixXcd seed = MatrixXcd::Zero(N, N);
    seed(0, j) = 1.0;
    seed(j, 0) = 1.0;
    AlgElement v = proj_alpha(AlgElement(n, seed));
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : alpha) v -= inner(e, v) * e;
    }
    const double nv = norm(v);
    if (nv < 1e-8) throw ConsistencyError("RootDecomposition: degenerate g_alpha seed");
    v *= 1.0 / nv;
    const AlgElement jv = J(v);
    alpha.push_back(v);
    alpha.push_back(jv);
  }

  std::vector<AlgElement> minus_alpha;
  for (const auto& u : alpha) minus_alpha.push_back(theta(u));
  const AlgElement z_unit = (1.0 / norm(z_)) * z_;

  // k_0 = u(n-1) acting on g_alpha.
  std::vector<AlgElement> k0_raw;
  for (const MatrixXcd& m : unitary_algebra_basis(n - 1)) k0_raw.push_back(k0_from_action(m));
  const std::vector<AlgElement> k0 = orthonormal(k0_raw);
  const auto proj_zero = projector_onto(eig_zero);
  for (const auto& t : k0) {
    if (norm(proj_zero(t) - t) > 1e-9) throw ConsistencyError("RootDecomposition: k_0 element outside g_0");
  }

  basis_.clear();
  auto append = [&](const std::vector<AlgElement>& part) {
    ranges_.push_back({static_cast<int>(basis_.size()), static_cast<int>(part.size())});
    basis_.insert(basis_.end(), part.begin(), part.end());
  };
  append({theta(z_unit)});
  append(minus_alpha);
  append(k0);
  append({b_});
  append(alpha);
  append({z_unit});
  if (dim() != d) throw ConsistencyError("RootDecomposition: basis does not span su(1,n)");

  dual_.resize(d, N * N);
  for (int i = 0; i < d; ++i) {
    const MatrixXcd& m = basis_[static_cast<std::size_t>(i)].matrix();
    for (int c = 0; c < N; ++c) {
      for (int r = 0; r < N; ++r) dual_(i, c * N + r) = metric_scale() * std::conj(m(r, c));
    }
  }

  theta_.resize(d, d);
  for (int j = 0; j < d; ++j) theta_.col(j) = coordinates(theta(basis_[static_cast<std::size_t>(j)]));

  // k = k_0 + (1 + theta)(g_alpha + g_2alpha), p = a + (1 - theta)(g_alpha + g_2alpha).
  const CoordinateRange ka = range(RootSpace::K0);
  const CoordinateRange al = range(RootSpace::Alpha);
  const CoordinateRange ta = range(RootSpace::TwoAlpha);
  const int top = al.size + ta.size;
  k_columns_ = MatrixXd::Zero(d, ka.size + top);
  p_columns_ = MatrixXd::Zero(d, 1 + top);
  k_columns_.leftCols(ka.size) = MatrixXd::Identity(d, d).middleCols(ka.offset, ka.size);
  p_columns_(range(RootSpace::A).offset, 0) = 1.0;
  for (int j = 0; j < top; ++j) {
    VectorXd e = VectorXd::Unit(d, al.offset + j);
    const VectorXd te = theta_ * e;
    k_columns_.col(ka.size + j) = (e + te) / std::sqrt(2.0);
    p_columns_.col(1 + j) = (e - te) / std::sqrt(2.0);
  }
}

CoordinateRange RootDecomposition::range(RootSpace space) const {
  return ranges_[static_cast<std::size_t>(space)];
}

std::vector<AlgElement> RootDecomposition::basis_of(RootSpace space) const {
  const CoordinateRange r = range(space);
  return {basis_.begin() + r.offset, basis_.begin() + r.offset + r.size};
}

MatrixXd RootDecomposition::columns(RootSpace space) const {
  const CoordinateRange r = range(space);
  return MatrixXd::Identity(dim(), dim()).middleCols(r.offset, r.size);
}

MatrixXd RootDecomposition::projector(RootSpace space) const {
  const MatrixXd c = columns(space);
  return c * c.transpose();
}

AlgElement RootDecomposition::project(const AlgElement& x, RootSpace space) const {
  const CoordinateRange r = range(space);
  const VectorXd c = coordinates(x);
  VectorXd kept = VectorXd::Zero(dim());
  kept.segment(r.offset, r.size) = c.segment(r.offset, r.size);
  return element(kept);
}

VectorXd RootDecomposition::coordinates(const AlgElement& x) const {
  if (x.n() != n_) throw DomainError("coordinates: dimension mismatch");
  const int N = n_ + 1;
  const Eigen::Map<const Eigen::VectorXcd> flat(x.matrix().data(), N * N);
  return (dual_ * flat).real();
}

AlgElement RootDecomposition::element(const VectorXd& coords) const {
  if (coords.size() != dim()) throw DomainError("element: coordinate vector has wrong length");
  MatrixXcd m = MatrixXcd::Zero(n_ + 1, n_ + 1);
  for (int i = 0; i < dim(); ++i) m += coords[i] * basis_[static_cast<std::size_t>(i)].matrix();
  return AlgElement(n_, m);
}

AlgElement RootDecomposition::alpha_vector(const VectorXd& coords) const {
  const CoordinateRange r = range(RootSpace::Alpha);
  if (coords.size() != r.size) throw DomainError("alpha_vector: expected " + std::to_string(r.size) + " coordinates");
  VectorXd full = VectorXd::Zero(dim());
  full.segment(r.offset, r.size) = coords;
  return element(full);
}

VectorXd RootDecomposition::alpha_coords(const AlgElement& x) const {
  const CoordinateRange r = range(RootSpace::Alpha);
  return coordinates(x).segment(r.offset, r.size);
}

AlgElement RootDecomposition::J(const AlgElement& x) const { return -bracket(theta(x), z_); }

AlgElement RootDecomposition::k0_from_action(const MatrixXcd& m) const {
  const int k = n_ - 1;
  if (m.rows() != k || m.cols() != k) throw DomainError("k0_from_action: expected a square matrix of size n-1");
  if ((m + m.adjoint()).norm() > 1e-9 * std::max(1.0, m.norm())) {
    throw DomainError("k0_from_action: matrix is not skew-Hermitian");
  }
  // T = diag(i phi, i phi, A) acts on g_alpha by A - i phi.
  const MatrixXcd a = m - (m.trace() / static_cast<double>(n_ + 1)) * MatrixXcd::Identity(k, k);
  const cd iphi = -a.trace() / 2.0;
  MatrixXcd t = MatrixXcd::Zero(n_ + 1, n_ + 1);
  t(0, 0) = iphi;
  t(1, 1) = iphi;
  t.bottomRightCorner(k, k) = a;
  return AlgElement(n_, t);
}

MatrixXcd RootDecomposition::k0_action(const AlgElement& t) const {
  if (t.n() != n_) throw DomainError("k0_action: dimension mismatch");
  if (norm(t - project(t, RootSpace::K0)) > 1e-9 * std::max(1.0, norm(t))) {
    throw DomainError("k0_action: element is not in k_0");
  }
  const int k = n_ - 1;
  return t.matrix().bottomRightCorner(k, k) - t.matrix()(0, 0) * MatrixXcd::Identity(k, k);
}

AlgElement RootDecomposition::p_vector(const VectorXcd& z) const {
  if (z.size() != n_) throw DomainError("p_vector: expected a vector of length n");
  MatrixXcd m = MatrixXcd::Zero(n_ + 1, n_ + 1);
  m.block(1, 0, n_, 1) = z;
  m.block(0, 1, 1, n_) = z.adjoint();
  return AlgElement(n_, m);
}

VectorXcd RootDecomposition::p_coords(const AlgElement& x) const {
  if (x.n() != n_) throw DomainError("p_coords: dimension mismatch");
  const VectorXcd lower = x.matrix().block(1, 0, n_, 1);
  const VectorXcd upper = x.matrix().block(0, 1, 1, n_).adjoint();
  return 0.5 * (lower + upper);
}

double RootDecomposition::inner_an(const AlgElement& x, const AlgElement& y) const {
  const VectorXd cx = coordinates(x);
  const VectorXd cy = coordinates(y);
  const CoordinateRange a = range(RootSpace::A);
  const int lower = a.offset;  // g_{-2a}, g_{-a}, k_0 come first
  const double tol = 1e-9;
  if (cx.head(lower).norm() > tol * std::max(1.0, cx.norm()) || cy.head(lower).norm() > tol * std::max(1.0, cy.norm())) {
    throw DomainError("inner_an: arguments must lie in a + n");
  }
  const int top = dim() - a.offset - 1;
  return cx[a.offset] * cy[a.offset] + 0.5 * cx.tail(top).dot(cy.tail(top));
}

MatrixXd RootDecomposition::ad(const AlgElement& x) const {
  MatrixXd out(dim(), dim());
  for (int j = 0; j < dim(); ++j) out.col(j) = coordinates(bracket(x, basis_[static_cast<std::size_t>(j)]));
  return out;
}

MatrixXd RootDecomposition::Ad_exp(const AlgElement& x) const { return ad(x).exp(); }

MatrixXd RootDecomposition::Ad_conjugation(const AlgElement& x) const {
  const MatrixXcd g = x.matrix().exp();
  const MatrixXcd ginv = (-x.matrix()).exp();
  MatrixXd out(dim(), dim());
  for (int j = 0; j < dim(); ++j) {
    const MatrixXcd image = g * basis_[static_cast<std::size_t>(j)].matrix() * ginv;
    out.col(j) = coordinates(AlgElement(n_, image));
  }
  return out;
}

std::shared_ptr<const RootDecomposition> build_root_decomposition(int n) {
  if (n < 2) throw DomainError("build_root_decomposition: n must be at least 2, got " + std::to_string(n));
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const RootDecomposition>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_shared<const RootDecomposition>(n)).first;
  return it->second;
}

}  // namespace chpolar
