#include "chpolar/kahler_linear.hpp"

#include "chpolar/errors.hpp"
#include "chpolar/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace chpolar {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_same_ambient(const RealSubspace& a, const RealSubspace& b, const char* op) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DomainError(std::string(op) + ": ambient dimensions differ (" + std::to_string(a.ambient_dim()) +
                      " vs " + std::to_string(b.ambient_dim()) + ")");
  }
}

// Complex Gram-Schmidt step: remove from z its components along the columns of
// `frame` (complex orthonormal) and return the residual.
VectorXcd complex_residual(const std::vector<VectorXcd>& frame, VectorXcd z) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& e : frame) z -= e.dot(z) * e;
  }
  return z;
}

}  // namespace

// ---------------------------------------------------------------------------
// RealSubspace

RealSubspace::RealSubspace(int ambient_complex_dim, const MatrixXd& spanning_columns, double drop_tol)
    : m_(ambient_complex_dim) {
  if (m_ < 0) throw DomainError("RealSubspace: negative ambient dimension");
  if (spanning_columns.cols() > 0 && spanning_columns.rows() != 2 * m_) {
    throw DomainError("RealSubspace: vectors must have length 2m = " + std::to_string(2 * m_));
  }
  if (!spanning_columns.allFinite()) throw DomainError("RealSubspace: non-finite entries");
  basis_ = spanning_columns.cols() > 0 ? linalg::orthonormalize(spanning_columns, drop_tol) : MatrixXd(2 * m_, 0);
}

RealSubspace RealSubspace::zero(int m) { return RealSubspace(m, MatrixXd(2 * m, 0)); }

RealSubspace RealSubspace::full(int m) { return RealSubspace(m, MatrixXd::Identity(2 * m, 2 * m)); }

RealSubspace RealSubspace::span(int m, const std::vector<VectorXcd>& vectors) {
  MatrixXd cols(2 * m, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != m) throw DomainError("RealSubspace::span: vector length mismatch");
    cols.col(static_cast<Eigen::Index>(i)) = linalg::to_real(vectors[i]);
  }
  return RealSubspace(m, cols);
}

VectorXd RealSubspace::project(const VectorXd& v) const {
  if (v.size() != 2 * m_) throw DomainError("RealSubspace::project: vector length mismatch");
  return basis_ * (basis_.transpose() * v);
}

bool RealSubspace::contains(const VectorXd& v, double tol) const {
  return (v - project(v)).norm() <= tol * std::max(1.0, v.norm());
}

bool RealSubspace::contains(const RealSubspace& other, double tol) const {
  require_same_ambient(*this, other, "contains");
  for (int c = 0; c < other.dim(); ++c) {
    if (!contains(VectorXd(other.basis().col(c)), tol)) return false;
  }
  return true;
}

double RealSubspace::distance(const RealSubspace& other) const {
  require_same_ambient(*this, other, "distance");
  return (projector() - other.projector()).norm();
}

// ---------------------------------------------------------------------------
// KahlerDecomposition

int KahlerDecomposition::dim_at(double angle, double tol) const {
  for (const auto& f : factors) {
    if (std::abs(f.angle - angle) <= tol) return f.subspace.dim();
  }
  return 0;
}

int KahlerDecomposition::total_dim() const {
  int d = 0;
  for (const auto& f : factors) d += f.subspace.dim();
  return d;
}

// ---------------------------------------------------------------------------
// Operations

double kahler_angle(const RealSubspace& space, const VectorXd& v, const Tolerances& tol) {
  if (v.size() != 2 * space.ambient_dim()) throw DomainError("kahler_angle: vector length mismatch");
  const double norm = v.norm();
  if (!(norm > 0.0)) throw DomainError("kahler_angle: zero vector");
  if (!space.contains(v, tol.member)) throw DomainError("kahler_angle: vector is not in the subspace");
  const VectorXd pj = space.project(linalg::apply_j(v));
  const double c = std::clamp(pj.norm() / norm, 0.0, 1.0);
  return std::acos(c);
}

KahlerDecomposition decompose(const RealSubspace& space, const Tolerances& tol) {
  KahlerDecomposition out;
  out.ambient_dim = space.ambient_dim();
  const int k = space.dim();
  if (k == 0) return out;

  const MatrixXd& q = space.basis();
  // P = pi_V o J restricted to V; -P^2 = P^T P is symmetric PSD with
  // eigenvalues cos^2(phi).
  const MatrixXd p = q.transpose() * linalg::apply_j(q);
  const MatrixXd psi = p.transpose() * p;
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(0.5 * (psi + psi.transpose()));
  const VectorXd& lambda = eig.eigenvalues();
  const MatrixXd& vecs = eig.eigenvectors();

  // Largest cos^2 first, i.e. increasing angle.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) order[static_cast<std::size_t>(i)] = k - 1 - i;

  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() && lambda[order[end - 1]] - lambda[order[end]] <= tol.eig) ++end;
    double mean = 0.0;
    MatrixXd cols(2 * space.ambient_dim(), static_cast<Eigen::Index>(end - start));
    for (std::size_t i = start; i < end; ++i) {
      mean += lambda[order[i]];
      cols.col(static_cast<Eigen::Index>(i - start)) = q * vecs.col(order[i]);
    }
    mean /= static_cast<double>(end - start);
    double angle;
    if (mean >= 1.0 - tol.eig) {
      angle = 0.0;
    } else if (mean <= tol.eig) {
      angle = kHalfPi;
    } else {
      angle = std::acos(std::sqrt(mean));
    }
    out.factors.push_back({angle, RealSubspace(space.ambient_dim(), cols)});
    start = end;
  }
  return out;
}

int constant_angle_footprint(int pairs, double angle) {
  if (angle <= 0.0 || angle >= kHalfPi) return pairs;
  return 2 * pairs;
}

RealSubspace make_constant_angle(int pairs, double angle, int ambient_dim, int offset) {
  if (pairs < 0 || offset < 0) throw DomainError("make_constant_angle: negative size");
  if (!(angle >= 0.0 && angle <= kHalfPi)) throw DomainError("make_constant_angle: angle outside [0, pi/2]");
  const int footprint = constant_angle_footprint(pairs, angle);
  if (offset + footprint > ambient_dim) {
    throw DomainError("make_constant_angle: needs " + std::to_string(offset + footprint) +
                      " complex dimensions, ambient has " + std::to_string(ambient_dim));
  }
  const int m = ambient_dim;
  if (angle == kHalfPi) {
    MatrixXd cols = MatrixXd::Zero(2 * m, pairs);
    for (int j = 0; j < pairs; ++j) cols(2 * (offset + j), j) = 1.0;
    return RealSubspace(m, cols);
  }
  if (angle == 0.0) {
    MatrixXd cols = MatrixXd::Zero(2 * m, 2 * pairs);
    for (int j = 0; j < pairs; ++j) {
      cols(2 * (offset + j), 2 * j) = 1.0;
      cols(2 * (offset + j) + 1, 2 * j + 1) = 1.0;
    }
    return RealSubspace(m, cols);
  }
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  MatrixXd cols = MatrixXd::Zero(2 * m, 2 * pairs);
  for (int j = 0; j < pairs; ++j) {
    const int e = offset + j;
    const int f = offset + pairs + j;
    // cos e + sin J f
    cols(2 * e, 2 * j) = c;
    cols(2 * f + 1, 2 * j) = s;
    // cos J e + sin f
    cols(2 * e + 1, 2 * j + 1) = c;
    cols(2 * f, 2 * j + 1) = s;
  }
  return RealSubspace(m, cols);
}

RealSubspace complex_span(const RealSubspace& space) {
  MatrixXd cols(2 * space.ambient_dim(), 2 * space.dim());
  cols << space.basis(), linalg::apply_j(space.basis());
  return RealSubspace(space.ambient_dim(), cols);
}

RealSubspace ominus(const RealSubspace& space, const RealSubspace& sub, const Tolerances& tol) {
  require_same_ambient(space, sub, "ominus");
  if (!space.contains(sub, tol.member)) throw DomainError("ominus: subtrahend is not contained in the subspace");
  return RealSubspace(space.ambient_dim(), linalg::relative_complement(space.basis(), sub.basis()));
}

RealSubspace orthogonal_complement(const RealSubspace& space) {
  return ominus(RealSubspace::full(space.ambient_dim()), space);
}

RealSubspace direct_sum(const RealSubspace& a, const RealSubspace& b) {
  require_same_ambient(a, b, "direct_sum");
  MatrixXd cols(2 * a.ambient_dim(), a.dim() + b.dim());
  cols << a.basis(), b.basis();
  return RealSubspace(a.ambient_dim(), cols);
}

RealSubspace apply_unitary(const MatrixXcd& a, const RealSubspace& space) {
  if (a.rows() != space.ambient_dim() || a.cols() != space.ambient_dim()) {
    throw DomainError("apply_unitary: matrix size mismatch");
  }
  return RealSubspace(space.ambient_dim(), linalg::realify(a) * space.basis());
}

MatrixXcd adapted_frame(const KahlerDecomposition& decomposition, const Tolerances& tol) {
  const int m = decomposition.ambient_dim;
  std::vector<VectorXcd> frame;
  const double accept = 1e-6;

  auto push = [&](const VectorXcd& z) {
    const VectorXcd r = complex_residual(frame, z);
    const double n = r.norm();
    if (n > accept) frame.push_back(r / n);
    return n > accept;
  };

  for (const auto& factor : decomposition.factors) {
    const MatrixXd& basis = factor.subspace.basis();
    const int d = factor.subspace.dim();
    if (factor.angle <= tol.angle || factor.angle >= kHalfPi - tol.angle) {
      // Complex factor: a C-basis; totally real factor: the real basis is
      // already C-orthonormal.
      for (int c = 0; c < d; ++c) push(linalg::to_complex(basis.col(c)));
      continue;
    }
    // 0 < phi < pi/2: J_phi = (pi_V J) / cos(phi) is a complex structure on
    // V_phi. Pick a J_phi-unitary basis (v_j, J_phi v_j) and recover the
    // canonical pair (e_j, f_j) with v = c e + s J f and J_phi v = c J e + s f.
    const double cos_phi = std::cos(factor.angle);
    const double ch = std::cos(factor.angle / 2.0);
    const double sh = std::sin(factor.angle / 2.0);
    MatrixXd chosen(basis.rows(), 0);
    for (int c = 0; c < d && chosen.cols() < d; ++c) {
      VectorXd v = basis.col(c);
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index j = 0; j < chosen.cols(); ++j) v -= chosen.col(j).dot(v) * chosen.col(j);
      }
      if (v.norm() < accept) continue;
      v.normalize();
      const VectorXd w = factor.subspace.project(linalg::apply_j(v)) / cos_phi;
      chosen.conservativeResize(Eigen::NoChange, chosen.cols() + 2);
      chosen.col(chosen.cols() - 2) = v;
      chosen.col(chosen.cols() - 1) = w;
      const VectorXd e = (v - linalg::apply_j(w)) / (2.0 * ch);
      const VectorXd f = (w - linalg::apply_j(v)) / (2.0 * sh);
      push(linalg::to_complex(e));
      push(linalg::to_complex(f));
    }
  }
  for (int k = 0; k < m && static_cast<int>(frame.size()) < m; ++k) {
    push(VectorXcd::Unit(m, k));
  }
  if (static_cast<int>(frame.size()) != m) throw ConsistencyError("adapted_frame: could not complete a unitary frame");
  MatrixXcd out(m, m);
  for (int k = 0; k < m; ++k) out.col(k) = frame[static_cast<std::size_t>(k)];
  return out;
}

Congruence congruent(const RealSubspace& v, const RealSubspace& w, const Tolerances& tol) {
  require_same_ambient(v, w, "congruent");
  const KahlerDecomposition dv = decompose(v, tol);
  const KahlerDecomposition dw = decompose(w, tol);
  Congruence out;
  if (dv.factors.size() != dw.factors.size()) return out;
  for (std::size_t i = 0; i < dv.factors.size(); ++i) {
    if (std::abs(dv.factors[i].angle - dw.factors[i].angle) > tol.angle) return out;
    if (dv.factors[i].subspace.dim() != dw.factors[i].subspace.dim()) return out;
  }
  out.congruent = true;
  out.witness = adapted_frame(dw, tol) * adapted_frame(dv, tol).adjoint();
  return out;
}

std::vector<MatrixXcd> unitary_algebra_basis(int m) {
  std::vector<MatrixXcd> out;
  const std::complex<double> i(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < m; ++j) {
    MatrixXcd t = MatrixXcd::Zero(m, m);
    t(j, j) = i;
    out.push_back(t);
  }
  for (int j = 0; j < m; ++j) {
    for (int k = j + 1; k < m; ++k) {
      MatrixXcd a = MatrixXcd::Zero(m, m);
      a(j, k) = r;
      a(k, j) = -r;
      out.push_back(a);
      MatrixXcd s = MatrixXcd::Zero(m, m);
      s(j, k) = i * r;
      s(k, j) = i * r;
      out.push_back(s);
    }
  }
  return out;
}

std::vector<MatrixXcd> normalizer_algebra(const RealSubspace& space, const Tolerances& tol) {
  const int m = space.ambient_dim();
  const std::vector<MatrixXcd> u = unitary_algebra_basis(m);
  const MatrixXd& q = space.basis();
  const MatrixXd off = MatrixXd::Identity(2 * m, 2 * m) - q * q.transpose();
  const Eigen::Index block = 2 * m * space.dim();
  MatrixXd system(block, static_cast<Eigen::Index>(u.size()));
  for (std::size_t i = 0; i < u.size(); ++i) {
    const MatrixXd image = off * linalg::realify(u[i]) * q;
    system.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const VectorXd>(image.data(), block);
  }
  const MatrixXd kernel = linalg::null_space(system, tol.rank);
  std::vector<MatrixXcd> out;
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    MatrixXcd t = MatrixXcd::Zero(m, m);
    for (std::size_t i = 0; i < u.size(); ++i) t += kernel(static_cast<Eigen::Index>(i), c) * u[i];
    out.push_back(t);
  }
  return out;
}

int normalizer_dimension_formula(const RealSubspace& space, const Tolerances& tol) {
  const KahlerDecomposition d = decompose(space, tol);
  int total = 0;
  for (const auto& f : d.factors) {
    const int dim = f.subspace.dim();
    if (f.angle >= kHalfPi - tol.angle) {
      total += dim * (dim - 1) / 2;
    } else {
      total += (dim / 2) * (dim / 2);
    }
  }
  const KahlerDecomposition perp = decompose(orthogonal_complement(space), tol);
  const int complex_perp = perp.dim_at(0.0, tol.angle);
  total += (complex_perp / 2) * (complex_perp / 2);
  return total;
}

}  // namespace chpolar
