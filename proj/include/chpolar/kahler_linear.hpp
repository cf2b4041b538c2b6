#pragma once

// Real subspaces of a complex Euclidean space C^m and their Kahler angles.
//
// C^m is viewed as the real vector space R^{2m} (interleaved layout
// re_1, im_1, ..., re_m, im_m) with the scalar product Re<.,.> and complex
// structure J = multiplication by i.

#include "chpolar/tolerances.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace chpolar {

/// R-linear subspace of C^m, stored as an orthonormal basis of R^{2m}.
/// The basis is canonicalised on construction (modified Gram-Schmidt), so any
/// spanning set is accepted. Immutable.
class RealSubspace {
 public:
  RealSubspace() = default;
  RealSubspace(int ambient_complex_dim, const Eigen::MatrixXd& spanning_columns,
               double drop_tol = 1e-8);

  static RealSubspace zero(int m);
  static RealSubspace full(int m);
  /// span_R of the given vectors of C^m.
  static RealSubspace span(int m, const std::vector<Eigen::VectorXcd>& vectors);

  int ambient_dim() const { return m_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Eigen::MatrixXd& basis() const { return basis_; }

  Eigen::MatrixXd projector() const { return basis_ * basis_.transpose(); }
  Eigen::VectorXd project(const Eigen::VectorXd& v) const;
  bool contains(const Eigen::VectorXd& v, double tol) const;
  bool contains(const RealSubspace& other, double tol) const;
  /// Frobenius distance between the orthogonal projectors.
  double distance(const RealSubspace& other) const;

 private:
  int m_ = 0;
  Eigen::MatrixXd basis_{0, 0};
};

struct KahlerFactor {
  double angle = 0.0;  ///< constant Kahler angle in [0, pi/2]
  RealSubspace subspace;
};

/// Unique splitting V = (+) V_phi into constant-angle pieces with
/// C V_i orthogonal to C V_j, ordered by strictly increasing angle.
struct KahlerDecomposition {
  int ambient_dim = 0;
  std::vector<KahlerFactor> factors;

  /// Real dimension of the factor with the given angle (0 if absent).
  int dim_at(double angle, double tol) const;
  int total_dim() const;
};

/// Angle between Jv and V for a nonzero v in V.
double kahler_angle(const RealSubspace& space, const Eigen::VectorXd& v, const Tolerances& tol = {});

KahlerDecomposition decompose(const RealSubspace& space, const Tolerances& tol = {});

/// Subspace of constant Kahler angle `angle` built from `pairs` pairs
///   cos(a/2) e_j + sin(a/2) J f_j,  cos(a/2) J e_j + sin(a/2) f_j
/// with e_j = coordinate offset+j and f_j = coordinate offset+pairs+j.
/// For angle = 0 the result is the complex span of e_1..e_pairs (footprint
/// `pairs` coordinates). For angle = pi/2 the result is the real span of the
/// `pairs` coordinate vectors starting at `offset` (dimension `pairs`).
RealSubspace make_constant_angle(int pairs, double angle, int ambient_dim, int offset = 0);

/// Number of complex coordinates consumed by make_constant_angle.
int constant_angle_footprint(int pairs, double angle);

RealSubspace complex_span(const RealSubspace& space);
/// Orthogonal complement of `sub` inside `space`. Throws DomainError unless sub is contained in space.
RealSubspace ominus(const RealSubspace& space, const RealSubspace& sub, const Tolerances& tol = {});
/// C^m minus V.
RealSubspace orthogonal_complement(const RealSubspace& space);
RealSubspace direct_sum(const RealSubspace& a, const RealSubspace& b);
RealSubspace apply_unitary(const Eigen::MatrixXcd& a, const RealSubspace& space);

/// Unitary frame adapted to a decomposition: complex orthonormal columns
/// listing, factor by factor, the vectors e_j (and f_j for 0 < angle < pi/2)
/// of the canonical constant-angle form, completed deterministically to a
/// basis of C^m.
Eigen::MatrixXcd adapted_frame(const KahlerDecomposition& decomposition, const Tolerances& tol = {});

struct Congruence {
  bool congruent = false;
  std::optional<Eigen::MatrixXcd> witness;  ///< unitary A with A V_phi = W_phi
};

Congruence congruent(const RealSubspace& v, const RealSubspace& w, const Tolerances& tol = {});

/// Orthonormal basis (under Re tr(A^* B)) of u(m).
std::vector<Eigen::MatrixXcd> unitary_algebra_basis(int m);

/// Basis of {T in u(m) : T V subset V}.
std::vector<Eigen::MatrixXcd> normalizer_algebra(const RealSubspace& space, const Tolerances& tol = {});

/// sum_{phi in Phi* u {0}} (m_phi/2)^2 + m_{pi/2}(m_{pi/2}-1)/2 + (m_0^perp/2)^2.
int normalizer_dimension_formula(const RealSubspace& space, const Tolerances& tol = {});

}  // namespace chpolar
