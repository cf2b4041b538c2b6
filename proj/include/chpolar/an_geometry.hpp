#pragma once

// The solvable group AN with Lie algebra a + n = RB + g_alpha + g_2alpha and
// its left-invariant metric, worked out in the coordinates (a, u, x) of
// aB + U + xZ. u holds the g-orthonormal coordinates of U in g_alpha (see
// su1n_model.hpp), so
//   <aB + U + xZ, bB + V + yZ>_AN = ab + (1/2) u.v + xy.
// The bracket uses the g-metric in its Z-coefficient (1/2)<JU, V> = (1/2) (Ju).v;
// the connection is written with the AN metric.

#include "chpolar/kahler_linear.hpp"
#include "chpolar/su1n_model.hpp"

#include <Eigen/Dense>

#include <vector>

namespace chpolar {

struct ANVector {
  double a = 0.0;
  Eigen::VectorXd u;
  double z = 0.0;

  ANVector() = default;
  ANVector(double a_part, Eigen::VectorXd u_part, double z_part) : a(a_part), u(std::move(u_part)), z(z_part) {}

  static ANVector zero(int n);
  static ANVector from_vector(const Eigen::VectorXd& v);  ///< (a, u..., z), length 2n

  int n() const { return static_cast<int>(u.size()) / 2 + 1; }
  Eigen::VectorXd to_vector() const;

  ANVector& operator+=(const ANVector& o);
  ANVector& operator*=(double s);
  friend ANVector operator+(ANVector x, const ANVector& y) { return x += y; }
  friend ANVector operator-(ANVector x, const ANVector& y) { return x += (-1.0) * y; }
  friend ANVector operator*(double s, ANVector x) { return x *= s; }
};

double an_inner(const ANVector& x, const ANVector& y);
double an_norm(const ANVector& x);
ANVector an_bracket(const ANVector& x, const ANVector& y);
/// B -> Z, Z -> -B, U -> JU.
ANVector an_complex_structure(const ANVector& x);
ANVector levi_civita(const ANVector& x, const ANVector& y);
/// <R(X,Y)Z, W>_AN with R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y].
double curvature(const ANVector& x, const ANVector& y, const ANVector& z, const ANVector& w);
double sectional_curvature(const ANVector& x, const ANVector& y);
double holomorphic_sectional_curvature(const ANVector& x);

/// Tangent space at o of an orbit H.o with H in AN, together with its normal
/// space. Bases are AN-orthonormal columns in R^{2n} (see ANVector::to_vector).
class OrbitModel {
 public:
  enum class Shape { Tilted, General };

  /// R(aB + X) + w + g_2alpha with X orthogonal to w. a = 1, X = 0 gives
  /// a + w + g_2alpha; a = 0 requires X != 0.
  static OrbitModel tilted(int n, double a, const Eigen::VectorXd& x, const RealSubspace& w);
  /// b + w + g_2alpha with b = a (full) or b = 0.
  static OrbitModel standard(int n, bool b_full, const RealSubspace& w);
  /// Any subalgebra of a + n given by spanning AN vectors; ConsistencyError if
  /// the span is not closed under the bracket.
  static OrbitModel from_tangent(int n, const std::vector<ANVector>& spanning);

  int n() const { return n_; }
  Shape shape() const { return shape_; }
  const Eigen::MatrixXd& tangent() const { return tangent_; }
  const Eigen::MatrixXd& normal() const { return normal_; }
  ANVector tangent_vector(int i) const;
  ANVector normal_vector(int i) const;
  /// Tilted shape data.
  double tilt_a() const { return a_; }
  const Eigen::VectorXd& tilt_x() const { return x_; }
  int w_dim() const { return w_dim_; }

 private:
  int n_ = 0;
  Shape shape_ = Shape::General;
  Eigen::MatrixXd tangent_;
  Eigen::MatrixXd normal_;
  double a_ = 0.0;
  Eigen::VectorXd x_;
  int w_dim_ = 0;
};

/// Matrix of V -> -(nabla_V xi)^T in the tangent basis of the orbit.
/// DomainError unless xi is an AN-unit normal vector.
Eigen::MatrixXd shape_operator(const OrbitModel& orbit, const ANVector& xi);

/// Sum over an orthonormal normal basis of tr(S_xi) xi. DomainError for
/// orbits built with from_tangent.
ANVector mean_curvature(const OrbitModel& orbit);

/// (3 + dim w) / (2 (a^2 + |X|^2)) (|X|^2 B - aX), norms in the AN metric;
/// (1/2)(2 + dim w) B for b = 0.
ANVector mean_curvature_formula(const OrbitModel& orbit);

/// Matrix model bridge: aB + U + xZ as an element of su(1,n) and back.
AlgElement to_algebra(const RootDecomposition& rd, const ANVector& x);
/// DomainError unless x lies in a + n.
ANVector from_algebra(const RootDecomposition& rd, const AlgElement& x);

/// {T in q : [T, xi] = 0}, orthonormal for the g-metric.
std::vector<AlgElement> isotropy_at(const RootDecomposition& rd, const std::vector<AlgElement>& q,
                                    const AlgElement& xi, double tol_rank = 1e-8);

/// Ad(exp(g_exponent)) h, re-orthonormalised. DomainError unless h lies in
/// k_0 + a + n; ConsistencyError if the image leaves k_0 + a + n.
std::vector<AlgElement> conjugate_subalgebra(const RootDecomposition& rd, const std::vector<AlgElement>& h,
                                             const ANVector& g_exponent);

}  // namespace chpolar
