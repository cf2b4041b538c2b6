#pragma once

// Matrix model of su(1,n) with its restricted root space decomposition with
// respect to a maximal abelian a in p.
//
// Conventions:
//   I = diag(-1, 1, ..., 1);  X in su(1,n)  <=>  tr X = 0 and X^* I + I X = 0.
//   theta(X) = I X I = -X^*.
//   <X, Y> = -c Re tr(theta(X) Y), c fixed by <B, B> = 1.
//   B = (E_01 + E_10) / 2, so ad(B) has eigenvalues 0, +-1/2, +-1.
//   J on g_alpha: J X = -[theta X, Z]. Z in g_{2 alpha} is the vector whose
//   p-component is i B under the complex structure of p = C^n, so that the
//   AN complex structure sends B to Z.
//
// g_alpha is identified with C^{n-1}: coordinates are taken in a
// g-orthonormal basis (e_1, J e_1, e_2, J e_2, ...), interleaved like
// RealSubspace vectors, so J acts as multiplication by i.

#include <Eigen/Dense>

#include <memory>
#include <vector>

namespace chpolar {

class AlgElement {
 public:
  AlgElement() = default;
  /// Throws DomainError unless `matrix` is (n+1)x(n+1) and lies in su(1,n)
  /// up to 1e-9 relative to its size.
  AlgElement(int n, Eigen::MatrixXcd matrix);

  static AlgElement zero(int n);

  int n() const { return n_; }
  const Eigen::MatrixXcd& matrix() const { return m_; }

  AlgElement& operator+=(const AlgElement& o);
  AlgElement& operator-=(const AlgElement& o);
  AlgElement& operator*=(double s);

  friend AlgElement operator+(AlgElement a, const AlgElement& b) { return a += b; }
  friend AlgElement operator-(AlgElement a, const AlgElement& b) { return a -= b; }
  friend AlgElement operator*(double s, AlgElement a) { return a *= s; }
  friend AlgElement operator*(AlgElement a, double s) { return a *= s; }
  friend AlgElement operator-(AlgElement a) { return a *= -1.0; }

 private:
  struct Unchecked {};
  AlgElement(int n, Eigen::MatrixXcd matrix, Unchecked) : n_(n), m_(std::move(matrix)) {}
  friend AlgElement bracket(const AlgElement&, const AlgElement&);
  friend AlgElement theta(const AlgElement&);

  int n_ = 0;
  Eigen::MatrixXcd m_;
};

/// diag(-1, 1, ..., 1) of size n+1.
Eigen::MatrixXcd signature_matrix(int n);
bool in_su1n(const Eigen::MatrixXcd& m, double tol);

AlgElement bracket(const AlgElement& x, const AlgElement& y);
AlgElement theta(const AlgElement& x);
/// The constant c of the inner product.
double metric_scale();
double inner(const AlgElement& x, const AlgElement& y);
double norm(const AlgElement& x);

enum class RootSpace { MinusTwoAlpha, MinusAlpha, K0, A, Alpha, TwoAlpha };

struct CoordinateRange {
  int offset = 0;
  int size = 0;
};

/// Root space data for su(1,n). Built once per n; use build_root_decomposition.
/// The coordinate basis of g is the concatenation of orthonormal bases of
/// g_{-2a}, g_{-a}, k_0, a, g_a, g_{2a} in that order.
class RootDecomposition {
 public:
  explicit RootDecomposition(int n);

  int n() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int alpha_dim() const { return 2 * n_ - 2; }

  const std::vector<AlgElement>& basis() const { return basis_; }
  CoordinateRange range(RootSpace space) const;
  std::vector<AlgElement> basis_of(RootSpace space) const;
  /// Basis of `space` as coordinate columns (a block of the identity).
  Eigen::MatrixXd columns(RootSpace space) const;
  Eigen::MatrixXd projector(RootSpace space) const;
  AlgElement project(const AlgElement& x, RootSpace space) const;

  /// Orthonormal bases of k and p in coordinates.
  const Eigen::MatrixXd& k_columns() const { return k_columns_; }
  const Eigen::MatrixXd& p_columns() const { return p_columns_; }
  const Eigen::MatrixXd& theta_matrix() const { return theta_; }

  const AlgElement& B() const { return b_; }
  const AlgElement& Z() const { return z_; }

  Eigen::VectorXd coordinates(const AlgElement& x) const;
  AlgElement element(const Eigen::VectorXd& coords) const;

  /// g_alpha <-> R^{2n-2}.
  AlgElement alpha_vector(const Eigen::VectorXd& coords) const;
  Eigen::VectorXd alpha_coords(const AlgElement& x) const;
  /// -[theta X, Z] for X in g_alpha.
  AlgElement J(const AlgElement& x) const;

  /// k_0 <-> u(n-1): the element of k_0 acting on g_alpha = C^{n-1} by m.
  AlgElement k0_from_action(const Eigen::MatrixXcd& m) const;
  Eigen::MatrixXcd k0_action(const AlgElement& t) const;

  /// p <-> C^n, X = [[0, z^*], [z, 0]]; <X, X> = 4 |z|^2 and B = p_vector(e_1 / 2).
  AlgElement p_vector(const Eigen::VectorXcd& z) const;
  Eigen::VectorXcd p_coords(const AlgElement& x) const;

  /// <X_a, Y_a> + (1/2) <X_n, Y_n>; DomainError unless both lie in a + n.
  double inner_an(const AlgElement& x, const AlgElement& y) const;

  /// Matrix of ad(X) in the coordinate basis.
  Eigen::MatrixXd ad(const AlgElement& x) const;
  /// exp(ad X).
  Eigen::MatrixXd Ad_exp(const AlgElement& x) const;
  /// Y -> exp(X) Y exp(-X) in coordinates. Agrees with Ad_exp.
  Eigen::MatrixXd Ad_conjugation(const AlgElement& x) const;

 private:
  int n_;
  std::vector<AlgElement> basis_;
  std::vector<CoordinateRange> ranges_;
  Eigen::MatrixXcd dual_;  // row i = conj(vec(basis_i)) * c
  Eigen::MatrixXd k_columns_;
  Eigen::MatrixXd p_columns_;
  Eigen::MatrixXd theta_;
  AlgElement b_;
  AlgElement z_;
};

/// Cached, thread-safe. Throws DomainError for n < 2.
std::shared_ptr<const RootDecomposition> build_root_decomposition(int n);

}  // namespace chpolar
