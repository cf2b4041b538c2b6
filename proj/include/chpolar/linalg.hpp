#pragma once

#include <Eigen/Dense>

#include <complex>
#include <random>

namespace chpolar::linalg {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Real subspaces of C^m are stored in the realification R^{2m} with
// interleaved layout (re_1, im_1, ..., re_m, im_m).

/// Multiplication by i in the interleaved layout.
VectorXd apply_j(const VectorXd& v);
MatrixXd apply_j(const MatrixXd& columns);
/// Matrix of multiplication by i on R^{2m}.
MatrixXd j_matrix(int m);

VectorXcd to_complex(const VectorXd& v);
VectorXd to_real(const VectorXcd& z);
/// Real 2m x 2m matrix of a complex-linear map of C^m.
MatrixXd realify(const MatrixXcd& a);

/// Modified Gram-Schmidt with one re-orthogonalisation pass. Columns whose
/// residual norm falls below `drop_tol` times their original norm (or below
/// `drop_tol` in absolute terms) are discarded.
MatrixXd orthonormalize(const MatrixXd& columns, double drop_tol = 1e-8);

/// Numerical rank: singular values below tol * max(sigma_max, 1) are zero.
int rank(const MatrixXd& a, double tol);

/// Orthonormal basis of ker(a) with the same cutoff as `rank`.
MatrixXd null_space(const MatrixXd& a, double tol);

/// Orthonormal basis of span(v) minus span(u), assuming span(u) lies in span(v)
/// (both given by orthonormal columns).
MatrixXd relative_complement(const MatrixXd& v, const MatrixXd& u);

/// Largest absolute entry of a - b, or 0 for empty inputs.
double max_abs_diff(const MatrixXd& a, const MatrixXd& b);

/// Haar-distributed unitary matrix (QR of a complex Ginibre matrix with phase fix).
MatrixXcd random_unitary(int m, std::mt19937_64& rng);
VectorXd random_unit_vector(int dim, std::mt19937_64& rng);

}  // namespace chpolar::linalg
