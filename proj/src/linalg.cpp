#include "chpolar/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace chpolar::linalg {

VectorXd apply_j(const VectorXd& v) {
  VectorXd out(v.size());
  for (Eigen::Index i = 0; i + 1 < v.size(); i += 2) {
    out[i] = -v[i + 1];
    out[i + 1] = v[i];
  }
  return out;
}

MatrixXd apply_j(const MatrixXd& columns) {
  MatrixXd out(columns.rows(), columns.cols());
  for (Eigen::Index c = 0; c < columns.cols(); ++c) out.col(c) = apply_j(VectorXd(columns.col(c)));
  return out;
}

MatrixXd j_matrix(int m) {
  MatrixXd j = MatrixXd::Zero(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    j(2 * i, 2 * i + 1) = -1.0;
    j(2 * i + 1, 2 * i) = 1.0;
  }
  return j;
}

VectorXcd to_complex(const VectorXd& v) {
  VectorXcd z(v.size() / 2);
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = {v[2 * i], v[2 * i + 1]};
  return z;
}

VectorXd to_real(const VectorXcd& z) {
  VectorXd v(2 * z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    v[2 * i] = z[i].real();
    v[2 * i + 1] = z[i].imag();
  }
  return v;
}

MatrixXd realify(const MatrixXcd& a) {
  MatrixXd r(2 * a.rows(), 2 * a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double re = a(i, j).real();
      const double im = a(i, j).imag();
      r(2 * i, 2 * j) = re;
      r(2 * i, 2 * j + 1) = -im;
      r(2 * i + 1, 2 * j) = im;
      r(2 * i + 1, 2 * j + 1) = re;
    }
  }
  return r;
}

MatrixXd orthonormalize(const MatrixXd& columns, double drop_tol) {
  MatrixXd q(columns.rows(), columns.cols());
  Eigen::Index k = 0;
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    VectorXd v = columns.col(c);
    const double original = v.norm();
    if (original == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < k; ++j) v -= q.col(j).dot(v) * q.col(j);
    }
    const double norm = v.norm();
    if (norm <= drop_tol * std::max(original, 1.0)) continue;
    q.col(k++) = v / norm;
  }
  return q.leftCols(k);
}

namespace {

double cutoff(const VectorXd& singular_values, double tol) {
  const double largest = singular_values.size() > 0 ? singular_values.maxCoeff() : 0.0;
  return tol * std::max(largest, 1.0);
}

}  // namespace

int rank(const MatrixXd& a, double tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<MatrixXd> svd(a);
  const VectorXd& s = svd.singularValues();
  const double cut = cutoff(s, tol);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s[i] > cut ? 1 : 0;
  return r;
}

MatrixXd null_space(const MatrixXd& a, double tol) {
  const Eigen::Index n = a.cols();
  if (n == 0) return MatrixXd(0, 0);
  if (a.rows() == 0) return MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeFullV);
  const VectorXd& s = svd.singularValues();
  const double cut = cutoff(s, tol);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s[i] > cut ? 1 : 0;
  return svd.matrixV().rightCols(n - r);
}

MatrixXd relative_complement(const MatrixXd& v, const MatrixXd& u) {
  if (v.cols() == 0) return MatrixXd(v.rows(), 0);
  // Restricted to span(v), the projector onto the complement of u has
  // eigenvalues exactly 0 or 1; keep the eigenvectors near 1.
  MatrixXd reduced = MatrixXd::Identity(v.cols(), v.cols());
  if (u.cols() > 0) {
    const MatrixXd c = u.transpose() * v;
    reduced -= c.transpose() * c;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(0.5 * (reduced + reduced.transpose()));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = eig.eigenvalues().size() - 1; i >= 0; --i) {
    if (eig.eigenvalues()[i] > 0.5) keep.push_back(i);
  }
  MatrixXd out(v.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) out.col(j) = v * eig.eigenvectors().col(keep[j]);
  return orthonormalize(out);
}

double max_abs_diff(const MatrixXd& a, const MatrixXd& b) {
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

MatrixXcd random_unitary(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatrixXcd g(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) g(i, j) = {gauss(rng), gauss(rng)};
  }
  Eigen::HouseholderQR<MatrixXcd> qr(g);
  MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(m, m);
  const MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < m; ++j) {
    const std::complex<double> d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

VectorXd random_unit_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  VectorXd v(dim);
  do {
    for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
  } while (v.norm() < 1e-12);
  return v.normalized();
}

}  // namespace chpolar::linalg
