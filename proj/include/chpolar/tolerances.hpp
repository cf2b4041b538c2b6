#pragma once

namespace chpolar {

/// Numerical thresholds shared by all modules. Defaults are sized for double
/// precision and ambient dimensions up to ~64.
struct Tolerances {
  double eig = 1e-8;      ///< grouping / snapping of cos^2 eigenvalues
  double angle = 1e-6;    ///< comparison of Kahler angles (radians)
  double ortho = 1e-10;   ///< orthonormality of stored bases
  double member = 1e-8;   ///< subspace membership
  double rank = 1e-8;     ///< relative singular value cutoff
  double residual = 1e-9; ///< algebraic identities (brackets, containment)
};

}  // namespace chpolar
