#pragma once

// Polar actions on CH^n built from subalgebras of su(1,n), the numerical
// polarity criterion and orbit-equivalence invariants.
//
// Family I:  h = q + so(1,k), q in u(n-k) acting on the last n-k coordinates.
// Family II: h = q + b + w + g_2alpha with b in {0, a}, w a real subspace of
//            g_alpha = C^{n-1} and q a subalgebra of the normaliser of w in
//            k_0 = u(n-1).
// Matrices in q_basis are skew-Hermitian and act on C^{n-k} (Family I) or on
// g_alpha (Family II).

#include "chpolar/kahler_linear.hpp"
#include "chpolar/su1n_model.hpp"
#include "chpolar/tolerances.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chpolar {

enum class Family { I, II };

struct PolarActionSpec {
  int n = 2;
  Family family = Family::II;
  int k = 0;            ///< Family I
  bool b_full = false;  ///< Family II: b = a when true, b = 0 otherwise
  RealSubspace w;       ///< Family II, inside C^{n-1}
  std::vector<Eigen::MatrixXcd> q_basis;
  RealSubspace q_section;  ///< claimed section of Q, in C^{n-k} or in g_alpha minus w
  std::uint64_t seed = 0;
};

struct BuiltAction {
  std::vector<AlgElement> h;        ///< basis of h in su(1,n)
  std::vector<AlgElement> section;  ///< basis of the tangent space of the section at o (in p)
  bool section_totally_real = true; ///< s totally real (Family II); informational
};

BuiltAction build_family_I(int n, int k, const std::vector<Eigen::MatrixXcd>& q_basis, const RealSubspace& q_section,
                           const Tolerances& tol = {});
BuiltAction build_family_II(int n, bool b_full, const RealSubspace& w, const std::vector<Eigen::MatrixXcd>& q_basis,
                            const RealSubspace& q_section, const Tolerances& tol = {});
BuiltAction build_action(const PolarActionSpec& spec, const Tolerances& tol = {});

/// Family II with q the full normaliser of w in k_0 and the section made of one
/// line in each factor of w-perp.
PolarActionSpec canonical_family_II(int n, bool b_full, const RealSubspace& w, const Tolerances& tol = {});
/// One line in J w_{pi/2}, in C w_phi minus w_phi for each 0 < phi < pi/2, and
/// in the complement of C w (each when nonzero).
RealSubspace canonical_section(const RealSubspace& w, const Tolerances& tol = {});

struct PolarityReport {
  int n = 0;
  int h_dim = 0;
  int isotropy_dim = 0;  ///< dim of h_o = h intersect k
  int normal_dim = 0;    ///< dim of nu_o(H.o)
  int section_dim = 0;

  bool is_subalgebra = false;
  double subalgebra_residual = 0.0;
  bool section_in_normal = false;
  double normal_residual = 0.0;
  bool section_totally_geodesic = false;  ///< [[S,S],S] in S
  double lie_triple_residual = 0.0;
  bool bracket_condition = false;
  double bracket_residual = 0.0;  ///< max |<h_i, s_j>|, |<h_i, [s_j, s_k]>| over orthonormal bases
  bool slice_condition = false;
  double slice_orthogonality_residual = 0.0;  ///< max |<[h_o, s_j], s_k>|
  int slice_rank = 0;                         ///< best dim(S + [h_o, xi]) over the samples
  int cohomogeneity = 0;                      ///< 2n minus the largest sampled orbit dimension
  bool transitive = false;                    ///< nu_o = 0; the criterion holds vacuously
  bool verdict = false;
};

/// Numerical form of the criterion: S is a section of the slice representation
/// (orthogonality plus rank saturation at sampled vectors) and h is orthogonal
/// to S + [S, S]. `section` must lie in p (PreconditionError otherwise). A
/// non-closed h is reported with is_subalgebra = false and verdict = false.
PolarityReport check_polarity(const RootDecomposition& rd, const std::vector<AlgElement>& h,
                              const std::vector<AlgElement>& section, std::uint64_t seed = 0,
                              const Tolerances& tol = {});
PolarityReport check_polarity(const PolarActionSpec& spec, const Tolerances& tol = {});

struct RegularSample {
  Eigen::VectorXd xi;
  int rank = 0;    ///< dim [q, xi]
  int target = 0;  ///< dim g_alpha - dim w - dim s
  bool regular = false;
};

/// xi in s is regular when dim [q, xi] = dim g_alpha - dim w - dim s.
RegularSample classify_vector(const std::vector<Eigen::MatrixXcd>& q_basis, const RealSubspace& w,
                              const RealSubspace& s, const Eigen::VectorXd& xi, const Tolerances& tol = {});
/// `samples` random unit vectors of s (the zero vector when s = 0).
std::vector<RegularSample> regular_vectors(const std::vector<Eigen::MatrixXcd>& q_basis, const RealSubspace& w,
                                           const RealSubspace& s, int samples, std::uint64_t seed,
                                           const Tolerances& tol = {});

/// Codimension of a principal orbit of the linear action of q on a subspace
/// (q preserves the subspace).
int linear_cohomogeneity(const std::vector<Eigen::MatrixXcd>& q_basis, const RealSubspace& space,
                         std::uint64_t seed, const Tolerances& tol = {});

enum class Trilean { Yes, No, Undetermined };
std::string to_string(Trilean t);

struct EquivalenceReport {
  Trilean equivalent = Trilean::Undetermined;
  std::string reason;
  std::vector<std::string> steps;
  std::optional<Eigen::MatrixXcd> witness;  ///< unitary A with A w1 = w2 (Family II)
  double witness_residual = 0.0;
  int cohomogeneity_q1 = -1;
  int cohomogeneity_q2 = -1;
};

/// Structural orbit-equivalence test. "no" is certain, "yes" is certain when
/// the Q-parts are conjugate by the congruence witness (or trivial), and
/// everything else is undetermined.
EquivalenceReport orbit_equivalence_invariants(const PolarActionSpec& a, const PolarActionSpec& b,
                                               const Tolerances& tol = {});

struct CatalogEntry {
  std::string label;
  PolarActionSpec spec;
  int cohomogeneity = 0;
};

struct Catalog {
  int n = 0;
  std::vector<double> angle_grid;
  std::vector<CatalogEntry> classes;
  int candidates = 0;  ///< representatives examined before filtering and deduplication
};

/// One representative per structural class of nontrivial, non-transitive polar
/// actions: Family I over k with Q in {trivial, u(n-k), diagonal torus} and
/// Family II over b and the Kahler moduli of w with angles in
/// {0, pi/2} + angle_grid, q the full normaliser.
Catalog enumerate_moduli(int n, const std::vector<double>& angle_grid, const Tolerances& tol = {});

}  // namespace chpolar
