#include "chpolar/polar_actions.hpp"

#include "chpolar/errors.hpp"
#include "chpolar/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace chpolar {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cd = std::complex<double>;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

VectorXd flatten(const MatrixXcd& m) {
  VectorXd v(2 * m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    v[2 * i] = m.data()[i].real();
    v[2 * i + 1] = m.data()[i].imag();
  }
  return v;
}

MatrixXd flatten_all(const std::vector<MatrixXcd>& ms, int m) {
  MatrixXd cols(2 * m * m, static_cast<Eigen::Index>(ms.size()));
  for (std::size_t i = 0; i < ms.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = flatten(ms[i]);
  return cols;
}

void check_u(const std::vector<MatrixXcd>& q, int m, const char* who) {
  for (const auto& t : q) {
    if (t.rows() != m || t.cols() != m) {
      throw DomainError(std::string(who) + ": q_basis matrices must be " + std::to_string(m) + "x" + std::to_string(m));
    }
    if (!t.allFinite()) throw DomainError(std::string(who) + ": non-finite q_basis entry");
    if ((t + t.adjoint()).norm() > 1e-9 * std::max(1.0, t.norm())) {
      throw DomainError(std::string(who) + ": q_basis matrices must be skew-Hermitian");
    }
  }
}

/// Largest distance of a bracket [q_i, q_j] from span(q).
double closure_residual(const std::vector<MatrixXcd>& q, int m) {
  if (q.empty()) return 0.0;
  const MatrixXd basis = linalg::orthonormalize(flatten_all(q, m));
  double worst = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      const VectorXd b = flatten(q[i] * q[j] - q[j] * q[i]);
      worst = std::max(worst, (b - basis * (basis.transpose() * b)).norm());
    }
  }
  return worst;
}

bool same_span(const std::vector<MatrixXcd>& a, const std::vector<MatrixXcd>& b, int m, double tol) {
  const MatrixXd qa = a.empty() ? MatrixXd(2 * m * m, 0) : linalg::orthonormalize(flatten_all(a, m));
  const MatrixXd qb = b.empty() ? MatrixXd(2 * m * m, 0) : linalg::orthonormalize(flatten_all(b, m));
  if (qa.cols() != qb.cols()) return false;
  if (qa.cols() == 0) return true;
  return (qa - qb * (qb.transpose() * qa)).norm() <= tol;
}

MatrixXd coordinate_columns(const RootDecomposition& rd, const std::vector<AlgElement>& xs) {
  MatrixXd cols(rd.dim(), static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = rd.coordinates(xs[i]);
  return cols;
}

std::vector<AlgElement> elements(const RootDecomposition& rd, const MatrixXd& cols) {
  std::vector<AlgElement> out;
  for (Eigen::Index c = 0; c < cols.cols(); ++c) out.push_back(rd.element(cols.col(c)));
  return out;
}

double subalgebra_residual(const RootDecomposition& rd, const MatrixXd& onb) {
  double worst = 0.0;
  const std::vector<AlgElement> h = elements(rd, onb);
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = i + 1; j < h.size(); ++j) {
      const VectorXd b = rd.coordinates(bracket(h[i], h[j]));
      worst = std::max(worst, (b - onb * (onb.transpose() * b)).norm());
    }
  }
  return worst;
}

std::vector<AlgElement> orthonormal_elements(const RootDecomposition& rd, const std::vector<AlgElement>& xs) {
  if (xs.empty()) return {};
  return elements(rd, linalg::orthonormalize(coordinate_columns(rd, xs)));
}

}  // namespace

// ---------------------------------------------------------------------------
// Constructors

BuiltAction build_family_I(int n, int k, const std::vector<MatrixXcd>& q_basis, const RealSubspace& q_section,
                           const Tolerances& tol) {
  if (n < 2) throw DomainError("family I: n must be at least 2");
  if (k < 0 || k > n) throw DomainError("family I: k must lie in [0, n]");
  const int m = n - k;
  const int N = n + 1;
  check_u(q_basis, m, "family I");
  if (q_section.ambient_dim() != m) {
    throw DomainError("family I: q_section must be a subspace of C^" + std::to_string(m));
  }
  if (closure_residual(q_basis, m) > tol.residual) throw PreconditionError("family I: q is not a Lie subalgebra");

  const auto rd = build_root_decomposition(n);
  std::vector<AlgElement> h;
  for (const auto& t : q_basis) {
    MatrixXcd x = MatrixXcd::Zero(N, N);
    x.bottomRightCorner(m, m) = t;
    x -= (x.trace() / static_cast<double>(N)) * MatrixXcd::Identity(N, N);
    h.emplace_back(n, x);
  }
  // so(1,k) on the first k+1 coordinates: boosts and rotations.
  for (int j = 1; j <= k; ++j) {
    MatrixXcd x = MatrixXcd::Zero(N, N);
    x(0, j) = x(j, 0) = 1.0;
    h.emplace_back(n, x);
  }
  for (int i = 1; i <= k; ++i) {
    for (int j = i + 1; j <= k; ++j) {
      MatrixXcd x = MatrixXcd::Zero(N, N);
      x(i, j) = 1.0;
      x(j, i) = -1.0;
      h.emplace_back(n, x);
    }
  }

  std::vector<AlgElement> section;
  if (k >= 1) {
    // i e_1, normal to the real hyperbolic space through o.
    VectorXcd z = VectorXcd::Zero(n);
    z[0] = cd(0.0, 1.0);
    section.push_back(rd->p_vector(z));
  }
  for (int c = 0; c < q_section.dim(); ++c) {
    VectorXcd z = VectorXcd::Zero(n);
    z.tail(m) = linalg::to_complex(q_section.basis().col(c));
    section.push_back(rd->p_vector(z));
  }

  BuiltAction out;
  out.h = orthonormal_elements(*rd, h);
  out.section = orthonormal_elements(*rd, section);
  if (subalgebra_residual(*rd, coordinate_columns(*rd, out.h)) > tol.residual) {
    throw ConsistencyError("family I: h is not closed under the bracket");
  }
  return out;
}

BuiltAction build_family_II(int n, bool b_full, const RealSubspace& w, const std::vector<MatrixXcd>& q_basis,
                            const RealSubspace& q_section, const Tolerances& tol) {
  if (n < 2) throw DomainError("family II: n must be at least 2");
  const int m = n - 1;
  check_u(q_basis, m, "family II");
  if (w.ambient_dim() != m || q_section.ambient_dim() != m) {
    throw DomainError("family II: w and q_section must be subspaces of g_alpha = C^" + std::to_string(m));
  }
  if (closure_residual(q_basis, m) > tol.residual) throw PreconditionError("family II: q is not a Lie subalgebra");
  for (const auto& t : q_basis) {
    const MatrixXd image = linalg::realify(t) * w.basis();
    for (Eigen::Index c = 0; c < image.cols(); ++c) {
      if (!w.contains(VectorXd(image.col(c)), tol.member)) {
        throw PreconditionError("family II: q does not normalise w");
      }
    }
  }
  if (w.dim() > 0 && q_section.dim() > 0 &&
      (w.basis().transpose() * q_section.basis()).cwiseAbs().maxCoeff() > tol.member) {
    throw PreconditionError("family II: q_section must be orthogonal to w");
  }

  const auto rd = build_root_decomposition(n);
  std::vector<AlgElement> h;
  for (const auto& t : q_basis) h.push_back(rd->k0_from_action(t));
  if (b_full) h.push_back(rd->B());
  for (int c = 0; c < w.dim(); ++c) h.push_back(rd->alpha_vector(w.basis().col(c)));
  h.push_back(rd->Z());

  std::vector<AlgElement> section;
  if (!b_full) section.push_back(rd->B());
  for (int c = 0; c < q_section.dim(); ++c) {
    const AlgElement v = rd->alpha_vector(q_section.basis().col(c));
    section.push_back(v - theta(v));
  }

  BuiltAction out;
  out.h = orthonormal_elements(*rd, h);
  out.section = orthonormal_elements(*rd, section);
  const MatrixXd& s = q_section.basis();
  out.section_totally_real = s.cols() == 0 || (s.transpose() * linalg::apply_j(s)).cwiseAbs().maxCoeff() <= tol.member;
  if (subalgebra_residual(*rd, coordinate_columns(*rd, out.h)) > tol.residual) {
    throw ConsistencyError("family II: h is not closed under the bracket");
  }
  return out;
}

BuiltAction build_action(const PolarActionSpec& spec, const Tolerances& tol) {
  if (spec.family == Family::I) return build_family_I(spec.n, spec.k, spec.q_basis, spec.q_section, tol);
  return build_family_II(spec.n, spec.b_full, spec.w, spec.q_basis, spec.q_section, tol);
}

RealSubspace canonical_section(const RealSubspace& w, const Tolerances& tol) {
  const int m = w.ambient_dim();
  std::vector<VectorXd> lines;
  for (const auto& f : decompose(w, tol).factors) {
    if (f.angle <= tol.angle) continue;
    if (f.angle >= kHalfPi - tol.angle) {
      lines.push_back(linalg::apply_j(VectorXd(f.subspace.basis().col(0))));
      continue;
    }
    const RealSubspace perp = ominus(complex_span(f.subspace), f.subspace, tol);
    lines.push_back(perp.basis().col(0));
  }
  const RealSubspace rest = orthogonal_complement(complex_span(w));
  if (rest.dim() > 0) lines.push_back(rest.basis().col(0));
  MatrixXd cols(2 * m, static_cast<Eigen::Index>(lines.size()));
  for (std::size_t i = 0; i < lines.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = lines[i];
  return RealSubspace(m, cols);
}

PolarActionSpec canonical_family_II(int n, bool b_full, const RealSubspace& w, const Tolerances& tol) {
  if (w.ambient_dim() != n - 1) throw DomainError("canonical_family_II: w must be a subspace of C^" + std::to_string(n - 1));
  PolarActionSpec spec;
  spec.n = n;
  spec.family = Family::II;
  spec.b_full = b_full;
  spec.w = w;
  spec.q_basis = normalizer_algebra(w, tol);
  spec.q_section = canonical_section(w, tol);
  return spec;
}

// ---------------------------------------------------------------------------
// Polarity criterion

PolarityReport check_polarity(const RootDecomposition& rd, const std::vector<AlgElement>& h,
                              const std::vector<AlgElement>& section, std::uint64_t seed, const Tolerances& tol) {
  const int n = rd.n();
  const int d = rd.dim();
  PolarityReport r;
  r.n = n;
  for (const auto& x : h) {
    if (x.n() != n) throw DomainError("check_polarity: h lives in a different su(1,n)");
  }
  for (const auto& x : section) {
    if (x.n() != n) throw DomainError("check_polarity: section lives in a different su(1,n)");
  }
  const MatrixXd hc = h.empty() ? MatrixXd(d, 0) : linalg::orthonormalize(coordinate_columns(rd, h));
  const MatrixXd sc = section.empty() ? MatrixXd(d, 0) : linalg::orthonormalize(coordinate_columns(rd, section));
  const MatrixXd& pc = rd.p_columns();
  if (sc.cols() > 0 && (sc - pc * (pc.transpose() * sc)).cwiseAbs().maxCoeff() > tol.member) {
    throw PreconditionError("check_polarity: the section must lie in p");
  }
  r.h_dim = static_cast<int>(hc.cols());
  r.section_dim = static_cast<int>(sc.cols());

  r.subalgebra_residual = subalgebra_residual(rd, hc);
  r.is_subalgebra = r.subalgebra_residual <= tol.residual;
  if (!r.is_subalgebra) return r;

  // nu_o = p minus the p-projection of h.
  const MatrixXd hp = pc.transpose() * hc;  // p-components in the p basis
  const MatrixXd tangent = hp.cols() > 0 ? linalg::orthonormalize(hp) : MatrixXd(pc.cols(), 0);
  const MatrixXd nu = pc * linalg::relative_complement(MatrixXd::Identity(pc.cols(), pc.cols()), tangent);
  r.normal_dim = static_cast<int>(nu.cols());

  const MatrixXd kernel = linalg::null_space(hp, tol.rank);
  const MatrixXd ho = hc.cols() > 0 ? MatrixXd(hc * kernel) : MatrixXd(d, 0);
  r.isotropy_dim = static_cast<int>(ho.cols());

  r.normal_residual = sc.cols() > 0 ? (sc - nu * (nu.transpose() * sc)).colwise().norm().maxCoeff() : 0.0;
  r.section_in_normal = r.normal_residual <= tol.member;

  const std::vector<AlgElement> s = elements(rd, sc);
  const std::vector<AlgElement> t = elements(rd, ho);

  double bracket_res = sc.cols() > 0 && hc.cols() > 0 ? (hc.transpose() * sc).cwiseAbs().maxCoeff() : 0.0;
  double triple_res = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const AlgElement sij = bracket(s[i], s[j]);
      if (hc.cols() > 0) {
        bracket_res = std::max(bracket_res, (hc.transpose() * rd.coordinates(sij)).cwiseAbs().maxCoeff());
      }
      for (const auto& sk : s) {
        const VectorXd v = rd.coordinates(bracket(sij, sk));
        triple_res = std::max(triple_res, (v - sc * (sc.transpose() * v)).norm());
      }
    }
  }
  r.bracket_residual = bracket_res;
  r.bracket_condition = bracket_res <= tol.residual;
  r.lie_triple_residual = triple_res;
  r.section_totally_geodesic = triple_res <= tol.residual;

  double orth = 0.0;
  for (const auto& ti : t) {
    for (const auto& sj : s) {
      const VectorXd v = rd.coordinates(bracket(ti, sj));
      if (sc.cols() > 0) orth = std::max(orth, (sc.transpose() * v).cwiseAbs().maxCoeff());
    }
  }
  r.slice_orthogonality_residual = orth;

  std::mt19937_64 rng(seed);
  const int samples = 6;
  if (r.normal_dim == 0) {
    r.transitive = true;
    r.slice_rank = 0;
  } else {
    for (int k = 0; k < samples; ++k) {
      VectorXd xi = VectorXd::Zero(d);
      if (sc.cols() > 0) xi = sc * linalg::random_unit_vector(static_cast<int>(sc.cols()), rng);
      const AlgElement x = rd.element(xi);
      MatrixXd cols(d, sc.cols() + static_cast<Eigen::Index>(t.size()));
      cols.leftCols(sc.cols()) = sc;
      for (std::size_t i = 0; i < t.size(); ++i) {
        cols.col(sc.cols() + static_cast<Eigen::Index>(i)) = rd.coordinates(bracket(t[i], x));
      }
      r.slice_rank = std::max(r.slice_rank, linalg::rank(cols, tol.rank));
    }
  }

  // Orbit through exp_o(xi) has tangent Ad(exp(-xi)) h projected to p.
  int best = 0;
  for (int k = 0; k < samples && hc.cols() > 0; ++k) {
    const VectorXd xi = 0.8 * pc * linalg::random_unit_vector(static_cast<int>(pc.cols()), rng);
    const MatrixXd ad = rd.Ad_exp(rd.element(-xi));
    best = std::max(best, linalg::rank(pc.transpose() * ad * hc, tol.rank));
  }
  r.cohomogeneity = 2 * n - best;

  r.slice_condition = orth <= tol.residual && r.slice_rank == r.normal_dim && r.section_dim == r.cohomogeneity;
  r.verdict = r.is_subalgebra && r.section_in_normal && r.section_totally_geodesic && r.bracket_condition &&
              r.slice_condition;
  return r;
}

PolarityReport check_polarity(const PolarActionSpec& spec, const Tolerances& tol) {
  const BuiltAction built = build_action(spec, tol);
  return check_polarity(*build_root_decomposition(spec.n), built.h, built.section, spec.seed, tol);
}

// ---------------------------------------------------------------------------
// Regular vectors

RegularSample classify_vector(const std::vector<MatrixXcd>& q_basis, const RealSubspace& w, const RealSubspace& s,
                              const VectorXd& xi, const Tolerances& tol) {
  const int m = s.ambient_dim();
  if (w.ambient_dim() != m) throw DomainError("regular_vectors: w and s must share the ambient space");
  if (xi.size() != 2 * m) throw DomainError("regular_vectors: xi has the wrong length");
  check_u(q_basis, m, "regular_vectors");
  RegularSample out;
  out.xi = xi;
  out.target = 2 * m - w.dim() - s.dim();
  MatrixXd cols(2 * m, static_cast<Eigen::Index>(q_basis.size()));
  for (std::size_t i = 0; i < q_basis.size(); ++i) {
    cols.col(static_cast<Eigen::Index>(i)) = linalg::realify(q_basis[i]) * xi;
  }
  out.rank = linalg::rank(cols, tol.rank);
  out.regular = out.rank == out.target;
  return out;
}

std::vector<RegularSample> regular_vectors(const std::vector<MatrixXcd>& q_basis, const RealSubspace& w,
                                           const RealSubspace& s, int samples, std::uint64_t seed,
                                           const Tolerances& tol) {
  if (w.dim() > 0 && s.dim() > 0 && (w.basis().transpose() * s.basis()).cwiseAbs().maxCoeff() > tol.member) {
    throw PreconditionError("regular_vectors: s must be orthogonal to w");
  }
  std::mt19937_64 rng(seed);
  std::vector<RegularSample> out;
  for (int i = 0; i < samples; ++i) {
    VectorXd xi = VectorXd::Zero(2 * s.ambient_dim());
    if (s.dim() > 0) xi = s.basis() * linalg::random_unit_vector(s.dim(), rng);
    out.push_back(classify_vector(q_basis, w, s, xi, tol));
  }
  return out;
}

int linear_cohomogeneity(const std::vector<MatrixXcd>& q_basis, const RealSubspace& space, std::uint64_t seed,
                         const Tolerances& tol) {
  if (space.dim() == 0) return 0;
  check_u(q_basis, space.ambient_dim(), "linear_cohomogeneity");
  std::mt19937_64 rng(seed);
  int best = 0;
  for (int k = 0; k < 6; ++k) {
    const VectorXd xi = space.basis() * linalg::random_unit_vector(space.dim(), rng);
    MatrixXd cols(space.dim(), static_cast<Eigen::Index>(q_basis.size()));
    for (std::size_t i = 0; i < q_basis.size(); ++i) {
      cols.col(static_cast<Eigen::Index>(i)) = space.basis().transpose() * (linalg::realify(q_basis[i]) * xi);
    }
    best = std::max(best, linalg::rank(cols, tol.rank));
  }
  return space.dim() - best;
}

// ---------------------------------------------------------------------------
// Orbit equivalence

std::string to_string(Trilean t) {
  switch (t) {
    case Trilean::Yes:
      return "yes";
    case Trilean::No:
      return "no";
    case Trilean::Undetermined:
      break;
  }
  return "undetermined";
}

EquivalenceReport orbit_equivalence_invariants(const PolarActionSpec& a, const PolarActionSpec& b,
                                               const Tolerances& tol) {
  if (a.n != b.n) throw DomainError("orbit_equivalence_invariants: specs have different n");
  EquivalenceReport r;
  auto finish = [&](Trilean t, std::string why) {
    r.equivalent = t;
    r.reason = std::move(why);
    r.steps.push_back(r.reason);
    return r;
  };
  if (a.family != b.family) return finish(Trilean::No, "different families");
  r.steps.push_back("same family");
  const std::uint64_t seed = a.seed ^ b.seed;

  if (a.family == Family::I) {
    if (a.k != b.k) return finish(Trilean::No, "different k");
    r.steps.push_back("same k");
    const int m = a.n - a.k;
    if (m == 0) return finish(Trilean::Yes, "Q acts on the zero space");
    const RealSubspace full = RealSubspace::full(m);
    r.cohomogeneity_q1 = linear_cohomogeneity(a.q_basis, full, seed, tol);
    r.cohomogeneity_q2 = linear_cohomogeneity(b.q_basis, full, seed, tol);
    if (r.cohomogeneity_q1 != r.cohomogeneity_q2) return finish(Trilean::No, "Q-actions have different cohomogeneity");
    r.steps.push_back("Q-actions have equal cohomogeneity");
    if (same_span(a.q_basis, b.q_basis, m, tol.member)) return finish(Trilean::Yes, "identical Q");
    return finish(Trilean::Undetermined, "Q-actions not shown to be orbit equivalent");
  }

  if (a.b_full != b.b_full) return finish(Trilean::No, "different b");
  r.steps.push_back("same b");
  const Congruence c = congruent(a.w, b.w, tol);
  if (!c.congruent) return finish(Trilean::No, "w not congruent (Kahler angles or multiplicities differ)");
  r.steps.push_back("w congruent");
  r.witness = c.witness;
  const MatrixXcd& wa = *c.witness;
  const MatrixXd mapped = linalg::realify(wa) * a.w.basis();
  r.witness_residual = std::max((wa.adjoint() * wa - MatrixXcd::Identity(wa.rows(), wa.cols())).cwiseAbs().maxCoeff(),
                                mapped.cols() > 0 ? (mapped - b.w.projector() * mapped).cwiseAbs().maxCoeff() : 0.0);

  const RealSubspace perp_a = orthogonal_complement(a.w);
  const RealSubspace perp_b = orthogonal_complement(b.w);
  r.cohomogeneity_q1 = linear_cohomogeneity(a.q_basis, perp_a, seed, tol);
  r.cohomogeneity_q2 = linear_cohomogeneity(b.q_basis, perp_b, seed, tol);
  if (r.cohomogeneity_q1 != r.cohomogeneity_q2) return finish(Trilean::No, "Q-actions on w-perp have different cohomogeneity");
  r.steps.push_back("Q-actions on w-perp have equal cohomogeneity");
  if (perp_a.dim() == 0) return finish(Trilean::Yes, "w-perp is zero");
  std::vector<MatrixXcd> moved;
  for (const auto& t : a.q_basis) moved.push_back(wa * t * wa.adjoint());
  if (same_span(moved, b.q_basis, a.n - 1, tol.member)) return finish(Trilean::Yes, "witness conjugates q1 onto q2");
  return finish(Trilean::Undetermined, "Q-actions on w-perp not shown to be orbit equivalent");
}

}  // namespace chpolar
