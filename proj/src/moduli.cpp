#include "chpolar/errors.hpp"
#include "chpolar/polar_actions.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

namespace chpolar {

using Eigen::MatrixXcd;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

std::string angle_label(double a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", a);
  return buf;
}

struct QChoice {
  std::string name;
  std::vector<MatrixXcd> basis;
  RealSubspace section;
};

// Family I table: trivial group, u(m), diagonal torus.
std::vector<QChoice> family_I_table(int m) {
  std::vector<QChoice> out;
  out.push_back({"trivial", {}, RealSubspace::full(m)});
  if (m == 0) return out;
  out.push_back({"u(" + std::to_string(m) + ")", unitary_algebra_basis(m), make_constant_angle(1, kHalfPi, m)});
  if (m >= 2) {
    std::vector<MatrixXcd> torus;
    for (int j = 0; j < m; ++j) {
      MatrixXcd t = MatrixXcd::Zero(m, m);
      t(j, j) = std::complex<double>(0.0, 1.0);
      torus.push_back(t);
    }
    out.push_back({"t^" + std::to_string(m), torus, make_constant_angle(m, kHalfPi, m)});
  }
  return out;
}

struct WModulus {
  int complex_dim = 0;
  int real_dim = 0;
  std::vector<int> pairs;  // per grid angle
};

}  // namespace

Catalog enumerate_moduli(int n, const std::vector<double>& angle_grid, const Tolerances& tol) {
  if (n < 2) throw DomainError("enumerate_moduli: n must be at least 2");
  for (double a : angle_grid) {
    if (!(a > 0.0 && a < kHalfPi)) throw DomainError("enumerate_moduli: grid angles must lie in (0, pi/2)");
  }
  Catalog cat;
  cat.n = n;
  cat.angle_grid = angle_grid;

  auto consider = [&](CatalogEntry entry) {
    ++cat.candidates;
    const PolarityReport rep = check_polarity(entry.spec, tol);
    if (!rep.verdict || rep.transitive || rep.h_dim == 0) return;
    for (const auto& existing : cat.classes) {
      if (orbit_equivalence_invariants(existing.spec, entry.spec, tol).equivalent == Trilean::Yes) return;
    }
    entry.cohomogeneity = rep.cohomogeneity;
    cat.classes.push_back(std::move(entry));
  };

  for (int k = 0; k <= n; ++k) {
    for (QChoice& q : family_I_table(n - k)) {
      CatalogEntry e;
      e.label = "I k=" + std::to_string(k) + " q=" + q.name;
      e.spec.n = n;
      e.spec.family = Family::I;
      e.spec.k = k;
      e.spec.q_basis = q.basis;
      e.spec.q_section = q.section;
      consider(std::move(e));
    }
  }

  const int m = n - 1;
  std::vector<WModulus> moduli;
  std::function<void(WModulus, std::size_t, int)> grow = [&](WModulus w, std::size_t i, int left) {
    if (i == angle_grid.size()) {
      moduli.push_back(w);
      return;
    }
    for (int p = 0; 2 * p <= left; ++p) {
      WModulus next = w;
      next.pairs.push_back(p);
      grow(next, i + 1, left - 2 * p);
    }
  };
  for (int c = 0; c <= m; ++c) {
    for (int r = 0; c + r <= m; ++r) grow(WModulus{c, r, {}}, 0, m - c - r);
  }

  for (const WModulus& wm : moduli) {
    int offset = 0;
    RealSubspace w = RealSubspace::zero(m);
    // Labels record the real dimension of each factor.
    std::string parts;
    auto block = [&](int count, double angle, const std::string& name, int dim) {
      if (count == 0) return;
      w = direct_sum(w, make_constant_angle(count, angle, m, offset));
      offset += constant_angle_footprint(count, angle);
      if (!parts.empty()) parts += ",";
      parts += name + ":" + std::to_string(dim);
    };
    block(wm.complex_dim, 0.0, "0", 2 * wm.complex_dim);
    for (std::size_t i = 0; i < angle_grid.size(); ++i) {
      block(wm.pairs[i], angle_grid[i], angle_label(angle_grid[i]), 2 * wm.pairs[i]);
    }
    block(wm.real_dim, kHalfPi, "pi/2", wm.real_dim);
    for (bool b_full : {true, false}) {
      CatalogEntry e;
      e.label = std::string("II b=") + (b_full ? "a" : "0") + " w=[" + parts + "]";
      e.spec = canonical_family_II(n, b_full, w, tol);
      consider(std::move(e));
    }
  }
  return cat;
}

}  // namespace chpolar
