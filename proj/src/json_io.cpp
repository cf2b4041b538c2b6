#include "chpolar/json_io.hpp"

#include "chpolar/errors.hpp"

#include <cmath>
#include <string>

namespace chpolar::json_io {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;

namespace {

[[noreturn]] void bad(const std::string& what) { throw DomainError("json: " + what); }

double number(const json& j, const std::string& where) {
  if (!j.is_number()) bad(where + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(where + " must be finite");
  return v;
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where + " must be an integer");
  return j.get<int>();
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where + " must be an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where + " is missing \"" + key + "\"");
  return *it;
}

std::complex<double> complex_entry(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) bad(where + " must be a [re, im] pair");
  return {number(j[0], where), number(j[1], where)};
}

}  // namespace

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed input: ") + e.what());
  }
}

json to_json(const RealSubspace& v) {
  json basis = json::array();
  for (int c = 0; c < v.dim(); ++c) {
    json col = json::array();
    for (Eigen::Index r = 0; r < v.basis().rows(); ++r) col.push_back(v.basis()(r, c));
    basis.push_back(col);
  }
  return {{"ambient_complex_dim", v.ambient_dim()}, {"basis", basis}};
}

RealSubspace subspace_from_json(const json& j) {
  const int m = integer(field(j, "ambient_complex_dim", "subspace"), "ambient_complex_dim");
  if (m < 0) bad("ambient_complex_dim must be non-negative");
  const json& basis = field(j, "basis", "subspace");
  if (!basis.is_array()) bad("basis must be an array of vectors");
  MatrixXd cols(2 * m, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c) {
    const json& v = basis[c];
    if (!v.is_array() || static_cast<int>(v.size()) != 2 * m) {
      bad("basis vectors must have length 2 * ambient_complex_dim = " + std::to_string(2 * m));
    }
    for (int r = 0; r < 2 * m; ++r) cols(r, static_cast<Eigen::Index>(c)) = number(v[static_cast<std::size_t>(r)], "basis entry");
  }
  return RealSubspace(m, cols);
}

json to_json(const KahlerDecomposition& d) {
  json factors = json::array();
  for (const auto& f : d.factors) {
    factors.push_back({{"angle_rad", f.angle}, {"dim", f.subspace.dim()}, {"subspace", to_json(f.subspace)}});
  }
  return {{"ambient_complex_dim", d.ambient_dim}, {"factors", factors}};
}

json matrix_to_json(const MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

MatrixXcd matrix_from_json(const json& j) {
  if (!j.is_array()) bad("matrix must be an array");
  const std::size_t size = j.size();
  if (size == 0) return MatrixXcd(0, 0);
  const bool nested = j[0].is_array() && !j[0].empty() && j[0][0].is_array();
  if (nested) {
    MatrixXcd m(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
    for (std::size_t r = 0; r < size; ++r) {
      if (!j[r].is_array() || j[r].size() != size) bad("matrix must be square");
      for (std::size_t c = 0; c < size; ++c) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_entry(j[r][c], "matrix entry");
      }
    }
    return m;
  }
  const auto dim = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(size))));
  if (dim * dim != size) bad("flat matrix must have a square number of entries");
  MatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < size; ++i) {
    m(static_cast<Eigen::Index>(i / dim), static_cast<Eigen::Index>(i % dim)) = complex_entry(j[i], "matrix entry");
  }
  return m;
}

json to_json(const PolarActionSpec& spec) {
  json q = json::array();
  for (const auto& t : spec.q_basis) q.push_back(matrix_to_json(t));
  json j = {{"n", spec.n},
            {"family", spec.family == Family::I ? "I" : "II"},
            {"q_basis", q},
            {"q_section", to_json(spec.q_section)},
            {"seed", spec.seed}};
  if (spec.family == Family::I) {
    j["k"] = spec.k;
  } else {
    j["b"] = spec.b_full ? "full" : "zero";
    j["w"] = to_json(spec.w);
  }
  return j;
}

PolarActionSpec spec_from_json(const json& j, const Tolerances& tol) {
  PolarActionSpec spec;
  spec.n = integer(field(j, "n", "spec"), "n");
  if (spec.n < 2) bad("n must be at least 2");
  const json& fam = field(j, "family", "spec");
  if (!fam.is_string() || (fam != "I" && fam != "II")) bad("family must be \"I\" or \"II\"");
  spec.family = fam == "I" ? Family::I : Family::II;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0)) {
      bad("seed must be a non-negative integer");
    }
    spec.seed = j["seed"].get<std::uint64_t>();
  }
  const json& q = field(j, "q_basis", "spec");
  const json& sec = field(j, "q_section", "spec");

  if (spec.family == Family::I) {
    spec.k = integer(field(j, "k", "spec"), "k");
    if (spec.k < 0 || spec.k > spec.n) bad("k must lie in [0, n]");
    if (!q.is_array()) bad("q_basis must be an array of matrices");
    for (const auto& t : q) spec.q_basis.push_back(matrix_from_json(t));
    spec.q_section = subspace_from_json(sec);
    return spec;
  }

  const json& b = field(j, "b", "spec");
  if (!b.is_string() || (b != "zero" && b != "full")) bad("b must be \"zero\" or \"full\"");
  spec.b_full = b == "full";
  spec.w = subspace_from_json(field(j, "w", "spec"));
  if (spec.w.ambient_dim() != spec.n - 1) bad("w must be a subspace of C^(n-1)");
  if (q.is_string()) {
    if (q != "normalizer") bad("q_basis must be an array of matrices or \"normalizer\"");
    spec.q_basis = normalizer_algebra(spec.w, tol);
  } else {
    if (!q.is_array()) bad("q_basis must be an array of matrices");
    for (const auto& t : q) spec.q_basis.push_back(matrix_from_json(t));
  }
  if (sec.is_string()) {
    if (sec != "canonical") bad("q_section must be a subspace or \"canonical\"");
    spec.q_section = canonical_section(spec.w, tol);
  } else {
    spec.q_section = subspace_from_json(sec);
  }
  return spec;
}

json to_json(const PolarityReport& r) {
  return {{"n", r.n},
          {"h_dim", r.h_dim},
          {"isotropy_dim", r.isotropy_dim},
          {"normal_dim", r.normal_dim},
          {"section_dim", r.section_dim},
          {"is_subalgebra", r.is_subalgebra},
          {"subalgebra_residual", r.subalgebra_residual},
          {"section_in_normal", r.section_in_normal},
          {"normal_residual", r.normal_residual},
          {"section_totally_geodesic", r.section_totally_geodesic},
          {"lie_triple_residual", r.lie_triple_residual},
          {"bracket_condition", r.bracket_condition},
          {"bracket_residual", r.bracket_residual},
          {"slice_condition", r.slice_condition},
          {"slice_orthogonality_residual", r.slice_orthogonality_residual},
          {"slice_rank", r.slice_rank},
          {"cohomogeneity", r.cohomogeneity},
          {"transitive", r.transitive},
          {"verdict", r.verdict}};
}

json to_json(const EquivalenceReport& r) {
  json j = {{"equivalent", to_string(r.equivalent)},
            {"reason", r.reason},
            {"steps", r.steps},
            {"witness_residual", r.witness_residual},
            {"cohomogeneity_q1", r.cohomogeneity_q1},
            {"cohomogeneity_q2", r.cohomogeneity_q2}};
  j["witness"] = r.witness ? matrix_to_json(*r.witness) : json(nullptr);
  return j;
}

json to_json(const Catalog& c) {
  json classes = json::array();
  for (const auto& e : c.classes) {
    classes.push_back({{"label", e.label}, {"cohomogeneity", e.cohomogeneity}, {"spec", to_json(e.spec)}});
  }
  return {{"n", c.n}, {"angle_grid", c.angle_grid}, {"candidates", c.candidates},
          {"count", c.classes.size()}, {"classes", classes}};
}

json to_json(const ANVector& v) {
  std::vector<double> u(v.u.data(), v.u.data() + v.u.size());
  return {{"a", v.a}, {"u", u}, {"z", v.z}};
}

}  // namespace chpolar::json_io
