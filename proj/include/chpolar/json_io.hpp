#pragma once

// JSON forms of the library types. Parsing failures throw DomainError.
//
// RealSubspace:   {"ambient_complex_dim": m, "basis": [[re_1, im_1, ..., re_m, im_m], ...]}
// complex matrix: rows of [re, im] pairs, [[[re, im], ...], ...]; a flat
//                 row-major list of m*m pairs is accepted on input.
// PolarActionSpec:
//   {"n": int, "family": "I" | "II", "k": int, "b": "zero" | "full",
//    "w": RealSubspace, "q_basis": [matrix, ...] | "normalizer",
//    "q_section": RealSubspace | "canonical", "seed": int}
//   "normalizer" and "canonical" (Family II only) select the full normaliser
//   of w in k_0 and the section with one line per factor of w-perp.

#include "chpolar/an_geometry.hpp"
#include "chpolar/kahler_linear.hpp"
#include "chpolar/polar_actions.hpp"

#include <json.hpp>

namespace chpolar::json_io {

using nlohmann::json;

json to_json(const RealSubspace& v);
RealSubspace subspace_from_json(const json& j);

json to_json(const KahlerDecomposition& d);

json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const json& j);

json to_json(const PolarActionSpec& spec);
PolarActionSpec spec_from_json(const json& j, const Tolerances& tol = {});

json to_json(const PolarityReport& r);
json to_json(const EquivalenceReport& r);
json to_json(const Catalog& c);
json to_json(const ANVector& v);

/// Parse text, mapping syntax errors to DomainError.
json parse(const std::string& text);

}  // namespace chpolar::json_io
