#include "chpolar/cli.hpp"

#include "chpolar/an_geometry.hpp"
#include "chpolar/errors.hpp"
#include "chpolar/json_io.hpp"
#include "chpolar/linalg.hpp"
#include "chpolar/polar_actions.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

namespace chpolar::cli {

using nlohmann::json;
using Eigen::MatrixXcd;
using Eigen::VectorXd;

namespace {

PolarActionSpec load_spec(const std::string& text, const RunConfig& cfg) {
  PolarActionSpec spec = json_io::spec_from_json(json_io::parse(text), cfg.tol);
  if (cfg.n != 0 && cfg.n != spec.n) {
    throw DomainError("--n " + std::to_string(cfg.n) + " does not match the spec (n = " + std::to_string(spec.n) + ")");
  }
  return spec;
}

}  // namespace

CommandResult cmd_decompose(const std::string& input, const RunConfig& cfg) {
  const RealSubspace v = json_io::subspace_from_json(json_io::parse(input));
  return {0, json_io::to_json(decompose(v, cfg.tol))};
}

CommandResult cmd_verify(const std::string& text, const RunConfig& cfg) {
  const PolarActionSpec spec = load_spec(text, cfg);
  const BuiltAction built = build_action(spec, cfg.tol);
  const PolarityReport rep =
      check_polarity(*build_root_decomposition(spec.n), built.h, built.section, spec.seed ^ cfg.seed, cfg.tol);
  json out = json_io::to_json(rep);
  out["family"] = spec.family == Family::I ? "I" : "II";
  out["section_totally_real"] = built.section_totally_real;
  return {rep.verdict ? 0 : 1, out};
}

CommandResult cmd_compare(const std::string& a, const std::string& b, const RunConfig& cfg) {
  const PolarActionSpec sa = load_spec(a, cfg);
  const PolarActionSpec sb = load_spec(b, cfg);
  const EquivalenceReport rep = orbit_equivalence_invariants(sa, sb, cfg.tol);
  return {rep.equivalent == Trilean::Yes ? 0 : 1, json_io::to_json(rep)};
}

CommandResult cmd_enumerate(int n, const std::vector<double>& grid, const RunConfig& cfg) {
  return {0, json_io::to_json(enumerate_moduli(n, grid, cfg.tol))};
}

CommandResult cmd_curvature(const std::string& text, const RunConfig& cfg) {
  const PolarActionSpec spec = load_spec(text, cfg);
  if (spec.family != Family::II) throw DomainError("curvature: only Family II orbits lie in the AN model");
  const OrbitModel orbit = OrbitModel::standard(spec.n, spec.b_full, spec.w);
  const ANVector h = mean_curvature(orbit);
  const ANVector f = mean_curvature_formula(orbit);
  json out = {{"n", spec.n},
              {"b", spec.b_full ? "full" : "zero"},
              {"w_dim", spec.w.dim()},
              {"mean_curvature", json_io::to_json(h)},
              {"closed_form", json_io::to_json(f)},
              {"residual", (h - f).to_vector().cwiseAbs().maxCoeff()}};
  return {0, out};
}

CommandResult cmd_selfcheck(const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, int n, double residual, double tol) {
    const bool pass = residual <= tol;
    all = all && pass;
    checks.push_back({{"name", name}, {"n", n}, {"max_residual", residual}, {"tolerance", tol}, {"pass", pass}});
  };
  auto random_vec = [&](int d) {
    VectorXd v(d);
    for (int i = 0; i < d; ++i) v[i] = gauss(rng);
    return v;
  };
  const int samples = 20;
  for (int n : {2, 3, 5}) {
    const auto rd = build_root_decomposition(n);
    const int na = rd->alpha_dim();
    const bool dims = rd->range(RootSpace::Alpha).size == 2 * n - 2 && rd->range(RootSpace::TwoAlpha).size == 1 &&
                      rd->range(RootSpace::A).size == 1 && rd->range(RootSpace::K0).size == (n - 1) * (n - 1);
    record("root space dimensions", n, dims ? 0.0 : 1.0, 0.0);
    record("<B,B> = 1", n, std::abs(inner(rd->B(), rd->B()) - 1.0), 1e-12);
    record("<Z,Z> = 2", n, std::abs(inner(rd->Z(), rd->Z()) - 2.0), 1e-12);

    double lemma_a = 0.0;
    for (const auto& x : rd->basis_of(RootSpace::Alpha)) {
      lemma_a = std::max(lemma_a, norm(bracket(theta(x), rd->Z()) + rd->J(x)));
    }
    record("[theta X, Z] = -JX", n, lemma_a, 1e-10);

    double lemma_b = 0.0;
    double bracket_formula = 0.0;
    double holo = 0.0;
    double torsion = 0.0;
    double compat = 0.0;
    const auto k0 = rd->basis_of(RootSpace::K0);
    for (int s = 0; s < samples; ++s) {
      AlgElement t = AlgElement::zero(n);
      for (const auto& e : k0) t += gauss(rng) * e;
      const AlgElement x = rd->alpha_vector(random_vec(na));
      const AlgElement y = rd->alpha_vector(random_vec(na));
      lemma_b = std::max(lemma_b, std::abs(inner(t, bracket(theta(x), y) + theta(bracket(theta(x), y))) -
                                           2.0 * inner(bracket(t, x), y)));
      const ANVector p = ANVector::from_vector(random_vec(2 * n));
      const ANVector q = ANVector::from_vector(random_vec(2 * n));
      const ANVector r = ANVector::from_vector(random_vec(2 * n));
      const AlgElement m = bracket(to_algebra(*rd, p), to_algebra(*rd, q));
      bracket_formula = std::max(bracket_formula, (from_algebra(*rd, m) - an_bracket(p, q)).to_vector().cwiseAbs().maxCoeff());
      holo = std::max(holo, std::abs(holomorphic_sectional_curvature(p) + 1.0));
      torsion = std::max(torsion,
                         (levi_civita(p, q) - levi_civita(q, p) - an_bracket(p, q)).to_vector().cwiseAbs().maxCoeff());
      compat = std::max(compat, std::abs(an_inner(levi_civita(p, q), r) + an_inner(q, levi_civita(p, r))));
    }
    record("<T,(1+theta)[theta X,Y]> = 2<[T,X],Y>", n, lemma_b, 1e-10);
    record("a+n bracket formula", n, bracket_formula, 1e-10);
    record("holomorphic sectional curvature -1", n, holo, 1e-7);
    record("torsion free", n, torsion, 1e-10);
    record("metric compatible", n, compat, 1e-10);
  }
  return {all ? 0 : 3, json{{"checks", checks}, {"pass", all}}};
}

double parse_angle(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  const auto pos = s.find("pi");
  auto to_double = [&](const std::string& part, std::optional<double> fallback) {
    if (part.empty()) {
      if (!fallback) throw DomainError("cannot parse angle \"" + text + "\"");
      return *fallback;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw DomainError("cannot parse angle \"" + text + "\"");
    }
    if (used != part.size()) throw DomainError("cannot parse angle \"" + text + "\"");
    return v;
  };
  if (pos == std::string::npos) return to_double(s, std::nullopt);
  std::string coeff = s.substr(0, pos);
  if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
  const double c = to_double(coeff, 1.0);
  const std::string rest = s.substr(pos + 2);
  double d = 1.0;
  if (!rest.empty()) {
    if (rest[0] != '/') throw DomainError("cannot parse angle \"" + text + "\"");
    d = to_double(rest.substr(1), std::nullopt);
  }
  if (d == 0.0) throw DomainError("cannot parse angle \"" + text + "\"");
  return c * std::numbers::pi / d;
}

namespace {

void render_text(const json& j, const std::string& indent, std::ostream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it->is_structured()) {
        os << indent << it.key() << ":\n";
        render_text(*it, indent + "  ", os);
      } else {
        os << indent << it.key() << ": " << it->dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    const bool scalars = std::all_of(j.begin(), j.end(), [](const json& e) { return !e.is_structured(); });
    if (scalars) {
      os << indent << j.dump() << "\n";
      return;
    }
    std::size_t i = 0;
    for (const auto& e : j) {
      os << indent << "- [" << i++ << "]\n";
      render_text(e, indent + "  ", os);
    }
  } else {
    os << indent << j.dump() << "\n";
  }
}

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

std::string read_input(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return read_all(in);
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open " + path);
  return read_all(f);
}

}  // namespace

std::string render(const json& output, Format format) {
  if (format == Format::Json) return output.dump() + "\n";
  std::ostringstream os;
  render_text(output, "", os);
  return os.str();
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polar actions on complex hyperbolic spaces: checks and enumeration", "chpolar"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "json";
  std::string out_path;
  app.add_option("--n", cfg.n, "complex hyperbolic dimension")->check(CLI::Range(2, 64));
  app.add_option("--tol-eig", cfg.tol.eig, "cos^2 grouping tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-angle", cfg.tol.angle, "Kahler angle tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-rank", cfg.tol.rank, "relative singular value cutoff")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "sampling seed");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", out_path, "write the result to FILE");

  std::string input_a;
  std::string input_b;
  std::vector<std::string> angles;
  auto* decompose = app.add_subcommand("decompose", "Kahler angle decomposition of a real subspace");
  decompose->add_option("input", input_a, "subspace JSON (stdin when omitted)");
  auto* verify = app.add_subcommand("verify", "run the polarity criterion on an action spec");
  verify->add_option("spec", input_a, "spec JSON (stdin when omitted)");
  auto* compare = app.add_subcommand("compare", "orbit-equivalence invariants of two specs");
  compare->add_option("spec_a", input_a, "first spec")->required();
  compare->add_option("spec_b", input_b, "second spec")->required();
  auto* enumerate = app.add_subcommand("enumerate", "representatives of the moduli of polar actions");
  enumerate->add_option("--angles", angles, "Kahler angle grid, e.g. pi/6,pi/4")->delimiter(',');
  auto* curvature = app.add_subcommand("curvature", "mean curvature of the orbit through o (Family II)");
  curvature->add_option("spec", input_a, "spec JSON (stdin when omitted)");
  auto* selfcheck = app.add_subcommand("selfcheck", "identity suite for the Lie algebra and AN models");
  for (auto* sub : {decompose, verify, compare, enumerate, curvature, selfcheck}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : 2;
  }
  cfg.format = format == "text" ? Format::Text : Format::Json;

  try {
    CommandResult result;
    if (*decompose) {
      result = cmd_decompose(read_input(input_a, in), cfg);
    } else if (*verify) {
      result = cmd_verify(read_input(input_a, in), cfg);
    } else if (*compare) {
      result = cmd_compare(read_input(input_a, in), read_input(input_b, in), cfg);
    } else if (*enumerate) {
      if (cfg.n == 0) throw DomainError("enumerate needs --n");
      std::vector<double> grid;
      for (const auto& a : angles) grid.push_back(parse_angle(a));
      result = cmd_enumerate(cfg.n, grid, cfg);
    } else if (*curvature) {
      result = cmd_curvature(read_input(input_a, in), cfg);
    } else {
      result = cmd_selfcheck(cfg);
    }
    const std::string text = render(result.output, cfg.format);
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(out_path);
      if (!f) throw DomainError("cannot write " + out_path);
      f << text;
    }
    return result.exit_code;
  } catch (const ConsistencyError& e) {
    err << "chpolar: internal consistency error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    err << "chpolar: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << "chpolar: precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "chpolar: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "chpolar: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace chpolar::cli
