#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radlab/capacity.hpp"
#include "radlab/geometry.hpp"
#include "radlab/mesh.hpp"
#include "radlab/solver.hpp"
#include "radlab/yamabe.hpp"

namespace radlab {

// Read-only view of a JSON node that knows its field path for diagnostics.
class ConfigNode {
 public:
  ConfigNode(const nlohmann::json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const nlohmann::json& raw() const { return *j_; }
  bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

  [[noreturn]] void error(const std::string& what) const { fail(ErrorCode::ConfigError, path_ + ": " + what); }

  ConfigNode child(const std::string& key) const {
    if (!j_->is_object()) error("expected an object");
    if (!j_->contains(key)) fail(ErrorCode::ConfigError, sub(key) + ": missing required field");
    return {j_->at(key), sub(key)};
  }
  std::optional<ConfigNode> maybe(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return ConfigNode(j_->at(key), sub(key));
  }
  ConfigNode at(std::size_t i) const { return {j_->at(i), path_ + "[" + std::to_string(i) + "]"}; }
  std::size_t size() const {
    if (!j_->is_array()) error("expected an array");
    return j_->size();
  }

  double number() const {
    if (!j_->is_number()) error("expected a number");
    const double v = j_->get<double>();
    if (!std::isfinite(v)) error("expected a finite number");
    return v;
  }
  long integer() const {
    if (!j_->is_number_integer()) error("expected an integer");
    return j_->get<long>();
  }
  std::string text() const {
    if (!j_->is_string()) error("expected a string");
    return j_->get<std::string>();
  }
  bool boolean() const {
    if (!j_->is_boolean()) error("expected a boolean");
    return j_->get<bool>();
  }
  std::vector<double> numbers() const {
    std::vector<double> v;
    for (std::size_t i = 0; i < size(); ++i) v.push_back(at(i).number());
    return v;
  }

  double number(const std::string& key) const { return child(key).number(); }
  double number(const std::string& key, double def) const { return has(key) ? child(key).number() : def; }
  long integer(const std::string& key, long def) const { return has(key) ? child(key).integer() : def; }
  std::string text(const std::string& key, const std::string& def) const { return has(key) ? child(key).text() : def; }
  bool boolean(const std::string& key, bool def) const { return has(key) ? child(key).boolean() : def; }

  double positive(const std::string& key) const {
    const double v = number(key);
    if (!(v > 0.0)) child(key).error("must be positive");
    return v;
  }
  double positive(const std::string& key, double def) const { return has(key) ? positive(key) : def; }
  double nonnegative(const std::string& key, double def) const {
    const double v = number(key, def);
    if (v < 0.0) child(key).error("must be nonnegative");
    return v;
  }

 private:
  std::string sub(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  const nlohmann::json* j_;
  std::string path_;
};

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::ConfigError, path + ": cannot open scenario file");
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return nlohmann::json::parse(ss.str(), nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::ConfigError, path + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

// Radial profile grammar: zero, constant, hardy, step, bump, power, tabulated, sum.
inline RadialFn parse_profile(const ConfigNode& n, const ModelManifold* model) {
  if (n.raw().is_number()) {
    const double c = n.number();
    return [c](double) { return c; };
  }
  const std::string kind = n.child("kind").text();
  if (kind == "zero") return [](double) { return 0.0; };
  if (kind == "constant") {
    const double c = n.number("value");
    return [c](double) { return c; };
  }
  if (kind == "hardy") {
    if (!model) n.error("hardy profile needs a model");
    const double scale = n.number("scale", 1.0), core = n.nonnegative("core", 0.0);
    const double support = n.positive("support", kInf);
    auto chi = PotentialProfile::hardy(*model, scale, core);
    return [chi, support](double r) { return r <= support ? chi(r) : 0.0; };
  }
  if (kind == "step") {
    const double v = n.number("value"), R = n.positive("radius"), lo = n.nonnegative("from", 0.0);
    if (!(R > lo)) n.child("radius").error("must exceed 'from'");
    return [v, R, lo](double r) { return r >= lo && r <= R ? v : 0.0; };
  }
  if (kind == "bump") {
    const double h = n.number("height"), c = n.nonnegative("center", 0.0), w = n.positive("width");
    return [h, c, w](double r) {
      const double t = (r - c) / w;
      return std::abs(t) < 1.0 ? h * std::pow(std::cos(0.5 * std::numbers::pi * t), 2) : 0.0;
    };
  }
  if (kind == "power") {
    const double c = n.number("coef"), e = n.number("exponent"), core = n.nonnegative("core", 0.0);
    return [c, e, core](double r) { return c * std::pow(std::max(r, core), e); };
  }
  if (kind == "tabulated") {
    auto r = n.child("r").numbers(), v = n.child("v").numbers();
    if (r.size() != v.size() || r.size() < 2) n.error("'r' and 'v' need matching lengths >= 2");
    for (std::size_t i = 1; i < r.size(); ++i)
      if (!(r[i] > r[i - 1])) n.child("r").at(i).error("radii must increase");
    return PotentialProfile::tabulated(std::move(r), std::move(v)).function();
  }
  if (kind == "sum") {
    const auto terms = n.child("terms");
    std::vector<RadialFn> fs;
    for (std::size_t i = 0; i < terms.size(); ++i) fs.push_back(parse_profile(terms.at(i), model));
    const double scale = n.number("scale", 1.0);
    return [fs, scale](double r) {
      double s = 0.0;
      for (const auto& f : fs) s += f(r);
      return scale * s;
    };
  }
  n.child("kind").error("unknown profile kind '" + kind + "'");
}

inline ModelManifold parse_model(const ConfigNode& n) {
  const long m = n.child("m").integer();
  if (m < 2) n.child("m").error("must be >= 2");
  const double p = n.number("p", 2.0);
  if (!(p > 1.0)) n.child("p").error("must be > 1");
  const std::string kind = n.text("kind", "euclidean");
  RadialFn drift;
  if (auto d = n.maybe("drift")) drift = parse_profile(*d, nullptr);
  WarpingFunction w = WarpingFunction::space_form(0.0);
  if (kind == "euclidean") {
  } else if (kind == "hyperbolic") {
    w = WarpingFunction::space_form(n.positive("kappa"));
  } else if (kind == "tabulated") {
    CurvatureProfile G = CurvatureProfile::constant(0.0);
    if (n.has("curvature_csv")) {
      G = load_curvature_csv(n.child("curvature_csv").text());
    } else {
      const auto t = n.child("G");
      auto r = t.child("r").numbers(), v = t.child("G").numbers();
      if (r.size() != v.size() || r.size() < 2) t.error("'r' and 'G' need matching lengths >= 2");
      G = CurvatureProfile::tabulated(std::move(r), std::move(v));
    }
    const double rmax = n.positive("max_radius", G.max_radius());
    if (!std::isfinite(rmax)) n.error("tabulated model needs 'max_radius'");
    w = solve_jacobi(G, rmax, n.positive("step", 1e-3));
  } else {
    n.child("kind").error("unknown model kind '" + kind + "'");
  }
  return {static_cast<int>(m), p, std::move(w), std::move(drift)};
}

inline RadialMesh parse_domain(const ConfigNode& n, const ModelManifold& mm) {
  const std::string kind = n.text("kind", "ball");
  const double outer = n.positive("outer");
  const long elements = n.integer("elements", 400);
  if (elements < 2) n.child("elements").error("must be >= 2");
  if (kind == "ball") return RadialMesh::ball(mm, outer, static_cast<int>(elements), static_cast<int>(n.integer("grading_levels", 0)));
  if (kind == "annulus") {
    const double inner = n.positive("inner");
    if (!(outer > inner)) n.child("outer").error("must exceed 'inner'");
    return RadialMesh::annulus(mm, inner, outer, static_cast<int>(elements));
  }
  n.child("kind").error("unknown domain kind '" + kind + "'");
}

inline LadderSpec parse_ladder(const ConfigNode& n) {
  LadderSpec s;
  s.inner = n.nonnegative("inner", 0.0);
  s.first_outer = n.positive("first_outer");
  if (!(s.first_outer > s.inner)) n.child("first_outer").error("must exceed 'inner'");
  s.factor = n.number("factor", 1.5);
  if (!(s.factor > 1.0)) n.child("factor").error("ladder factor must be > 1");
  s.rungs = static_cast<int>(n.integer("rungs", 5));
  if (s.rungs < 1) n.child("rungs").error("must be >= 1");
  s.base_elements = static_cast<int>(n.integer("base_elements", 200));
  if (s.base_elements < 2) n.child("base_elements").error("must be >= 2");
  const std::string sp = n.text("spacing", "uniform");
  if (sp == "uniform") s.spacing = LadderSpec::Spacing::uniform;
  else if (sp == "geometric") s.spacing = LadderSpec::Spacing::geometric;
  else n.child("spacing").error("expected 'uniform' or 'geometric'");
  s.elements_per_factor = static_cast<int>(n.integer("elements_per_factor", 40));
  s.grading_levels = static_cast<int>(n.integer("grading_levels", 0));
  return s;
}

inline Nonlinearity parse_nonlinearity(const ConfigNode& n) {
  const std::string kind = n.text("kind", "power");
  if (kind != "power") n.child("kind").error("only 'power' nonlinearities are supported");
  return Nonlinearity::power(n.positive("sigma"));
}

inline Window parse_window(const ConfigNode& n) {
  const auto v = n.numbers();
  if (v.size() != 2) n.error("expected [lo, hi]");
  if (v[0] < 0.0 || !(v[1] > v[0])) n.error("expected 0 <= lo < hi");
  return {v[0], v[1]};
}

inline std::uint64_t parse_seed(const ConfigNode& root) {
  const long s = root.integer("seed", 0);
  if (s < 0) root.child("seed").error("must be nonnegative");
  return static_cast<std::uint64_t>(s);
}

inline void check_schema(const ConfigNode& root) {
  if (!root.raw().is_object()) root.error("scenario must be a JSON object");
  const long v = root.integer("schema_version", 1);
  if (v != 1) root.child("schema_version").error("unsupported schema version " + std::to_string(v));
}

}  // namespace radlab
