#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "radlab/capacity.hpp"
#include "radlab/green.hpp"
#include "radlab/hardy.hpp"
#include "radlab/solver.hpp"

namespace radlab {

// Prescribed scalar curvature: from s to s_tilde by u^{4/(m-2)} <,>.
struct YamabeProblem {
  int m = 3;
  RadialFn s = [](double) { return 0.0; };
  RadialFn s_tilde = [](double) { return 0.0; };
  std::optional<double> s_tilde_plus_support;  // declared radius of supp s_tilde_+
  std::optional<double> s_support;             // declared radius of supp s

  double c_m() const { return 4.0 * (m - 1.0) / (m - 2.0); }
  double sigma() const { return (m + 2.0) / (m - 2.0); }
};

struct YamabeCoefficients {
  CoefficientProfile profile;
  Nonlinearity F;
};

// a = -s / c_m, b = -s_tilde / c_m, F(t) = t^{(m+2)/(m-2)}.
inline YamabeCoefficients to_coefficients(const YamabeProblem& yp) {
  if (yp.m < 3) fail(ErrorCode::DimensionTooLow, "prescribed curvature needs m >= 3");
  const double cm = yp.c_m();
  YamabeCoefficients c;
  c.profile.a = [s = yp.s, cm](double r) { return -s(r) / cm; };
  c.profile.b = [st = yp.s_tilde, cm](double r) { return -st(r) / cm; };
  c.profile.b_minus_support = yp.s_tilde_plus_support;
  c.profile.a_support = yp.s_support;
  c.F = Nonlinearity::power(yp.sigma());
  return c;
}

enum class ConformalVerdict { subcritical, not_subcritical, inconclusive };

inline const char* to_string(ConformalVerdict v) {
  switch (v) {
    case ConformalVerdict::subcritical: return "subcritical";
    case ConformalVerdict::not_subcritical: return "not";
    case ConformalVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct ConformalOptions {
  double grid_min = 1e-3;
  double grid_max = 0.0;  // 0 selects 50/kappa, or 100 on flat models
  int grid_points = 400;
  TailOptions tail;
  LadderSpec fallback{1.0, 2.0, 2.0, 6, 100, LadderSpec::Spacing::geometric, 40, 0};
};

struct SubcriticalityReport {
  ConformalVerdict verdict = ConformalVerdict::inconclusive;
  bool model_subcritical = false;
  bool dominated = false;        // -s/c_m <= chi on the grid
  bool strict_somewhere = false;
  double max_ratio = 0.0;        // max of (-s/c_m) / chi
  bool used_fallback = false;
  std::optional<Criticality> fallback_verdict;
};

// Subcriticality of the conformal Laplacian via -s/c_m <= chi, else the capacity classifier.
inline SubcriticalityReport conformal_laplacian_subcritical(const YamabeProblem& yp, const ModelManifold& model,
                                                            const ConformalOptions& opt = {}) {
  if (yp.m < 3) fail(ErrorCode::DimensionTooLow, "prescribed curvature needs m >= 3");
  if (model.m() != yp.m || std::abs(model.p() - 2.0) > 1e-14)
    fail(ErrorCode::InvalidArgument, "model must have the problem's dimension and p = 2");
  SubcriticalityReport rep;
  try {
    rep.model_subcritical = is_subcritical_model(model).verdict == Integrability::integrable;
  } catch (const Error&) {
    rep.model_subcritical = false;
  }
  const auto coef = to_coefficients(yp);
  if (rep.model_subcritical) {
    double hi = opt.grid_max;
    const double kap = model.warping().kappa().value_or(0.0);
    if (hi <= 0.0) hi = kap > 0.0 ? 50.0 / kap : 100.0;
    hi = std::min(hi, model.warping().max_radius());
    rep.dominated = true;
    for (double r : log_grid(opt.grid_min, hi, opt.grid_points)) {
      const double chi = chi_general(model, r, opt.tail), V = coef.profile.a(r);
      rep.max_ratio = std::max(rep.max_ratio, V / chi);
      if (V > chi * (1.0 + 1e-12)) rep.dominated = false;
      if (V < chi * (1.0 - 1e-9)) rep.strict_somewhere = true;
    }
    if (rep.dominated && rep.strict_somewhere) {
      rep.verdict = ConformalVerdict::subcritical;
      return rep;
    }
  }
  rep.used_fallback = true;
  const auto ladder = build_ladder(model, opt.fallback);
  const auto c = classify_criticality(ladder, coef.profile.a, SupersolutionDatum{});
  rep.fallback_verdict = c.verdict;
  rep.verdict = c.verdict == Criticality::subcritical  ? ConformalVerdict::subcritical
                : c.verdict == Criticality::inconclusive ? ConformalVerdict::inconclusive
                                                         : ConformalVerdict::not_subcritical;
  return rep;
}

struct ConformalReport {
  DiscreteFunction u;
  double inf_u = 0.0;
  double sup_u = 0.0;
  double C1 = 0.0;  // (inf u)^{4/(m-2)}
  double C2 = 0.0;  // (sup u)^{4/(m-2)}
  bool uniform_equivalence = false;
  SolveReport solve;
  std::vector<double> rung_radii;
  std::vector<double> rung_inf;  // inf u per ladder rung
  std::vector<double> rung_sup;
  bool ladder_stable = false;    // inf and sup change < 1% over the last two rungs
};

struct PrescribedOptions {
  double theta = 0.5;        // W = theta (chi - a)_+ on the window
  double hardy_core = 1e-2;  // chi is capped at this radius near the pole
  double floor = 1e-8;       // uniform equivalence needs inf u above this
  MonotoneOptions monotone;
  TailOptions tail;
};

namespace detail {

inline RadialFn window_gap(const ModelManifold& model, const RadialFn& a, const PrescribedOptions& opt) {
  auto chi = PotentialProfile::hardy(model, 1.0, opt.hardy_core, opt.tail);
  return [chi, a, th = opt.theta](double r) { return th * std::max(chi(r) - a(r), 0.0); };
}

inline void package(ConformalReport& rep, int m, double floor) {
  rep.inf_u = rep.u.min();
  rep.sup_u = rep.u.max();
  const double e = 4.0 / (m - 2.0);
  rep.C1 = std::pow(std::max(rep.inf_u, 0.0), e);
  rep.C2 = std::pow(rep.sup_u, e);
  rep.uniform_equivalence = rep.inf_u > floor;
}

}  // namespace detail

// Runs the monotone scheme on every rung with delta estimated from the whole ladder.
inline ConformalReport run_prescribed_curvature(const YamabeProblem& yp, const std::vector<RadialMesh>& ladder, double eps,
                                                const Window& L, const PrescribedOptions& opt = {}) {
  if (ladder.empty()) fail(ErrorCode::InvalidArgument, "empty ladder");
  const auto coef = to_coefficients(yp);
  const ModelManifold& model = *ladder.back().model();
  const auto sup = coef.profile.verify(ladder.back());
  if (!sup.b_minus_ok) fail(ErrorCode::InvalidArgument, "s_tilde_+ exceeds its declared support");
  if (!sup.a_ok) fail(ErrorCode::InvalidArgument, "s exceeds its declared support");
  const RadialFn W = detail::window_gap(model, coef.profile.a, opt);
  const auto& pr = coef.profile;
  const RadialFn bplus = [&pr](double r) { return pr.b_plus(r); };
  const auto est = compute_delta(ladder, pr.a, bplus, coef.F, eps, L, W, opt.monotone.solve);
  MonotoneOptions mo = opt.monotone;
  mo.delta = est.delta;
  mo.upper_bound = est.C;
  ConformalReport rep;
  for (const auto& mesh : ladder) {
    auto s = monotone_iteration(mesh, pr.a, pr.b, coef.F, eps, L, W, mo);
    rep.rung_radii.push_back(mesh.outer());
    rep.rung_inf.push_back(s.solution.min());
    rep.rung_sup.push_back(s.solution.max());
    rep.solve = std::move(s);
  }
  rep.u = rep.solve.solution;
  rep.solve.domain_sequence = rep.rung_radii;
  detail::package(rep, yp.m, opt.floor);
  const std::size_t n = rep.rung_inf.size();
  rep.ladder_stable = n >= 2 && std::abs(rep.rung_inf[n - 1] - rep.rung_inf[n - 2]) < 0.01 * std::abs(rep.rung_inf[n - 2]) &&
                      std::abs(rep.rung_sup[n - 1] - rep.rung_sup[n - 2]) < 0.01 * std::abs(rep.rung_sup[n - 2]);
  return rep;
}

// Case with s >= 0 and s_tilde <= 0 compactly supported: deformations with sup u -> 0.
inline std::vector<ConformalReport> run_prescribed_curvature_sequence(const YamabeProblem& yp,
                                                                      const std::vector<RadialMesh>& ladder,
                                                                      const Window& L, int k_max,
                                                                      const PrescribedOptions& opt = {},
                                                                      double epsilon0 = 0.5) {
  if (ladder.empty()) fail(ErrorCode::InvalidArgument, "empty ladder");
  const auto coef = to_coefficients(yp);
  const RadialFn W = detail::window_gap(*ladder.back().model(), coef.profile.a, opt);
  MultiSolutionOptions mo;
  mo.epsilon0 = epsilon0;
  mo.monotone = opt.monotone;
  auto sols = multi_solution_sequence(ladder, coef.profile.a, coef.profile.b, coef.F, L, W, k_max, mo);
  std::vector<ConformalReport> out;
  for (auto& s : sols) {
    ConformalReport rep;
    rep.u = s.solution;
    rep.rung_radii = s.domain_sequence;
    rep.solve = std::move(s);
    detail::package(rep, yp.m, opt.floor);
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace radlab
