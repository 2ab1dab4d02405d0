#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "radlab/solver.hpp"

namespace radlab {

// Positive supersolution datum g prescribing the capacitor on K.
struct SupersolutionDatum {
  std::string name = "one";
  RadialFn g = [](double) { return 1.0; };
  RadialFn dg;  // optional; central difference otherwise

  static SupersolutionDatum constant(double c) {
    return {"constant", [c](double) { return c; }, [](double) { return 0.0; }};
  }

  double value(double r) const { return g(r); }
  double derivative(double r) const {
    if (dg) return dg(r);
    const double h = 1e-6 * (r > 0.0 ? r : 1.0);
    return r > 0.0 ? (g(r + h) - g(r - h)) / (2.0 * h) : (g(h) - g(0.0)) / h;
  }
};

struct CapacityResult {
  double value = 0.0;       // Q_V(u) over the annulus plus Q_V(g) over K
  double flux_value = 0.0;  // boundary-flux representation at the edge of K
  DiscreteFunction capacitor;
  double inner = 0.0;  // radius of K
  double outer = 0.0;  // radius of Omega
  std::string datum;
};

namespace detail {

// Q_V(g) on the ball B_k.
inline double datum_energy_on_ball(const RadialMesh& mesh, const RadialFn& V, const SupersolutionDatum& g, double k) {
  if (k <= 0.0) return 0.0;
  const double p = mesh.p();
  const RadialFn& w = mesh.weight();
  return integrate([&](double r) { return (apow(g.derivative(r), p) - V(r) * apow(g.value(r), p)) * w(r) / p; }, 0.0, k);
}

}  // namespace detail

// Q'_V(u) = 0 on the annulus, u = g(k) on the inner edge and 0 on the outer edge.
inline CapacityResult capacitor_solve(const RadialMesh& mesh, const RadialFn& V, const SupersolutionDatum& g,
                                      bool check_coercivity = true) {
  if (mesh.kind() != DomainKind::annulus) fail(ErrorCode::InvalidArgument, "capacitors live on annulus meshes");
  const double k = mesh.inner(), p = mesh.p();
  const double gk = g.value(k);
  if (!(gk > 0.0)) fail(ErrorCode::InvalidArgument, "datum must be positive on the edge of K");
  const QuadField Vq = mesh.sample_quad(V);
  const QuadField zero(mesh.num_quad(), 0.0);
  DirichletOptions o;
  o.check_coercivity = check_coercivity;
  auto sol = dirichlet_solve(mesh, Vq, zero, Nonlinearity::power(2.0), BoundaryData{gk, 0.0}, o);
  CapacityResult res;
  res.inner = k;
  res.outer = mesh.outer();
  res.datum = g.name;
  const double inner_part = detail::datum_energy_on_ball(mesh, V, g, k);
  res.value = qv_energy(mesh, Vq, sol.z) + inner_part;
  // The inner nodal residual is the discrete outward flux -omega |u'|^{p-2} u' at r = k.
  const double R0 = nodal_residual(mesh, Vq, sol.z).value[0];
  const double dg = g.derivative(k);
  res.flux_value = gk * (mesh.weight()(k) * spow(dg, p - 1.0) + R0) / p;
  res.capacitor = std::move(sol.z);
  return res;
}

struct GlobalCapacity {
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<double> flux_values;
  std::vector<CapacityResult> rungs;
  double estimate = 0.0;
  bool non_increasing = true;   // values along the ladder
  bool capacitors_ordered = true;  // u_j <= u_{j+1} <= g nodewise
};

// Nested annulus ladder sharing the inner radius.
inline GlobalCapacity global_capacity(const std::vector<RadialMesh>& ladder, const RadialFn& V, const SupersolutionDatum& g,
                                      double tol = 1e-9, bool check_coercivity = true) {
  if (ladder.empty()) fail(ErrorCode::InvalidArgument, "empty ladder");
  GlobalCapacity gc;
  for (const auto& mesh : ladder) {
    auto r = capacitor_solve(mesh, V, g, check_coercivity);
    gc.radii.push_back(r.outer);
    gc.values.push_back(r.value);
    gc.flux_values.push_back(r.flux_value);
    gc.rungs.push_back(std::move(r));
  }
  for (std::size_t j = 1; j < gc.values.size(); ++j) {
    if (gc.values[j] > gc.values[j - 1] * (1.0 + tol)) gc.non_increasing = false;
    const auto& prev = gc.rungs[j - 1].capacitor;
    const auto& cur = gc.rungs[j].capacitor;
    const auto& mesh = ladder[j];
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const double lower = i < prev.size() ? prev[i] : 0.0;
      const double scale = std::max(1.0, std::abs(g.value(mesh.node(i))));
      if (cur[i] < lower - tol * scale || cur[i] > g.value(mesh.node(i)) + tol * scale) gc.capacitors_ordered = false;
    }
  }
  gc.estimate = gc.values.back();
  return gc;
}

enum class Criticality { subcritical, critical, inconclusive, negative };

inline const char* to_string(Criticality c) {
  switch (c) {
    case Criticality::subcritical: return "subcritical";
    case Criticality::critical: return "critical";
    case Criticality::inconclusive: return "inconclusive";
    case Criticality::negative: return "negative";
  }
  return "?";
}

struct ClassifyOptions {
  double stabilization = 0.01;   // relative change over the last two rungs
  double floor_fraction = 1e-3;  // floor = fraction * first value
  double geometric_ratio = 0.9;  // trailing ratios at or below: convergence to a positive limit
  double critical_ratio = 0.98;  // trailing ratios at or above: decay to zero
  int trailing = 3;
  double reference_radius = 0.0;  // ground-state normalization point; 0 selects the inner edge
};

struct ClassifyReport {
  Criticality verdict = Criticality::inconclusive;
  GlobalCapacity capacity;
  std::vector<double> tones;
  std::vector<double> ratios;     // (1/c_{j+1} - 1/c_j) / (1/c_j - 1/c_{j-1})
  double extrapolated = 0.0;      // geometric extrapolation of the limit
  double floor = 0.0;
  DiscreteFunction ground_state;  // last capacitor normalized at the reference radius
  std::vector<double> null_sequence_energies;  // Q_V of each normalized capacitor
};

// Ground-state alternative from the global capacity sequence on a geometric annulus ladder.
inline ClassifyReport classify_criticality(const std::vector<RadialMesh>& ladder, const RadialFn& V,
                                           const SupersolutionDatum& g, const ClassifyOptions& opt = {}) {
  ClassifyReport rep;
  if (ladder.size() < 3) fail(ErrorCode::InvalidArgument, "classification needs at least 3 rungs");
  for (const auto& mesh : ladder) {
    rep.tones.push_back(fundamental_tone(mesh, mesh.sample_quad(V)).lambda);
    if (rep.tones.back() < 0.0) {
      rep.verdict = Criticality::negative;
      return rep;
    }
  }
  rep.capacity = global_capacity(ladder, V, g, 1e-9, false);
  const auto& c = rep.capacity.values;
  const std::size_t n = c.size();
  rep.floor = opt.floor_fraction * c.front();
  // Increments of 1/c_j: constant or growing for logarithmic and power-law decay to zero,
  // geometric when the sequence converges to a positive limit at a power rate.
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double d0 = 1.0 / c[j] - 1.0 / c[j - 1], d1 = 1.0 / c[j + 1] - 1.0 / c[j];
    rep.ratios.push_back(d0 > 0.0 ? d1 / d0 : (d1 <= 0.0 ? 0.0 : kInf));
  }
  const std::size_t t = std::min<std::size_t>(opt.trailing, rep.ratios.size());
  bool geometric = true, slow = true;
  double dmax = 0.0;
  for (std::size_t k = rep.ratios.size() - t; k < rep.ratios.size(); ++k) {
    if (!(rep.ratios[k] <= opt.geometric_ratio)) geometric = false;
    if (!(rep.ratios[k] >= opt.critical_ratio)) slow = false;
    dmax = std::max(dmax, rep.ratios[k]);
  }
  const double inv_drop = 1.0 / c[n - 1] - 1.0 / c[n - 2];
  rep.extrapolated = geometric ? 1.0 / (1.0 / c[n - 1] + std::max(inv_drop, 0.0) * dmax / (1.0 - dmax)) : 0.0;
  const double last_drop = c[n - 2] - c[n - 1];
  const bool stable = std::abs(last_drop) < opt.stabilization * std::abs(c[n - 2]);
  bool decreasing = true;
  for (std::size_t j = 1; j < n; ++j)
    if (!(c[j] < c[j - 1])) decreasing = false;
  if (geometric && stable && rep.extrapolated > rep.floor)
    rep.verdict = Criticality::subcritical;
  else if (c.back() < rep.floor || (slow && decreasing))
    rep.verdict = Criticality::critical;
  else
    rep.verdict = Criticality::inconclusive;

  const RadialMesh& top = ladder.back();
  const double rr = opt.reference_radius > 0.0 ? opt.reference_radius : top.inner();
  for (std::size_t j = 0; j < n; ++j) {
    const auto& u = rep.capacity.rungs[j].capacitor;
    const double at = u.at(ladder[j], std::min(rr, ladder[j].outer()));
    DiscreteFunction eta = u;
    for (double& v : eta.values) v /= at;
    rep.null_sequence_energies.push_back(qv_energy(ladder[j], ladder[j].sample_quad(V), eta));
    if (j + 1 == n) rep.ground_state = std::move(eta);
  }
  return rep;
}

}  // namespace radlab
