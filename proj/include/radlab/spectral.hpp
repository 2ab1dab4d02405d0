#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "radlab/mesh.hpp"
#include "radlab/tridiag.hpp"

namespace radlab {

// Full-node stiffness sum_e c_e (omega measure / h^2) with element coefficients c_e.
inline SymTridiag assemble_stiffness(const RadialMesh& mesh, const std::vector<double>& coef) {
  SymTridiag k(mesh.num_nodes());
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const double h = mesh.h(e);
    const double s = (coef.empty() ? 1.0 : coef[e]) * mesh.element_measure(e) / (h * h);
    k.diag[e] += s;
    k.diag[e + 1] += s;
    k.off[e] -= s;
  }
  return k;
}

// Full-node mass matrix int c psi_i psi_j omega with quadrature-point coefficients c.
inline SymTridiag assemble_mass(const RadialMesh& mesh, const QuadField& coef) {
  SymTridiag m(mesh.num_nodes());
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    for (int q = 0; q < 4; ++q) {
      const double c = (coef.empty() ? 1.0 : coef[4 * e + q]) * mesh.qomega(e, q) * mesh.qw(e, q);
      const double l = RadialMesh::basis_left(q), r = RadialMesh::basis_right(q);
      m.diag[e] += c * l * l;
      m.diag[e + 1] += c * r * r;
      m.off[e] += c * l * r;
    }
  }
  return m;
}

inline SymTridiag restrict_range(const SymTridiag& a, std::size_t first, std::size_t last) {
  SymTridiag r(last - first + 1);
  for (std::size_t i = first; i <= last; ++i) {
    r.diag[i - first] = a.diag[i];
    if (i < last) r.off[i - first] = a.off[i];
  }
  return r;
}

inline double lp_norm_p(const RadialMesh& mesh, const DiscreteFunction& phi) {
  const double p = mesh.p();
  double s = 0.0;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e)
    for (int q = 0; q < 4; ++q) s += apow(phi.at_quad(e, q), p) * mesh.qomega(e, q) * mesh.qw(e, q);
  return s;
}

struct ToneResult {
  double lambda = 0.0;
  DiscreteFunction eigenfunction;  // >= 0, ||phi||_{L^p(omega)} = 1
  std::string method;              // "generalized-eigen" or "rayleigh-descent"
  int iterations = 0;
  double residual = 0.0;
};

struct ToneOptions {
  int max_iterations = 3000;
  double rel_tol = 1e-13;  // stop when the quotient decrease stalls at this relative level
};

namespace detail {

inline ToneResult tone_linear(const RadialMesh& mesh, const QuadField& V) {
  const std::size_t f = mesh.first_free(), l = mesh.last_free();
  const auto K = assemble_stiffness(mesh, {});
  const auto MV = assemble_mass(mesh, V);
  const auto M = assemble_mass(mesh, {});
  const SymTridiag A = restrict_range(K, f, l).shifted(1.0, restrict_range(MV, f, l));
  const SymTridiag B = restrict_range(M, f, l);
  const auto ep = smallest_generalized_eigenpair(A, B);
  ToneResult res;
  res.lambda = ep.value;
  res.method = "generalized-eigen";
  res.iterations = ep.iterations;
  res.residual = ep.residual;
  res.eigenfunction = DiscreteFunction(mesh.num_nodes(), 0.0);
  for (std::size_t i = f; i <= l; ++i) res.eigenfunction[i] = std::max(0.0, ep.vector[i - f]);
  const double nrm = std::sqrt(lp_norm_p(mesh, res.eigenfunction));
  for (double& v : res.eigenfunction.values) v /= nrm;
  return res;
}

// Rayleigh quotient N/D with N = p Q_V(phi) and D = ||phi||_p^p, plus its gradient pieces.
struct Quotient {
  double N = 0.0, D = 0.0;
  std::vector<double> gN, gD;
};

inline Quotient quotient(const RadialMesh& mesh, const QuadField& V, const DiscreteFunction& phi, bool with_grad) {
  const double p = mesh.p();
  Quotient Q;
  if (with_grad) {
    Q.gN.assign(mesh.num_nodes(), 0.0);
    Q.gD.assign(mesh.num_nodes(), 0.0);
  }
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const double s = phi.slope(mesh, e);
    Q.N += apow(s, p) * mesh.element_measure(e);
    if (with_grad) {
      const double fl = p * spow(s, p - 1.0) * mesh.element_measure(e) / mesh.h(e);
      Q.gN[e] -= fl;
      Q.gN[e + 1] += fl;
    }
    for (int q = 0; q < 4; ++q) {
      const double u = phi.at_quad(e, q), dm = mesh.qomega(e, q) * mesh.qw(e, q);
      const double up = apow(u, p);
      Q.N -= V[4 * e + q] * up * dm;
      Q.D += up * dm;
      if (with_grad) {
        const double gu = p * spow(u, p - 1.0) * dm;
        const double l = RadialMesh::basis_left(q), r = RadialMesh::basis_right(q);
        Q.gN[e] -= V[4 * e + q] * gu * l;
        Q.gN[e + 1] -= V[4 * e + q] * gu * r;
        Q.gD[e] += gu * l;
        Q.gD[e + 1] += gu * r;
      }
    }
  }
  return Q;
}

inline void normalize_lp(const RadialMesh& mesh, DiscreteFunction& phi) {
  const double n = std::pow(lp_norm_p(mesh, phi), 1.0 / mesh.p());
  if (n > 0.0)
    for (double& v : phi.values) v /= n;
}

inline ToneResult tone_descent(const RadialMesh& mesh, const QuadField& V, DiscreteFunction phi, const ToneOptions& opt) {
  const double p = mesh.p();
  const std::size_t f = mesh.first_free(), l = mesh.last_free();
  for (std::size_t i = 0; i < phi.size(); ++i)
    phi[i] = mesh.essential(i) ? 0.0 : std::max(phi[i], 0.0);
  normalize_lp(mesh, phi);
  auto Q = quotient(mesh, V, phi, true);
  double R = Q.N / Q.D;
  int it = 0, stalls = 0;
  for (; it < opt.max_iterations && stalls < 5; ++it) {
    std::vector<double> g(mesh.num_nodes());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = (Q.gN[i] - R * Q.gD[i]) / Q.D;
    // Preconditioner: second variation of the p-energy, regularized.
    double smax = 0.0, umax = 0.0;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) smax = std::max(smax, std::abs(phi.slope(mesh, e)));
    umax = phi.max();
    const double es = 1e-3 * smax, eu = 1e-3 * umax;
    std::vector<double> kc(mesh.num_elements());
    for (std::size_t e = 0; e < kc.size(); ++e) {
      const double s = phi.slope(mesh, e);
      kc[e] = p * (p - 1.0) * std::pow(s * s + es * es, 0.5 * (p - 2.0));
    }
    QuadField mc(mesh.num_quad());
    for (std::size_t e = 0; e < mesh.num_elements(); ++e)
      for (int q = 0; q < 4; ++q) {
        const double u = phi.at_quad(e, q);
        mc[4 * e + q] = p * (p - 1.0) * (std::abs(R) + 1e-12) * std::pow(u * u + eu * eu, 0.5 * (p - 2.0));
      }
    auto P = assemble_stiffness(mesh, kc);
    const auto Mw = assemble_mass(mesh, mc);
    for (std::size_t i = 0; i < P.size(); ++i) P.diag[i] += Mw.diag[i];
    for (std::size_t i = 0; i < P.off.size(); ++i) P.off[i] += Mw.off[i];
    const auto Pr = restrict_range(P, f, l);
    std::vector<double> gr(g.begin() + static_cast<std::ptrdiff_t>(f), g.begin() + static_cast<std::ptrdiff_t>(l) + 1);
    auto d = TridiagLDL(Pr).solve(gr);
    for (double& v : d) v *= -Q.D;
    double slope = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) slope += gr[i] * d[i];
    if (!(slope < 0.0)) break;
    double t = 1.0;
    bool accepted = false;
    DiscreteFunction trial = phi;
    Quotient Qt;
    for (int k = 0; k < 60; ++k, t *= 0.5) {
      for (std::size_t i = f; i <= l; ++i) trial[i] = std::max(0.0, phi[i] + t * d[i - f]);
      Qt = quotient(mesh, V, trial, false);
      if (Qt.D > 0.0 && Qt.N / Qt.D <= R + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    normalize_lp(mesh, trial);
    Qt = quotient(mesh, V, trial, true);
    const double Rn = Qt.N / Qt.D;
    stalls = (R - Rn) <= opt.rel_tol * std::abs(R) + 1e-300 ? stalls + 1 : 0;
    phi = std::move(trial);
    Q = std::move(Qt);
    R = Rn;
  }
  ToneResult res;
  res.lambda = R;
  res.method = "rayleigh-descent";
  res.iterations = it;
  res.eigenfunction = std::move(phi);
  // Stationarity: nodal residual of -Delta_p phi - (V + lambda)|phi|^{p-2} phi where phi > 0.
  QuadField A = V;
  for (double& a : A) a += R;
  const auto nr = nodal_residual(mesh, A, res.eigenfunction);
  double worst = 0.0;
  for (std::size_t i = f; i <= l; ++i)
    if (res.eigenfunction[i] > 0.0 && nr.scale[i] > 0.0) worst = std::max(worst, std::abs(nr.value[i]) / nr.scale[i]);
  res.residual = worst;
  return res;
}

}  // namespace detail

inline ToneResult fundamental_tone(const RadialMesh& mesh, const QuadField& V, const ToneOptions& opt = {}) {
  if (mesh.num_free() == 0) fail(ErrorCode::NoInteriorDof, "mesh has no interior degree of freedom");
  detail::check_potential(mesh, V);
  for (double v : V)
    if (!std::isfinite(v)) fail(ErrorCode::SingularPotential, "potential not finite at a quadrature point");
  if (std::abs(mesh.p() - 2.0) < 1e-14) return detail::tone_linear(mesh, V);

  // Seeds: first mass-matrix mode, centered bump, uniform profile.
  const auto lin = detail::tone_linear(mesh.with_exponent(2.0), V);
  std::vector<DiscreteFunction> seeds;
  seeds.push_back(lin.eigenfunction);
  const double a = mesh.inner(), b = mesh.outer(), c = 0.5 * (a + b), w = 0.5 * (b - a);
  seeds.push_back(DiscreteFunction::sample(mesh, [&](double r) {
    const double t = (r - c) / w;
    return std::max(0.0, 1.0 - t * t);
  }));
  seeds.push_back(DiscreteFunction(mesh.num_nodes(), 1.0));
  ToneResult best;
  best.lambda = kInf;
  int total = 0;
  for (auto& s : seeds) {
    auto r = detail::tone_descent(mesh, V, s, opt);
    total += r.iterations;
    if (r.lambda < best.lambda) best = std::move(r);
  }
  best.iterations = total;
  return best;
}

inline ToneResult fundamental_tone(const RadialMesh& mesh, const PotentialProfile& V, const ToneOptions& opt = {}) {
  return fundamental_tone(mesh, mesh.sample_quad(V.function()), opt);
}

// Compactly supported radial bumps (1 - ((r - c)/w)^2)^2_+ scanned over centers and widths,
// given as fractions of the domain extent.
struct TestFamily {
  std::vector<double> centers = {0.0, 0.25, 0.5, 0.75};
  std::vector<double> widths = {0.05, 0.1, 0.2, 0.4, 0.8};
};

struct YamabeBound {
  double value = kInf;
  double center = 0.0;
  double width = 0.0;
};

inline double yamabe_quotient(const RadialMesh& mesh, const QuadField& s_over_cm, const DiscreteFunction& phi, int m) {
  const double crit = 2.0 * m / (m - 2.0);
  double num = 0.0, den = 0.0;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const double d = phi.slope(mesh, e);
    num += d * d * mesh.element_measure(e);
    for (int q = 0; q < 4; ++q) {
      const double u = phi.at_quad(e, q), dm = mesh.qomega(e, q) * mesh.qw(e, q);
      num += s_over_cm[4 * e + q] * u * u * dm;
      den += apow(u, crit) * dm;
    }
  }
  return num / std::pow(den, (m - 2.0) / m);
}

// Upper bound on the Yamabe invariant from the radial test family.
inline YamabeBound yamabe_invariant_upper_bound(const RadialMesh& mesh, const RadialFn& scalar_curvature, int m,
                                                const TestFamily& family = {}) {
  if (m < 3) fail(ErrorCode::DimensionTooLow, "Yamabe quotient needs m >= 3");
  const double cm = 4.0 * (m - 1.0) / (m - 2.0);
  QuadField sq = mesh.sample_quad(scalar_curvature);
  for (double& v : sq) v /= cm;
  const double a = mesh.inner(), L = mesh.outer() - a;
  YamabeBound best;
  for (double cf : family.centers)
    for (double wf : family.widths) {
      const double c = a + cf * L, w = wf * L;
      auto phi = DiscreteFunction::sample(mesh, [&](double r) {
        const double t = (r - c) / w;
        return t * t < 1.0 ? (1.0 - t * t) * (1.0 - t * t) : 0.0;
      });
      for (std::size_t i = 0; i < phi.size(); ++i)
        if (mesh.essential(i)) phi[i] = 0.0;
      if (phi.max() <= 0.0) continue;
      const double v = yamabe_quotient(mesh, sq, phi, m);
      if (v < best.value) best = {v, c, w};
    }
  return best;
}

}  // namespace radlab
