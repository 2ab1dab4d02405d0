#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "radlab/mesh.hpp"
#include "radlab/spectral.hpp"
#include "radlab/tridiag.hpp"

namespace radlab {

// F with F(0) = 0 and F(t)/t^{p-1} increasing from 0 to infinity.
struct Nonlinearity {
  std::string name;
  std::function<double(double)> F;
  std::function<double(double)> dF;         // optional
  std::function<double(double)> primitive;  // optional, primitive(0) = 0

  static Nonlinearity power(double sigma) {
    if (!(sigma > 0.0)) fail(ErrorCode::InvalidArgument, "power exponent must be positive");
    return {"power(" + std::to_string(sigma) + ")",
            [sigma](double t) { return std::pow(t, sigma); },
            [sigma](double t) { return t == 0.0 ? (sigma < 1.0 ? kInf : (sigma == 1.0 ? 1.0 : 0.0)) : sigma * std::pow(t, sigma - 1.0); },
            [sigma](double t) { return std::pow(t, sigma + 1.0) / (sigma + 1.0); }};
  }

  double operator()(double t) const { return F(std::max(t, 0.0)); }

  double derivative(double t) const {
    t = std::max(t, 0.0);
    if (dF) return dF(t);
    const double h = 1e-6 * std::max(t, 1e-3);
    return (F(t + h) - F(std::max(t - h, 0.0))) / (t + h - std::max(t - h, 0.0));
  }

  // int_0^t F by composite 4-point Gauss when no primitive is supplied.
  double integral(double t) const {
    t = std::max(t, 0.0);
    if (primitive) return primitive(t);
    double s = 0.0;
    const int pieces = 4;
    for (int k = 0; k < pieces; ++k) {
      const double a = t * k / pieces, h = t / pieces;
      for (int q = 0; q < 4; ++q) s += h * Gauss4::w[q] * F(a + h * Gauss4::x[q]);
    }
    return s;
  }
};

struct ContractReport {
  bool zero_at_origin = false;
  bool positive = false;
  bool quotient_increasing = false;
  bool small_near_zero = false;
  bool large_at_top = false;
  bool ok() const { return zero_at_origin && positive && quotient_increasing && small_near_zero && large_at_top; }
};

inline ContractReport check_contract(const Nonlinearity& F, double p, double t_lo = 1e-4, double t_hi = 1e4, int n = 200) {
  ContractReport r;
  r.zero_at_origin = F(0.0) == 0.0;
  r.positive = true;
  r.quotient_increasing = true;
  double prev = -kInf;
  for (double t : log_grid(t_lo, t_hi, n)) {
    const double v = F(t);
    if (!(v > 0.0)) r.positive = false;
    const double q = v / std::pow(t, p - 1.0);
    if (!(q > prev)) r.quotient_increasing = false;
    prev = q;
  }
  const double q1 = F(1.0);
  r.small_near_zero = F(t_lo) / std::pow(t_lo, p - 1.0) < 1e-2 * q1;
  r.large_at_top = F(t_hi) / std::pow(t_hi, p - 1.0) > 1e2 * q1;
  return r;
}

// Radial window [lo, hi]; lo = 0 on a ball includes the pole.
struct Window {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double r) const { return r >= lo && r <= hi; }
};

struct CoefficientProfile {
  RadialFn a;
  RadialFn b;
  std::optional<double> b_minus_support;  // declared: b_- = 0 for r > radius
  std::optional<double> a_support;        // declared: a = 0 for r > radius

  double b_plus(double r) const { return std::max(b(r), 0.0); }
  double b_minus(double r) const { return std::max(-b(r), 0.0); }

  struct SupportReport {
    bool b_minus_ok = true;
    bool a_ok = true;
  };
  SupportReport verify(const RadialMesh& mesh) const {
    SupportReport s;
    auto check = [&](double r) {
      if (b_minus_support && r > *b_minus_support && b_minus(r) > 0.0) s.b_minus_ok = false;
      if (a_support && r > *a_support && a(r) != 0.0) s.a_ok = false;
    };
    for (double r : mesh.nodes()) check(r);
    for (std::size_t e = 0; e < mesh.num_elements(); ++e)
      for (int q = 0; q < 4; ++q) check(mesh.qr(e, q));
    return s;
  }
};

struct BoundaryData {
  double inner = 0.0;  // annulus only
  double outer = 0.0;
  static BoundaryData uniform(double v) { return {v, v}; }
};

struct DirichletOptions {
  double tol = 1e-9;  // scaled nodal residual
  int max_iterations = 200;
  bool check_coercivity = true;
  const DiscreteFunction* initial = nullptr;
};

struct DirichletResult {
  DiscreteFunction z;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> trace;  // scaled residual per iteration
};

namespace detail {

inline double energy(const RadialMesh& mesh, const QuadField& A, const QuadField& B, const Nonlinearity& F,
                     const DiscreteFunction& z) {
  const double p = mesh.p();
  double J = 0.0;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    J += apow(z.slope(mesh, e), p) * mesh.element_measure(e) / p;
    for (int q = 0; q < 4; ++q) {
      const std::size_t k = 4 * e + q;
      const double u = z.at_quad(e, q), dm = mesh.qomega(e, q) * mesh.qw(e, q);
      J -= A[k] * apow(u, p) * dm / p;
      if (B[k] != 0.0) J += B[k] * F.integral(u) * dm;
    }
  }
  return J;
}

// Newton on the weak form with the nodes in `fixed` held at their current values and
// the iterate kept nonnegative. Regularized second variation; descent fallback when indefinite.
inline DirichletResult constrained_newton(const RadialMesh& mesh, const QuadField& A, const QuadField& B,
                                          const Nonlinearity& F, DiscreteFunction z, const std::vector<char>& fixed,
                                          double tol, int max_iterations) {
  const double p = mesh.p();
  const std::size_t n = mesh.num_nodes();
  const std::function<double(double)> Ff = [&F](double t) { return F(t); };
  std::vector<std::size_t> free_idx;
  for (std::size_t i = 0; i < n; ++i)
    if (!fixed[i]) free_idx.push_back(i);
  DirichletResult res;
  auto scaled = [&](const NodalResidual& r) {
    double m = 0.0;
    for (std::size_t i : free_idx)
      if (r.scale[i] > 0.0) m = std::max(m, std::abs(r.value[i]) / r.scale[i]);
    return m;
  };
  if (free_idx.empty()) {
    res.z = std::move(z);
    return res;
  }
  auto R = nodal_residual(mesh, A, &B, &Ff, z);
  double rs = scaled(R);
  double J = energy(mesh, A, B, F, z);
  int it = 0;
  for (; it < max_iterations; ++it) {
    res.trace.push_back(rs);
    if (rs < tol) break;
    double smax = 0.0, umax = 0.0;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) smax = std::max(smax, std::abs(z.slope(mesh, e)));
    for (double v : z.values) umax = std::max(umax, std::abs(v));
    const bool linear = std::abs(p - 2.0) < 1e-14;
    auto build = [&](double reg, bool absolute) {
      const double es = reg * smax + 1e-300, eu = reg * umax + 1e-300;
      std::vector<double> kc(mesh.num_elements());
      for (std::size_t e = 0; e < kc.size(); ++e) {
        const double s = z.slope(mesh, e);
        kc[e] = linear ? 1.0 : (p - 1.0) * std::pow(s * s + es * es, 0.5 * (p - 2.0));
      }
      QuadField mc(mesh.num_quad());
      for (std::size_t e = 0; e < mesh.num_elements(); ++e)
        for (int q = 0; q < 4; ++q) {
          const std::size_t k = 4 * e + q;
          const double u = z.at_quad(e, q);
          const double up = linear ? 1.0 : std::pow(u * u + eu * eu, 0.5 * (p - 2.0));
          double c = -(p - 1.0) * A[k] * up;
          if (B[k] != 0.0) c += B[k] * F.derivative(u);
          mc[k] = absolute ? std::abs(c) : c;
        }
      auto H = assemble_stiffness(mesh, kc);
      const auto M = assemble_mass(mesh, mc);
      for (std::size_t i = 0; i < n; ++i) H.diag[i] += M.diag[i];
      for (std::size_t i = 0; i + 1 < n; ++i) H.off[i] += M.off[i];
      // Fixed nodes become identity rows decoupled from the free block.
      for (std::size_t i = 0; i < n; ++i)
        if (fixed[i]) {
          H.diag[i] = 1.0;
          if (i > 0) H.off[i - 1] = 0.0;
          if (i + 1 < n) H.off[i] = 0.0;
        }
      return H;
    };
    std::vector<double> rhs(n, 0.0);
    for (std::size_t i : free_idx) rhs[i] = -R.value[i];
    TridiagLDL fac(build(linear ? 0.0 : 1e-8, false));
    if (!fac.positive_definite) fac = TridiagLDL(build(1e-2, true));
    auto d = fac.solve(rhs);
    for (std::size_t i = 0; i < n; ++i)
      if (fixed[i]) d[i] = 0.0;
    double slope = 0.0;
    for (std::size_t i : free_idx) slope += R.value[i] * d[i];
    double t = 1.0;
    bool accepted = false;
    DiscreteFunction trial = z;
    for (int k = 0; k < 60; ++k, t *= 0.5) {
      for (std::size_t i : free_idx) trial[i] = std::max(0.0, z[i] + t * d[i]);
      const double Jt = energy(mesh, A, B, F, trial);
      if (Jt <= J + 1e-4 * t * std::min(slope, 0.0) + 1e-13 * std::abs(J)) {
        auto Rt = nodal_residual(mesh, A, &B, &Ff, trial);
        const double rt = scaled(Rt);
        // Near convergence energy differences drown in roundoff; require residual progress there.
        if (std::abs(Jt - J) > 1e-12 * std::abs(J) || rt < rs) {
          z = trial;
          R = std::move(Rt);
          rs = rt;
          J = Jt;
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) break;
  }
  res.z = std::move(z);
  res.iterations = it;
  res.residual = rs;
  return res;
}

// Direct solve of the linear p = 2 problem for the nodal values (not the increment), which keeps
// componentwise accuracy where the solution is many orders below the boundary data.
inline DiscreteFunction linear_solve(const RadialMesh& mesh, const QuadField& A, DiscreteFunction z) {
  const std::size_t n = mesh.num_nodes();
  QuadField mc(A.size());
  for (std::size_t k = 0; k < A.size(); ++k) mc[k] = -A[k];
  auto H = assemble_stiffness(mesh, std::vector<double>(mesh.num_elements(), 1.0));
  const auto M = assemble_mass(mesh, mc);
  for (std::size_t i = 0; i < n; ++i) H.diag[i] += M.diag[i];
  for (std::size_t i = 0; i + 1 < n; ++i) H.off[i] += M.off[i];
  std::vector<double> rhs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!mesh.essential(i)) continue;
    rhs[i] = z[i];
    if (i > 0 && !mesh.essential(i - 1)) rhs[i - 1] -= H.off[i - 1] * z[i];
    if (i + 1 < n && !mesh.essential(i + 1)) rhs[i + 1] -= H.off[i] * z[i];
    H.diag[i] = 1.0;
    if (i > 0) H.off[i - 1] = 0.0;
    if (i + 1 < n) H.off[i] = 0.0;
  }
  TridiagLDL fac(H);
  auto x = fac.solve(rhs);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::max(x[i], 0.0);
  return z;
}

inline std::vector<char> essential_mask(const RadialMesh& mesh) {
  std::vector<char> m(mesh.num_nodes(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = mesh.essential(i) ? 1 : 0;
  return m;
}

inline DiscreteFunction boundary_guess(const RadialMesh& mesh, const BoundaryData& bc) {
  DiscreteFunction z(mesh.num_nodes(), bc.outer);
  if (mesh.kind() == DomainKind::annulus) {
    const double a = mesh.inner(), b = mesh.outer();
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = bc.inner + (bc.outer - bc.inner) * (mesh.node(i) - a) / (b - a);
  }
  return z;
}

inline void apply_boundary(const RadialMesh& mesh, DiscreteFunction& z, const BoundaryData& bc) {
  z.values.back() = bc.outer;
  if (mesh.kind() == DomainKind::annulus) z.values.front() = bc.inner;
}

}  // namespace detail

// Positive solution of Delta_{p,f} z + A z^{p-1} - B F(z) = 0 with z = boundary data.
inline DirichletResult dirichlet_solve(const RadialMesh& mesh, const QuadField& A, const QuadField& B,
                                       const Nonlinearity& F, const BoundaryData& bc, const DirichletOptions& opt = {}) {
  detail::check_potential(mesh, A);
  detail::check_potential(mesh, B);
  for (double b : B)
    if (b < 0.0) fail(ErrorCode::InvalidArgument, "B must be nonnegative");
  if (bc.outer < 0.0 || bc.inner < 0.0) fail(ErrorCode::InvalidArgument, "boundary data must be nonnegative");
  if (opt.check_coercivity) {
    const double lam = fundamental_tone(mesh, A).lambda;
    if (!(lam > 0.0)) fail(ErrorCode::NotCoercive, "fundamental tone of A is " + std::to_string(lam));
  }
  DiscreteFunction z = opt.initial ? *opt.initial : detail::boundary_guess(mesh, bc);
  for (double& v : z.values) v = std::max(v, 0.0);
  detail::apply_boundary(mesh, z, bc);
  if (std::abs(mesh.p() - 2.0) < 1e-14 && std::all_of(B.begin(), B.end(), [](double b) { return b == 0.0; }))
    z = detail::linear_solve(mesh, A, z);
  auto res = detail::constrained_newton(mesh, A, B, F, std::move(z), detail::essential_mask(mesh), opt.tol, opt.max_iterations);
  if (!(res.residual < opt.tol)) {
    std::string tr;
    for (std::size_t k = res.trace.size() > 8 ? res.trace.size() - 8 : 0; k < res.trace.size(); ++k) tr += " " + std::to_string(res.trace[k]);
    fail(ErrorCode::NonConvergence, "Dirichlet solve stalled at scaled residual " + std::to_string(res.residual) + "; trace:" + tr);
  }
  return res;
}

inline DirichletResult dirichlet_solve(const RadialMesh& mesh, const RadialFn& A, const RadialFn& B,
                                       const Nonlinearity& F, const BoundaryData& bc, const DirichletOptions& opt = {}) {
  return dirichlet_solve(mesh, mesh.sample_quad(A), mesh.sample_quad(B), F, bc, opt);
}

// Scaled residual of Delta_{p,f} u + a u^{p-1} - b F(u) at the free nodes (b may change sign).
inline double equation_residual(const RadialMesh& mesh, const QuadField& a, const QuadField& b, const Nonlinearity& F,
                                const DiscreteFunction& u) {
  const std::function<double(double)> Ff = [&F](double t) { return F(t); };
  return nodal_residual(mesh, a, &b, &Ff, u).scaled_max(mesh.first_free(), mesh.last_free());
}

// Members of Delta u + m(m-2)/4 u - u^{(m+2)/(m-2)} = 0 on H^m (curvature -1), tau > 1 or tau = 1:
// u_tau(r) = [sqrt(m(m-2)/4) tau / (cosh^2(r/2) (tau^2 - tanh^2(r/2)))]^{(m-2)/2}
inline double hyperbolic_exact_solution(int m, double tau, double r) {
  if (m < 3) fail(ErrorCode::DimensionTooLow, "needs m >= 3");
  if (!(tau >= 1.0)) fail(ErrorCode::InvalidArgument, "tau must be >= 1");
  const double c = std::cosh(0.5 * r), t = std::tanh(0.5 * r);
  const double base = std::sqrt(m * (m - 2.0) / 4.0) * tau / (c * c * (tau * tau - t * t));
  return std::pow(base, 0.5 * (m - 2.0));
}

struct SolveReport {
  DiscreteFunction solution;
  DiscreteFunction phi_infinity;  // lower barrier
  DiscreteFunction phi_zero;      // upper barrier
  double lower_bound = 0.0;       // min over Lambda of phi_infinity
  double upper_bound = 0.0;       // C_Lambda(eps)
  double delta = 0.0;
  double epsilon = 0.0;
  std::vector<double> trace_sup;   // sup-norm of phi_n, n = 0, 1, ...
  std::vector<double> trace_step;  // sup |phi_n - phi_{n-1}|
  double residual = 0.0;           // scaled residual of the full equation
  int iterations = 0;
  bool monotone = true;            // phi_{n+1} <= phi_n nodewise
  bool bracketed = true;           // phi_infinity <= u <= phi_zero nodewise
  std::vector<double> domain_sequence;
};

struct DeltaEstimate {
  double delta = 0.0;
  double C = 0.0;      // C_Lambda(eps) = max over rungs of sup phi_0
  double min_W = 0.0;  // min of W over the closed window
  std::vector<double> per_rung_sup;
};

struct MonotoneOptions {
  int max_iterations = 200;
  double step_tol = 1e-8;
  double order_tol = 1e-10;              // relative slack for nodewise order checks
  std::optional<double> delta;           // from compute_delta on a ladder; else this mesh only
  std::optional<double> upper_bound;     // C_Lambda(eps)
  bool check_delta = true;
  DirichletOptions solve;
};

namespace detail {

inline QuadField window_weight(const RadialMesh& mesh, const RadialFn& W, const Window& L) {
  QuadField v(mesh.num_quad());
  for (std::size_t e = 0; e < mesh.num_elements(); ++e)
    for (int q = 0; q < 4; ++q) {
      const double r = mesh.qr(e, q);
      v[4 * e + q] = L.contains(r) ? W(r) : 0.0;
    }
  return v;
}

inline double min_on_window(const RadialMesh& mesh, const RadialFn& W, const Window& L) {
  double m = kInf;
  for (double r : mesh.nodes())
    if (L.contains(r)) m = std::min(m, W(r));
  for (std::size_t e = 0; e < mesh.num_elements(); ++e)
    for (int q = 0; q < 4; ++q)
      if (L.contains(mesh.qr(e, q))) m = std::min(m, W(mesh.qr(e, q)));
  if (L.lo > mesh.inner() || mesh.kind() == DomainKind::ball) m = std::min(m, W(std::max(L.lo, 1e-300)));
  m = std::min(m, W(L.hi));
  return m;
}

inline double min_nodal_on_window(const RadialMesh& mesh, const DiscreteFunction& u, const Window& L) {
  double m = kInf;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (L.contains(mesh.node(i))) m = std::min(m, u[i]);
  return m;
}

inline QuadField sum(const QuadField& a, const QuadField& b) {
  QuadField c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

}  // namespace detail

// C_Lambda(eps) from the ladder and delta = (min W) C^{p-1} / F(C).
inline DeltaEstimate compute_delta(const std::vector<RadialMesh>& ladder, const RadialFn& a, const RadialFn& b_plus,
                                   const Nonlinearity& F, double eps, const Window& L, const RadialFn& W,
                                   const DirichletOptions& opt = {}) {
  if (ladder.empty()) fail(ErrorCode::InvalidArgument, "empty ladder");
  DeltaEstimate d;
  d.min_W = detail::min_on_window(ladder.back(), W, L);
  if (!(d.min_W > 0.0)) fail(ErrorCode::InvalidArgument, "W must be positive on the closed window");
  for (const auto& mesh : ladder) {
    const QuadField A = detail::sum(mesh.sample_quad(a), detail::window_weight(mesh, W, L));
    const auto phi0 = dirichlet_solve(mesh, A, mesh.sample_quad(b_plus), F, BoundaryData::uniform(eps), opt);
    d.per_rung_sup.push_back(phi0.z.max());
    d.C = std::max(d.C, phi0.z.max());
  }
  const double p = ladder.front().p();
  d.delta = d.min_W * std::pow(d.C, p - 1.0) / F(d.C);
  return d;
}

// phi_infinity, phi_0 and the monotone scheme V_n = a + b_- F(phi_{n-1}) / phi_{n-1}^{p-1}.
inline SolveReport monotone_iteration(const RadialMesh& mesh, const RadialFn& a, const RadialFn& b, const Nonlinearity& F,
                                      double eps, const Window& L, const RadialFn& W, const MonotoneOptions& opt = {}) {
  const double p = mesh.p();
  const QuadField aq = mesh.sample_quad(a), bq = mesh.sample_quad(b);
  QuadField bp(bq.size()), bm(bq.size());
  for (std::size_t k = 0; k < bq.size(); ++k) {
    bp[k] = std::max(bq[k], 0.0);
    bm[k] = std::max(-bq[k], 0.0);
  }
  double bm_max = 0.0;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e)
    for (int q = 0; q < 4; ++q) {
      const std::size_t k = 4 * e + q;
      bm_max = std::max(bm_max, bm[k]);
      if (bm[k] > 0.0 && !L.contains(mesh.qr(e, q))) fail(ErrorCode::InvalidArgument, "b_- is not supported in the window");
    }
  for (double r : mesh.nodes()) bm_max = std::max(bm_max, std::max(-b(r), 0.0));

  SolveReport rep;
  rep.epsilon = eps;
  rep.domain_sequence = {mesh.outer()};
  {
    const double lam = fundamental_tone(mesh, aq).lambda;
    if (!(lam > 0.0)) fail(ErrorCode::NotCoercive, "fundamental tone of a is " + std::to_string(lam));
  }
  DirichletOptions so = opt.solve;
  so.check_coercivity = false;
  const QuadField V0 = detail::sum(aq, detail::window_weight(mesh, W, L));
  auto phi0 = dirichlet_solve(mesh, V0, bp, F, BoundaryData::uniform(eps), so).z;
  auto phiinf = dirichlet_solve(mesh, aq, bp, F, BoundaryData::uniform(eps), so).z;
  rep.upper_bound = opt.upper_bound.value_or(phi0.max());
  if (opt.delta) {
    rep.delta = *opt.delta;
  } else {
    const double C = rep.upper_bound;
    rep.delta = detail::min_on_window(mesh, W, L) * std::pow(C, p - 1.0) / F(C);
  }
  if (opt.check_delta && bm_max > rep.delta)
    fail(ErrorCode::DeltaViolated, "min b = " + std::to_string(-bm_max) + " < -delta = " + std::to_string(-rep.delta));
  rep.lower_bound = detail::min_nodal_on_window(mesh, phiinf, L);

  DiscreteFunction prev = phi0;
  rep.trace_sup.push_back(prev.sup_norm());
  const double scale = std::max(phi0.sup_norm(), 1e-300);
  int n = 0;
  for (; n < opt.max_iterations; ++n) {
    QuadField V = aq;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e)
      for (int q = 0; q < 4; ++q) {
        const std::size_t k = 4 * e + q;
        if (bm[k] == 0.0) continue;
        const double u = prev.at_quad(e, q);
        V[k] += bm[k] * F(u) / std::pow(u, p - 1.0);
      }
    so.initial = &prev;
    auto next = dirichlet_solve(mesh, V, bp, F, BoundaryData::uniform(eps), so).z;
    double step = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
      step = std::max(step, std::abs(next[i] - prev[i]));
      if (next[i] > prev[i] + opt.order_tol * scale) rep.monotone = false;
    }
    rep.trace_sup.push_back(next.sup_norm());
    rep.trace_step.push_back(step);
    prev = std::move(next);
    if (step < opt.step_tol) {
      ++n;
      break;
    }
  }
  // the final solve only confirms the fixed point reached one step earlier
  rep.iterations = std::max(1, n - 1);
  if (n >= opt.max_iterations && (rep.trace_step.empty() || rep.trace_step.back() >= opt.step_tol))
    fail(ErrorCode::NonConvergence, "monotone iteration did not converge in " + std::to_string(opt.max_iterations) + " steps");
  for (std::size_t i = 0; i < prev.size(); ++i)
    if (prev[i] < phiinf[i] - opt.order_tol * scale || prev[i] > phi0[i] + opt.order_tol * scale) rep.bracketed = false;
  rep.residual = equation_residual(mesh, aq, bq, F, prev);
  rep.solution = std::move(prev);
  rep.phi_infinity = std::move(phiinf);
  rep.phi_zero = std::move(phi0);
  return rep;
}

struct MultiSolutionOptions {
  double epsilon0 = 0.5;
  double min_epsilon = 1e-12;
  MonotoneOptions monotone;
};

// eps_0 > eps_1 > ... with C_Lambda(eps_k) < min over Lambda of u_{k-1}; solutions on the largest rung.
inline std::vector<SolveReport> multi_solution_sequence(const std::vector<RadialMesh>& ladder, const RadialFn& a,
                                                        const RadialFn& b, const Nonlinearity& F, const Window& L,
                                                        const RadialFn& W, int k_max, const MultiSolutionOptions& opt = {}) {
  if (ladder.empty() || k_max < 1) fail(ErrorCode::InvalidArgument, "need a ladder and k_max >= 1");
  const RadialMesh& top = ladder.back();
  double bm_max = 0.0;
  for (std::size_t e = 0; e < top.num_elements(); ++e)
    for (int q = 0; q < 4; ++q) {
      const double r = top.qr(e, q);
      if (!L.contains(r) && a(r) > 0.0) fail(ErrorCode::InvalidArgument, "a must be <= 0 outside the window");
      const double bm = std::max(-b(r), 0.0);
      if (bm > 0.0 && !L.contains(r)) fail(ErrorCode::InvalidArgument, "b_- is not supported in the window");
      bm_max = std::max(bm_max, bm);
      if (!std::isfinite(a(r)) || !std::isfinite(b(r))) fail(ErrorCode::InvalidArgument, "a and b must be finite");
    }
  const RadialFn bplus = [&b](double r) { return std::max(b(r), 0.0); };
  std::vector<SolveReport> out;
  double eps = opt.epsilon0;
  double ceiling = kInf;  // min over the window of the previous solution
  while (static_cast<int>(out.size()) < k_max) {
    if (eps < opt.min_epsilon) fail(ErrorCode::LadderStall, "epsilon underflow after " + std::to_string(out.size()) + " solutions");
    const auto est = compute_delta(ladder, a, bplus, F, eps, L, W, opt.monotone.solve);
    if (bm_max > est.delta || !(est.C < ceiling)) {
      eps *= 0.5;
      continue;
    }
    MonotoneOptions mo = opt.monotone;
    mo.delta = est.delta;
    mo.upper_bound = est.C;
    auto rep = monotone_iteration(top, a, b, F, eps, L, W, mo);
    rep.domain_sequence.clear();
    for (const auto& m : ladder) rep.domain_sequence.push_back(m.outer());
    ceiling = detail::min_nodal_on_window(top, rep.solution, L);
    out.push_back(std::move(rep));
    eps *= 0.5;
  }
  return out;
}

struct LowerBoundReport {
  std::vector<double> radii;
  std::vector<double> inf_window;
  std::vector<double> running_min;
  bool stabilized = false;  // relative change < 1% over the last two rungs
  bool decayed = false;     // running minimum fell below the floor
  bool monotone_decay = false;
};

// Solves Delta z + A z^{p-1} - B F(z) = 0, z = eps on each rung and follows inf over Lambda.
inline LowerBoundReport uniform_lower_bound_check(const std::vector<RadialMesh>& ladder, const RadialFn& A, const RadialFn& B,
                                                  const Nonlinearity& F, double eps, const Window& L, double floor,
                                                  const DirichletOptions& opt = {}) {
  LowerBoundReport rep;
  double run = kInf;
  for (const auto& mesh : ladder) {
    const auto z = dirichlet_solve(mesh, A, B, F, BoundaryData::uniform(eps), opt).z;
    const double m = detail::min_nodal_on_window(mesh, z, L);
    run = std::min(run, m);
    rep.radii.push_back(mesh.outer());
    rep.inf_window.push_back(m);
    rep.running_min.push_back(run);
  }
  const std::size_t n = rep.inf_window.size();
  if (n >= 2) {
    const double a = rep.inf_window[n - 2], b = rep.inf_window[n - 1];
    rep.stabilized = std::abs(b - a) < 0.01 * std::abs(a);
    rep.monotone_decay = true;
    for (std::size_t i = 1; i < n; ++i)
      if (!(rep.inf_window[i] < rep.inf_window[i - 1])) rep.monotone_decay = false;
  }
  rep.decayed = run < floor;
  return rep;
}

struct UpperBoundReport {
  std::vector<double> radii;
  std::vector<double> sup_domain;
  std::vector<double> sup_window;
  std::vector<bool> level_set_nonempty;  // U = {z > alpha}
  std::vector<bool> localized;           // sup over U attained in Lambda when U is nonempty
  double alpha = 0.0;
  bool hypothesis_holds = true;          // A <= c B outside Lambda on the grid
  bool bounded = false;                  // relative growth < 1% over the last two rungs
  double sup_over_ladder = 0.0;
};

// alpha > eps with F(t)/t^{p-1} >= c for t >= alpha.
inline double level_alpha(const Nonlinearity& F, double p, double c, double eps) {
  auto q = [&](double t) { return F(t) / std::pow(t, p - 1.0); };
  double hi = std::max(eps, 1.0);
  while (q(hi) < c) hi *= 2.0;
  double lo = 0.0;
  if (q(eps) >= c) return eps * (1.0 + 1e-12);
  lo = eps;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (q(mid) >= c) hi = mid; else lo = mid;
  }
  return std::max(hi, eps * (1.0 + 1e-12));
}

inline UpperBoundReport uniform_upper_bound_check(const std::vector<RadialMesh>& ladder, const RadialFn& A, const RadialFn& B,
                                                  const Nonlinearity& F, double eps, const Window& L, double c,
                                                  const DirichletOptions& opt = {}) {
  UpperBoundReport rep;
  if (ladder.empty()) fail(ErrorCode::InvalidArgument, "empty ladder");
  const double p = ladder.front().p();
  rep.alpha = level_alpha(F, p, c, eps);
  const auto& top = ladder.back();
  for (std::size_t e = 0; e < top.num_elements(); ++e)
    for (int q = 0; q < 4; ++q) {
      const double r = top.qr(e, q);
      if (!L.contains(r) && A(r) > c * B(r) + 1e-14 * std::abs(A(r))) rep.hypothesis_holds = false;
    }
  for (const auto& mesh : ladder) {
    const auto z = dirichlet_solve(mesh, A, B, F, BoundaryData::uniform(eps), opt).z;
    double sd = 0.0, sw = 0.0, su = -kInf;
    bool nonempty = false;
    for (std::size_t i = 0; i < z.size(); ++i) {
      sd = std::max(sd, z[i]);
      if (L.contains(mesh.node(i))) sw = std::max(sw, z[i]);
      if (z[i] > rep.alpha) {
        nonempty = true;
        su = std::max(su, z[i]);
      }
    }
    rep.radii.push_back(mesh.outer());
    rep.sup_domain.push_back(sd);
    rep.sup_window.push_back(sw);
    rep.level_set_nonempty.push_back(nonempty);
    rep.localized.push_back(!nonempty || su <= sw * (1.0 + 1e-9));
    rep.sup_over_ladder = std::max(rep.sup_over_ladder, sd);
  }
  const std::size_t n = rep.sup_domain.size();
  if (n >= 2) rep.bounded = rep.sup_domain[n - 1] <= rep.sup_domain[n - 2] * 1.01;
  return rep;
}

struct APReport {
  double tone = 0.0;
  bool tone_nonnegative = false;
  bool solve_succeeded = false;
  bool solution_positive = false;
  bool supersolution = false;  // residual >= -tol against nonnegative basis functions
  bool consistent = false;     // the three properties agree
  std::string note;
};

// (tone >= 0) <=> (positive solution of Q'_V(z) = 0, z = 1 on the boundary) <=> (that z is a supersolution).
inline APReport ap_consistency_check(const RadialMesh& mesh, const QuadField& V, double tol = 1e-8) {
  APReport rep;
  rep.tone = fundamental_tone(mesh, V).lambda;
  rep.tone_nonnegative = rep.tone >= -tol;
  try {
    const QuadField zero(mesh.num_quad(), 0.0);
    DirichletOptions o;
    const auto z = dirichlet_solve(mesh, V, zero, Nonlinearity::power(2.0), BoundaryData::uniform(1.0), o).z;
    rep.solve_succeeded = true;
    rep.solution_positive = z.min() > 0.0;
    const auto r = nodal_residual(mesh, V, z);
    rep.supersolution = r.scaled_min(mesh.first_free(), mesh.last_free()) >= -tol;
  } catch (const Error& e) {
    rep.note = e.code() == ErrorCode::NotCoercive ? "loss of coercivity" : e.what();
  }
  const bool s = rep.solve_succeeded && rep.solution_positive && rep.supersolution;
  rep.consistent = rep.tone_nonnegative == s;
  return rep;
}

inline APReport ap_consistency_check(const RadialMesh& mesh, const PotentialProfile& V, double tol = 1e-8) {
  return ap_consistency_check(mesh, mesh.sample_quad(V.function()), tol);
}

struct ObstacleOptions {
  double tol = 1e-10;
  int max_active_set_iterations = 200;
  bool check_coercivity = true;
};

struct ObstacleResult {
  DiscreteFunction u;
  double complementarity = 0.0;  // max |min(u - psi, R / scale)| over free nodes
  int iterations = 0;
  std::vector<std::size_t> contact;
};

inline double complementarity_residual(const RadialMesh& mesh, const QuadField& V, const DiscreteFunction& u,
                                       const DiscreteFunction& psi) {
  const auto r = nodal_residual(mesh, V, u);
  double m = 0.0;
  for (std::size_t i = mesh.first_free(); i <= mesh.last_free(); ++i) {
    const double s = r.scale[i] > 0.0 ? r.value[i] / r.scale[i] : 0.0;
    m = std::max(m, std::abs(std::min(u[i] - psi[i], s)));
  }
  return m;
}

// u >= psi, u = theta on the boundary, Q'_V(u)[phi - u] >= 0 for admissible phi.
// Primal-dual active set with Newton solves on the inactive nodes.
inline ObstacleResult obstacle_solve(const RadialMesh& mesh, const QuadField& V, const DiscreteFunction& psi,
                                     const BoundaryData& theta, const ObstacleOptions& opt = {}) {
  detail::check_sizes(mesh, psi);
  if (psi.min() < 0.0) fail(ErrorCode::InvalidArgument, "obstacle must be nonnegative");
  if (theta.outer < psi.values.back() || (mesh.kind() == DomainKind::annulus && theta.inner < psi.values.front()))
    fail(ErrorCode::InvalidArgument, "boundary datum must dominate the obstacle");
  if (opt.check_coercivity) {
    const double lam = fundamental_tone(mesh, V).lambda;
    if (!(lam > 0.0)) fail(ErrorCode::NotCoercive, "fundamental tone of V is " + std::to_string(lam));
  }
  const QuadField zero(mesh.num_quad(), 0.0);
  const auto none = Nonlinearity::power(2.0);
  const auto ess = detail::essential_mask(mesh);
  DiscreteFunction u = detail::boundary_guess(mesh, theta);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!ess[i]) u[i] = std::max(u[i], psi[i]);
  std::vector<char> active(mesh.num_nodes(), 0);
  ObstacleResult res;
  for (int it = 0; it < opt.max_active_set_iterations; ++it) {
    std::vector<char> fixed = ess;
    for (std::size_t i = 0; i < fixed.size(); ++i)
      if (active[i]) {
        fixed[i] = 1;
        u[i] = psi[i];
      }
    u = detail::constrained_newton(mesh, V, zero, none, u, fixed, opt.tol * 1e-2, 200).z;
    const auto r = nodal_residual(mesh, V, u);
    std::vector<char> next(mesh.num_nodes(), 0);
    for (std::size_t i = 0; i < next.size(); ++i) {
      if (ess[i]) continue;
      const double s = r.scale[i] > 0.0 ? r.value[i] / r.scale[i] : 0.0;
      // stay active while the multiplier is nonnegative; enter when the obstacle is violated
      next[i] = active[i] ? (s >= 0.0) : (u[i] < psi[i]);
    }
    res.iterations = it + 1;
    if (next == active) break;
    active = std::move(next);
  }
  res.u = std::move(u);
  for (std::size_t i = 0; i < active.size(); ++i)
    if (active[i]) res.contact.push_back(i);
  res.complementarity = complementarity_residual(mesh, V, res.u, psi);
  return res;
}

struct PastingReport {
  bool preconditions = false;    // both inputs are discrete supersolutions
  double min_residual_w1 = 0.0;  // scaled
  double min_residual_w2 = 0.0;
  double min_residual_min = 0.0;
  bool passed = false;
  std::vector<double> violations;  // radii where min{w1, w2} fails
};

inline PastingReport pasting_min_check(const RadialMesh& mesh, const QuadField& V, const DiscreteFunction& w1,
                                       const DiscreteFunction& w2, double tol = 1e-9, double tol_paste = 1e-9) {
  PastingReport rep;
  const std::size_t f = mesh.first_free(), l = mesh.last_free();
  rep.min_residual_w1 = nodal_residual(mesh, V, w1).scaled_min(f, l);
  rep.min_residual_w2 = nodal_residual(mesh, V, w2).scaled_min(f, l);
  rep.preconditions = rep.min_residual_w1 >= -tol && rep.min_residual_w2 >= -tol;
  DiscreteFunction w(w1.size(), 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::min(w1[i], w2[i]);
  const auto r = nodal_residual(mesh, V, w);
  rep.min_residual_min = r.scaled_min(f, l);
  const double allowed = tol + tol_paste;
  for (std::size_t i = f; i <= l; ++i) {
    const double s = r.scale[i] > 0.0 ? r.value[i] / r.scale[i] : 0.0;
    if (s < -allowed) rep.violations.push_back(mesh.node(i));
  }
  rep.passed = rep.violations.empty();
  return rep;
}

struct NecessaryReport {
  bool vacuous = false;             // B_0 = {b <= 0} empty on the grid
  double b0_lo = 0.0, b0_hi = 0.0;  // hull of B_0
  std::vector<double> neighbourhood_size;
  std::vector<double> tones;        // lambda_a on shrinking neighbourhoods
  bool passed = false;              // final tone >= -tol
  double bellanec_lhs = 0.0;        // ||b_-|| inf_{B_0} F(u)/u^{p-1}
  double bellanec_rhs = 0.0;        // inf_eps lambda_a(Omega_eps) / (1 - eps)
  bool bellanec_holds = true;
};

inline NecessaryReport necessary_condition_check(const RadialMesh& mesh, const RadialFn& a, const RadialFn& b,
                                                 const DiscreteFunction& u, const Nonlinearity& F, double tol = 1e-6,
                                                 int levels = 5, int sub_elements = 200) {
  NecessaryReport rep;
  const double p = mesh.p();
  double lo = kInf, hi = -kInf;
  for (double r : mesh.nodes())
    if (b(r) <= 0.0) {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  if (lo > hi) {
    rep.vacuous = true;
    rep.passed = true;
    return rep;
  }
  rep.b0_lo = lo;
  rep.b0_hi = hi;
  auto tone_on = [&](double x0, double x1) {
    x0 = std::max(x0, mesh.inner());
    x1 = std::min(x1, mesh.outer());
    if (mesh.kind() == DomainKind::annulus && x0 <= mesh.inner()) x0 = mesh.inner();
    const auto sub = mesh.submesh(x0, x1, sub_elements);
    return fundamental_tone(sub, sub.sample_quad(a)).lambda;
  };
  const double d0 = 0.25 * (mesh.outer() - mesh.inner());
  for (int k = 0; k < levels; ++k) {
    const double d = d0 * std::pow(0.5, k);
    rep.neighbourhood_size.push_back(d);
    rep.tones.push_back(tone_on(lo - d, hi + d));
  }
  rep.passed = rep.tones.back() >= -tol;
  // ||b_-|| inf_{B_0} F(u)/u^{p-1} versus the tones of the superlevel hulls of b_-.
  double bm = 0.0, qmin = kInf;
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
    const double r = mesh.node(i);
    bm = std::max(bm, std::max(-b(r), 0.0));
    if (b(r) <= 0.0 && u[i] > 0.0) qmin = std::min(qmin, F(u[i]) / std::pow(u[i], p - 1.0));
  }
  rep.bellanec_lhs = bm * (std::isfinite(qmin) ? qmin : 0.0);
  if (bm > 0.0) {
    double best = kInf;
    for (int k = 1; k <= 9; ++k) {
      const double e = 0.1 * k;
      double x0 = kInf, x1 = -kInf;
      for (double r : mesh.nodes())
        if (std::max(-b(r), 0.0) >= (1.0 - e) * bm) {
          x0 = std::min(x0, r);
          x1 = std::max(x1, r);
        }
      if (!(x1 > x0)) {
        const double h = mesh.outer() / static_cast<double>(mesh.num_elements());
        x0 -= h;
        x1 += h;
      }
      best = std::min(best, tone_on(x0, x1) / (1.0 - e));
    }
    rep.bellanec_rhs = best;
    rep.bellanec_holds = rep.bellanec_lhs <= rep.bellanec_rhs + tol * std::max(1.0, std::abs(best));
  }
  return rep;
}

}  // namespace radlab
