#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "radlab/geometry.hpp"

namespace radlab {

struct TailOptions {
  double cutoff = 0.0;     // R*; 0 selects 50/kappa (hyperbolic) or 1e4 (flat-like)
  double rel_tol = 1e-12;  // per-chunk quadrature tolerance
};

namespace detail {

enum class TailShape { exponential, power, automatic };

// Log of the Green integrand s -> (e^{f} / g^{m-1})^{1/(p-1)}, or g^{-alpha} when the drift is absent.
struct LogIntegrand {
  const WarpingFunction* w;
  double alpha;
  RadialFn drift;  // may be empty
  double p;

  double operator()(double s) const {
    double v = -alpha * w->log_value(s);
    if (drift) v += drift(s) / (p - 1.0);
    return v;
  }
  double derivative(double s) const {
    double v = -alpha * w->log_derivative(s);
    if (drift) {
      const double h = 1e-5 * std::max(s, 1e-3);
      v += (drift(s + h) - drift(s - h)) / (2.0 * h) / (p - 1.0);
    }
    return v;
  }
};

inline double default_cutoff(const WarpingFunction& w) {
  if (w.kappa() && *w.kappa() > 0.0) return 50.0 / *w.kappa();
  return 1e4;
}

inline TailShape shape_for(const LogIntegrand& L) {
  if (L.w->closed_form() && !L.drift) return *L.w->kappa() > 0.0 ? TailShape::exponential : TailShape::power;
  return TailShape::automatic;
}

// Analytic tail beyond R, relative to e^{L(R)}.
inline double tail_beyond(const LogIntegrand& L, double R) {
  const double lam = -L.derivative(R);
  if (!(lam > 0.0)) fail(ErrorCode::NotSubcritical, "Green integrand does not decay at the cutoff");
  TailShape shape = shape_for(L);
  if (shape == TailShape::automatic) {
    // Power tails keep s*|L'| bounded; exponential tails make it grow linearly.
    const double k1 = R * lam, k0 = 0.5 * R * (-L.derivative(0.5 * R));
    shape = k1 > 1.5 * k0 ? TailShape::exponential : TailShape::power;
  }
  if (shape == TailShape::exponential) return 1.0 / lam;
  const double k = R * lam;
  if (!(k > 1.0 + 1e-12)) fail(ErrorCode::NotSubcritical, "power tail with exponent <= 1 is not integrable");
  return R / (k - 1.0);
}

// T(r) = int_r^inf e^{L(s) - L(r)} ds.
inline double normalized_tail(const LogIntegrand& L, double r, const TailOptions& opt) {
  const WarpingFunction& w = *L.w;
  if (!(r > 0.0)) fail(ErrorCode::OutOfDomain, "radius must be positive");
  double R = opt.cutoff > 0.0 ? opt.cutoff : default_cutoff(w);
  R = std::max(R, 2.0 * r);
  const double limit = std::min(w.max_radius(), w.positivity_radius());
  if (limit < kInf) {
    if (w.positivity_radius() < kInf) fail(ErrorCode::NotSubcritical, "warping function vanishes; no end at infinity");
    R = std::min(R, limit);
    if (!(r < R)) fail(ErrorCode::OutOfDomain, "radius beyond the tabulated warping range");
  }
  const double Lr = L(r);
  double sum = 0.0;
  double b = r;
  while (b < R) {
    const double lam = -L.derivative(b);
    double width = b;
    if (lam > 0.0) width = std::min(width, 2.0 / lam);
    const double e = std::min(b + width, R);
    sum += integrate([&](double s) { return std::exp(L(s) - Lr); }, b, e, opt.rel_tol);
    b = e;
    const double edge = std::exp(L(b) - Lr);
    if (b < R && edge < 1e-18 * sum && -L.derivative(b) > 0.0) {
      sum += edge * tail_beyond(L, b);
      return sum;
    }
  }
  return sum + std::exp(L(R) - Lr) * tail_beyond(L, R);
}

}  // namespace detail

inline double chi_limit(double alpha, double p, double kappa) {
  return std::pow((p - 1.0) / p, p) * std::pow(alpha * kappa, p);
}

// ((p-1)/p)^p [g^alpha int_r^inf g^{-alpha}]^{-p}
inline double chi_alpha(const WarpingFunction& w, double alpha, double p, double r, const TailOptions& opt = {}) {
  if (!(alpha > 0.0)) fail(ErrorCode::InvalidArgument, "alpha must be positive");
  const detail::LogIntegrand L{&w, alpha, {}, p};
  const double T = detail::normalized_tail(L, r, opt);
  return std::pow((p - 1.0) / p, p) * std::pow(T, -p);
}

// Sharp Hardy weight of the model (drift included).
inline double chi_general(const ModelManifold& mm, double r, const TailOptions& opt = {}) {
  const detail::LogIntegrand L{&mm.warping(), mm.alpha(), mm.drift(), mm.p()};
  const double T = detail::normalized_tail(L, r, opt);
  const double p = mm.p();
  return std::pow((p - 1.0) / p, p) * std::pow(T, -p);
}

inline double chi_hyperbolic_closed(int m, double p, double kappa, double r) {
  if (!(kappa > 0.0)) fail(ErrorCode::InvalidArgument, "kappa must be positive");
  if (!(r > 0.0)) fail(ErrorCode::OutOfDomain, "radius must be positive");
  const double alpha = (m - 1.0) / (p - 1.0);
  const double x = kappa * r;
  if (std::abs(alpha - 1.0) < 1e-12) {
    // sinh(x) ln((e^x+1)/(e^x-1)) -> 1 as x -> inf
    const double s = std::isinf(x) ? 1.0 : (x > 300.0 ? 1.0 + std::exp(-2.0 * x) / 3.0 : std::sinh(x) * std::log1p(2.0 / std::expm1(x)));
    return std::pow((m - 1.0) * kappa / m, m) * std::pow(s, -static_cast<double>(m));
  }
  if (std::abs(alpha - 2.0) < 1e-12) {
    const double e = std::isinf(x) ? 1.0 : -std::expm1(-2.0 * x);
    return std::pow(2.0 * (m - 1.0) * kappa / (m + 1.0), 0.5 * (m + 1.0)) * std::pow(e, -0.5 * (m + 1.0));
  }
  fail(ErrorCode::UnsupportedAlpha, "closed form only for alpha in {1, 2}");
}

// chi_alpha from chi_{alpha+2} on the hyperbolic space of curvature -kappa^2:
// alpha chi_alpha^{-1/p} = p coth(kappa r)/((p-1) kappa) - (alpha+1)/(kappa^2 g^2) chi_{alpha+2}^{-1/p}
inline double chi_recursion_step(double alpha, double p, double kappa, double r, double chi_next) {
  if (!(alpha > 0.0) || !(chi_next > 0.0) || !(kappa > 0.0)) fail(ErrorCode::InvalidArgument, "alpha, kappa, chi_next must be positive");
  const double x = kappa * r;
  const double coth = std::isinf(x) ? 1.0 : 1.0 / std::tanh(x);
  const double inv_g2 = std::isinf(x) || x > 350.0 ? 0.0 : std::pow(kappa / std::sinh(x), 2.0);
  const double q = p * coth / ((p - 1.0) * kappa) - (alpha + 1.0) * inv_g2 / (kappa * kappa) * std::pow(chi_next, -1.0 / p);
  if (!(q > 0.0)) fail(ErrorCode::NonPositiveQuotient, "recursion right-hand side is not positive");
  return std::pow(q / alpha, -p);
}

struct OriginAsymptotic {
  enum class Kind { power, logarithmic, bounded_kernel } kind;
  double constant;  // chi ~ constant * r^{-exponent} (times |ln r|^{-m} for logarithmic)
  double exponent;
};

class HardyWeight {
 public:
  explicit HardyWeight(ModelManifold mm, TailOptions opt = {}) : mm_(std::move(mm)), opt_(opt) {}
  double operator()(double r) const { return chi_general(mm_, r, opt_); }
  double alpha() const { return mm_.alpha(); }
  const ModelManifold& model() const { return mm_; }

  // Lower bound at infinity for the hyperbolic space form; 0 when no curvature bound is known.
  double limit_at_infinity() const {
    const auto k = mm_.warping().kappa();
    return (k && !mm_.has_drift()) ? chi_limit(alpha(), mm_.p(), *k) : 0.0;
  }

  OriginAsymptotic origin_asymptotic() const {
    const double m = mm_.m(), p = mm_.p();
    if (p < m) return {OriginAsymptotic::Kind::power, std::pow((m - p) / p, p), p};
    if (p == m) return {OriginAsymptotic::Kind::logarithmic, std::pow((m - 1.0) / m, m), m};
    return {OriginAsymptotic::Kind::bounded_kernel, 0.0, (m - 1.0) * p / (p - 1.0)};
  }

 private:
  ModelManifold mm_;
  TailOptions opt_;
};

// Space forms: flat R^m (kappa = 0, Euclidean coordinates) or H^m_kappa
// (hyperboloid coordinates in R^{m+1}, x_0 = cosh(kappa rho)/kappa at distance rho from the base point).
struct SpaceForm {
  double kappa = 0.0;
  bool hyperbolic() const { return kappa > 0.0; }
};

struct Pole {
  std::vector<double> point;
  double mass = 0.0;
};

inline std::vector<double> hyperboloid_point(double kappa, std::span<const double> direction, double rho) {
  double n = 0.0;
  for (double d : direction) n += d * d;
  n = std::sqrt(n);
  std::vector<double> x(direction.size() + 1);
  x[0] = std::cosh(kappa * rho) / kappa;
  for (std::size_t i = 0; i < direction.size(); ++i)
    x[i + 1] = n > 0.0 ? std::sinh(kappa * rho) / kappa * direction[i] / n : 0.0;
  return x;
}

inline double space_form_distance(const SpaceForm& sf, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(ErrorCode::InvalidArgument, "point dimensions differ");
  if (!sf.hyperbolic()) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(s);
  }
  const double k2 = sf.kappa * sf.kappa;
  double b = x[0] * y[0];
  for (std::size_t i = 1; i < x.size(); ++i) b -= x[i] * y[i];
  return std::acosh(std::max(1.0, k2 * b)) / sf.kappa;
}

inline double multipole_weight(const SpaceForm& sf, int m, double p, std::span<const Pole> poles,
                               std::span<const double> x, const TailOptions& opt = {}) {
  double total = 0.0;
  for (const auto& pole : poles) {
    if (pole.mass < 0.0) fail(ErrorCode::InvalidArgument, "pole masses must be nonnegative");
    total += pole.mass;
  }
  if (total > 1.0 + 1e-12) fail(ErrorCode::MassExceeded, "total pole mass exceeds 1");
  if (!sf.hyperbolic() && p >= m) fail(ErrorCode::UnsupportedExponent, "flat multipole weight needs p < m");
  const ModelManifold mm(m, p, WarpingFunction::space_form(sf.kappa));
  double v = 0.0;
  for (const auto& pole : poles) {
    if (pole.mass == 0.0) continue;
    const double d = space_form_distance(sf, x, pole.point);
    if (d == 0.0) return kInf;
    v += pole.mass * chi_general(mm, d, opt);
  }
  return v;
}

struct ZetaReport {
  std::vector<double> t;
  std::vector<double> zeta;
  double min_zeta = kInf;
  double argmin = 0.0;
  double ratio_origin = 0.0;    // zeta(t_min) / ((m+2)/(2 t_min))
  double ratio_infinity = 0.0;  // zeta(t_max) / ((m+1) kappa / 2); NaN for kappa = 0
};

// zeta(t) = m g'/g - sqrt(chi) with chi = 1/4 [g^{m-1} int_t^inf g^{1-m}]^{-2}.
inline double zeta_value(int m, double kappa, double t, const TailOptions& opt = {}) {
  const auto w = WarpingFunction::space_form(kappa);
  double chi;
  if (kappa == 0.0) {
    chi = 0.25 * (m - 2.0) * (m - 2.0) / (t * t);
  } else {
    chi = chi_alpha(w, m - 1.0, 2.0, t, opt);
  }
  return m * w.log_derivative(t) - std::sqrt(chi);
}

inline ZetaReport zeta_check(int m, double kappa, std::span<const double> grid, const TailOptions& opt = {}) {
  if (m < 2) fail(ErrorCode::InvalidArgument, "m must be >= 2");
  if (grid.empty()) fail(ErrorCode::InvalidArgument, "empty grid");
  ZetaReport rep;
  for (double t : grid) {
    if (!(t > 0.0)) fail(ErrorCode::OutOfDomain, "grid must lie in (0, inf)");
    const double z = zeta_value(m, kappa, t, opt);
    rep.t.push_back(t);
    rep.zeta.push_back(z);
    if (z < rep.min_zeta) {
      rep.min_zeta = z;
      rep.argmin = t;
    }
  }
  rep.ratio_origin = rep.zeta.front() / ((m + 2.0) / (2.0 * rep.t.front()));
  rep.ratio_infinity = kappa > 0.0 ? rep.zeta.back() / ((m + 1.0) * kappa / 2.0) : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

inline std::vector<double> log_grid(double a, double b, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = a * std::pow(b / a, n == 1 ? 0.0 : static_cast<double>(i) / (n - 1));
  return g;
}

}  // namespace radlab
