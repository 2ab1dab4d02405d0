#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <tuple>
#include <string>
#include <vector>

#include "radlab/error.hpp"
#include "radlab/quadrature.hpp"

namespace radlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Radial curvature datum G of g'' = G g.
class CurvatureProfile {
 public:
  enum class Kind { constant, tabulated, callback };

  static CurvatureProfile constant(double kappa) {
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) fail(ErrorCode::InvalidArgument, "kappa must be finite and >= 0");
    CurvatureProfile c;
    c.kind_ = Kind::constant;
    c.kappa_ = kappa;
    return c;
  }

  static CurvatureProfile tabulated(std::vector<double> r, std::vector<double> G) {
    if (r.size() != G.size() || r.size() < 2) fail(ErrorCode::InvalidArgument, "tabulated curvature needs >= 2 matching samples");
    for (std::size_t i = 1; i < r.size(); ++i)
      if (!(r[i] > r[i - 1])) fail(ErrorCode::InvalidArgument, "tabulated radii must increase");
    if (r.front() > 0.0) fail(ErrorCode::InvalidArgument, "tabulated curvature must start at r = 0");
    CurvatureProfile c;
    c.kind_ = Kind::tabulated;
    c.r_ = std::move(r);
    c.G_ = std::move(G);
    return c;
  }

  static CurvatureProfile callback(RadialFn G) {
    CurvatureProfile c;
    c.kind_ = Kind::callback;
    c.fn_ = std::move(G);
    return c;
  }

  Kind kind() const { return kind_; }
  double kappa() const { return kappa_; }
  double max_radius() const { return kind_ == Kind::tabulated ? r_.back() : kInf; }

  double operator()(double r) const {
    switch (kind_) {
      case Kind::constant: return kappa_ * kappa_;
      case Kind::callback: return fn_(r);
      case Kind::tabulated: {
        if (r < r_.front() || r > r_.back() * (1.0 + 1e-12))
          fail(ErrorCode::OutOfDomain, "curvature table does not cover r = " + std::to_string(r));
        auto it = std::upper_bound(r_.begin(), r_.end(), r);
        std::size_t i = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - r_.begin(), 1), r_.size() - 1);
        const double t = (r - r_[i - 1]) / (r_[i] - r_[i - 1]);
        return (1.0 - t) * G_[i - 1] + t * G_[i];
      }
    }
    return 0.0;
  }

 private:
  Kind kind_ = Kind::constant;
  double kappa_ = 0.0;
  std::vector<double> r_, G_;
  RadialFn fn_;
};

// Two-column CSV (r, G). Lines that do not parse as two numbers are skipped.
inline CurvatureProfile load_curvature_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::vector<double> r, G;
  std::string line;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double a, b;
    if (ss >> a >> b) {
      r.push_back(a);
      G.push_back(b);
    }
  }
  return CurvatureProfile::tabulated(std::move(r), std::move(G));
}

class WarpingFunction {
 public:
  // g_kappa: r for kappa = 0, sinh(kappa r)/kappa otherwise.
  static WarpingFunction space_form(double kappa) {
    if (!(kappa >= 0.0)) fail(ErrorCode::InvalidArgument, "kappa must be >= 0");
    WarpingFunction w;
    w.kappa_ = kappa;
    return w;
  }

  // Samples on a uniform grid starting at 0; evaluated by cubic Hermite interpolation.
  static WarpingFunction sampled(double step, std::vector<double> g, std::vector<double> dg, double positivity_radius) {
    WarpingFunction w;
    w.step_ = step;
    w.g_ = std::move(g);
    w.dg_ = std::move(dg);
    w.positivity_ = positivity_radius;
    return w;
  }

  bool closed_form() const { return kappa_.has_value(); }
  std::optional<double> kappa() const { return kappa_; }
  double positivity_radius() const { return kappa_ ? kInf : positivity_; }
  double max_radius() const { return kappa_ ? kInf : step_ * static_cast<double>(g_.size() - 1); }

  double value(double r) const {
    if (kappa_) {
      const double k = *kappa_;
      if (k == 0.0) return r;
      return std::sinh(k * r) / k;
    }
    return hermite(r).first;
  }

  double derivative(double r) const {
    if (kappa_) return *kappa_ == 0.0 ? 1.0 : std::cosh(*kappa_ * r);
    return hermite(r).second;
  }

  // log g, stable for large radii on the closed form.
  double log_value(double r) const {
    if (kappa_) {
      const double k = *kappa_;
      if (k == 0.0) return std::log(r);
      const double x = k * r;
      if (x > 20.0) return x - std::log(2.0 * k) + std::log1p(-std::exp(-2.0 * x));
      return std::log(std::sinh(x) / k);
    }
    return std::log(value(r));
  }

  // g'/g.
  double log_derivative(double r) const {
    if (kappa_) {
      const double k = *kappa_;
      if (k == 0.0) return 1.0 / r;
      return k / std::tanh(k * r);
    }
    const auto [v, d] = hermite(r);
    return d / v;
  }

 private:
  std::pair<double, double> hermite(double r) const {
    const double rmax = max_radius();
    if (r < 0.0 || r > rmax * (1.0 + 1e-12)) fail(ErrorCode::OutOfDomain, "warping evaluated outside [0, " + std::to_string(rmax) + "]");
    const std::size_t last = g_.size() - 1;
    std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(r / step_), last - 1);
    const double h = step_;
    const double t = (r - h * static_cast<double>(i)) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t, h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    const double v = h00 * g_[i] + h10 * h * dg_[i] + h01 * g_[i + 1] + h11 * h * dg_[i + 1];
    const double d00 = 6 * t2 - 6 * t, d10 = 3 * t2 - 4 * t + 1, d01 = -6 * t2 + 6 * t, d11 = 3 * t2 - 2 * t;
    const double d = (d00 * g_[i] + d01 * g_[i + 1]) / h + d10 * dg_[i] + d11 * dg_[i + 1];
    return {v, d};
  }

  std::optional<double> kappa_;
  double step_ = 0.0;
  std::vector<double> g_, dg_;
  double positivity_ = kInf;
};

struct JacobiOptions {
  bool require_positive = false;
  bool force_numeric = false;  // integrate even when the closed form is available
};

// g'' = G g, g(0) = 0, g'(0) = 1 by classical RK4.
inline WarpingFunction solve_jacobi(const CurvatureProfile& profile, double r_max, double step,
                                    JacobiOptions opt = {}) {
  if (!(step > 0.0) || !std::isfinite(step)) fail(ErrorCode::InvalidStep, "step must be positive");
  if (!(r_max > 0.0)) fail(ErrorCode::InvalidArgument, "r_max must be positive");
  if (profile.kind() == CurvatureProfile::Kind::constant && !opt.force_numeric)
    return WarpingFunction::space_form(profile.kappa());
  if (profile.max_radius() < r_max * (1.0 - 1e-12))
    fail(ErrorCode::OutOfDomain, "curvature profile does not cover [0, r_max]");

  const auto n = static_cast<std::size_t>(std::ceil(r_max / step - 1e-9));
  const double h = r_max / static_cast<double>(n);
  std::vector<double> g(n + 1), dg(n + 1);
  g[0] = 0.0;
  dg[0] = 1.0;

  auto rk4 = [&](double r, double y, double v, double dt) {
    const double G0 = profile(r), Gm = profile(r + 0.5 * dt), G1 = profile(std::min(r + dt, r_max));
    const double k1y = v, k1v = G0 * y;
    const double k2y = v + 0.5 * dt * k1v, k2v = Gm * (y + 0.5 * dt * k1y);
    const double k3y = v + 0.5 * dt * k2v, k3v = Gm * (y + 0.5 * dt * k2y);
    const double k4y = v + dt * k3v, k4v = G1 * (y + dt * k3y);
    return std::pair{y + dt / 6 * (k1y + 2 * k2y + 2 * k3y + k4y), v + dt / 6 * (k1v + 2 * k2v + 2 * k3v + k4v)};
  };

  double positivity = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = h * static_cast<double>(i);
    std::tie(g[i + 1], dg[i + 1]) = rk4(r, g[i], dg[i], h);
    if (positivity == kInf && i > 0 && g[i + 1] <= 0.0) {
      double lo = 0.0, hi = h;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (rk4(r, g[i], dg[i], mid).first > 0.0) lo = mid; else hi = mid;
      }
      positivity = r + 0.5 * (lo + hi);
    }
  }
  if (opt.require_positive && positivity < kInf)
    fail(ErrorCode::NonPositiveWarping, "g vanishes at r = " + std::to_string(positivity));
  return WarpingFunction::sampled(h, std::move(g), std::move(dg), positivity);
}

inline double sphere_area(int dim_minus_one) {
  const double m = dim_minus_one + 1.0;
  return 2.0 * std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m);
}

class ModelManifold {
 public:
  ModelManifold(int m, double p, WarpingFunction warping, RadialFn drift = {})
      : m_(m), p_(p), warping_(std::move(warping)), drift_(std::move(drift)) {
    if (m < 2) fail(ErrorCode::InvalidArgument, "dimension m must be >= 2");
    if (!(p > 1.0)) fail(ErrorCode::InvalidArgument, "exponent p must be > 1");
    sigma_ = sphere_area(m - 1);
  }

  static ModelManifold euclidean(int m, double p) { return {m, p, WarpingFunction::space_form(0.0)}; }
  static ModelManifold hyperbolic(int m, double p, double kappa) {
    if (!(kappa > 0.0)) fail(ErrorCode::InvalidArgument, "hyperbolic kappa must be > 0");
    return {m, p, WarpingFunction::space_form(kappa)};
  }

  int m() const { return m_; }
  double p() const { return p_; }
  const WarpingFunction& warping() const { return warping_; }
  bool has_drift() const { return static_cast<bool>(drift_); }
  double f(double r) const { return drift_ ? drift_(r) : 0.0; }
  const RadialFn& drift() const { return drift_; }
  double sphere_measure() const { return sigma_; }
  double alpha() const { return (m_ - 1.0) / (p_ - 1.0); }

  // omega(r) = sigma_{m-1} g^{m-1} e^{-f}
  double weight(double r) const {
    if (r <= 0.0) return 0.0;
    return sigma_ * std::exp((m_ - 1.0) * warping_.log_value(r) - f(r));
  }

  ModelManifold with_exponent(double p) const { return {m_, p, warping_, drift_}; }

 private:
  int m_;
  double p_;
  WarpingFunction warping_;
  RadialFn drift_;
  double sigma_ = 0.0;
};

// Laplacian of the distance function: (m-1) g'/g.
inline double radial_laplacian_coeff(const ModelManifold& mm, double r) {
  const double R = std::min(mm.warping().positivity_radius(), mm.warping().max_radius());
  if (!(r > 0.0) || !(r < R)) fail(ErrorCode::OutOfDomain, "r outside (0, R)");
  return (mm.m() - 1.0) * mm.warping().log_derivative(r);
}

}  // namespace radlab
