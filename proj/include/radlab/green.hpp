#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "radlab/hardy.hpp"

namespace radlab {

enum class Integrability { integrable, divergent, inconclusive };

inline std::string_view to_string(Integrability v) {
  switch (v) {
    case Integrability::integrable: return "integrable";
    case Integrability::divergent: return "divergent";
    case Integrability::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

struct IntegrabilityReport {
  Integrability verdict = Integrability::inconclusive;
  std::vector<double> radii;        // R_k, doubling
  std::vector<double> log_chunks;   // log int_{R_k}^{2 R_k} of the Green integrand
  std::vector<double> ratios;       // chunk_{k+1} / chunk_k
};

struct GreenOptions {
  TailOptions tail;
  int doublings = 8;
  double decay_ratio = 0.9;    // all trailing ratios below: integrable
  double stall_ratio = 0.98;   // all trailing ratios above: divergent
  int trailing = 3;
};

inline detail::LogIntegrand green_integrand(const ModelManifold& mm) {
  return {&mm.warping(), mm.alpha(), mm.drift(), mm.p()};
}

// Tail integrability of (e^f / g^{m-1})^{1/(p-1)} judged on doubling intervals [R_k, 2 R_k].
inline IntegrabilityReport is_subcritical_model(const ModelManifold& mm, const GreenOptions& opt = {}) {
  const auto L = green_integrand(mm);
  const auto& w = mm.warping();
  const double limit = std::min(w.max_radius(), w.positivity_radius());
  if (w.positivity_radius() < kInf) fail(ErrorCode::NotSubcritical, "warping function vanishes; no end at infinity");
  double R0 = opt.tail.cutoff > 0.0 ? opt.tail.cutoff : detail::default_cutoff(w);
  // Start low enough that exponential tails stay representable and the table covers all doublings.
  if (w.kappa() && *w.kappa() > 0.0) R0 = std::min(R0, 1.0 / *w.kappa());
  R0 = std::min(R0, limit / std::pow(2.0, opt.doublings + 1));
  if (!(R0 > 0.0)) fail(ErrorCode::InvalidArgument, "no room for doubling intervals");
  IntegrabilityReport rep;
  double R = R0;
  for (int k = 0; k <= opt.doublings; ++k, R *= 2.0) {
    const double LR = L(R);
    const double I = integrate([&](double s) { return std::exp(L(s) - LR); }, R, 2.0 * R, 1e-10);
    rep.radii.push_back(R);
    rep.log_chunks.push_back(LR + std::log(I));
  }
  for (std::size_t k = 1; k < rep.log_chunks.size(); ++k)
    rep.ratios.push_back(std::exp(rep.log_chunks[k] - rep.log_chunks[k - 1]));
  const int n = static_cast<int>(rep.ratios.size());
  bool decays = true, stalls = true;
  for (int k = std::max(0, n - opt.trailing); k < n; ++k) {
    decays = decays && rep.ratios[k] <= opt.decay_ratio;
    stalls = stalls && rep.ratios[k] >= opt.stall_ratio;
  }
  rep.verdict = decays ? Integrability::integrable : (stalls ? Integrability::divergent : Integrability::inconclusive);
  return rep;
}

// G(r) = int_r^inf (e^f / g^{m-1})^{1/(p-1)} ds
inline double green_kernel(const ModelManifold& mm, double r, const TailOptions& opt = {}) {
  const auto L = green_integrand(mm);
  return std::exp(L(r)) * detail::normalized_tail(L, r, opt);
}

// |G'| = (e^f / g^{m-1})^{1/(p-1)}
inline double green_kernel_derivative_abs(const ModelManifold& mm, double r) {
  return std::exp(green_integrand(mm)(r));
}

// ((p-1)/p)^p |G'|^p / G^p
inline double green_hardy_weight(const ModelManifold& mm, double r, const TailOptions& opt = {}) {
  const double p = mm.p();
  const double G = green_kernel(mm, r, opt);
  const double dG = green_kernel_derivative_abs(mm, r);
  return std::pow((p - 1.0) / p, p) * std::pow(dG / G, p);
}

enum class GreenAsymptoticClass { bounded, logarithmic, power };

inline GreenAsymptoticClass green_asymptotic_class(const ModelManifold& mm) {
  if (mm.p() > mm.m()) return GreenAsymptoticClass::bounded;
  if (mm.p() == mm.m()) return GreenAsymptoticClass::logarithmic;
  return GreenAsymptoticClass::power;
}

class GreenKernel {
 public:
  explicit GreenKernel(ModelManifold mm, GreenOptions opt = {})
      : mm_(std::move(mm)), opt_(opt), report_(is_subcritical_model(mm_, opt_)) {}
  double operator()(double r) const { return green_kernel(mm_, r, opt_.tail); }
  bool integrable() const { return report_.verdict == Integrability::integrable; }
  const IntegrabilityReport& report() const { return report_; }
  GreenAsymptoticClass asymptotic_class() const { return green_asymptotic_class(mm_); }

 private:
  ModelManifold mm_;
  GreenOptions opt_;
  IntegrabilityReport report_;
};

}  // namespace radlab
