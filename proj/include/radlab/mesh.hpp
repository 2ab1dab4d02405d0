#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "radlab/error.hpp"
#include "radlab/geometry.hpp"
#include "radlab/hardy.hpp"
#include "radlab/quadrature.hpp"

namespace radlab {

using QuadField = std::vector<double>;  // values at the quadrature points of a mesh

// |x|^q and |x|^{q-1} x with the convention 0 -> 0.
inline double apow(double x, double q) { return x == 0.0 ? 0.0 : std::pow(std::abs(x), q); }
inline double spow(double x, double q) { return x == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(x), q), x); }

enum class DomainKind { ball, annulus };

// P1 elements on [r_0, r_N] with 4-point Gauss quadrature against omega(r) dr.
// A ball carries a natural condition at r = 0; an annulus has essential conditions at both ends.
class RadialMesh {
 public:
  RadialMesh(DomainKind kind, std::vector<double> nodes, RadialFn weight, double p,
             std::shared_ptr<const ModelManifold> model = nullptr)
      : kind_(kind), nodes_(std::move(nodes)), weight_(std::move(weight)), p_(p), model_(std::move(model)) {
    if (nodes_.size() < 2) fail(ErrorCode::InvalidArgument, "mesh needs at least one element");
    for (std::size_t i = 1; i < nodes_.size(); ++i)
      if (!(nodes_[i] > nodes_[i - 1])) fail(ErrorCode::InvalidArgument, "mesh nodes must increase strictly");
    if (kind_ == DomainKind::ball && nodes_.front() != 0.0) fail(ErrorCode::InvalidArgument, "ball mesh must start at r = 0");
    if (nodes_.front() < 0.0) fail(ErrorCode::InvalidArgument, "radii must be nonnegative");
    if (!(p_ > 1.0)) fail(ErrorCode::InvalidArgument, "exponent p must be > 1");
    const std::size_t ne = nodes_.size() - 1;
    qr_.resize(4 * ne);
    qw_.resize(4 * ne);
    qomega_.resize(4 * ne);
    measure_.resize(ne);
    for (std::size_t e = 0; e < ne; ++e) {
      const double a = nodes_[e], h = nodes_[e + 1] - a;
      double s = 0.0;
      for (int q = 0; q < 4; ++q) {
        const std::size_t k = 4 * e + q;
        qr_[k] = a + h * Gauss4::x[q];
        qw_[k] = h * Gauss4::w[q];
        qomega_[k] = weight_(qr_[k]);
        if (!(qomega_[k] > 0.0) || !std::isfinite(qomega_[k])) fail(ErrorCode::InvalidArgument, "weight must be positive inside the domain");
        s += qw_[k] * qomega_[k];
      }
      measure_[e] = s;
    }
  }

  static std::vector<double> uniform_nodes(double a, double b, int n) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "element count must be >= 1");
    std::vector<double> x(n + 1);
    for (int i = 0; i <= n; ++i) x[i] = a + (b - a) * static_cast<double>(i) / n;
    x.back() = b;
    return x;
  }

  // Uniform ball mesh; grading_levels extra nodes h 0.7^k refine the element at the pole.
  static RadialMesh ball(const ModelManifold& mm, double R, int n, int grading_levels = 0) {
    if (!(R > 0.0)) fail(ErrorCode::InvalidArgument, "ball radius must be positive");
    auto x = uniform_nodes(0.0, R, n);
    add_grading(x, grading_levels);
    auto model = std::make_shared<const ModelManifold>(mm);
    return {DomainKind::ball, std::move(x), [model](double r) { return model->weight(r); }, mm.p(), model};
  }

  static RadialMesh annulus(const ModelManifold& mm, double a, double b, int n) {
    if (!(a > 0.0) || !(b > a)) fail(ErrorCode::InvalidArgument, "annulus needs 0 < a < b");
    auto model = std::make_shared<const ModelManifold>(mm);
    return {DomainKind::annulus, uniform_nodes(a, b, n), [model](double r) { return model->weight(r); }, mm.p(), model};
  }

  // Interval [a, b] with omega = 1 and both ends essential.
  static RadialMesh line(double a, double b, int n, double p) {
    return {DomainKind::annulus, uniform_nodes(a, b, n), [](double) { return 1.0; }, p};
  }

  static void add_grading(std::vector<double>& x, int levels) {
    if (levels <= 0 || x.size() < 2) return;
    const double h = x[1];
    std::vector<double> extra;
    for (int k = levels; k >= 1; --k) extra.push_back(h * std::pow(0.7, k));
    x.insert(x.begin() + 1, extra.begin(), extra.end());
  }

  // Same weight and exponent on a new uniform grid of [lo, hi]; a ball if lo = 0 and this is a ball.
  RadialMesh submesh(double lo, double hi, int n) const {
    const DomainKind k = (kind_ == DomainKind::ball && lo <= 0.0) ? DomainKind::ball : DomainKind::annulus;
    if (k == DomainKind::annulus && !(lo > 0.0)) lo = std::max(lo, 1e-12);
    return {k, uniform_nodes(k == DomainKind::ball ? 0.0 : lo, hi, n), weight_, p_, model_};
  }

  // Nested refinement: every element split in two.
  RadialMesh refined() const {
    std::vector<double> x;
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
      x.push_back(nodes_[i]);
      x.push_back(0.5 * (nodes_[i] + nodes_[i + 1]));
    }
    x.push_back(nodes_.back());
    return {kind_, std::move(x), weight_, p_, model_};
  }

  RadialMesh with_exponent(double p) const {
    std::shared_ptr<const ModelManifold> m = model_ ? std::make_shared<const ModelManifold>(model_->with_exponent(p)) : nullptr;
    return {kind_, nodes_, weight_, p, m};
  }

  DomainKind kind() const { return kind_; }
  double p() const { return p_; }
  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_elements() const { return nodes_.size() - 1; }
  const std::vector<double>& nodes() const { return nodes_; }
  double node(std::size_t i) const { return nodes_[i]; }
  double inner() const { return nodes_.front(); }
  double outer() const { return nodes_.back(); }
  double h(std::size_t e) const { return nodes_[e + 1] - nodes_[e]; }
  const RadialFn& weight() const { return weight_; }
  const ModelManifold* model() const { return model_.get(); }
  std::shared_ptr<const ModelManifold> model_ptr() const { return model_; }

  bool essential(std::size_t i) const {
    return i + 1 == nodes_.size() || (kind_ == DomainKind::annulus && i == 0);
  }
  std::size_t first_free() const { return kind_ == DomainKind::annulus ? 1 : 0; }
  std::size_t last_free() const { return nodes_.size() - 2; }  // inclusive
  std::size_t num_free() const { return nodes_.size() >= 2 + first_free() ? last_free() - first_free() + 1 : 0; }

  std::size_t num_quad() const { return qr_.size(); }
  double qr(std::size_t e, int q) const { return qr_[4 * e + q]; }
  double qw(std::size_t e, int q) const { return qw_[4 * e + q]; }
  double qomega(std::size_t e, int q) const { return qomega_[4 * e + q]; }
  static double basis_left(int q) { return 1.0 - Gauss4::x[q]; }
  static double basis_right(int q) { return Gauss4::x[q]; }
  double element_measure(std::size_t e) const { return measure_[e]; }  // int_e omega

  QuadField sample_quad(const RadialFn& f) const {
    QuadField v(qr_.size());
    for (std::size_t k = 0; k < qr_.size(); ++k) v[k] = f(qr_[k]);
    return v;
  }

  // index of the element containing r (clamped)
  std::size_t locate(double r) const {
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
    std::ptrdiff_t i = (it - nodes_.begin()) - 1;
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(num_elements()) - 1));
  }

 private:
  DomainKind kind_;
  std::vector<double> nodes_;
  RadialFn weight_;
  double p_;
  std::shared_ptr<const ModelManifold> model_;
  std::vector<double> qr_, qw_, qomega_, measure_;
};

struct DiscreteFunction {
  std::vector<double> values;

  DiscreteFunction() = default;
  explicit DiscreteFunction(std::vector<double> v) : values(std::move(v)) {}
  DiscreteFunction(std::size_t n, double c) : values(n, c) {}

  static DiscreteFunction sample(const RadialMesh& mesh, const RadialFn& f) {
    DiscreteFunction d;
    d.values.reserve(mesh.num_nodes());
    for (double r : mesh.nodes()) d.values.push_back(f(r));
    return d;
  }

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }

  double slope(const RadialMesh& mesh, std::size_t e) const { return (values[e + 1] - values[e]) / mesh.h(e); }
  double at_quad(std::size_t e, int q) const {
    return RadialMesh::basis_left(q) * values[e] + RadialMesh::basis_right(q) * values[e + 1];
  }
  double at(const RadialMesh& mesh, double r) const {
    const std::size_t e = mesh.locate(r);
    const double t = std::clamp((r - mesh.node(e)) / mesh.h(e), 0.0, 1.0);
    return (1.0 - t) * values[e] + t * values[e + 1];
  }
  double max() const { return *std::max_element(values.begin(), values.end()); }
  double min() const { return *std::min_element(values.begin(), values.end()); }
  double sup_norm() const {
    double s = 0.0;
    for (double v : values) s = std::max(s, std::abs(v));
    return s;
  }
};

inline void write_csv(const std::string& path, const RadialMesh& mesh, const DiscreteFunction& f,
                      const std::string& header = "r,value") {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out << header << '\n';
  char buf[64];
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", mesh.node(i), f[i]);
    out << buf;
  }
}

// Two-column CSV (r, value) into nodal values of the mesh by linear interpolation.
inline DiscreteFunction read_csv(const std::string& path, const RadialMesh& mesh) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::vector<double> r, v;
  std::string line;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double a, b;
    if (ss >> a >> b) {
      r.push_back(a);
      v.push_back(b);
    }
  }
  if (r.size() < 2) fail(ErrorCode::IoError, path + ": need at least two samples");
  return DiscreteFunction::sample(mesh, [&](double x) {
    auto it = std::upper_bound(r.begin(), r.end(), x);
    std::size_t i = std::clamp<std::size_t>(static_cast<std::size_t>(it - r.begin()), 1, r.size() - 1);
    const double t = std::clamp((x - r[i - 1]) / (r[i] - r[i - 1]), 0.0, 1.0);
    return (1.0 - t) * v[i - 1] + t * v[i];
  });
}

// Radial potential V(r), possibly singular at declared radii.
class PotentialProfile {
 public:
  PotentialProfile() : name_("zero"), fn_([](double) { return 0.0; }) {}
  PotentialProfile(std::string name, RadialFn fn, std::vector<double> singular = {})
      : name_(std::move(name)), fn_(std::move(fn)), singular_(std::move(singular)) {}

  static PotentialProfile zero() { return {}; }
  static PotentialProfile constant(double c) { return {"constant", [c](double) { return c; }}; }

  // Piecewise linear through (r_i, v_i), constant beyond the ends.
  static PotentialProfile tabulated(std::vector<double> r, std::vector<double> v) {
    if (r.size() != v.size() || r.empty()) fail(ErrorCode::InvalidArgument, "tabulated potential needs matching samples");
    return {"tabulated", [r = std::move(r), v = std::move(v)](double x) {
              if (x <= r.front()) return v.front();
              if (x >= r.back()) return v.back();
              auto it = std::upper_bound(r.begin(), r.end(), x);
              const std::size_t i = static_cast<std::size_t>(it - r.begin());
              const double t = (x - r[i - 1]) / (r[i] - r[i - 1]);
              return (1.0 - t) * v[i - 1] + t * v[i];
            }};
  }

  // scale * chi(max(r, core)); core = 0 keeps the pole singularity.
  static PotentialProfile hardy(const ModelManifold& mm, double scale, double core = 0.0, TailOptions opt = {}) {
    auto model = std::make_shared<const ModelManifold>(mm);
    std::vector<double> sing;
    if (core <= 0.0) sing.push_back(0.0);
    return {"hardy", [model, scale, core, opt](double r) { return scale * chi_general(*model, std::max(r, core), opt); },
            std::move(sing)};
  }

  double operator()(double r) const { return fn_(r); }
  const std::string& name() const { return name_; }
  const std::vector<double>& singular_radii() const { return singular_; }
  const RadialFn& function() const { return fn_; }

  PotentialProfile plus(const PotentialProfile& o) const {
    auto s = singular_;
    s.insert(s.end(), o.singular_.begin(), o.singular_.end());
    return {name_ + "+" + o.name_, [a = fn_, b = o.fn_](double r) { return a(r) + b(r); }, std::move(s)};
  }
  PotentialProfile scaled(double c) const {
    return {name_, [a = fn_, c](double r) { return c * a(r); }, singular_};
  }

  // Largest |V| over the quadrature points of the mesh.
  double sup_on(const RadialMesh& mesh) const {
    double s = 0.0;
    for (double v : mesh.sample_quad(fn_)) s = std::max(s, std::abs(v));
    return s;
  }

 private:
  std::string name_;
  RadialFn fn_;
  std::vector<double> singular_;
};

namespace detail {
inline void check_sizes(const RadialMesh& mesh, const DiscreteFunction& f) {
  if (f.size() != mesh.num_nodes()) fail(ErrorCode::InvalidArgument, "function does not match mesh");
}
inline void check_potential(const RadialMesh& mesh, const QuadField& V) {
  if (V.size() != mesh.num_quad()) fail(ErrorCode::InvalidArgument, "potential does not match mesh quadrature");
}
}  // namespace detail

// (1/p)[int |phi'|^p omega - int V |phi|^p omega]
inline double qv_energy(const RadialMesh& mesh, const QuadField& V, const DiscreteFunction& phi) {
  detail::check_sizes(mesh, phi);
  detail::check_potential(mesh, V);
  const double p = mesh.p();
  double grad = 0.0, pot = 0.0;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    grad += apow(phi.slope(mesh, e), p) * mesh.element_measure(e);
    for (int q = 0; q < 4; ++q) {
      const double u = phi.at_quad(e, q);
      if (u == 0.0) continue;
      const double v = V[4 * e + q];
      if (!std::isfinite(v)) fail(ErrorCode::SingularPotential, "potential unbounded inside the support");
      pot += v * apow(u, p) * mesh.qomega(e, q) * mesh.qw(e, q);
    }
  }
  return (grad - pot) / p;
}

inline double qv_energy(const RadialMesh& mesh, const PotentialProfile& V, const DiscreteFunction& phi) {
  return qv_energy(mesh, mesh.sample_quad(V.function()), phi);
}

// int |w'|^{p-2} w' phi' omega - int V |w|^{p-2} w phi omega
inline double qv_residual(const RadialMesh& mesh, const QuadField& V, const DiscreteFunction& w, const DiscreteFunction& phi) {
  detail::check_sizes(mesh, w);
  detail::check_sizes(mesh, phi);
  detail::check_potential(mesh, V);
  const double p = mesh.p();
  double s = 0.0;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    s += spow(w.slope(mesh, e), p - 1.0) * phi.slope(mesh, e) * mesh.element_measure(e);
    for (int q = 0; q < 4; ++q) {
      const double f = phi.at_quad(e, q);
      if (f == 0.0) continue;
      const double v = V[4 * e + q];
      if (!std::isfinite(v)) fail(ErrorCode::SingularPotential, "potential unbounded inside the support");
      s -= v * spow(w.at_quad(e, q), p - 1.0) * f * mesh.qomega(e, q) * mesh.qw(e, q);
    }
  }
  return s;
}

inline double qv_residual(const RadialMesh& mesh, const PotentialProfile& V, const DiscreteFunction& w, const DiscreteFunction& phi) {
  return qv_residual(mesh, mesh.sample_quad(V.function()), w, phi);
}

// Residual of int |z'|^{p-2} z' psi' omega - int A |z|^{p-2} z psi omega + int B F(z) psi omega
// against every nodal basis function, scaled by the absolute nodal contributions of each term.
struct NodalResidual {
  std::vector<double> value;
  std::vector<double> scale;

  // max over the listed nodes of |R_i| / scale_i
  double scaled_max(std::size_t first, std::size_t last) const {
    double m = 0.0;
    for (std::size_t i = first; i <= last && i < value.size(); ++i) {
      const double s = scale[i];
      if (s > 0.0) m = std::max(m, std::abs(value[i]) / s);
    }
    return m;
  }
  // min over the listed nodes of R_i / scale_i
  double scaled_min(std::size_t first, std::size_t last) const {
    double m = kInf;
    for (std::size_t i = first; i <= last && i < value.size(); ++i) {
      const double s = scale[i];
      m = std::min(m, s > 0.0 ? value[i] / s : 0.0);
    }
    return m;
  }
};

inline NodalResidual nodal_residual(const RadialMesh& mesh, const QuadField& A, const QuadField* B,
                                    const std::function<double(double)>* F, const DiscreteFunction& z) {
  detail::check_sizes(mesh, z);
  detail::check_potential(mesh, A);
  const double p = mesh.p();
  const std::size_t n = mesh.num_nodes();
  NodalResidual r{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const double s = z.slope(mesh, e), mh = mesh.element_measure(e) / mesh.h(e);
    const double flux = spow(s, p - 1.0) * mh;
    r.value[e] -= flux;
    r.value[e + 1] += flux;
    // absolute nodal contributions, free of the cancellation in the slope
    const double fa = apow(s, p - 2.0) * (std::abs(z[e]) + std::abs(z[e + 1])) / mesh.h(e) * mh;
    r.scale[e] += fa;
    r.scale[e + 1] += fa;
    for (int q = 0; q < 4; ++q) {
      const std::size_t k = 4 * e + q;
      const double zq = z.at_quad(e, q);
      const double dm = mesh.qomega(e, q) * mesh.qw(e, q);
      double t = -A[k] * spow(zq, p - 1.0) * dm;
      double ta = std::abs(t);
      if (B && F && (*B)[k] != 0.0) {
        const double tb = (*B)[k] * (*F)(zq) * dm;
        t += tb;
        ta += std::abs(tb);
      }
      const double l = RadialMesh::basis_left(q), rr = RadialMesh::basis_right(q);
      r.value[e] += t * l;
      r.value[e + 1] += t * rr;
      r.scale[e] += ta * l;
      r.scale[e + 1] += ta * rr;
    }
  }
  return r;
}

inline NodalResidual nodal_residual(const RadialMesh& mesh, const QuadField& V, const DiscreteFunction& z) {
  return nodal_residual(mesh, V, nullptr, nullptr, z);
}

// Bregman remainder of |.|^p: |a|^p - |b|^p - p |b|^{p-2} b (a - b) >= 0, free of cancellation for a ~ b.
inline double bregman_p(double a, double b, double p) {
  if (b == 0.0) return apow(a, p);
  const double d = (a - b) / b;
  if (std::abs(d) < 0.5) return apow(b, p) * (std::expm1(p * std::log1p(d)) - p * d);
  return apow(a, p) - apow(b, p) - p * spow(b, p - 1.0) * (a - b);
}

// int L(phi, g) omega, L = |phi'|^p + (p-1)(phi/g)^p |g'|^p - p (phi/g)^{p-1} |g'|^{p-2} g' phi'
inline double lagrangian(const RadialMesh& mesh, const DiscreteFunction& phi, const DiscreteFunction& g) {
  detail::check_sizes(mesh, phi);
  detail::check_sizes(mesh, g);
  for (double v : g.values)
    if (!(v > 0.0)) fail(ErrorCode::NonPositiveG, "g must be positive at every node");
  const double p = mesh.p();
  double s = 0.0;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const double dphi = phi.slope(mesh, e), dg = g.slope(mesh, e);
    for (int q = 0; q < 4; ++q) {
      const double t = std::abs(phi.at_quad(e, q)) / g.at_quad(e, q);
      s += bregman_p(dphi, t * dg, p) * mesh.qomega(e, q) * mesh.qw(e, q);
    }
  }
  return s;
}

// Picone functional
// I(w,z) = int |w'|^{p-2} w' ((w^p - z^p)/w^{p-1})' - |z'|^{p-2} z' ((w^p - z^p)/z^{p-1})' omega,
// evaluated as int L(z, w) + L(w, z) omega.
inline double picone(const RadialMesh& mesh, const DiscreteFunction& w, const DiscreteFunction& z, double max_ratio = 1e12) {
  detail::check_sizes(mesh, w);
  detail::check_sizes(mesh, z);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] > 0.0) || !(z[i] > 0.0)) fail(ErrorCode::UnboundedRatio, "w and z must be positive at every node");
    const double r = w[i] / z[i];
    if (!(r < max_ratio) || !(1.0 / r < max_ratio)) fail(ErrorCode::UnboundedRatio, "ratio w/z out of bounds");
  }
  const double p = mesh.p();
  double s = 0.0;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const double dw = w.slope(mesh, e), dz = z.slope(mesh, e);
    for (int q = 0; q < 4; ++q) {
      const double wq = w.at_quad(e, q), zq = z.at_quad(e, q);
      s += (bregman_p(dz, zq / wq * dw, p) + bregman_p(dw, wq / zq * dz, p)) * mesh.qomega(e, q) * mesh.qw(e, q);
    }
  }
  return s;
}

// Nested exhaustion ladder of balls (inner = 0) or annuli (inner > 0).
struct LadderSpec {
  enum class Spacing { uniform, geometric };
  double inner = 0.0;
  double first_outer = 1.0;
  double factor = 1.5;
  int rungs = 5;
  int base_elements = 200;        // elements on [inner, first_outer]
  Spacing spacing = Spacing::uniform;
  int elements_per_factor = 40;   // geometric spacing beyond first_outer
  int grading_levels = 0;         // pole refinement for balls
};

inline std::vector<RadialMesh> build_ladder(const ModelManifold& mm, const LadderSpec& spec) {
  if (spec.rungs < 1) fail(ErrorCode::InvalidArgument, "ladder needs at least one rung");
  if (!(spec.factor > 1.0)) fail(ErrorCode::InvalidArgument, "ladder factor must be > 1");
  if (!(spec.first_outer > spec.inner) || spec.inner < 0.0) fail(ErrorCode::InvalidArgument, "ladder radii must satisfy 0 <= inner < first_outer");
  auto model = std::make_shared<const ModelManifold>(mm);
  const RadialFn weight = [model](double r) { return model->weight(r); };
  const DomainKind kind = spec.inner > 0.0 ? DomainKind::annulus : DomainKind::ball;
  std::vector<double> base = RadialMesh::uniform_nodes(spec.inner, spec.first_outer, spec.base_elements);
  if (kind == DomainKind::ball) RadialMesh::add_grading(base, spec.grading_levels);
  std::vector<RadialMesh> ladder;
  const double h = (spec.first_outer - spec.inner) / spec.base_elements;
  for (int j = 0; j < spec.rungs; ++j) {
    std::vector<double> x = base;
    if (spec.spacing == LadderSpec::Spacing::uniform) {
      const double target = spec.inner + (spec.first_outer - spec.inner) * std::pow(spec.factor, j);
      const long n = std::lround((target - spec.inner) / h);
      for (long i = spec.base_elements + 1; i <= n; ++i) x.push_back(spec.inner + h * static_cast<double>(i));
    } else {
      const int n = static_cast<int>(std::lround(j * spec.elements_per_factor));
      for (int i = 1; i <= n; ++i)
        x.push_back(spec.first_outer * std::pow(spec.factor, static_cast<double>(i) / spec.elements_per_factor));
    }
    ladder.emplace_back(kind, std::move(x), weight, mm.p(), model);
  }
  return ladder;
}

}  // namespace radlab
