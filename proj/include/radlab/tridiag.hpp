#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "radlab/error.hpp"

namespace radlab {

// Symmetric tridiagonal matrix: diag[i] = A(i,i), off[i] = A(i,i+1).
struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> off;

  SymTridiag() = default;
  explicit SymTridiag(std::size_t n) : diag(n, 0.0), off(n > 0 ? n - 1 : 0, 0.0) {}
  std::size_t size() const { return diag.size(); }

  std::vector<double> apply(const std::vector<double>& x) const {
    const std::size_t n = size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = diag[i] * x[i];
      if (i > 0) s += off[i - 1] * x[i - 1];
      if (i + 1 < n) s += off[i] * x[i + 1];
      y[i] = s;
    }
    return y;
  }

  // this - s * other
  SymTridiag shifted(double s, const SymTridiag& other) const {
    SymTridiag r = *this;
    for (std::size_t i = 0; i < size(); ++i) r.diag[i] -= s * other.diag[i];
    for (std::size_t i = 0; i < off.size(); ++i) r.off[i] -= s * other.off[i];
    return r;
  }
};

// LDL^T without pivoting. Holds pivots d and multipliers l.
struct TridiagLDL {
  std::vector<double> d;
  std::vector<double> l;
  bool positive_definite = true;

  explicit TridiagLDL(const SymTridiag& a) {
    const std::size_t n = a.size();
    d.resize(n);
    l.resize(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
      double di = a.diag[i];
      if (i > 0) di -= l[i - 1] * l[i - 1] * d[i - 1];
      if (!(di > 0.0)) positive_definite = false;
      if (di == 0.0) di = std::numeric_limits<double>::min() * 1e10;
      d[i] = di;
      if (i + 1 < n) l[i] = a.off[i] / di;
    }
  }

  std::vector<double> solve(std::vector<double> b) const {
    const std::size_t n = d.size();
    for (std::size_t i = 1; i < n; ++i) b[i] -= l[i - 1] * b[i - 1];
    for (std::size_t i = 0; i < n; ++i) b[i] /= d[i];
    for (std::size_t i = n; i-- > 1;) b[i - 1] -= l[i - 1] * b[i];
    return b;
  }
};

// Number of eigenvalues of the pencil (A, B) below lambda (B positive definite),
// from the inertia of A - lambda B (Sylvester).
inline std::size_t count_below(const SymTridiag& a, const SymTridiag& b, double lambda) {
  const std::size_t n = a.size();
  std::size_t neg = 0;
  double dprev = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double di = a.diag[i] - lambda * b.diag[i];
    if (i > 0) {
      const double e = a.off[i - 1] - lambda * b.off[i - 1];
      di -= e * e / dprev;
    }
    if (di == 0.0) di = -std::numeric_limits<double>::epsilon() * (std::abs(a.diag[i]) + std::abs(lambda * b.diag[i]) + 1e-300);
    if (di < 0.0) ++neg;
    dprev = di;
  }
  return neg;
}

inline double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

struct Eigenpair {
  double value = 0.0;
  std::vector<double> vector;  // B-normalized
  int iterations = 0;
  double residual = 0.0;       // ||(A - value B) x|| / ||A x||
};

// Smallest eigenpair of A x = lambda B x, A symmetric, B symmetric positive definite.
inline Eigenpair smallest_generalized_eigenpair(const SymTridiag& a, const SymTridiag& b) {
  const std::size_t n = a.size();
  if (n == 0) fail(ErrorCode::NoInteriorDof, "empty pencil");
  std::vector<double> ones(n, 1.0);
  double hi = dot(ones, a.apply(ones)) / dot(ones, b.apply(ones));
  double span = std::abs(hi) + 1.0;
  hi += 1e-12 * span;
  while (count_below(a, b, hi) == 0) {
    hi += span;
    span *= 2.0;
  }
  double lo = hi - span;
  while (count_below(a, b, lo) > 0) {
    span *= 2.0;
    lo = hi - span;
  }
  int it = 0;
  for (; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(a, b, mid) > 0) hi = mid; else lo = mid;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) break;
  }
  // Inverse iteration with a shift just below the eigenvalue keeps A - sigma B definite.
  double lambda = lo;
  const double shift = lo - std::max(std::abs(lo) * 1e-9, 1e-13);
  std::vector<double> x = ones;
  auto normalize = [&](std::vector<double>& v) {
    const double nb = std::sqrt(dot(v, b.apply(v)));
    for (double& t : v) t /= nb;
  };
  normalize(x);
  const TridiagLDL f(a.shifted(shift, b));
  for (int k = 0; k < 8; ++k) {
    x = f.solve(b.apply(x));
    normalize(x);
    lambda = dot(x, a.apply(x));  // Rayleigh quotient, x is B-normalized
    ++it;
  }
  // Fix sign so the dominant part is positive.
  double s = 0.0;
  for (double t : x) s += t;
  if (s < 0.0) for (double& t : x) t = -t;
  const auto ax = a.apply(x);
  const auto bx = b.apply(x);
  double rn = 0.0, an = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rn += (ax[i] - lambda * bx[i]) * (ax[i] - lambda * bx[i]);
    an += ax[i] * ax[i];
  }
  Eigenpair e;
  e.value = lambda;
  e.vector = std::move(x);
  e.iterations = it;
  e.residual = an > 0.0 ? std::sqrt(rn / an) : std::sqrt(rn);
  return e;
}

}  // namespace radlab
