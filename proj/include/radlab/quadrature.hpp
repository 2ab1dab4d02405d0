#pragma once

#include <array>
#include <cmath>
#include <functional>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace radlab {

using RadialFn = std::function<double(double)>;

// 4-point Gauss-Legendre on [0,1].
struct Gauss4 {
  static constexpr int n = 4;
  static constexpr std::array<double, 4> x = {
      0.5 - 0.5 * 0.8611363115940526, 0.5 - 0.5 * 0.3399810435848563,
      0.5 + 0.5 * 0.3399810435848563, 0.5 + 0.5 * 0.8611363115940526};
  static constexpr std::array<double, 4> w = {
      0.5 * 0.3478548451374538, 0.5 * 0.6521451548625461,
      0.5 * 0.6521451548625461, 0.5 * 0.3478548451374538};
};

// Adaptive Gauss-Kronrod on a finite interval, relative tolerance.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-12, unsigned depth = 12) {
  if (b <= a) return 0.0;
  double err = 0.0;
  // Mapped to [0, 1]: the adaptive termination is not scale invariant on short intervals.
  const double w = b - a;
  auto g = [&](double x) { return f(a + w * x); };
  return w * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, depth, rel_tol, &err);
}

}  // namespace radlab
