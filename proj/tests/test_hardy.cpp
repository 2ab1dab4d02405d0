#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <random>

#include "radlab/hardy.hpp"

using namespace radlab;

namespace {
// ((p-1)/p)^p [g^alpha int_r^inf g^{-alpha}]^{-p} by an independent double-exponential rule.
double chi_oracle(double kappa, double alpha, double p, double r) {
  auto g = [kappa](double s) { return std::sinh(kappa * s) / kappa; };
  boost::math::quadrature::exp_sinh<double> q;
  const double I = q.integrate([&](double t) { return std::pow(g(r) / g(r + t), alpha); });
  return std::pow((p - 1.0) / p, p) * std::pow(I, -p);
}
}  // namespace

TEST(Hardy, EuclideanPowerLaw) {
  for (int m : {3, 4, 6})
    for (double p : {1.5, 2.0, 2.5}) {
      const auto mm = ModelManifold::euclidean(m, p);
      for (double r : {0.01, 1.0, 30.0})
        EXPECT_NEAR(chi_general(mm, r) * std::pow(r, p), std::pow((m - p) / p, p), 1e-9) << m << " " << p;
    }
}

TEST(Hardy, ClosedFormsMatchQuadrature) {
  for (auto [m, p] : {std::pair{2, 2.0}, {3, 2.0}, {3, 3.0}, {5, 3.0}}) {
    for (double k : {0.5, 1.0}) {
      const double alpha = (m - 1.0) / (p - 1.0);
      for (double r : {0.05, 0.5, 2.0, 8.0}) {
        const double c = chi_hyperbolic_closed(m, p, k, r);
        EXPECT_NEAR(c, chi_oracle(k, alpha, p, r), 1e-8 * c) << m << " " << p << " " << r;
        EXPECT_NEAR(chi_general(ModelManifold::hyperbolic(m, p, k), r), c, 1e-8 * c);
      }
    }
  }
}

TEST(Hardy, GeneralAlphaMatchesQuadrature) {
  const auto H = ModelManifold::hyperbolic(4, 3.0, 1.0);
  for (double r : {0.1, 1.0, 5.0})
    EXPECT_NEAR(chi_general(H, r), chi_oracle(1.0, H.alpha(), 3.0, r), 1e-8 * chi_general(H, r));
  EXPECT_THROW(chi_hyperbolic_closed(4, 3.0, 1.0, 1.0), Error);
}

TEST(Hardy, LimitAtInfinity) {
  for (auto [m, p] : {std::pair{2, 2.0}, {3, 2.0}, {4, 3.0}}) {
    const auto H = ModelManifold::hyperbolic(m, p, 0.7);
    const double lim = HardyWeight(H).limit_at_infinity();
    EXPECT_NEAR(lim, std::pow((m - 1.0) * 0.7 / p, p), 1e-12);
    EXPECT_NEAR(chi_general(H, 60.0 / 0.7), lim, 1e-6 * lim);
  }
}

TEST(Hardy, RecursionReproducesLowerAlpha) {
  // p = 2: alpha = 1 is m = 2, alpha = 3 is m = 4
  for (double r : {0.2, 1.0, 3.0}) {
    const double chi3 = chi_oracle(1.0, 3.0, 2.0, r);
    EXPECT_NEAR(chi_recursion_step(1.0, 2.0, 1.0, r, chi3), chi_hyperbolic_closed(2, 2.0, 1.0, r),
                1e-7 * chi_hyperbolic_closed(2, 2.0, 1.0, r));
    // alpha = 2 from alpha = 4: m = 3 from m = 5
    const double chi4 = chi_oracle(1.0, 4.0, 2.0, r);
    EXPECT_NEAR(chi_recursion_step(2.0, 2.0, 1.0, r, chi4), chi_hyperbolic_closed(3, 2.0, 1.0, r),
                1e-7 * chi_hyperbolic_closed(3, 2.0, 1.0, r));
  }
}

TEST(Hardy, OriginAsymptoticClasses) {
  EXPECT_EQ(HardyWeight(ModelManifold::euclidean(3, 2.0)).origin_asymptotic().kind, OriginAsymptotic::Kind::power);
  EXPECT_EQ(HardyWeight(ModelManifold::euclidean(3, 3.0)).origin_asymptotic().kind, OriginAsymptotic::Kind::logarithmic);
  EXPECT_EQ(HardyWeight(ModelManifold::euclidean(3, 4.0)).origin_asymptotic().kind, OriginAsymptotic::Kind::bounded_kernel);
  const auto H = ModelManifold::hyperbolic(5, 2.0, 1.0);
  const auto oa = HardyWeight(H).origin_asymptotic();
  EXPECT_NEAR(chi_general(H, 1e-4) * std::pow(1e-4, oa.exponent), oa.constant, 1e-4 * oa.constant);
}

TEST(Hardy, MultipoleWeightIsPositiveAndSymmetric) {
  const SpaceForm sf{1.0};
  const std::vector<double> d1{1.0, 0.0, 0.0}, d2{-1.0, 0.0, 0.0};
  const std::vector<Pole> poles{{hyperboloid_point(1.0, d1, 1.0), 0.5}, {hyperboloid_point(1.0, d2, 1.0), 0.5}};
  std::mt19937_64 rng(3);
  std::normal_distribution<double> N;
  for (int k = 0; k < 20; ++k) {
    std::vector<double> dir{N(rng), N(rng), N(rng)};
    const double rho = 0.1 + 3.0 * std::abs(N(rng));
    const auto x = hyperboloid_point(1.0, dir, rho);
    std::vector<double> mir{-dir[0], dir[1], dir[2]};
    const auto y = hyperboloid_point(1.0, mir, rho);
    const double wx = multipole_weight(sf, 3, 2.0, poles, x), wy = multipole_weight(sf, 3, 2.0, poles, y);
    EXPECT_GT(wx, 0.0);
    EXPECT_NEAR(wx, wy, 1e-10 * wx);
  }
}

TEST(Hardy, ZetaPositiveInDimensionThree) {
  const auto grid = log_grid(1e-3, 40.0, 100);
  const auto rep = zeta_check(3, 1.0, grid);
  EXPECT_GT(rep.min_zeta, 0.0);
  EXPECT_NEAR(rep.ratio_infinity, 1.0, 1e-3);
}
