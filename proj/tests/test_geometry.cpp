#include <gtest/gtest.h>

#include <numbers>

#include "radlab/geometry.hpp"

using namespace radlab;

TEST(Geometry, SphereAreas) {
  EXPECT_NEAR(sphere_area(1), 2.0 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(sphere_area(2), 4.0 * std::numbers::pi, 1e-13);
  EXPECT_NEAR(sphere_area(3), 2.0 * std::numbers::pi * std::numbers::pi, 1e-13);
}

TEST(Geometry, NumericJacobiMatchesSinh) {
  for (double k : {0.5, 1.0, 2.0}) {
    const auto w = solve_jacobi(CurvatureProfile::constant(k), 3.0, 1e-3, {.force_numeric = true});
    for (double r : {0.1, 1.0, 2.5, 3.0}) {
      EXPECT_NEAR(w.value(r), std::sinh(k * r) / k, 1e-8 * std::cosh(k * r)) << k << " " << r;
      EXPECT_NEAR(w.derivative(r), std::cosh(k * r), 1e-7 * std::cosh(k * r));
    }
  }
}

TEST(Geometry, TabulatedFlatCurvatureGivesIdentity) {
  const auto w = solve_jacobi(CurvatureProfile::tabulated({0.0, 5.0}, {0.0, 0.0}), 5.0, 1e-2);
  EXPECT_NEAR(w.value(3.3), 3.3, 1e-12);
  EXPECT_EQ(w.positivity_radius(), kInf);
}

TEST(Geometry, PositiveCurvatureVanishesAtPi) {
  const auto sphere = CurvatureProfile::callback([](double) { return -1.0; });
  const auto w = solve_jacobi(sphere, 4.0, 1e-3);
  EXPECT_NEAR(w.positivity_radius(), std::numbers::pi, 1e-6);
  EXPECT_THROW(solve_jacobi(sphere, 4.0, 1e-3, {.require_positive = true}), Error);
}

TEST(Geometry, InvalidInputsRaise) {
  EXPECT_THROW(CurvatureProfile::constant(-1.0), Error);
  EXPECT_THROW(solve_jacobi(CurvatureProfile::constant(1.0), 1.0, 0.0, {.force_numeric = true}), Error);
  EXPECT_THROW(ModelManifold::euclidean(1, 2.0), Error);
  EXPECT_THROW(ModelManifold::euclidean(3, 1.0), Error);
  const auto w = solve_jacobi(CurvatureProfile::tabulated({0.0, 1.0}, {1.0, 1.0}), 1.0, 0.1);
  EXPECT_THROW(w.value(2.0), Error);
}

TEST(Geometry, WeightIncludesDrift) {
  const ModelManifold plain(3, 2.0, WarpingFunction::space_form(1.0));
  const ModelManifold drifted(3, 2.0, WarpingFunction::space_form(1.0), [](double r) { return r * r; });
  for (double r : {0.3, 1.0, 4.0}) {
    EXPECT_NEAR(plain.weight(r), 4.0 * std::numbers::pi * std::pow(std::sinh(r), 2), 1e-12 * plain.weight(r));
    EXPECT_NEAR(drifted.weight(r), plain.weight(r) * std::exp(-r * r), 1e-12 * plain.weight(r));
  }
  EXPECT_EQ(plain.weight(0.0), 0.0);
}

TEST(Geometry, LogValueStableAtLargeRadius) {
  const auto w = WarpingFunction::space_form(1.0);
  EXPECT_NEAR(w.log_value(1000.0), 1000.0 - std::log(2.0), 1e-9);
  EXPECT_NEAR(w.log_value(2.0), std::log(std::sinh(2.0)), 1e-14);
}

TEST(Geometry, RadialLaplacianCoefficient) {
  const auto H = ModelManifold::hyperbolic(4, 2.0, 2.0);
  EXPECT_NEAR(radial_laplacian_coeff(H, 0.7), 3.0 * 2.0 / std::tanh(1.4), 1e-12);
  EXPECT_THROW(radial_laplacian_coeff(H, 0.0), Error);
}
