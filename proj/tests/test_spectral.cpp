#include <gtest/gtest.h>

#include <numbers>

#include "radlab/spectral.hpp"

using namespace radlab;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(Spectral, EuclideanBallTones) {
  // R^3 ball: (pi/R)^2; R^2 ball: (j_{0,1}/R)^2
  const auto b3 = fundamental_tone(RadialMesh::ball(ModelManifold::euclidean(3, 2.0), 2.0, 1000), PotentialProfile::zero());
  EXPECT_NEAR(b3.lambda, pi * pi / 4.0, 1e-5);
  const double j01 = 2.404825557695773;
  const auto b2 = fundamental_tone(RadialMesh::ball(ModelManifold::euclidean(2, 2.0), 1.0, 1000, 4), PotentialProfile::zero());
  EXPECT_NEAR(b2.lambda, j01 * j01, 1e-4);
}

TEST(Spectral, HyperbolicBallTone) {
  const auto H = ModelManifold::hyperbolic(3, 2.0, 1.0);
  const auto t = fundamental_tone(RadialMesh::ball(H, 3.0, 1500), PotentialProfile::zero());
  EXPECT_NEAR(t.lambda, 1.0 + pi * pi / 9.0, 1e-5);
}

TEST(Spectral, ConstantShift) {
  const auto mesh = RadialMesh::annulus(ModelManifold::hyperbolic(4, 2.0, 1.0), 0.5, 2.0, 400);
  const auto t0 = fundamental_tone(mesh, PotentialProfile::zero());
  const auto t1 = fundamental_tone(mesh, PotentialProfile::constant(0.75));
  EXPECT_NEAR(t1.lambda, t0.lambda - 0.75, 1e-10);
}

TEST(Spectral, DomainMonotonicity) {
  const auto mm = ModelManifold::euclidean(3, 2.0);
  const auto V = PotentialProfile::hardy(mm, 0.5, 0.05);
  double prev = kInf;
  for (double R : {1.0, 1.5, 2.5, 4.0}) {
    const double lam = fundamental_tone(RadialMesh::ball(mm, R, 600, 3), V).lambda;
    EXPECT_LT(lam, prev);
    prev = lam;
  }
}

TEST(Spectral, NonlinearToneOnEuclideanBall) {
  // p = 3 tone scales like R^{-p}
  const auto mm = ModelManifold::euclidean(3, 3.0);
  const double l1 = fundamental_tone(RadialMesh::ball(mm, 1.0, 300), PotentialProfile::zero()).lambda;
  const double l2 = fundamental_tone(RadialMesh::ball(mm, 2.0, 300), PotentialProfile::zero()).lambda;
  EXPECT_GT(l1, 0.0);
  EXPECT_NEAR(l1 / l2, 8.0, 8.0 * 1e-4);
}

TEST(Spectral, EigenfunctionPositive) {
  const auto mesh = RadialMesh::ball(ModelManifold::hyperbolic(3, 2.0, 1.0), 2.0, 200);
  const auto t = fundamental_tone(mesh, PotentialProfile::constant(-0.3));
  for (std::size_t i = 0; i + 1 < t.eigenfunction.size(); ++i) EXPECT_GT(t.eigenfunction[i], 0.0);
  EXPECT_LT(t.residual, 1e-8);
}
