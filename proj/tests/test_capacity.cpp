#include <gtest/gtest.h>

#include <numbers>

#include "radlab/capacity.hpp"

using namespace radlab;

namespace {
const RadialFn zero = [](double) { return 0.0; };

LadderSpec ladder_spec(int rungs) {
  LadderSpec s;
  s.inner = 1.0;
  s.first_outer = 2.0;
  s.factor = 2.0;
  s.rungs = rungs;
  s.base_elements = 60;
  s.spacing = LadderSpec::Spacing::geometric;
  s.elements_per_factor = 60;
  return s;
}
}  // namespace

TEST(Capacity, EuclideanCapacitorClosedForm) {
  // (1/p) int |u'|^2 omega for the capacitor of B_1 in B_R, R^3: 2 pi R/(R-1)
  const auto E3 = ModelManifold::euclidean(3, 2.0);
  for (double R : {2.0, 5.0}) {
    const auto c = capacitor_solve(RadialMesh::annulus(E3, 1.0, R, 800), zero, SupersolutionDatum{});
    EXPECT_NEAR(c.value, 2.0 * std::numbers::pi * R / (R - 1.0), 1e-4 * c.value);
    EXPECT_NEAR(c.flux_value, c.value, 1e-4 * c.value);
  }
}

TEST(Capacity, PlanarCapacitorLogarithmic) {
  const auto E2 = ModelManifold::euclidean(2, 2.0);
  const auto c = capacitor_solve(RadialMesh::annulus(E2, 1.0, 8.0, 800), zero, SupersolutionDatum{});
  EXPECT_NEAR(c.value, std::numbers::pi / std::log(8.0), 1e-4 * c.value);
}

TEST(Capacity, LadderNonIncreasing) {
  const auto gc = global_capacity(build_ladder(ModelManifold::euclidean(3, 2.0), ladder_spec(5)), zero, SupersolutionDatum{});
  EXPECT_TRUE(gc.non_increasing);
  EXPECT_TRUE(gc.capacitors_ordered);
  for (std::size_t k = 1; k < gc.values.size(); ++k) EXPECT_LE(gc.values[k], gc.values[k - 1]);
}

TEST(Capacity, PositivePotentialLowersCapacity) {
  // a positive potential lowers the quadratic form, hence the capacity
  const auto mesh = RadialMesh::annulus(ModelManifold::euclidean(3, 2.0), 1.0, 3.0, 400);
  const auto c0 = capacitor_solve(mesh, zero, SupersolutionDatum{});
  const auto c1 = capacitor_solve(mesh, [](double) { return 0.2; }, SupersolutionDatum{});
  EXPECT_LT(c1.value, c0.value);
}

TEST(Capacity, Classification) {
  const auto spec = ladder_spec(8);
  EXPECT_EQ(classify_criticality(build_ladder(ModelManifold::euclidean(3, 2.0), spec), zero, SupersolutionDatum{}).verdict,
            Criticality::subcritical);
  EXPECT_EQ(classify_criticality(build_ladder(ModelManifold::euclidean(2, 2.0), spec), zero, SupersolutionDatum{}).verdict,
            Criticality::critical);
  EXPECT_EQ(classify_criticality(build_ladder(ModelManifold::hyperbolic(2, 2.0, 1.0), spec), zero, SupersolutionDatum{}).verdict,
            Criticality::subcritical);
  const RadialFn big = [](double) { return 5.0; };
  EXPECT_EQ(classify_criticality(build_ladder(ModelManifold::euclidean(3, 2.0), spec), big, SupersolutionDatum{}).verdict,
            Criticality::negative);
}
