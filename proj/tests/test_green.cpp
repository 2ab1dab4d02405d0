#include <gtest/gtest.h>

#include "radlab/green.hpp"

using namespace radlab;

TEST(Green, EuclideanKernelClosedForm) {
  // p = 2, m = 3: G = 1/r; p = 3, m = 4: G = int_r^inf s^{-3/2} = 2 r^{-1/2}
  const auto E3 = ModelManifold::euclidean(3, 2.0), E4 = ModelManifold::euclidean(4, 3.0);
  for (double r : {0.1, 1.0, 10.0}) {
    EXPECT_NEAR(green_kernel(E3, r), 1.0 / r, 1e-10 / r);
    EXPECT_NEAR(green_kernel(E4, r), 2.0 / std::sqrt(r), 1e-10 / std::sqrt(r));
    EXPECT_NEAR(green_kernel_derivative_abs(E3, r), 1.0 / (r * r), 1e-12 / (r * r));
  }
}

TEST(Green, GreenWeightEqualsSharpHardyWeight) {
  for (const auto& mm : {ModelManifold::euclidean(3, 2.0), ModelManifold::hyperbolic(3, 2.0, 1.0),
                         ModelManifold::hyperbolic(4, 3.0, 0.5)})
    for (double r : {0.05, 1.0, 6.0}) {
      const double chi = chi_general(mm, r);
      EXPECT_NEAR(green_hardy_weight(mm, r), chi, 1e-9 * chi);
    }
}

TEST(Green, IntegrabilityVerdicts) {
  EXPECT_EQ(is_subcritical_model(ModelManifold::euclidean(3, 2.0)).verdict, Integrability::integrable);
  EXPECT_EQ(is_subcritical_model(ModelManifold::euclidean(2, 2.0)).verdict, Integrability::divergent);
  EXPECT_EQ(is_subcritical_model(ModelManifold::euclidean(3, 3.0)).verdict, Integrability::divergent);
  EXPECT_EQ(is_subcritical_model(ModelManifold::hyperbolic(2, 2.0, 1.0)).verdict, Integrability::integrable);
  EXPECT_TRUE(GreenKernel(ModelManifold::euclidean(5, 2.0)).integrable());
}

TEST(Green, AsymptoticClass) {
  EXPECT_EQ(green_asymptotic_class(ModelManifold::euclidean(3, 2.0)), GreenAsymptoticClass::power);
  EXPECT_EQ(green_asymptotic_class(ModelManifold::euclidean(3, 3.0)), GreenAsymptoticClass::logarithmic);
  EXPECT_EQ(green_asymptotic_class(ModelManifold::euclidean(3, 4.0)), GreenAsymptoticClass::bounded);
}

TEST(Green, KernelDecreasing) {
  const auto H = ModelManifold::hyperbolic(3, 2.0, 1.0);
  double prev = kInf;
  for (double r : log_grid(0.01, 20.0, 60)) {
    const double G = green_kernel(H, r);
    EXPECT_LT(G, prev);
    prev = G;
  }
}
