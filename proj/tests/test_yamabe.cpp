#include <gtest/gtest.h>

#include "radlab/yamabe.hpp"

using namespace radlab;

namespace {
YamabeProblem constant_problem(int m, double s, double st) {
  YamabeProblem yp;
  yp.m = m;
  yp.s = [s](double) { return s; };
  yp.s_tilde = [st](double) { return st; };
  return yp;
}
}  // namespace

TEST(Yamabe, Constants) {
  const auto yp = constant_problem(4, 0.0, 0.0);
  EXPECT_DOUBLE_EQ(yp.c_m(), 6.0);
  EXPECT_DOUBLE_EQ(yp.sigma(), 3.0);
  EXPECT_DOUBLE_EQ(constant_problem(3, 0.0, 0.0).c_m(), 8.0);
  EXPECT_DOUBLE_EQ(constant_problem(3, 0.0, 0.0).sigma(), 5.0);
}

TEST(Yamabe, CoefficientRoundTrip) {
  const auto yp = constant_problem(5, -3.0, 7.0);
  const auto co = to_coefficients(yp);
  const double cm = yp.c_m();
  for (double r : {0.1, 1.0, 4.0}) {
    EXPECT_DOUBLE_EQ(co.profile.a(r), 3.0 / cm);
    EXPECT_DOUBLE_EQ(co.profile.b(r), -7.0 / cm);
    EXPECT_DOUBLE_EQ(-cm * co.profile.a(r), yp.s(r));
    EXPECT_DOUBLE_EQ(-cm * co.profile.b(r), yp.s_tilde(r));
  }
  EXPECT_NEAR(co.F(2.0), std::pow(2.0, yp.sigma()), 1e-12);
  EXPECT_THROW(to_coefficients(constant_problem(2, 0.0, 0.0)), Error);
}

TEST(Yamabe, ConformalLaplacianSubcriticality) {
  const auto H4 = ModelManifold::hyperbolic(4, 2.0, 1.0);
  const auto sub = conformal_laplacian_subcritical(constant_problem(4, -12.0, -12.0), H4);
  EXPECT_EQ(sub.verdict, ConformalVerdict::subcritical);
  EXPECT_NEAR(sub.max_ratio, 8.0 / 9.0, 1e-6);
  const auto pos = conformal_laplacian_subcritical(constant_problem(4, -15.0, -15.0), H4);
  EXPECT_NE(pos.verdict, ConformalVerdict::subcritical);
  const auto flat = conformal_laplacian_subcritical(constant_problem(3, 0.0, 0.0), ModelManifold::euclidean(3, 2.0));
  EXPECT_EQ(flat.verdict, ConformalVerdict::subcritical);
}

TEST(Yamabe, PrescribedEqualCurvatureBounds) {
  const auto H4 = ModelManifold::hyperbolic(4, 2.0, 1.0);
  LadderSpec ls;
  ls.first_outer = 2.0;
  ls.factor = 1.5;
  ls.rungs = 6;
  const auto rep = run_prescribed_curvature(constant_problem(4, -12.0, -12.0), build_ladder(H4, ls), 0.5, Window{0.0, 1.0});
  EXPECT_TRUE(rep.uniform_equivalence);
  EXPECT_TRUE(rep.ladder_stable);
  EXPECT_GE(rep.inf_u, 0.5 - 1e-9);
  EXPECT_LE(rep.sup_u, 1.0 + 1e-9);
  EXPECT_NEAR(rep.C1, 0.25, 1e-9);
  EXPECT_TRUE(rep.solve.monotone);
}
