#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "radlab/solver.hpp"

using namespace radlab;

TEST(Solver, PowerNonlinearity) {
  const auto F = Nonlinearity::power(3.0);
  EXPECT_DOUBLE_EQ(F(2.0), 8.0);
  EXPECT_EQ(F(-1.0), 0.0);
  EXPECT_NEAR(F.integral(2.0), 4.0, 1e-14);
  EXPECT_NEAR(F.derivative(2.0), 12.0, 1e-12);
  EXPECT_TRUE(check_contract(F, 2.0).ok());
  EXPECT_FALSE(check_contract(Nonlinearity::power(0.8), 2.0).ok());
}

TEST(Solver, HarmonicAnnulusProfile) {
  // Delta u = 0 on [1,2] in R^3 with u(1)=1, u(2)=0: u = 2/r - 1
  const auto mesh = RadialMesh::annulus(ModelManifold::euclidean(3, 2.0), 1.0, 2.0, 400);
  const QuadField Z(mesh.num_quad(), 0.0);
  const auto res = dirichlet_solve(mesh, Z, Z, Nonlinearity::power(2.0), BoundaryData{1.0, 0.0});
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i) EXPECT_NEAR(res.z[i], 2.0 / mesh.node(i) - 1.0, 1e-5);
}

TEST(Solver, PLaplaceRadialProfile) {
  // p-harmonic radial on [1,2] in R^m: u = (r^{1-alpha} - 2^{1-alpha})/(1 - 2^{1-alpha})
  const double p = 3.0;
  const int m = 4;
  const double alpha = (m - 1.0) / (p - 1.0);
  const auto mesh = RadialMesh::annulus(ModelManifold::euclidean(m, p), 1.0, 2.0, 400);
  const QuadField Z(mesh.num_quad(), 0.0);
  const auto res = dirichlet_solve(mesh, Z, Z, Nonlinearity::power(3.0), BoundaryData{1.0, 0.0});
  const double c = std::pow(2.0, 1.0 - alpha);
  for (std::size_t i = 0; i < mesh.num_nodes(); i += 20)
    EXPECT_NEAR(res.z[i], (std::pow(mesh.node(i), 1.0 - alpha) - c) / (1.0 - c), 1e-4);
}

TEST(Solver, HyperbolicExactSolution) {
  // Delta u + m(m-2)/4 u - u^{(m+2)/(m-2)} = 0 on H^4: A = 2, B = 1, F = t^3
  const int m = 4;
  const auto H = ModelManifold::hyperbolic(m, 2.0, 1.0);
  const double tau = 1.0, R = 8.0;
  const auto mesh = RadialMesh::ball(H, R, 800);
  const auto A = mesh.sample_quad([](double) { return 2.0; }), B = mesh.sample_quad([](double) { return 1.0; });
  const auto exact = DiscreteFunction::sample(mesh, [&](double r) { return hyperbolic_exact_solution(m, tau, r); });
  EXPECT_LT(equation_residual(mesh, A, B, Nonlinearity::power(3.0), exact), 1e-4);
  const auto res = dirichlet_solve(mesh, A, B, Nonlinearity::power(3.0),
                                   BoundaryData::uniform(hyperbolic_exact_solution(m, tau, R)), {.check_coercivity = false});
  for (std::size_t i = 0; i < mesh.num_nodes(); i += 40) EXPECT_NEAR(res.z[i], exact[i], 1e-4);
}

TEST(Solver, ComparisonInBoundaryData) {
  const auto mesh = RadialMesh::ball(ModelManifold::euclidean(3, 2.5), 1.5, 200);
  const auto A = mesh.sample_quad([](double) { return 0.3; }), B = mesh.sample_quad([](double) { return 1.0; });
  const auto F = Nonlinearity::power(3.0);
  const auto lo = dirichlet_solve(mesh, A, B, F, BoundaryData::uniform(0.5)).z;
  const auto hi = dirichlet_solve(mesh, A, B, F, BoundaryData::uniform(0.8)).z;
  for (std::size_t i = 0; i < lo.size(); ++i) EXPECT_LE(lo[i], hi[i] + 1e-12);
}

TEST(Solver, NotCoerciveRaises) {
  const auto mesh = RadialMesh::ball(ModelManifold::euclidean(3, 2.0), 1.0, 100);
  const auto A = mesh.sample_quad([](double) { return 50.0; }), B = mesh.sample_quad([](double) { return 0.0; });
  try {
    dirichlet_solve(mesh, A, B, Nonlinearity::power(2.0), BoundaryData::uniform(1.0));
    FAIL() << "expected NotCoercive";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCoercive);
  }
}

TEST(Solver, MonotoneIterationBracketed) {
  const auto E3 = ModelManifold::euclidean(3, 2.0);
  auto chi = PotentialProfile::hardy(E3, 1.0, 0.05);
  const RadialFn a = [chi](double x) { return 0.4 * chi(x); };
  const RadialFn W = [chi](double x) { return 0.3 * chi(x); };
  const RadialFn bplus = [](double x) { return x > 1.2 ? 0.3 : 0.0; };
  LadderSpec ls;
  ls.first_outer = 2.0;
  ls.rungs = 3;
  ls.base_elements = 150;
  const auto ladder = build_ladder(E3, ls);
  const auto F = Nonlinearity::power(3.0);
  const Window L{0.0, 1.0};
  const auto est = compute_delta(ladder, a, bplus, F, 0.5, L, W);
  EXPECT_GT(est.delta, 0.0);
  MonotoneOptions mo;
  mo.delta = est.delta;
  mo.upper_bound = est.C;
  const RadialFn b = [&](double x) { return bplus(x) - (std::abs(x - 0.5) < 0.1 ? 0.5 * est.delta : 0.0); };
  const auto rep = monotone_iteration(ladder.back(), a, b, F, 0.5, L, W, mo);
  EXPECT_TRUE(rep.monotone);
  EXPECT_TRUE(rep.bracketed);
  EXPECT_LT(rep.residual, 1e-6);
  EXPECT_GE(detail::min_nodal_on_window(ladder.back(), rep.solution, L), rep.lower_bound - 1e-9);
  EXPECT_LE(rep.solution.max(), rep.upper_bound + 1e-9);

  const auto plain = monotone_iteration(ladder.back(), a, bplus, F, 0.5, L, W, mo);
  EXPECT_EQ(plain.iterations, 1);

  const RadialFn bad = [&](double x) { return bplus(x) - (std::abs(x - 0.5) < 0.1 ? 10.0 * est.delta : 0.0); };
  try {
    monotone_iteration(ladder.back(), a, bad, F, 0.5, L, W, mo);
    FAIL() << "expected DeltaViolated";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DeltaViolated);
  }
}

TEST(Solver, ObstacleComplementarity) {
  const auto mesh = RadialMesh::annulus(ModelManifold::euclidean(3, 2.0), 1.0, 3.0, 300);
  const QuadField V(mesh.num_quad(), 0.05);
  const auto psi = DiscreteFunction::sample(mesh, [](double x) {
    const double t = (x - 2.0) / 0.4;
    return std::abs(t) < 1.0 ? 0.8 * std::pow(std::cos(0.5 * std::numbers::pi * t), 2) : 0.0;
  });
  const auto res = obstacle_solve(mesh, V, psi, BoundaryData{0.2, 0.1});
  EXPECT_LT(res.complementarity, 1e-8);
  EXPECT_FALSE(res.contact.empty());
  for (std::size_t i = 0; i < psi.size(); ++i) EXPECT_GE(res.u[i], psi[i] - 1e-12);
}

TEST(Solver, PastingOfTruncatedKernel) {
  const auto mesh = RadialMesh::annulus(ModelManifold::euclidean(3, 2.0), 0.25, 4.0, 400);
  const QuadField zero(mesh.num_quad(), 0.0);
  const auto G = dirichlet_solve(mesh, zero, zero, Nonlinearity::power(2.0), BoundaryData{4.0, 0.25}).z;
  const auto rep = pasting_min_check(mesh, zero, G, DiscreteFunction(mesh.num_nodes(), 1.0));
  EXPECT_TRUE(rep.preconditions);
  EXPECT_TRUE(rep.passed);
}

TEST(Solver, APConsistency) {
  const auto mesh = RadialMesh::ball(ModelManifold::euclidean(3, 2.0), 1.0, 200);
  const auto ok = ap_consistency_check(mesh, PotentialProfile::constant(1.0));
  EXPECT_TRUE(ok.tone_nonnegative);
  EXPECT_TRUE(ok.consistent);
  const auto bad = ap_consistency_check(mesh, PotentialProfile::constant(20.0));
  EXPECT_FALSE(bad.tone_nonnegative);
  EXPECT_TRUE(bad.consistent);
}

TEST(Solver, NecessaryConditionHolds) {
  const auto mesh = RadialMesh::ball(ModelManifold::euclidean(3, 2.0), 2.0, 200);
  const RadialFn a = [](double) { return 0.5; };
  const RadialFn b = [](double x) { return x < 1.0 ? 0.0 : 1.0; };
  const auto F = Nonlinearity::power(3.0);
  const auto u = dirichlet_solve(mesh, a, b, F, BoundaryData::uniform(0.5)).z;
  const auto rep = necessary_condition_check(mesh, a, b, u, F);
  EXPECT_FALSE(rep.vacuous);
  EXPECT_TRUE(rep.passed);
}

TEST(Solver, ConstantsArePHarmonic) {
  for (double p : {1.6, 2.0, 3.0}) {
    const auto mesh = RadialMesh::annulus(ModelManifold::hyperbolic(3, p, 1.0), 0.5, 2.0, 100);
    const QuadField Z(mesh.num_quad(), 0.0);
    const auto res = dirichlet_solve(mesh, Z, Z, Nonlinearity::power(3.0), BoundaryData::uniform(0.3));
    for (double v : res.z.values) EXPECT_NEAR(v, 0.3, 1e-12);
  }
}

TEST(Solver, RandomNegativePotentialGivesPositiveSolution) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(-2.0, 0.5);
  const auto mesh = RadialMesh::ball(ModelManifold::euclidean(3, 2.0), 1.0, 200);
  QuadField A(mesh.num_quad());
  for (double& v : A) v = U(rng);
  const QuadField Z(mesh.num_quad(), 0.0);
  const auto res = dirichlet_solve(mesh, A, Z, Nonlinearity::power(2.0), BoundaryData::uniform(1.0));
  EXPECT_GT(res.z.min(), 0.0);
  EXPECT_LT(res.residual, 1e-9);
}

TEST(Solver, BoundNonIncreasingInEpsilon) {
  const auto E3 = ModelManifold::euclidean(3, 2.0);
  auto chi = PotentialProfile::hardy(E3, 1.0, 0.05);
  const RadialFn a = [chi](double x) { return x < 1.0 ? 0.4 * chi(x) : 0.0; };
  const RadialFn W = [chi](double x) { return 0.3 * chi(x); };
  const RadialFn bplus = [](double x) { return x > 1.2 ? 0.5 : 0.0; };
  LadderSpec ls;
  ls.first_outer = 2.0;
  ls.rungs = 3;
  const auto ladder = build_ladder(E3, ls);
  double prev = kInf;
  for (double eps : {1.0, 0.5, 0.25, 0.125}) {
    const double C = compute_delta(ladder, a, bplus, Nonlinearity::power(3.0), eps, Window{0.0, 1.0}, W).C;
    EXPECT_LE(C, prev);
    prev = C;
  }
}

TEST(Solver, MultiSolutionsTrivialCase) {
  const auto E3 = ModelManifold::euclidean(3, 2.0);
  LadderSpec ls;
  ls.first_outer = 2.0;
  ls.rungs = 2;
  ls.base_elements = 60;
  const RadialFn zero = [](double) { return 0.0; }, one = [](double) { return 1.0; };
  const auto sols = multi_solution_sequence(build_ladder(E3, ls), zero, zero, Nonlinearity::power(3.0), Window{0.0, 1.0}, one, 3);
  ASSERT_EQ(sols.size(), 3u);
  for (std::size_t k = 0; k < sols.size(); ++k) {
    for (double v : sols[k].solution.values) EXPECT_NEAR(v, sols[k].epsilon, 1e-10);
    if (k > 0) EXPECT_LT(sols[k].epsilon, sols[k - 1].epsilon);
  }
}

TEST(Solver, DeltaForFlatData) {
  // a = -W on the window cancels the gap term, so phi_0 = eps and delta = W / F(1) at eps = 1
  const auto E3 = ModelManifold::euclidean(3, 2.0);
  LadderSpec ls;
  ls.first_outer = 2.0;
  ls.rungs = 2;
  ls.base_elements = 80;
  const Window L{0.0, 1.0};
  const RadialFn W = [](double) { return 1.0; };
  const RadialFn a = [L](double x) { return L.contains(x) ? -1.0 : 0.0; };
  const RadialFn zero = [](double) { return 0.0; };
  const auto F = Nonlinearity::power(3.0);
  const auto d = compute_delta(build_ladder(E3, ls), a, zero, F, 1.0, L, W);
  EXPECT_NEAR(d.C, 1.0, 1e-10);
  EXPECT_NEAR(d.delta, 1.0 / F(1.0), 1e-9);
}
