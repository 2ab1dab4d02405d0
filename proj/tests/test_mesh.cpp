#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "radlab/mesh.hpp"

using namespace radlab;

namespace {
double total_measure(const RadialMesh& mesh) {
  double s = 0.0;
  for (std::size_t e = 0; e + 1 < mesh.num_nodes(); ++e) s += mesh.element_measure(e);
  return s;
}
}  // namespace

TEST(Mesh, BallVolume) {
  const auto E3 = ModelManifold::euclidean(3, 2.0);
  EXPECT_NEAR(total_measure(RadialMesh::ball(E3, 2.0, 50)), 4.0 / 3.0 * std::numbers::pi * 8.0, 1e-11);
  const auto H2 = ModelManifold::hyperbolic(2, 2.0, 1.0);
  EXPECT_NEAR(total_measure(RadialMesh::ball(H2, 1.0, 200)), 2.0 * std::numbers::pi * (std::cosh(1.0) - 1.0), 1e-10);
}

TEST(Mesh, EnergyOfLinearFunctionIsExact) {
  // phi = r on [1,2] in R^3: (1/2) int |phi'|^2 omega = 2 pi (8-1)/3
  const auto E3 = ModelManifold::euclidean(3, 2.0);
  const auto mesh = RadialMesh::annulus(E3, 1.0, 2.0, 7);
  const auto phi = DiscreteFunction::sample(mesh, [](double r) { return r; });
  const QuadField V(4 * (mesh.num_nodes() - 1), 0.0);
  EXPECT_NEAR(qv_energy(mesh, V, phi), 2.0 * std::numbers::pi * 7.0 / 3.0, 1e-12);
  const QuadField one(V.size(), 1.0);
  // (1/2)[int |phi'|^2 omega - int r^2 omega] = 2 pi [7/3 - 31/5]
  EXPECT_NEAR(qv_energy(mesh, one, phi), 2.0 * std::numbers::pi * (7.0 / 3.0 - 31.0 / 5.0), 1e-12);
}

TEST(Mesh, BregmanNonnegative) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-3.0, 3.0), P(1.1, 4.0);
  for (int k = 0; k < 2000; ++k) {
    const double a = U(rng), b = U(rng), p = P(rng);
    EXPECT_GE(bregman_p(a, b, p), -1e-12 * (std::pow(std::abs(a), p) + std::pow(std::abs(b), p)));
  }
  EXPECT_EQ(bregman_p(1.3, 1.3, 2.5), 0.0);
  EXPECT_NEAR(bregman_p(2.0, 1.0, 2.0), 1.0, 1e-15);
}

TEST(Mesh, PiconeNonnegativeAndScaleInvariant) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const double p = 1.3 + 2.5 * U(rng);
    const auto mm = ModelManifold::euclidean(3, p);
    const auto mesh = RadialMesh::annulus(mm, 1.0, 3.0, 40);
    DiscreteFunction w(mesh.num_nodes(), 0.0), z(mesh.num_nodes(), 0.0);
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] = 0.1 + U(rng);
      z[i] = 0.1 + U(rng);
    }
    EXPECT_GE(picone(mesh, w, z), -1e-12);
    DiscreteFunction w2 = w;
    for (double& v : w2.values) v *= 2.7;
    EXPECT_NEAR(picone(mesh, w, w2), 0.0, 1e-12);
  }
}

TEST(Mesh, LagrangianNonnegative) {
  const auto mm = ModelManifold::euclidean(3, 2.5);
  const auto mesh = RadialMesh::annulus(mm, 1.0, 2.0, 30);
  const auto g = DiscreteFunction::sample(mesh, [](double r) { return 3.0 - r; });
  const auto phi = DiscreteFunction::sample(mesh, [](double r) { return std::sin(r); });
  EXPECT_GE(lagrangian(mesh, phi, g), 0.0);
  EXPECT_NEAR(lagrangian(mesh, g, g), 0.0, 1e-14);
}

TEST(Mesh, LadderIsNested) {
  const auto E3 = ModelManifold::euclidean(3, 2.0);
  LadderSpec s;
  s.inner = 1.0;
  s.first_outer = 2.0;
  s.factor = 2.0;
  s.rungs = 4;
  s.spacing = LadderSpec::Spacing::geometric;
  const auto ladder = build_ladder(E3, s);
  ASSERT_EQ(ladder.size(), 4u);
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    EXPECT_DOUBLE_EQ(ladder[k].inner(), 1.0);
    EXPECT_DOUBLE_EQ(ladder[k].outer(), 2.0 * std::pow(2.0, static_cast<double>(k)));
  }
}

TEST(Mesh, CsvRoundTrip) {
  const auto mesh = RadialMesh::ball(ModelManifold::euclidean(3, 2.0), 1.0, 20);
  const auto f = DiscreteFunction::sample(mesh, [](double r) { return std::exp(-r) / 3.0; });
  const std::string path = ::testing::TempDir() + "/radlab_rt.csv";
  write_csv(path, mesh, f);
  const auto g = read_csv(path, mesh);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(f[i], g[i]);
}

TEST(Mesh, InvalidMeshesRaise) {
  const auto E3 = ModelManifold::euclidean(3, 2.0);
  EXPECT_THROW(RadialMesh::annulus(E3, 2.0, 1.0, 10), Error);
  EXPECT_THROW(RadialMesh(DomainKind::ball, {0.5, 1.0}, [](double) { return 1.0; }, 2.0), Error);
}
