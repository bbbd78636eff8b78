//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "srgw/graph.hpp"

#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace srgw {
namespace {

Matrix cycle4() {
  Matrix a = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    a(i, (i + 1) % 4) = 1.0;
    a((i + 1) % 4, i) = 1.0;
  }
  return a;
}

Matrix two_edges() {
  Matrix a = Matrix::Zero(4, 4);
  a(0, 1) = a(1, 0) = 1.0;
  a(2, 3) = a(3, 2) = 1.0;
  return a;
}

// Floyd-Warshall with infinity for unreachable pairs.
Matrix floyd(const Matrix &a) {
  const Index n = a.rows();
  const double inf = std::numeric_limits<double>::infinity();
  Matrix d = Matrix::Constant(n, n, inf);
  for (Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (Index j = 0; j < n; ++j)
      if (a(i, j) != 0.0 && i != j)
        d(i, j) = 1.0;
  }
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
  return d;
}

TEST(Graph, ValidatesInvariants) {
  EXPECT_THROW(Graph(Matrix::Zero(2, 3), Vector::Constant(2, 0.5)), InvalidInput);
  EXPECT_THROW(Graph(Matrix::Zero(2, 2), Vector::Constant(2, 0.4)), InvalidInput);
  EXPECT_THROW(Graph(Matrix::Zero(2, 2), Vector::Constant(3, 1.0 / 3)), InvalidInput);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = std::nan("");
  EXPECT_THROW(Graph::uniform(bad), InvalidInput);
  EXPECT_THROW(Graph::uniform(Matrix::Zero(2, 2), Matrix::Zero(3, 1)), InvalidInput);
  const Graph g = Graph::uniform(Matrix::Zero(3, 3), Matrix::Ones(3, 2));
  EXPECT_EQ(g.size(), 3);
  EXPECT_EQ(g.feature_dim(), 2);
  EXPECT_THROW(GraphDataset({}), InvalidInput);
  EXPECT_THROW(GraphDataset({g}, Labels{0, 1}), InvalidInput);
}

TEST(BuildRepresentation, HeatKernelAtSmallTimeIsIdentity) {
  std::mt19937_64 rng(3);
  const Matrix a = testing::random_adjacency(7, 0.4, rng);
  const Matrix k = build_representation(a, RepresentationKind::heat_kernel(1e-12));
  EXPECT_LE((k - Matrix::Identity(7, 7)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(BuildRepresentation, ShortestPathOnCycle) {
  const Matrix d = build_representation(cycle4(), RepresentationKind::shortest_path());
  EXPECT_EQ(d(0, 2), 2.0);
  EXPECT_EQ(d(1, 3), 2.0);
  EXPECT_EQ(d(0, 1), 1.0);
  EXPECT_EQ(d(0, 0), 0.0);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      EXPECT_TRUE(d(i, j) == 0.0 || d(i, j) == 1.0 || d(i, j) == 2.0);
}

TEST(BuildRepresentation, UnreachablePairsGetFiniteCap) {
  const Matrix a = two_edges();
  const Matrix fw = floyd(a);
  double max_finite = 0.0;
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      if (std::isfinite(fw(i, j)))
        max_finite = std::max(max_finite, fw(i, j));
  const Matrix d = build_representation(a, RepresentationKind::shortest_path());
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      EXPECT_EQ(d(i, j), std::isfinite(fw(i, j)) ? fw(i, j) : max_finite + 1.0);
  EXPECT_EQ(d(0, 2), 2.0);
}

TEST(BuildRepresentation, RejectsBadInput) {
  Matrix asym = Matrix::Zero(2, 2);
  asym(0, 1) = 1.0;
  EXPECT_THROW(build_representation(asym, RepresentationKind::adjacency()), InvalidInput);
  EXPECT_THROW(build_representation(Matrix::Zero(2, 3), RepresentationKind::adjacency()),
               InvalidInput);
  EXPECT_THROW(build_representation(cycle4(), RepresentationKind::heat_kernel(-1.0)), InvalidInput);
}

TEST(BuildRepresentation, HeatKernelIsSymmetricPsd) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = testing::random_adjacency(12, 0.3, rng);
    a.row(0).setZero();  // an isolated node
    a.col(0).setZero();
    const double t = 0.1 + 5.0 * trial / 20.0;
    const Matrix k = build_representation(a, RepresentationKind::heat_kernel(t));
    EXPECT_TRUE(is_symmetric(k, 1e-12));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig{Eigen::MatrixXd(k)};
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-8);
    EXPECT_NEAR(k(0, 0), std::exp(-t), 1e-10);  // isolated node: L_00 = 1
  }
}

TEST(BuildRepresentation, ShortestPathTriangleInequality) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 2 + trial % 11;
    Matrix a = testing::random_adjacency(n, 0.35, rng);
    for (Index i = 0; i + 1 < n; ++i)  // path backbone keeps it connected
      a(i, i + 1) = a(i + 1, i) = 1.0;
    const Matrix d = build_representation(a, RepresentationKind::shortest_path());
    EXPECT_EQ(d, floyd(a));
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k)
          EXPECT_LE(d(i, j), d(i, k) + d(k, j));
  }
}

TEST(NodeDistribution, Examples) {
  const std::vector<double> deg{1, 2, 3};
  const Vector lin = node_distribution(deg, DistributionSpec::power_law(0.0, 1.0));
  EXPECT_NEAR(lin(0), 1.0 / 6, 1e-15);
  EXPECT_NEAR(lin(1), 2.0 / 6, 1e-15);
  EXPECT_NEAR(lin(2), 3.0 / 6, 1e-15);
  const Vector flat = node_distribution(deg, DistributionSpec::power_law(0.0, 0.0));
  for (Index i = 0; i < 3; ++i)
    EXPECT_NEAR(flat(i), 1.0 / 3, 1e-15);
  const std::vector<double> even{2, 2};
  const Vector half = node_distribution(even, DistributionSpec::power_law(1.0, 0.5));
  EXPECT_NEAR(half(0), 0.5, 1e-15);
  EXPECT_NEAR(half(1), 0.5, 1e-15);
  EXPECT_EQ(node_distribution(deg, DistributionSpec::degree()), lin);
  EXPECT_EQ(node_distribution(deg, DistributionSpec::uniform()), flat);
}

TEST(NodeDistribution, IsolatedNodesSwitchOffsetToOne) {
  const std::vector<double> deg{0, 1, 3};
  const Vector h = node_distribution(deg, DistributionSpec::power_law(0.0, 1.0));
  EXPECT_NEAR(h(0), 1.0 / 7, 1e-15);
  EXPECT_NEAR(h(2), 4.0 / 7, 1e-15);
}

TEST(NodeDistribution, RejectsNonPositiveWeights) {
  const std::vector<double> deg{1, 2, 3};
  EXPECT_THROW(node_distribution(deg, DistributionSpec::power_law(-2.0, 1.0)), InvalidInput);
  EXPECT_THROW(node_distribution(deg, DistributionSpec::power_law(-1.0, 0.5)), InvalidInput);
  EXPECT_THROW(node_distribution(deg, DistributionSpec::power_law(0.0, 1.5)), InvalidInput);
}

TEST(NodeDistribution, AlwaysOnSimplex) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> d(0, 40);
  std::uniform_real_distribution<double> bdist(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> deg(1 + static_cast<std::size_t>(trial % 30));
    for (double &x : deg)
      x = d(rng);
    for (const auto &spec : {DistributionSpec::uniform(), DistributionSpec::degree(),
                             DistributionSpec::power_law(0.0, bdist(rng)),
                             DistributionSpec::power_law(1.0, bdist(rng))}) {
      const Vector h = node_distribution(deg, spec);
      EXPECT_NEAR(h.sum(), 1.0, 1e-12);
      EXPECT_GE(h.minCoeff(), 0.0);
    }
  }
}

TEST(GenSbm, DegenerateProbabilitiesGiveCliques) {
  const std::vector<int> sizes{3, 3};
  const SbmSample s = gen_sbm(sizes, sbm_connectivity(2, 1.0, 0.0), 42);
  Matrix expected = Matrix::Zero(6, 6);
  expected.topLeftCorner(3, 3).setOnes();
  expected.bottomRightCorner(3, 3).setOnes();
  expected.diagonal().setZero();
  EXPECT_EQ(s.adjacency, expected);
  EXPECT_EQ(s.blocks, (Labels{0, 0, 0, 1, 1, 1}));
}

TEST(GenSbm, ReproducibleForFixedSeed) {
  const std::vector<int> sizes{10, 7, 5};
  const Matrix p = sbm_connectivity(3, 0.4, 0.05);
  const SbmSample a = gen_sbm(sizes, p, 9);
  const SbmSample b = gen_sbm(sizes, p, 9);
  EXPECT_EQ(a.adjacency, b.adjacency);
  EXPECT_EQ(a.blocks, b.blocks);
  EXPECT_NE(a.adjacency, gen_sbm(sizes, p, 10).adjacency);
  validate_adjacency(a.adjacency);
  std::set<int> seen(a.blocks.begin(), a.blocks.end());
  EXPECT_EQ(seen, (std::set<int>{0, 1, 2}));
  EXPECT_EQ(a.blocks.size(), 22u);
}

TEST(GenSbm, EmpiricalDensities) {
  const std::vector<int> sizes{50, 50};
  const SbmSample s = gen_sbm(sizes, sbm_connectivity(2, 0.5, 0.01), 0);
  double in = 0, out = 0;
  for (Index i = 0; i < 100; ++i)
    for (Index j = i + 1; j < 100; ++j)
      (s.blocks[i] == s.blocks[j] ? in : out) += s.adjacency(i, j);
  const double in_density = in / (2.0 * 50 * 49 / 2);
  const double out_density = out / (50.0 * 50);
  EXPECT_GE(in_density, 0.4);
  EXPECT_LE(in_density, 0.6);
  EXPECT_LE(out_density, 0.05);
}

TEST(GenSbm, RejectsBadProbabilities) {
  const std::vector<int> sizes{2, 2};
  EXPECT_THROW(gen_sbm(sizes, sbm_connectivity(2, 1.5, 0.0), 0), InvalidInput);
  Matrix asym = sbm_connectivity(2, 0.5, 0.1);
  asym(0, 1) = 0.2;
  EXPECT_THROW(gen_sbm(sizes, asym, 0), InvalidInput);
  EXPECT_THROW(gen_sbm(sizes, sbm_connectivity(3, 0.5, 0.1), 0), InvalidInput);
}

TEST(Symmetrize, Examples) {
  Matrix a(2, 2);
  a << 0, 1, 0, 0;
  Matrix e(2, 2);
  e << 0, 1, 1, 0;
  EXPECT_EQ(symmetrize(a), e);
  EXPECT_EQ(symmetrize(e), e);
  Matrix b(3, 3);
  b << 0, 1, 0, 1, 0, 0, 1, 0, 0;
  Matrix eb(3, 3);
  eb << 0, 1, 1, 1, 0, 0, 1, 0, 0;
  EXPECT_EQ(symmetrize(b), eb);
}

}  // namespace
}  // namespace srgw
