//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "srgw/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

#include <fmt/format.h>

namespace srgw {

using detail::require;

Graph::Graph(Matrix structure, Vector distribution, std::optional<Matrix> features)
    : structure_(std::move(structure)), distribution_(std::move(distribution)),
      features_(std::move(features)) {
  require(structure_.rows() >= 1, "graph must have at least one node");
  require(structure_.rows() == structure_.cols(), "structure matrix must be square");
  require(structure_.allFinite(), "structure matrix has non-finite entries");
  require(distribution_.size() == structure_.rows(),
          fmt::format("distribution has {} entries for {} nodes", distribution_.size(),
                      structure_.rows()));
  require(on_simplex(distribution_, 1e-12), "node distribution must lie on the simplex");
  if (features_) {
    require(features_->rows() == structure_.rows(), "feature rows must equal node count");
    require(features_->allFinite(), "features have non-finite entries");
  }
}

Graph Graph::uniform(Matrix structure, std::optional<Matrix> features) {
  const Index n = structure.rows();
  require(n >= 1, "graph must have at least one node");
  Vector h = Vector::Constant(n, 1.0 / static_cast<double>(n));
  return Graph(std::move(structure), std::move(h), std::move(features));
}

const Matrix &Graph::features() const {
  require(features_.has_value(), "graph has no node features");
  return *features_;
}

GraphDataset::GraphDataset(std::vector<Graph> g, std::optional<Labels> l)
    : graphs(std::move(g)), labels(std::move(l)) {
  require(!graphs.empty(), "dataset is empty");
  if (labels)
    require(labels->size() == graphs.size(), "one label per graph required");
}

bool GraphDataset::attributed() const {
  return std::all_of(graphs.begin(), graphs.end(), [](const Graph &g) { return g.has_features(); });
}

void validate_adjacency(const Matrix &a) {
  require(a.rows() == a.cols(), "adjacency must be square");
  for (Index i = 0; i < a.rows(); ++i) {
    require(a(i, i) == 0.0, "adjacency must have a zero diagonal");
    for (Index j = 0; j < a.cols(); ++j) {
      require(a(i, j) == 0.0 || a(i, j) == 1.0, "adjacency entries must be 0 or 1");
      require(a(i, j) == a(j, i), "adjacency must be symmetric");
    }
  }
}

std::vector<double> degrees(const Matrix &adjacency) {
  std::vector<double> d(static_cast<std::size_t>(adjacency.rows()));
  for (Index i = 0; i < adjacency.rows(); ++i)
    d[static_cast<std::size_t>(i)] = adjacency.row(i).sum();
  return d;
}

Matrix hop_distances(const Matrix &adjacency) {
  const Index n = adjacency.rows();
  std::vector<std::vector<Index>> nbrs(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (adjacency(i, j) != 0.0 && i != j)
        nbrs[static_cast<std::size_t>(i)].push_back(j);

  Matrix dist = Matrix::Constant(n, n, -1.0);
  std::deque<Index> queue;
  for (Index s = 0; s < n; ++s) {
    dist(s, s) = 0.0;
    queue.assign(1, s);
    while (!queue.empty()) {
      const Index u = queue.front();
      queue.pop_front();
      for (Index v : nbrs[static_cast<std::size_t>(u)]) {
        if (dist(s, v) < 0.0) {
          dist(s, v) = dist(s, u) + 1.0;
          queue.push_back(v);
        }
      }
    }
  }
  return dist;
}

namespace {

Matrix heat_kernel(const Matrix &adjacency, double t) {
  const Index n = adjacency.rows();
  Vector inv_sqrt = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    const double d = adjacency.row(i).sum();
    if (d > 0.0)
      inv_sqrt(i) = 1.0 / std::sqrt(d);
  }
  Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      lap(i, j) -= inv_sqrt(i) * adjacency(i, j) * inv_sqrt(j);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lap);
  if (eig.info() != Eigen::Success)
    throw SolverFailure("eigendecomposition of the normalized Laplacian failed");
  const Vector weights = (-t * eig.eigenvalues().array()).exp();
  const Eigen::MatrixXd &v = eig.eigenvectors();
  Matrix out = v * weights.asDiagonal() * v.transpose();
  // exact symmetry for downstream symmetric-gradient paths
  return (0.5 * (out + out.transpose())).eval();
}

}  // namespace

Matrix build_representation(const Matrix &adjacency, const RepresentationKind &kind) {
  require(adjacency.rows() == adjacency.cols(), "adjacency must be square");
  require(is_symmetric(adjacency, 0.0), "adjacency must be symmetric");
  switch (kind.type) {
  case Representation::Adjacency:
    return adjacency;
  case Representation::ShortestPath: {
    Matrix d = hop_distances(adjacency);
    const double cap = std::max(0.0, d.maxCoeff()) + 1.0;
    for (Index i = 0; i < d.rows(); ++i)
      for (Index j = 0; j < d.cols(); ++j)
        if (d(i, j) < 0.0)
          d(i, j) = cap;
    return d;
  }
  case Representation::HeatKernel:
    require(kind.heat_t > 0.0, "heat kernel time must be positive");
    return heat_kernel(adjacency, kind.heat_t);
  }
  throw InvalidInput("unknown representation kind");
}

Vector node_distribution(std::span<const double> deg, const DistributionSpec &spec) {
  const auto n = static_cast<Index>(deg.size());
  require(n >= 1, "node_distribution needs at least one node");
  if (spec.mode == DistributionMode::Uniform)
    return Vector::Constant(n, 1.0 / static_cast<double>(n));

  double a = spec.a;
  double b = spec.b;
  if (spec.mode == DistributionMode::Degree) {
    a = 0.0;
    b = 1.0;
  }
  require(b >= 0.0 && b <= 1.0, "power-law exponent b must lie in [0, 1]");
  const bool isolated = std::any_of(deg.begin(), deg.end(), [](double d) { return d == 0.0; });
  if (a == 0.0 && isolated)
    a = 1.0;

  Vector p(n);
  for (Index i = 0; i < n; ++i) {
    const double base = deg[static_cast<std::size_t>(i)] + a;
    require(base >= 0.0, fmt::format("negative power-law base at node {}", i));
    p(i) = std::pow(base, b);
    require(p(i) > 0.0 && std::isfinite(p(i)), fmt::format("non-positive weight at node {}", i));
  }
  return p / p.sum();
}

Vector node_distribution(const Matrix &adjacency, const DistributionSpec &spec) {
  const auto d = degrees(adjacency);
  return node_distribution(std::span<const double>(d), spec);
}

Matrix sbm_connectivity(Index blocks, double p_in, double p_out) {
  Matrix p = Matrix::Constant(blocks, blocks, p_out);
  p.diagonal().setConstant(p_in);
  return p;
}

SbmSample gen_sbm(std::span<const int> block_sizes, const Matrix &connectivity, std::uint64_t seed) {
  const auto q = static_cast<Index>(block_sizes.size());
  require(q >= 1, "at least one block required");
  require(connectivity.rows() == q && connectivity.cols() == q,
          "connectivity must be q x q for q blocks");
  require(is_symmetric(connectivity, 0.0), "connectivity must be symmetric");
  require((connectivity.array() >= 0.0).all() && (connectivity.array() <= 1.0).all(),
          "connection probabilities must lie in [0, 1]");

  Labels blocks;
  for (Index b = 0; b < q; ++b) {
    require(block_sizes[static_cast<std::size_t>(b)] > 0, "block sizes must be positive");
    blocks.insert(blocks.end(), static_cast<std::size_t>(block_sizes[static_cast<std::size_t>(b)]),
                  static_cast<int>(b));
  }
  const auto n = static_cast<Index>(blocks.size());
  Matrix adj = Matrix::Zero(n, n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double p = connectivity(blocks[static_cast<std::size_t>(i)], blocks[static_cast<std::size_t>(j)]);
      if (unif(rng) < p) {
        adj(i, j) = 1.0;
        adj(j, i) = 1.0;
      }
    }
  }
  return {std::move(adj), std::move(blocks)};
}

Matrix symmetrize(const Matrix &adjacency) {
  require(adjacency.rows() == adjacency.cols(), "adjacency must be square");
  Matrix s = (adjacency + adjacency.transpose()).cwiseMin(1.0).cwiseMax(0.0);
  s.diagonal().setZero();
  return s;
}

}  // namespace srgw
