//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "srgw/types.hpp"

namespace srgw {

/// A graph as seen by the solvers: a structure matrix C, a node distribution
/// h on the simplex, and optional node features F (one row per node).
class Graph {
public:
  Graph(Matrix structure, Vector distribution, std::optional<Matrix> features = std::nullopt);

  /// Structure with uniform node weights.
  static Graph uniform(Matrix structure, std::optional<Matrix> features = std::nullopt);

  Index size() const { return structure_.rows(); }
  const Matrix &structure() const { return structure_; }
  const Vector &distribution() const { return distribution_; }
  bool has_features() const { return features_.has_value(); }
  const Matrix &features() const;
  Index feature_dim() const { return features_ ? features_->cols() : 0; }

private:
  Matrix structure_;
  Vector distribution_;
  std::optional<Matrix> features_;
};

struct GraphDataset {
  std::vector<Graph> graphs;
  std::optional<Labels> labels;

  GraphDataset(std::vector<Graph> graphs, std::optional<Labels> labels = std::nullopt);

  std::size_t size() const { return graphs.size(); }
  bool attributed() const;
};

enum class Representation { Adjacency, ShortestPath, HeatKernel };

struct RepresentationKind {
  Representation type = Representation::Adjacency;
  double heat_t = 1.0;

  static RepresentationKind adjacency() { return {Representation::Adjacency, 1.0}; }
  static RepresentationKind shortest_path() { return {Representation::ShortestPath, 1.0}; }
  static RepresentationKind heat_kernel(double t) { return {Representation::HeatKernel, t}; }

  bool operator==(const RepresentationKind &) const = default;
};

/// Structure matrix of an undirected 0/1 graph.
///
/// ShortestPath maps unreachable pairs to (largest finite hop distance + 1) so
/// the result stays finite. HeatKernel is exp(-t L) with L the symmetric
/// normalized Laplacian; isolated nodes contribute a zero row/column to the
/// normalized adjacency.
Matrix build_representation(const Matrix &adjacency, const RepresentationKind &kind);

/// All-pairs hop distances; -1 marks unreachable pairs.
Matrix hop_distances(const Matrix &adjacency);

enum class DistributionMode { Uniform, Degree, PowerLaw };

struct DistributionSpec {
  DistributionMode mode = DistributionMode::Uniform;
  double a = 0.0;
  double b = 1.0;

  static DistributionSpec uniform() { return {DistributionMode::Uniform, 0.0, 0.0}; }
  static DistributionSpec degree() { return {DistributionMode::Degree, 0.0, 1.0}; }
  static DistributionSpec power_law(double a, double b) { return {DistributionMode::PowerLaw, a, b}; }
};

/// h_i = p_i / sum p, p_i = (deg(i) + a)^b. With a == 0 and an isolated node
/// present, a is switched to 1.
Vector node_distribution(std::span<const double> degrees, const DistributionSpec &spec);
Vector node_distribution(const Matrix &adjacency, const DistributionSpec &spec);

std::vector<double> degrees(const Matrix &adjacency);

struct SbmSample {
  Matrix adjacency;
  Labels blocks;
};

/// Undirected simple graph; edge (i, j), i < j, drawn with probability
/// connectivity(block(i), block(j)). Nodes are numbered block by block.
SbmSample gen_sbm(std::span<const int> block_sizes, const Matrix &connectivity, std::uint64_t seed);

/// Two-level connectivity helper: p_in on the diagonal, p_out elsewhere.
Matrix sbm_connectivity(Index blocks, double p_in, double p_out);

/// (A + A^T) clipped to {0, 1}, with a zero diagonal.
Matrix symmetrize(const Matrix &adjacency);

/// Checks squareness, 0/1 entries, symmetry and zero diagonal.
void validate_adjacency(const Matrix &adjacency);

}  // namespace srgw
