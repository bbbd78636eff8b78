//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "srgw/graph.hpp"
#include "srgw/solvers.hpp"
#include "srgw/types.hpp"

namespace srgw {

struct DictionaryAtom {
  Matrix structure;                 // m x m, symmetric, nonnegative
  std::optional<Matrix> features;   // m x d

  Index size() const { return structure.rows(); }
  void validate() const;
};

struct TrainConfig {
  Index atom_size = 12;
  int batch_size = 16;
  double learning_rate = 0.01;
  int max_epochs = 100;
  int eval_every = 5;
  int patience = 2;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  SolverConfig solver;   // solver.alpha is the fused trade-off (default 0.5)
  std::uint64_t seed = 0;
  bool warm_start = true;

  void validate() const;
};

/// Adam for one matrix parameter. Moments start at zero, so a zero gradient
/// leaves the parameter unchanged.
class AdamOptimizer {
public:
  AdamOptimizer(double learning_rate, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);
  void step(Matrix &param, const Matrix &grad);
  int steps() const { return steps_; }

private:
  double lr_, beta1_, beta2_, eps_;
  int steps_ = 0;
  Matrix m_, v_;
};

struct Embedding {
  Vector hbar;
  Coupling coupling;
  double loss = 0.0;
};

struct TrainingCheckpoint {
  int epoch = 0;
  double eval_loss = 0.0;
  double wall_ms = 0.0;
};

struct TrainingResult {
  DictionaryAtom atom;                    // best evaluated atom
  std::vector<TrainingCheckpoint> log;    // epoch 0 is the initial atom
  int epochs_run = 0;
  bool early_stopped = false;
  int failed_solves = 0;
};

/// srGW (or srFGW when both carry features) projection of a graph onto the atom.
Embedding embed(const Graph &graph, const DictionaryAtom &atom, const SolverConfig &config);

/// Embeds every graph, in parallel over graphs. Results are in dataset order.
std::vector<Embedding> embed_all(std::span<const Graph> graphs, const DictionaryAtom &atom,
                                 const SolverConfig &config);

struct GradientItem {
  const Graph *graph;
  const Matrix *plan;   // n x m coupling of the graph onto the atom
};

/// (2/B) sum_k (Cbar .* hbar_k hbar_k^T - T_k^T C_k T_k).
Matrix atom_structure_gradient(std::span<const GradientItem> batch, const DictionaryAtom &atom);

/// (2/B) sum_k (diag(hbar_k) Fbar - T_k^T F_k); the fused objective scales it by (1 - alpha).
Matrix atom_feature_gradient(std::span<const GradientItem> batch, const DictionaryAtom &atom);

/// max((M + M^T) / 2, 0).
Matrix project_symmetric_nonneg(const Matrix &m);

/// Structure entries ~ N(0.5, 0.01) symmetrized and clamped at 0. With
/// `feature_dim`, features are k-means centroids (k = m) of the dataset's
/// node features.
DictionaryAtom init_atom(Index m, std::optional<Index> feature_dim, const GraphDataset *dataset,
                         std::uint64_t seed);

TrainingResult train_dictionary(const GraphDataset &dataset, const TrainConfig &config);

}  // namespace srgw
