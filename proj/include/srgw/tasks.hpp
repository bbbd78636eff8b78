//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "srgw/dictionary.hpp"
#include "srgw/graph.hpp"
#include "srgw/metrics.hpp"
#include "srgw/solvers.hpp"

namespace srgw {

// ---- partitioning ----

struct PartitionSettings {
  RepresentationKind representation = RepresentationKind::adjacency();
  DistributionSpec distribution = DistributionSpec::uniform();
  SolverConfig solver = default_partition_solver();

  static SolverConfig default_partition_solver() {
    SolverConfig cfg;
    cfg.init = KmeansHard{};
    return cfg;
  }
};

struct PartitionResult {
  Labels labels;                 // compacted, 0..clusters-1
  std::vector<Index> clusters;   // target column kept for each compacted label
  Vector hbar;                   // full second marginal over the q columns
  Coupling coupling;
  double loss = 0.0;
  double modularity = 0.0;       // set when the adjacency is known
  PartitionSettings settings;
};

/// srGW of the graph onto I_q; labels are row argmaxes of the coupling, with
/// columns carrying at most 1e-9 * max(hbar) mass dropped and labels compacted.
PartitionResult partition(const Graph &graph, int q, const SolverConfig &config);

/// Builds the representation and distribution from a 0/1 adjacency, partitions,
/// and scores the labels by modularity.
PartitionResult partition_adjacency(const Matrix &adjacency, int q, const PartitionSettings &settings);

struct TuneGrid {
  std::vector<double> b_grid = default_b_grid();
  std::vector<Representation> representations = {Representation::Adjacency};
  std::vector<std::optional<double>> epsilon_grid = {std::nullopt};
  std::vector<std::optional<double>> lambda_grid = {std::nullopt};
  double heat_lo = 1.0;
  double heat_hi = 100.0;
  double heat_rel_stop = 1e-3;
  int heat_max_rounds = 8;

  static std::vector<double> default_b_grid() {
    return {0.0, 0.0001, 0.0005, 0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1.0};
  }
};

struct TuneRecord {
  double b = 0.0;
  RepresentationKind representation;
  std::optional<double> epsilon;
  std::optional<double> lambda_g;
  double modularity = 0.0;
  std::size_t clusters = 0;
};

struct TuneResult {
  PartitionResult best;
  std::vector<TuneRecord> evaluated;
};

/// Picks the (b, representation, epsilon, lambda_g) maximizing modularity. Heat-kernel
/// times are searched over [heat_lo, heat_hi] by repeated 5-point refinement.
/// Ground-truth labels are never consulted.
TuneResult tune_partition(const Matrix &adjacency, int q, const TuneGrid &grid,
                          const SolverConfig &base = PartitionSettings::default_partition_solver());

// ---- clustering of graph datasets ----

struct ClusterResult {
  Labels labels;
  Matrix embeddings;   // one hbar per row
  std::vector<double> losses;
};

ClusterResult cluster_graphs(const GraphDataset &dataset, const DictionaryAtom &atom, int k,
                             const SolverConfig &config, std::uint64_t seed);

// ---- completion ----

struct CompletionProblem {
  Matrix observed;                       // n_obs x n_obs, observed nodes come first
  Index total_nodes = 0;
  std::optional<Matrix> observed_features;
  DictionaryAtom atom;
};

/// Imputed-to-observed links start at the observed node's scaled degree
/// (DegreeScaled) or around 0.5 like the other imputed entries (Uniform).
enum class CompletionInit { DegreeScaled, Uniform };

struct CompletionConfig {
  CompletionInit init = CompletionInit::DegreeScaled;
  int restarts = 1;   // independent random starts, lowest final loss wins
  double step = 0.1;
  int max_iterations = 200;
  int max_halvings = 20;
  double rel_tolerance = 1e-5;
  double threshold = 0.5;
  std::uint64_t seed = 0;
};

struct CompletionResult {
  Matrix structure;                  // binary, observed block untouched
  Matrix relaxed;                    // continuous iterate before thresholding
  std::optional<Matrix> features;
  double loss = 0.0;
  int iterations = 0;
  std::vector<double> loss_trajectory;
};

CompletionResult complete_graph(const CompletionProblem &problem, const SolverConfig &solver,
                                const CompletionConfig &config);

struct CompletionMetrics {
  double edge_accuracy = 0.0;
  std::optional<double> feature_mse;
};

/// Accuracy over the n^2 - n_obs^2 entries touching an imputed node; feature
/// MSE over imputed rows when both feature matrices are given.
CompletionMetrics completion_metrics(const Matrix &truth, const Matrix &predicted, Index observed_count,
                                     const Matrix *true_features = nullptr,
                                     const Matrix *predicted_features = nullptr);

}  // namespace srgw
