//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "srgw/dictionary.hpp"
#include "srgw/graph.hpp"
#include "srgw/solvers.hpp"
#include "srgw/tasks.hpp"

namespace srgw::io {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

/// Raised when a file cannot be read, written or parsed.
class IoError : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

// ---- graphs ----

/// On-disk graph: {"n", "edges", "directed", "features"?, "distribution"?,
/// "labels"?, "graph_label"?}. Undirected edges are written once with i < j.
struct GraphFile {
  Matrix adjacency;
  bool directed = false;
  std::optional<Matrix> features;
  std::optional<Vector> distribution;
  std::optional<Labels> labels;
  std::optional<int> graph_label;

  Index size() const { return adjacency.rows(); }
  bool operator==(const GraphFile &) const = default;
};

Json to_json(const GraphFile &g);
GraphFile graph_from_json(const Json &j);
GraphFile load_graph(const fs::path &path);
void save_graph(const fs::path &path, const GraphFile &g);

/// Dense alternative: a CSV structure matrix plus an optional sidecar
/// `<stem>.json` holding "distribution" and "features".
Graph load_dense_graph(const fs::path &csv);

/// Symmetric 0/1 view of the stored edges (directed edges are symmetrized).
Matrix undirected_adjacency(const GraphFile &g);

/// Solver view: the representation of the undirected adjacency with the stored
/// distribution when present, otherwise the one given by `dist`.
Graph to_graph(const GraphFile &g, const RepresentationKind &rep, const DistributionSpec &dist);

/// Every *.json in `dir`, sorted by file name.
std::vector<fs::path> dataset_files(const fs::path &dir);
std::vector<GraphFile> load_dataset(const fs::path &dir);

/// Labels are attached only when every file carries a graph_label.
GraphDataset to_dataset(const std::vector<GraphFile> &files, const RepresentationKind &rep,
                        const DistributionSpec &dist);

// ---- atoms ----

Json to_json(const DictionaryAtom &atom);
DictionaryAtom atom_from_json(const Json &j);
DictionaryAtom load_atom(const fs::path &path);
void save_atom(const fs::path &path, const DictionaryAtom &atom);

// ---- results ----

struct MatchRecord {
  double loss = 0.0;
  double regularized_loss = 0.0;
  Vector hbar;
  std::vector<Index> support;
  int iterations = 0;
  bool converged = false;

  static MatchRecord from(const SolveResult &r);
  bool operator==(const MatchRecord &) const = default;
};

struct PartitionRecord {
  int q = 0;
  Labels labels;
  std::vector<Index> clusters;
  double modularity = 0.0;
  double loss = 0.0;
  Vector hbar;
  double b = 0.0;   // power-law exponent of the node distribution
  RepresentationKind representation;
  std::optional<double> epsilon;
  std::optional<double> lambda_g;
  bool tuned = false;

  static PartitionRecord from(const PartitionResult &r, int q, bool tuned);
  bool operator==(const PartitionRecord &) const = default;
};

struct EmbeddingRecord {
  std::vector<std::string> names;
  Matrix hbar;   // one row per graph
  std::vector<double> losses;

  bool operator==(const EmbeddingRecord &) const = default;
};

struct ClusterRecord {
  int k = 0;
  std::vector<std::string> names;
  Labels labels;
  Matrix embeddings;
  std::vector<double> losses;
  std::optional<double> rand_index;
  std::optional<double> adjusted_rand_index;
  std::optional<double> adjusted_mutual_info;

  bool operator==(const ClusterRecord &) const = default;
};

struct CompletionRecord {
  Matrix structure;
  std::optional<Matrix> features;
  double loss = 0.0;
  int iterations = 0;
  std::vector<double> loss_trajectory;

  static CompletionRecord from(const CompletionResult &r);
  bool operator==(const CompletionRecord &) const = default;
};

Json to_json(const MatchRecord &r);
Json to_json(const PartitionRecord &r);
Json to_json(const EmbeddingRecord &r);
Json to_json(const ClusterRecord &r);
Json to_json(const CompletionRecord &r);

MatchRecord match_from_json(const Json &j);
PartitionRecord partition_from_json(const Json &j);
EmbeddingRecord embedding_from_json(const Json &j);
ClusterRecord cluster_from_json(const Json &j);
CompletionRecord completion_from_json(const Json &j);

std::string representation_name(Representation r);
Representation parse_representation(const std::string &name);

// ---- raw files ----

Json read_json(const fs::path &path);
void write_json(const fs::path &path, const Json &j);

/// Shortest round-trip decimal form, one row per line.
void write_matrix_csv(const fs::path &path, const Matrix &m);
Matrix read_matrix_csv(const fs::path &path);

/// Header: epoch,eval_loss,wall_ms
void write_training_log(const fs::path &path, const std::vector<TrainingCheckpoint> &log);
std::vector<TrainingCheckpoint> read_training_log(const fs::path &path);

}  // namespace srgw::io
