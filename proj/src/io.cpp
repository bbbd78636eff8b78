//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "srgw/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace srgw::io {

namespace {

void check(bool cond, const std::string &what) {
  if (!cond)
    throw IoError(what);
}

Json matrix_json(const Matrix &m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j)
      row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from(const Json &j, const std::string &what) {
  check(j.is_array(), what + " must be an array of rows");
  const auto rows = static_cast<Index>(j.size());
  const Index cols = rows == 0 ? 0 : static_cast<Index>(j.front().size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json &row = j[static_cast<std::size_t>(i)];
    check(row.is_array() && static_cast<Index>(row.size()) == cols, what + " rows must have equal length");
    for (Index c = 0; c < cols; ++c) {
      const Json &x = row[static_cast<std::size_t>(c)];
      check(x.is_number(), what + " entries must be numbers");
      m(i, c) = x.get<double>();
    }
  }
  return m;
}

Json vector_json(const Vector &v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

Vector vector_from(const Json &j, const std::string &what) {
  check(j.is_array(), what + " must be an array");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    check(j[i].is_number(), what + " entries must be numbers");
    v(static_cast<Index>(i)) = j[i].get<double>();
  }
  return v;
}

template <class T>
T field(const Json &j, const char *key) {
  check(j.is_object() && j.contains(key), fmt::format("missing field \"{}\"", key));
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception &e) {
    throw IoError(fmt::format("field \"{}\": {}", key, e.what()));
  }
}

template <class T>
std::optional<T> optional_field(const Json &j, const char *key) {
  if (!j.contains(key) || j.at(key).is_null())
    return std::nullopt;
  return field<T>(j, key);
}

Json optional_json(const std::optional<double> &x) { return x ? Json(*x) : Json(nullptr); }

std::string read_text(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  check(in.good(), fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path &path, const std::string &text) {
  if (path.has_parent_path())
    fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  check(out.good(), fmt::format("cannot write {}", path.string()));
  out << text;
  check(out.good(), fmt::format("write to {} failed", path.string()));
}

double parse_double(std::string_view s, const std::string &where) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t'))
    s.remove_suffix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  check(ec == std::errc() && ptr == s.data() + s.size(), fmt::format("{}: bad number \"{}\"", where, s));
  return x;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos)
      return out;
    start = pos + 1;
  }
}

std::vector<std::string_view> lines(const std::string &text) {
  std::vector<std::string_view> out;
  for (auto l : split(text, '\n')) {
    if (!l.empty() && l.back() == '\r')
      l.remove_suffix(1);
    if (!l.empty())
      out.push_back(l);
  }
  return out;
}

Json representation_json(const RepresentationKind &r) {
  Json j = {{"type", representation_name(r.type)}};
  if (r.type == Representation::HeatKernel)
    j["heat_t"] = r.heat_t;
  return j;
}

RepresentationKind representation_from(const Json &j) {
  RepresentationKind r;
  r.type = parse_representation(field<std::string>(j, "type"));
  if (r.type == Representation::HeatKernel)
    r.heat_t = field<double>(j, "heat_t");
  return r;
}

}  // namespace

// ---- graphs ----

Json to_json(const GraphFile &g) {
  const Index n = g.size();
  Json edges = Json::array();
  for (Index i = 0; i < n; ++i)
    for (Index j = g.directed ? 0 : i + 1; j < n; ++j)
      if (g.adjacency(i, j) != 0.0)
        edges.push_back({i, j});
  Json out = {{"n", n}, {"edges", std::move(edges)}, {"directed", g.directed}};
  if (g.features)
    out["features"] = matrix_json(*g.features);
  if (g.distribution)
    out["distribution"] = vector_json(*g.distribution);
  if (g.labels)
    out["labels"] = *g.labels;
  if (g.graph_label)
    out["graph_label"] = *g.graph_label;
  return out;
}

GraphFile graph_from_json(const Json &j) {
  GraphFile g;
  const auto n = field<Index>(j, "n");
  check(n >= 1, "graph must have at least one node");
  g.directed = optional_field<bool>(j, "directed").value_or(false);
  g.adjacency = Matrix::Zero(n, n);
  const Json &edges = j.contains("edges") ? j.at("edges") : Json::array();
  check(edges.is_array(), "\"edges\" must be an array");
  for (const auto &e : edges) {
    check(e.is_array() && e.size() == 2 && e[0].is_number_integer() && e[1].is_number_integer(),
          "each edge must be a pair of node indices");
    const auto a = e[0].get<Index>();
    const auto b = e[1].get<Index>();
    check(a >= 0 && a < n && b >= 0 && b < n, fmt::format("edge [{}, {}] out of range for n = {}", a, b, n));
    check(a != b, fmt::format("self-loop at node {}", a));
    g.adjacency(a, b) = 1.0;
    if (!g.directed)
      g.adjacency(b, a) = 1.0;
  }
  if (j.contains("features") && !j.at("features").is_null()) {
    g.features = matrix_from(j.at("features"), "features");
    check(g.features->rows() == n, "features need one row per node");
  }
  if (j.contains("distribution") && !j.at("distribution").is_null()) {
    g.distribution = vector_from(j.at("distribution"), "distribution");
    check(g.distribution->size() == n, "distribution needs one entry per node");
    check(on_simplex(*g.distribution, 1e-9), "distribution must lie on the simplex");
  }
  g.labels = optional_field<Labels>(j, "labels");
  if (g.labels)
    check(static_cast<Index>(g.labels->size()) == n, "labels need one entry per node");
  g.graph_label = optional_field<int>(j, "graph_label");
  return g;
}

GraphFile load_graph(const fs::path &path) {
  try {
    return graph_from_json(read_json(path));
  } catch (const IoError &e) {
    throw IoError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void save_graph(const fs::path &path, const GraphFile &g) { write_json(path, to_json(g)); }

Graph load_dense_graph(const fs::path &csv) {
  Matrix c = read_matrix_csv(csv);
  check(c.rows() >= 1 && c.rows() == c.cols(), fmt::format("{}: structure must be square", csv.string()));
  fs::path sidecar = csv;
  sidecar.replace_extension(".json");
  std::optional<Matrix> f;
  std::optional<Vector> h;
  if (fs::exists(sidecar)) {
    const Json j = read_json(sidecar);
    if (j.contains("features") && !j.at("features").is_null())
      f = matrix_from(j.at("features"), "features");
    if (j.contains("distribution") && !j.at("distribution").is_null())
      h = vector_from(j.at("distribution"), "distribution");
  }
  if (h)
    return Graph(std::move(c), std::move(*h), std::move(f));
  return Graph::uniform(std::move(c), std::move(f));
}

Matrix undirected_adjacency(const GraphFile &g) { return g.directed ? symmetrize(g.adjacency) : g.adjacency; }

Graph to_graph(const GraphFile &g, const RepresentationKind &rep, const DistributionSpec &dist) {
  const Matrix a = undirected_adjacency(g);
  Vector h = g.distribution ? *g.distribution : node_distribution(a, dist);
  return Graph(build_representation(a, rep), std::move(h), g.features);
}

std::vector<fs::path> dataset_files(const fs::path &dir) {
  check(fs::is_directory(dir), fmt::format("{} is not a directory", dir.string()));
  std::vector<fs::path> paths;
  for (const auto &entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  check(!paths.empty(), fmt::format("{} holds no graph files", dir.string()));
  return paths;
}

std::vector<GraphFile> load_dataset(const fs::path &dir) {
  const auto paths = dataset_files(dir);
  std::vector<GraphFile> out;
  out.reserve(paths.size());
  for (const auto &p : paths)
    out.push_back(load_graph(p));
  return out;
}

GraphDataset to_dataset(const std::vector<GraphFile> &files, const RepresentationKind &rep,
                        const DistributionSpec &dist) {
  std::vector<Graph> graphs;
  graphs.reserve(files.size());
  Labels labels;
  bool labelled = true;
  for (const auto &f : files) {
    graphs.push_back(to_graph(f, rep, dist));
    labelled = labelled && f.graph_label.has_value();
    labels.push_back(f.graph_label.value_or(0));
  }
  return GraphDataset(std::move(graphs), labelled ? std::optional<Labels>(std::move(labels)) : std::nullopt);
}

// ---- atoms ----

Json to_json(const DictionaryAtom &atom) {
  Json j = {{"m", atom.size()}, {"structure", matrix_json(atom.structure)}};
  if (atom.features)
    j["features"] = matrix_json(*atom.features);
  return j;
}

DictionaryAtom atom_from_json(const Json &j) {
  DictionaryAtom atom;
  atom.structure = matrix_from(field<Json>(j, "structure"), "structure");
  check(atom.structure.rows() == field<Index>(j, "m"), "\"m\" disagrees with the structure size");
  if (j.contains("features") && !j.at("features").is_null())
    atom.features = matrix_from(j.at("features"), "features");
  try {
    atom.validate();
  } catch (const InvalidInput &e) {
    throw IoError(e.what());
  }
  return atom;
}

DictionaryAtom load_atom(const fs::path &path) { return atom_from_json(read_json(path)); }

void save_atom(const fs::path &path, const DictionaryAtom &atom) { write_json(path, to_json(atom)); }

// ---- results ----

MatchRecord MatchRecord::from(const SolveResult &r) {
  return {r.loss, r.regularized_loss, r.hbar, srgw::support(r.hbar), r.iterations, r.converged};
}

PartitionRecord PartitionRecord::from(const PartitionResult &r, int q, bool tuned) {
  PartitionRecord p;
  p.q = q;
  p.labels = r.labels;
  p.clusters = r.clusters;
  p.modularity = r.modularity;
  p.loss = r.loss;
  p.hbar = r.hbar;
  p.b = r.settings.distribution.mode == DistributionMode::PowerLaw ? r.settings.distribution.b : 0.0;
  p.representation = r.settings.representation;
  p.epsilon = r.settings.solver.epsilon;
  p.lambda_g = r.settings.solver.lambda_g;
  p.tuned = tuned;
  return p;
}

CompletionRecord CompletionRecord::from(const CompletionResult &r) {
  return {r.structure, r.features, r.loss, r.iterations, r.loss_trajectory};
}

Json to_json(const MatchRecord &r) {
  return {{"loss", r.loss},
          {"regularized_loss", r.regularized_loss},
          {"hbar", vector_json(r.hbar)},
          {"support", r.support},
          {"iterations", r.iterations},
          {"converged", r.converged}};
}

Json to_json(const PartitionRecord &r) {
  return {{"q", r.q},
          {"labels", r.labels},
          {"clusters", r.clusters},
          {"modularity", r.modularity},
          {"loss", r.loss},
          {"hbar", vector_json(r.hbar)},
          {"hyperparameters",
           {{"b", r.b},
            {"representation", representation_json(r.representation)},
            {"epsilon", optional_json(r.epsilon)},
            {"lambda_g", optional_json(r.lambda_g)},
            {"tuned", r.tuned}}}};
}

Json to_json(const EmbeddingRecord &r) {
  return {{"names", r.names}, {"hbar", matrix_json(r.hbar)}, {"losses", r.losses}};
}

Json to_json(const ClusterRecord &r) {
  Json j = {{"k", r.k},
            {"names", r.names},
            {"labels", r.labels},
            {"embeddings", matrix_json(r.embeddings)},
            {"losses", r.losses}};
  j["rand_index"] = optional_json(r.rand_index);
  j["adjusted_rand_index"] = optional_json(r.adjusted_rand_index);
  j["adjusted_mutual_info"] = optional_json(r.adjusted_mutual_info);
  return j;
}

Json to_json(const CompletionRecord &r) {
  Json j = {{"n", r.structure.rows()}, {"structure", matrix_json(r.structure)}};
  j["features"] = r.features ? matrix_json(*r.features) : Json(nullptr);
  j["loss"] = r.loss;
  j["iterations"] = r.iterations;
  j["loss_trajectory"] = r.loss_trajectory;
  return j;
}

MatchRecord match_from_json(const Json &j) {
  MatchRecord r;
  r.loss = field<double>(j, "loss");
  r.regularized_loss = field<double>(j, "regularized_loss");
  r.hbar = vector_from(field<Json>(j, "hbar"), "hbar");
  r.support = field<std::vector<Index>>(j, "support");
  r.iterations = field<int>(j, "iterations");
  r.converged = field<bool>(j, "converged");
  return r;
}

PartitionRecord partition_from_json(const Json &j) {
  PartitionRecord r;
  r.q = field<int>(j, "q");
  r.labels = field<Labels>(j, "labels");
  r.clusters = field<std::vector<Index>>(j, "clusters");
  r.modularity = field<double>(j, "modularity");
  r.loss = field<double>(j, "loss");
  r.hbar = vector_from(field<Json>(j, "hbar"), "hbar");
  const Json hp = field<Json>(j, "hyperparameters");
  r.b = field<double>(hp, "b");
  r.representation = representation_from(field<Json>(hp, "representation"));
  r.epsilon = optional_field<double>(hp, "epsilon");
  r.lambda_g = optional_field<double>(hp, "lambda_g");
  r.tuned = field<bool>(hp, "tuned");
  return r;
}

EmbeddingRecord embedding_from_json(const Json &j) {
  EmbeddingRecord r;
  r.names = field<std::vector<std::string>>(j, "names");
  r.hbar = matrix_from(field<Json>(j, "hbar"), "hbar");
  r.losses = field<std::vector<double>>(j, "losses");
  return r;
}

ClusterRecord cluster_from_json(const Json &j) {
  ClusterRecord r;
  r.k = field<int>(j, "k");
  r.names = field<std::vector<std::string>>(j, "names");
  r.labels = field<Labels>(j, "labels");
  r.embeddings = matrix_from(field<Json>(j, "embeddings"), "embeddings");
  r.losses = field<std::vector<double>>(j, "losses");
  r.rand_index = optional_field<double>(j, "rand_index");
  r.adjusted_rand_index = optional_field<double>(j, "adjusted_rand_index");
  r.adjusted_mutual_info = optional_field<double>(j, "adjusted_mutual_info");
  return r;
}

CompletionRecord completion_from_json(const Json &j) {
  CompletionRecord r;
  r.structure = matrix_from(field<Json>(j, "structure"), "structure");
  if (j.contains("features") && !j.at("features").is_null())
    r.features = matrix_from(j.at("features"), "features");
  r.loss = field<double>(j, "loss");
  r.iterations = field<int>(j, "iterations");
  r.loss_trajectory = field<std::vector<double>>(j, "loss_trajectory");
  return r;
}

std::string representation_name(Representation r) {
  switch (r) {
  case Representation::Adjacency:
    return "adjacency";
  case Representation::ShortestPath:
    return "sp";
  case Representation::HeatKernel:
    return "heat";
  }
  return "adjacency";
}

Representation parse_representation(const std::string &name) {
  if (name == "adjacency")
    return Representation::Adjacency;
  if (name == "sp")
    return Representation::ShortestPath;
  if (name == "heat")
    return Representation::HeatKernel;
  throw IoError(fmt::format("unknown representation \"{}\" (adjacency|sp|heat)", name));
}

// ---- raw files ----

Json read_json(const fs::path &path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw IoError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_json(const fs::path &path, const Json &j) { write_text(path, j.dump(2) + "\n"); }

void write_matrix_csv(const fs::path &path, const Matrix &m) {
  std::string text;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0)
        text += ',';
      text += fmt::format("{}", m(i, j));
    }
    text += '\n';
  }
  write_text(path, text);
}

Matrix read_matrix_csv(const fs::path &path) {
  const std::string text = read_text(path);
  const auto rows = lines(text);
  check(!rows.empty(), fmt::format("{} is empty", path.string()));
  const auto cols = static_cast<Index>(split(rows.front(), ',').size());
  Matrix m(static_cast<Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto cells = split(rows[i], ',');
    check(static_cast<Index>(cells.size()) == cols,
          fmt::format("{}:{}: expected {} columns", path.string(), i + 1, cols));
    for (std::size_t j = 0; j < cells.size(); ++j)
      m(static_cast<Index>(i), static_cast<Index>(j)) =
          parse_double(cells[j], fmt::format("{}:{}", path.string(), i + 1));
  }
  return m;
}

void write_training_log(const fs::path &path, const std::vector<TrainingCheckpoint> &log) {
  std::string text = "epoch,eval_loss,wall_ms\n";
  for (const auto &c : log)
    text += fmt::format("{},{},{}\n", c.epoch, c.eval_loss, c.wall_ms);
  write_text(path, text);
}

std::vector<TrainingCheckpoint> read_training_log(const fs::path &path) {
  const std::string text = read_text(path);
  const auto rows = lines(text);
  check(!rows.empty() && rows.front() == "epoch,eval_loss,wall_ms",
        fmt::format("{}: missing training log header", path.string()));
  std::vector<TrainingCheckpoint> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split(rows[i], ',');
    const std::string where = fmt::format("{}:{}", path.string(), i + 1);
    check(cells.size() == 3, where + ": expected 3 columns");
    TrainingCheckpoint c;
    c.epoch = static_cast<int>(parse_double(cells[0], where));
    c.eval_loss = parse_double(cells[1], where);
    c.wall_ms = parse_double(cells[2], where);
    out.push_back(c);
  }
  return out;
}

}  // namespace srgw::io
