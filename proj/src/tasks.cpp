//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "srgw/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "srgw/kmeans.hpp"
#include "srgw/log.hpp"

namespace srgw {

using detail::require;

namespace {

constexpr double kClusterMassTol = 1e-9;

bool better(double candidate, double incumbent) { return candidate > incumbent; }

// One grid point of tune_partition.
struct Candidate {
  PartitionSettings settings;
  double b = 0.0;
};

std::optional<PartitionResult> try_partition(const Matrix &adjacency, int q, const PartitionSettings &s) {
  try {
    return partition_adjacency(adjacency, q, s);
  } catch (const SolverFailure &e) {
    log().warn("partition run failed: {}", e.what());
    return std::nullopt;
  }
}

// Evaluates every candidate (in parallel) and appends the records in order.
std::vector<std::optional<PartitionResult>> evaluate(const Matrix &adjacency, int q,
                                                     const std::vector<Candidate> &cands,
                                                     std::vector<TuneRecord> &records) {
  std::vector<std::optional<PartitionResult>> out(cands.size());
  std::vector<std::exception_ptr> errors(cands.size());
  const auto count = static_cast<std::ptrdiff_t>(cands.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    try {
      out[static_cast<std::size_t>(k)] = try_partition(adjacency, q, cands[static_cast<std::size_t>(k)].settings);
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (const auto &e : errors)
    if (e)
      std::rethrow_exception(e);
  for (std::size_t k = 0; k < cands.size(); ++k) {
    if (!out[k])
      continue;
    const auto &s = cands[k].settings;
    records.push_back({cands[k].b, s.representation, s.solver.epsilon, s.solver.lambda_g, out[k]->modularity,
                       out[k]->clusters.size()});
  }
  return out;
}

std::vector<Candidate> grid_for(const TuneGrid &grid, RepresentationKind rep, const SolverConfig &base) {
  std::vector<Candidate> cands;
  for (double b : grid.b_grid)
    for (const auto &eps : grid.epsilon_grid)
      for (const auto &lambda : grid.lambda_grid) {
      Candidate c;
      c.b = b;
      c.settings.representation = rep;
      c.settings.distribution = b == 0.0 ? DistributionSpec::uniform() : DistributionSpec::power_law(0.0, b);
      c.settings.solver = base;
      c.settings.solver.epsilon = eps;
      c.settings.solver.lambda_g = lambda;
      cands.push_back(std::move(c));
    }
  return cands;
}

void keep_best(std::vector<std::optional<PartitionResult>> &results, std::optional<PartitionResult> &best) {
  for (auto &r : results)
    if (r && (!best || better(r->modularity, best->modularity)))
      best = std::move(r);
}

Matrix uniform_outer(const Vector &h) { return h * h.transpose(); }

}  // namespace

// ---- partitioning ----

PartitionResult partition(const Graph &graph, int q, const SolverConfig &config) {
  require(q >= 2, fmt::format("partition needs q >= 2, got {}", q));
  require(q <= graph.size(), fmt::format("q = {} exceeds the number of nodes ({})", q, graph.size()));
  const Matrix target = Matrix::Identity(q, q);
  SolveResult r = solve(graph, target, nullptr, config);

  PartitionResult out;
  const Matrix &t = r.coupling.plan();
  const double top = r.hbar.maxCoeff();
  std::vector<int> compact(static_cast<std::size_t>(q), -1);
  for (Index j = 0; j < q; ++j)
    if (r.hbar(j) > kClusterMassTol * top) {
      compact[static_cast<std::size_t>(j)] = static_cast<int>(out.clusters.size());
      out.clusters.push_back(j);
    }
  out.labels.resize(static_cast<std::size_t>(graph.size()));
  for (Index i = 0; i < graph.size(); ++i) {
    Index arg = 0;
    t.row(i).maxCoeff(&arg);
    if (compact[static_cast<std::size_t>(arg)] < 0) {
      // the row's heaviest column was dropped; fall back to the heaviest kept one
      double best = -1.0;
      for (Index j : out.clusters)
        if (t(i, j) > best) {
          best = t(i, j);
          arg = j;
        }
    }
    out.labels[static_cast<std::size_t>(i)] = compact[static_cast<std::size_t>(arg)];
  }
  out.hbar = std::move(r.hbar);
  out.coupling = std::move(r.coupling);
  out.loss = r.loss;
  out.modularity = std::numeric_limits<double>::quiet_NaN();
  out.settings.solver = config;
  return out;
}

PartitionResult partition_adjacency(const Matrix &adjacency, int q, const PartitionSettings &settings) {
  validate_adjacency(adjacency);
  const Matrix c = build_representation(adjacency, settings.representation);
  const Vector h = node_distribution(adjacency, settings.distribution);
  PartitionResult r = partition(Graph(c, h), q, settings.solver);
  r.settings = settings;
  if (adjacency.sum() > 0.0)
    r.modularity = modularity(adjacency, r.labels);
  return r;
}

TuneResult tune_partition(const Matrix &adjacency, int q, const TuneGrid &grid, const SolverConfig &base) {
  require(!grid.b_grid.empty() && !grid.representations.empty() && !grid.epsilon_grid.empty() &&
              !grid.lambda_grid.empty(),
          "tuning grids must be nonempty");
  require(grid.heat_lo > 0.0 && grid.heat_hi >= grid.heat_lo, "heat range must satisfy 0 < lo <= hi");
  TuneResult out;
  std::optional<PartitionResult> best;

  for (Representation rep : grid.representations) {
    if (rep != Representation::HeatKernel) {
      const RepresentationKind kind{rep, 1.0};
      auto results = evaluate(adjacency, q, grid_for(grid, kind, base), out.evaluated);
      keep_best(results, best);
      continue;
    }
    double lo = grid.heat_lo, hi = grid.heat_hi;
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int round = 0; round < grid.heat_max_rounds; ++round) {
      const double spacing = (hi - lo) / 4.0;
      std::vector<Candidate> cands;
      for (int k = 0; k < 5; ++k) {
        const double t = lo + spacing * k;
        auto more = grid_for(grid, RepresentationKind::heat_kernel(t), base);
        cands.insert(cands.end(), more.begin(), more.end());
        if (spacing == 0.0)
          break;
      }
      auto results = evaluate(adjacency, q, cands, out.evaluated);
      std::optional<PartitionResult> round_best;
      keep_best(results, round_best);
      if (!round_best)
        break;
      const double score = round_best->modularity;
      const double center = round_best->settings.representation.heat_t;
      if (!best || better(score, best->modularity))
        best = round_best;
      if (!std::isnan(prev) && std::abs(score - prev) <= grid.heat_rel_stop * std::abs(prev))
        break;
      prev = score;
      if (spacing == 0.0)
        break;
      lo = std::max(grid.heat_lo, center - spacing);
      hi = std::min(grid.heat_hi, center + spacing);
    }
  }
  if (!best)
    throw SolverFailure("every partition run in the tuning grid failed");
  out.best = std::move(*best);
  return out;
}

// ---- clustering ----

ClusterResult cluster_graphs(const GraphDataset &dataset, const DictionaryAtom &atom, int k,
                             const SolverConfig &config, std::uint64_t seed) {
  require(k >= 2, fmt::format("clustering needs k >= 2, got {}", k));
  require(static_cast<std::size_t>(k) <= dataset.size(),
          fmt::format("k = {} exceeds the number of graphs ({})", k, dataset.size()));
  const auto emb = embed_all(dataset.graphs, atom, config);
  ClusterResult out;
  out.embeddings.resize(static_cast<Index>(emb.size()), atom.size());
  for (std::size_t g = 0; g < emb.size(); ++g) {
    out.embeddings.row(static_cast<Index>(g)) = emb[g].hbar.transpose();
    out.losses.push_back(emb[g].loss);
  }
  out.labels = kmeans(out.embeddings, k, 10, seed).labels;
  return out;
}

// ---- completion ----

namespace {

CompletionResult complete_once(const CompletionProblem &problem, const SolverConfig &solver,
                               const CompletionConfig &config, std::uint64_t seed) {
  const Matrix &obs = problem.observed;
  const Index n_obs = obs.rows();
  const Index n = problem.total_nodes;
  const bool fused = problem.atom.features.has_value();
  CompletionResult out;
  const bool zero_diag = obs.diagonal().cwiseAbs().maxCoeff() == 0.0;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.1);

  // imputed entries start around 0.5, links to observed nodes around their scaled degree
  Matrix c = Matrix::Zero(n, n);
  c.topLeftCorner(n_obs, n_obs) = obs;
  const Vector deg = obs.rowwise().sum();
  const double max_deg = deg.maxCoeff();
  for (Index i = n_obs; i < n; ++i) {
    for (Index j = 0; j < n_obs; ++j) {
      const double mean =
          config.init == CompletionInit::DegreeScaled && max_deg > 0.0 ? deg(j) / max_deg : 0.5;
      c(i, j) = c(j, i) = std::clamp(mean + noise(rng), 0.0, 1.0);
    }
    for (Index j = i; j < n; ++j) {
      if (j == i && zero_diag)
        continue;
      c(i, j) = c(j, i) = std::clamp(0.5 + noise(rng), 0.0, 1.0);
    }
  }
  Matrix mask = Matrix::Ones(n, n);
  mask.topLeftCorner(n_obs, n_obs).setZero();
  if (zero_diag)
    mask.diagonal().setZero();

  std::optional<Matrix> f;
  const double alpha = fused ? solver.alpha.value_or(0.5) : 1.0;
  if (fused) {
    const Matrix &fo = *problem.observed_features;
    f = Matrix(n, fo.cols());
    f->topRows(n_obs) = fo;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (Index i = n_obs; i < n; ++i)
      for (Index d = 0; d < fo.cols(); ++d) {
        const double lo = fo.col(d).minCoeff(), hi = fo.col(d).maxCoeff();
        (*f)(i, d) = lo + (hi - lo) * unif(rng);
      }
  }

  const Vector h = Vector::Constant(n, 1.0 / static_cast<double>(n));
  const Matrix hh = uniform_outer(h);
  const Matrix &cbar = problem.atom.structure;
  const Matrix *fbar = fused ? &*problem.atom.features : nullptr;

  const auto solve_at = [&](const Matrix &cs, const std::optional<Matrix> &fs,
                            const std::optional<Matrix> &warm) {
    SolverConfig cfg = solver;
    cfg.alpha = alpha;
    if (warm && (!cfg.epsilon || warm->minCoeff() > 0.0))
      cfg.init = GivenPlan{*warm};
    return solve(Graph(cs, h, fs), cbar, fbar, cfg);
  };

  SolveResult cur = solve_at(c, f, std::nullopt);
  out.loss_trajectory.push_back(cur.loss);
  int it = 0;
  while (it < config.max_iterations) {
    ++it;
    const Matrix &t = cur.coupling.plan();
    // gradient of the GW cost at fixed T, divided entrywise by h h^T
    Matrix gc = 2.0 * alpha * (c - (t * cbar * t.transpose()).cwiseQuotient(hh));
    gc = gc.cwiseProduct(mask);
    std::optional<Matrix> gf;
    if (fused) {
      gf = 2.0 * (1.0 - alpha) * (*f - (t * *fbar).cwiseQuotient(h.replicate(1, f->cols())));
      gf->topRows(n_obs).setZero();
    }

    bool accepted = false;
    double step = config.step;
    for (int halving = 0; halving <= config.max_halvings; ++halving, step *= 0.5) {
      Matrix cn = (c - step * gc).cwiseMax(0.0).cwiseMin(1.0);
      cn = 0.5 * (cn + cn.transpose());
      cn.topLeftCorner(n_obs, n_obs) = obs;
      std::optional<Matrix> fn;
      if (fused)
        fn = *f - step * *gf;
      SolveResult next = solve_at(cn, fn, t);
      if (next.loss <= cur.loss) {
        c = std::move(cn);
        f = std::move(fn);
        std::swap(cur, next);
        accepted = true;
        break;
      }
    }
    if (!accepted)
      break;
    const double prev = out.loss_trajectory.back();
    out.loss_trajectory.push_back(cur.loss);
    if (cur.loss == 0.0 || std::abs(prev - cur.loss) <= config.rel_tolerance * std::abs(prev))
      break;
  }

  out.iterations = it;
  out.loss = cur.loss;
  out.relaxed = c;
  out.structure = c;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (mask(i, j) != 0.0)
        out.structure(i, j) = c(i, j) >= config.threshold ? 1.0 : 0.0;
  out.structure.topLeftCorner(n_obs, n_obs) = obs;
  out.features = std::move(f);
  return out;
}

}  // namespace

CompletionResult complete_graph(const CompletionProblem &problem, const SolverConfig &solver,
                                const CompletionConfig &config) {
  const Matrix &obs = problem.observed;
  const Index n_obs = obs.rows();
  const Index n = problem.total_nodes;
  require(n_obs >= 1 && obs.cols() == n_obs, "observed block must be a nonempty square matrix");
  require(n >= n_obs, fmt::format("{} observed nodes exceed the total of {}", n_obs, n));
  problem.atom.validate();
  const bool fused = problem.atom.features.has_value();
  require(fused == problem.observed_features.has_value(),
          "observed features and atom features must be both present or both absent");
  if (fused)
    require(problem.observed_features->rows() == n_obs &&
                problem.observed_features->cols() == problem.atom.features->cols(),
            "observed features must be n_obs x d with the atom's feature dimension");
  require(config.step > 0.0 && config.max_iterations >= 0 && config.restarts >= 1,
          "invalid completion step settings");
  solver.validate();

  CompletionResult out;
  if (n == n_obs) {
    out.structure = obs;
    out.relaxed = obs;
    out.features = problem.observed_features;
    return out;
  }

  std::optional<CompletionResult> best;
  std::mt19937_64 seeds(config.seed);
  for (int r = 0; r < config.restarts; ++r) {
    const std::uint64_t seed = r == 0 ? config.seed : seeds();
    CompletionResult run = complete_once(problem, solver, config, seed);
    if (!best || run.loss < best->loss)
      best = std::move(run);
  }
  return std::move(*best);
}

CompletionMetrics completion_metrics(const Matrix &truth, const Matrix &predicted, Index observed_count,
                                     const Matrix *true_features, const Matrix *predicted_features) {
  require(truth.rows() == truth.cols() && truth.rows() == predicted.rows() &&
              truth.cols() == predicted.cols(),
          "truth and prediction must be square matrices of the same size");
  const Index n = truth.rows();
  require(observed_count >= 0 && observed_count <= n, "observed count outside [0, n]");
  CompletionMetrics m;
  double hits = 0.0, total = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (i < observed_count && j < observed_count)
        continue;
      total += 1.0;
      if ((truth(i, j) >= 0.5) == (predicted(i, j) >= 0.5))
        hits += 1.0;
    }
  m.edge_accuracy = total > 0.0 ? hits / total : 1.0;
  if (true_features != nullptr && predicted_features != nullptr) {
    require(true_features->rows() == n && predicted_features->rows() == n &&
                true_features->cols() == predicted_features->cols(),
            "feature matrices must be n x d with matching d");
    const Index imputed = n - observed_count;
    m.feature_mse = imputed == 0 ? 0.0
                                 : (true_features->bottomRows(imputed) - predicted_features->bottomRows(imputed))
                                           .squaredNorm() /
                                       static_cast<double>(imputed * true_features->cols());
  }
  return m;
}

}  // namespace srgw
