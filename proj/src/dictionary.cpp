//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "srgw/dictionary.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "srgw/kmeans.hpp"
#include "srgw/log.hpp"

namespace srgw {

using detail::require;

namespace {

constexpr double kInitMean = 0.5;
constexpr double kInitStd = 0.1;

void check_item(const GradientItem &item, Index m) {
  require(item.graph != nullptr && item.plan != nullptr, "gradient item is missing its graph or plan");
  require(item.plan->rows() == item.graph->size() && item.plan->cols() == m,
          fmt::format("plan is {}x{}, expected {}x{}", item.plan->rows(), item.plan->cols(),
                      item.graph->size(), m));
}

double fused_alpha(const SolverConfig &cfg) { return cfg.alpha.value_or(0.5); }

double mean_loss(const std::vector<Embedding> &e) {
  double s = 0.0;
  for (const auto &x : e)
    s += x.loss;
  return s / static_cast<double>(e.size());
}

}  // namespace

AdamOptimizer::AdamOptimizer(double learning_rate, double beta1, double beta2, double eps)
    : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(eps) {}

void AdamOptimizer::step(Matrix &param, const Matrix &grad) {
  require(param.rows() == grad.rows() && param.cols() == grad.cols(),
          "gradient shape differs from the parameter");
  if (m_.size() == 0) {
    m_ = Matrix::Zero(grad.rows(), grad.cols());
    v_ = Matrix::Zero(grad.rows(), grad.cols());
  }
  ++steps_;
  m_ = beta1_ * m_ + (1.0 - beta1_) * grad;
  v_ = beta2_ * v_ + (1.0 - beta2_) * grad.cwiseProduct(grad);
  const double c1 = 1.0 - std::pow(beta1_, steps_);
  const double c2 = 1.0 - std::pow(beta2_, steps_);
  param.array() -= lr_ * (m_.array() / c1) / ((v_.array() / c2).sqrt() + eps_);
}

void DictionaryAtom::validate() const {
  require(structure.rows() >= 1 && structure.rows() == structure.cols(),
          "atom structure must be a nonempty square matrix");
  require(structure.allFinite(), "atom structure must be finite");
  require(is_symmetric(structure, 1e-12), "atom structure must be symmetric");
  require(structure.minCoeff() >= 0.0, "atom structure must be nonnegative");
  if (features) {
    require(features->rows() == structure.rows(), "atom features need one row per atom node");
    require(features->allFinite(), "atom features must be finite");
  }
}

void TrainConfig::validate() const {
  require(atom_size >= 1, "atom size must be >= 1");
  require(batch_size >= 1, "batch size must be >= 1");
  require(learning_rate > 0.0, "learning rate must be positive");
  require(max_epochs >= 1, "max_epochs must be >= 1");
  require(eval_every >= 1, "eval_every must be >= 1");
  require(patience >= 1, "patience must be >= 1");
  require(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0, "Adam betas must lie in [0, 1)");
  require(adam_eps > 0.0, "Adam eps must be positive");
  solver.validate();
}

Embedding embed(const Graph &graph, const DictionaryAtom &atom, const SolverConfig &config) {
  require(graph.has_features() == atom.features.has_value(),
          graph.has_features() ? "graph has node features but the atom has none"
                               : "atom has features but the graph has none");
  const Matrix *fbar = atom.features ? &*atom.features : nullptr;
  SolveResult r = solve(graph, atom.structure, fbar, config);
  return {std::move(r.hbar), std::move(r.coupling), r.loss};
}

std::vector<Embedding> embed_all(std::span<const Graph> graphs, const DictionaryAtom &atom,
                                 const SolverConfig &config) {
  atom.validate();
  const auto n = static_cast<std::ptrdiff_t>(graphs.size());
  std::vector<Embedding> out(graphs.size());
  std::vector<std::exception_ptr> errors(graphs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      out[static_cast<std::size_t>(k)] = embed(graphs[static_cast<std::size_t>(k)], atom, config);
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (const auto &e : errors)
    if (e)
      std::rethrow_exception(e);
  return out;
}

Matrix atom_structure_gradient(std::span<const GradientItem> batch, const DictionaryAtom &atom) {
  require(!batch.empty(), "gradient batch is empty");
  const Index m = atom.size();
  Matrix g = Matrix::Zero(m, m);
  for (const auto &item : batch) {
    check_item(item, m);
    const Matrix &t = *item.plan;
    const Vector hbar = second_marginal(t);
    g += atom.structure.cwiseProduct(hbar * hbar.transpose()) -
         t.transpose() * item.graph->structure() * t;
  }
  return (2.0 / static_cast<double>(batch.size())) * g;
}

Matrix atom_feature_gradient(std::span<const GradientItem> batch, const DictionaryAtom &atom) {
  require(!batch.empty(), "gradient batch is empty");
  require(atom.features.has_value(), "atom has no features");
  const Index m = atom.size();
  const Matrix &fbar = *atom.features;
  Matrix g = Matrix::Zero(m, fbar.cols());
  for (const auto &item : batch) {
    check_item(item, m);
    require(item.graph->has_features(), "graph in batch has no features");
    require(item.graph->feature_dim() == fbar.cols(), "feature dimensions differ");
    const Matrix &t = *item.plan;
    g += second_marginal(t).asDiagonal() * fbar - t.transpose() * item.graph->features();
  }
  return (2.0 / static_cast<double>(batch.size())) * g;
}

Matrix project_symmetric_nonneg(const Matrix &m) {
  require(m.rows() == m.cols(), "projection needs a square matrix");
  return (0.5 * (m + m.transpose())).cwiseMax(0.0);
}

DictionaryAtom init_atom(Index m, std::optional<Index> feature_dim, const GraphDataset *dataset,
                         std::uint64_t seed) {
  require(m >= 1, "atom size must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(kInitMean, kInitStd);
  DictionaryAtom atom;
  atom.structure.resize(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = i; j < m; ++j)
      atom.structure(i, j) = atom.structure(j, i) = std::max(0.0, normal(rng));
  if (!feature_dim)
    return atom;

  const Index d = *feature_dim;
  require(d >= 1, "feature dimension must be >= 1");
  require(dataset != nullptr && dataset->attributed(), "feature initialization needs an attributed dataset");
  Index total = 0;
  for (const auto &g : dataset->graphs) {
    require(g.feature_dim() == d, "feature dimensions differ across the dataset");
    total += g.size();
  }
  Matrix pool(total, d);
  Index row = 0;
  for (const auto &g : dataset->graphs) {
    pool.middleRows(row, g.size()) = g.features();
    row += g.size();
  }
  const int k = static_cast<int>(std::min(m, total));
  const KMeansResult km = kmeans(pool, k, 10, seed);
  Matrix f(m, d);
  for (Index j = 0; j < m; ++j)
    f.row(j) = km.centroids.row(j % k);
  atom.features = std::move(f);
  return atom;
}

TrainingResult train_dictionary(const GraphDataset &dataset, const TrainConfig &config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };
  const bool fused = dataset.attributed();
  const double alpha = fused ? fused_alpha(config.solver) : 1.0;
  const std::span<const Graph> graphs(dataset.graphs);
  const std::size_t count = graphs.size();

  DictionaryAtom atom =
      init_atom(config.atom_size,
                fused ? std::optional<Index>(graphs.front().feature_dim()) : std::nullopt, &dataset,
                config.seed);

  TrainingResult result;
  result.atom = atom;
  double best = mean_loss(embed_all(graphs, atom, config.solver));
  result.log.push_back({0, best, elapsed()});
  log().info("epoch 0: eval loss {:.6g}", best);

  AdamOptimizer adam_structure(config.learning_rate, config.beta1, config.beta2, config.adam_eps);
  AdamOptimizer adam_features(config.learning_rate, config.beta1, config.beta2, config.adam_eps);
  std::vector<std::optional<Matrix>> warm(count);
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(config.seed);
  const bool entropic = config.solver.epsilon.has_value();
  int stale = 0;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    result.epochs_run = epoch;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t lo = 0; lo < count; lo += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t hi = std::min(count, lo + static_cast<std::size_t>(config.batch_size));
      const auto b = static_cast<std::ptrdiff_t>(hi - lo);
      std::vector<std::optional<Matrix>> plans(hi - lo);
      std::vector<std::exception_ptr> errors(hi - lo);
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t k = 0; k < b; ++k) {
        const std::size_t idx = order[lo + static_cast<std::size_t>(k)];
        SolverConfig cfg = config.solver;
        cfg.observer = nullptr;
        const auto &w = warm[idx];
        if (config.warm_start && w && (!entropic || w->minCoeff() > 0.0))
          cfg.init = GivenPlan{*w};
        try {
          plans[static_cast<std::size_t>(k)] = embed(graphs[idx], atom, cfg).coupling.plan();
        } catch (const SolverFailure &e) {
          log().warn("solver failed on graph {}: {}", idx, e.what());
        } catch (...) {
          errors[static_cast<std::size_t>(k)] = std::current_exception();
        }
      }
      for (const auto &e : errors)
        if (e)
          std::rethrow_exception(e);

      std::vector<GradientItem> items;
      for (std::size_t k = 0; k < plans.size(); ++k) {
        const std::size_t idx = order[lo + k];
        if (!plans[k]) {
          ++result.failed_solves;
          continue;
        }
        warm[idx] = std::move(plans[k]);
        items.push_back({&graphs[idx], &*warm[idx]});
      }
      if (items.empty())
        continue;

      Matrix gs = atom_structure_gradient(items, atom);
      if (fused)
        gs *= alpha;
      adam_structure.step(atom.structure, gs);
      atom.structure = project_symmetric_nonneg(atom.structure);
      if (fused) {
        const Matrix gf = (1.0 - alpha) * atom_feature_gradient(items, atom);
        adam_features.step(*atom.features, gf);
      }
    }

    if (epoch % config.eval_every != 0 && epoch != config.max_epochs)
      continue;
    const double loss = mean_loss(embed_all(graphs, atom, config.solver));
    result.log.push_back({epoch, loss, elapsed()});
    log().info("epoch {}: eval loss {:.6g}", epoch, loss);
    if (loss < best) {
      best = loss;
      result.atom = atom;
      stale = 0;
    } else if (++stale >= config.patience) {
      result.early_stopped = true;
      break;
    }
  }
  return result;
}

}  // namespace srgw
