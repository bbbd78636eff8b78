//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "srgw/kmeans.hpp"

#include <limits>
#include <random>

#include <fmt/format.h>

namespace srgw {

namespace {

struct Run {
  Labels labels;
  Matrix centroids;
  double inertia;
};

Matrix seed_plus_plus(const Matrix &x, int k, std::mt19937_64 &rng) {
  const Index n = x.rows();
  Matrix centers(k, x.cols());
  std::uniform_int_distribution<Index> pick(0, n - 1);
  centers.row(0) = x.row(pick(rng));
  Vector d2 = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Index chosen = 0;
    if (total <= 0.0) {
      chosen = pick(rng);
    } else {
      double r = unif(rng) * total;
      chosen = n - 1;
      for (Index i = 0; i < n; ++i) {
        r -= d2(i);
        if (r <= 0.0 && d2(i) > 0.0) {
          chosen = i;
          break;
        }
      }
    }
    centers.row(c) = x.row(chosen);
    d2 = d2.cwiseMin((x.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

Run lloyd(const Matrix &x, Matrix centers, int max_iterations) {
  const Index n = x.rows();
  const Index k = centers.rows();
  Labels labels(static_cast<std::size_t>(n), -1);
  double inertia = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    bool changed = false;
    inertia = 0.0;
    Vector best_d(n);
    for (Index i = 0; i < n; ++i) {
      Index best = 0;
      double bd = std::numeric_limits<double>::infinity();
      for (Index c = 0; c < k; ++c) {
        const double d = (x.row(i) - centers.row(c)).squaredNorm();
        if (d < bd) {
          bd = d;
          best = c;
        }
      }
      best_d(i) = bd;
      inertia += bd;
      if (labels[static_cast<std::size_t>(i)] != static_cast<int>(best)) {
        labels[static_cast<std::size_t>(i)] = static_cast<int>(best);
        changed = true;
      }
    }
    if (!changed && it > 0)
      break;

    Matrix sums = Matrix::Zero(k, x.cols());
    std::vector<Index> counts(static_cast<std::size_t>(k), 0);
    for (Index i = 0; i < n; ++i) {
      sums.row(labels[static_cast<std::size_t>(i)]) += x.row(i);
      ++counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
    }
    for (Index c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      } else {
        // empty cluster: move it onto the worst-served point
        Index far = 0;
        best_d.maxCoeff(&far);
        centers.row(c) = x.row(far);
        best_d(far) = 0.0;
      }
    }
  }
  return {std::move(labels), std::move(centers), inertia};
}

}  // namespace

KMeansResult kmeans(const Matrix &points, int k, int restarts, std::uint64_t seed,
                    int max_iterations) {
  detail::require(k >= 1 && k <= points.rows(),
                  fmt::format("k-means needs 1 <= k <= {} samples, got k = {}", points.rows(), k));
  detail::require(restarts >= 1, "k-means needs at least one restart");
  std::mt19937_64 rng(seed);
  Run best{{}, {}, std::numeric_limits<double>::infinity()};
  for (int r = 0; r < restarts; ++r) {
    Run run = lloyd(points, seed_plus_plus(points, k, rng), max_iterations);
    if (run.inertia < best.inertia)
      best = std::move(run);
  }
  return {std::move(best.labels), std::move(best.centroids), best.inertia};
}

}  // namespace srgw
