//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>

#include "srgw/types.hpp"

namespace srgw {

struct KMeansResult {
  Labels labels;      // one per input row, in [0, k)
  Matrix centroids;   // k x d
  double inertia = 0.0;
};

/// Lloyd's algorithm with k-means++ seeding; the restart with the lowest
/// inertia wins. Rows of `points` are the samples. Deterministic in `seed`.
/// Requires 1 <= k <= rows.
KMeansResult kmeans(const Matrix &points, int k, int restarts, std::uint64_t seed,
                    int max_iterations = 300);

}  // namespace srgw
