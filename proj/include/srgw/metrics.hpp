//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <span>

#include "srgw/types.hpp"

namespace srgw {

/// Adjusted mutual information, max-entropy normalization, hypergeometric
/// expected MI. Two single-cluster labelings score 1.
double ami(std::span<const int> a, std::span<const int> b);

double adjusted_rand(std::span<const int> a, std::span<const int> b);

double rand_index(std::span<const int> a, std::span<const int> b);

/// Newman modularity of a labeling of an undirected 0/1 graph.
double modularity(const Matrix &adjacency, std::span<const int> labels);

}  // namespace srgw
