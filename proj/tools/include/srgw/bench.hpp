//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "srgw/types.hpp"

namespace srgw {

struct BenchRecord {
  Index n = 0;
  Index m = 0;
  std::string solver;
  int repeat = 0;
  double gradient_ms = 0.0;
  double direction_ms = 0.0;
  double linesearch_ms = 0.0;
  double total_ms = 0.0;
  int iterations = 0;
  double loss = 0.0;
};

struct BenchTable {
  std::vector<BenchRecord> records;
  double direction_slope = 0.0;   // least-squares slope of log(median direction ms) on log n
};

struct BenchOptions {
  std::vector<Index> sizes = {100, 200, 400};
  Index m = 10;
  int repeats = 5;
  std::uint64_t seed = 0;
  double rel_tolerance = 1e-5;
  int max_iterations = 1000;
};

/// srGW conditional gradient on a 3-block SBM (p_in 0.5, p_out 0.05) per size
/// against a seeded random m-node target. Each size gets one untimed warm-up
/// solve; records come back grouped by size.
BenchTable bench_scaling(const BenchOptions &options);

/// Median over repeats of the named phase at size n.
double median_phase_ms(const BenchTable &table, Index n, const std::string &phase);

/// Header n,m,solver,phase,wall_ms,iterations,loss; one row per run and phase
/// (gradient, direction, linesearch, total).
void write_bench_csv(std::ostream &out, const BenchTable &table);

}  // namespace srgw
