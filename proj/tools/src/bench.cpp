//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "srgw/bench.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "srgw/graph.hpp"
#include "srgw/log.hpp"
#include "srgw/solvers.hpp"

namespace srgw {

using detail::require;

namespace {

constexpr const char *kPhases[] = {"gradient", "direction", "linesearch", "total"};

double phase_ms(const BenchRecord &r, const std::string &phase) {
  if (phase == "gradient")
    return r.gradient_ms;
  if (phase == "direction")
    return r.direction_ms;
  if (phase == "linesearch")
    return r.linesearch_ms;
  if (phase == "total")
    return r.total_ms;
  throw InvalidInput(fmt::format("unknown phase \"{}\"", phase));
}

Matrix random_target(Index m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix t(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = i; j < m; ++j)
      t(i, j) = t(j, i) = i == j ? 0.0 : u(rng);
  return t;
}

std::vector<int> three_blocks(Index n) {
  const int base = static_cast<int>(n / 3);
  return {base, base, static_cast<int>(n) - 2 * base};
}

}  // namespace

BenchTable bench_scaling(const BenchOptions &o) {
  require(!o.sizes.empty(), "bench needs at least one size");
  require(std::is_sorted(o.sizes.begin(), o.sizes.end()), "bench sizes must be sorted ascending");
  require(o.sizes.front() >= 3, "bench sizes must be >= 3");
  require(o.m >= 1, "bench target size must be >= 1");
  require(o.repeats >= 1, "bench repeats must be >= 1");

  BenchTable table;
  const Matrix cbar = random_target(o.m, o.seed);
  SolverConfig cfg;
  cfg.rel_tolerance = o.rel_tolerance;
  cfg.max_iterations = o.max_iterations;
  cfg.init = OuterRandom{o.seed};
  cfg.validate();

  std::vector<Graph> graphs;
  for (const Index n : o.sizes) {
    const SbmSample s =
        gen_sbm(three_blocks(n), sbm_connectivity(3, 0.5, 0.05), o.seed + static_cast<std::uint64_t>(n));
    graphs.push_back(Graph::uniform(s.adjacency));
    solve(graphs.back(), cbar, nullptr, cfg);   // warm-up, untimed
  }
  // sizes interleaved within each repeat so slow drifts in machine load hit all sizes alike
  for (int rep = 0; rep < o.repeats; ++rep) {
    for (std::size_t k = 0; k < graphs.size(); ++k) {
      const SolveResult r = solve(graphs[k], cbar, nullptr, cfg);
      table.records.push_back({o.sizes[k], o.m, "cg", rep, r.timings.gradient_ms, r.timings.direction_ms,
                               r.timings.linesearch_ms, r.timings.total_ms, r.iterations, r.loss});
      log().debug("bench n={} repeat={} iterations={} total {:.3f} ms", o.sizes[k], rep, r.iterations,
                  r.timings.total_ms);
    }
  }
  std::stable_sort(table.records.begin(), table.records.end(),
                   [](const BenchRecord &x, const BenchRecord &y) { return x.n < y.n; });

  if (o.sizes.size() >= 2) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const Index n : o.sizes) {
      const double x = std::log(static_cast<double>(n));
      const double y = std::log(std::max(median_phase_ms(table, n, "direction"), 1e-9));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double k = static_cast<double>(o.sizes.size());
    table.direction_slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  }
  return table;
}

double median_phase_ms(const BenchTable &table, Index n, const std::string &phase) {
  std::vector<double> v;
  for (const auto &r : table.records)
    if (r.n == n)
      v.push_back(phase_ms(r, phase));
  require(!v.empty(), fmt::format("no bench records at n = {}", n));
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

void write_bench_csv(std::ostream &out, const BenchTable &table) {
  out << "n,m,solver,phase,wall_ms,iterations,loss\n";
  for (const auto &r : table.records)
    for (const char *phase : kPhases)
      out << fmt::format("{},{},{},{},{:.6f},{},{}\n", r.n, r.m, r.solver, phase, phase_ms(r, phase),
                         r.iterations, r.loss);
}

}  // namespace srgw
