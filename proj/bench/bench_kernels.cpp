//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Serial reference kernels against their OpenMP versions, plus one full
// conditional gradient solve per size.

#include <benchmark/benchmark.h>

#include <random>

#include "srgw/graph.hpp"
#include "srgw/kernels.hpp"
#include "srgw/solvers.hpp"

namespace {

using namespace srgw;

constexpr Index kTarget = 10;

Matrix uniform(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      m(i, j) = u(rng);
  return m;
}

struct Instance {
  Matrix c, cbar, t, cost, f, fbar;
  Vector h;

  explicit Instance(Index n)
      : c(gen_sbm(std::vector<int>{static_cast<int>(n / 2), static_cast<int>(n - n / 2)},
                  sbm_connectivity(2, 0.5, 0.05), 1)
              .adjacency),
        cbar(uniform(kTarget, kTarget, 2)), t(uniform(n, kTarget, 3)), cost(uniform(n, kTarget, 4)),
        f(uniform(n, 8, 5)), fbar(uniform(kTarget, 8, 6)), h(Vector::Constant(n, 1.0 / static_cast<double>(n))) {
    cbar = 0.5 * (cbar + cbar.transpose()).eval();
    for (Index i = 0; i < n; ++i)
      t.row(i) *= h(i) / t.row(i).sum();
  }
};

template <bool Parallel>
void BM_TensorProduct(benchmark::State &state) {
  const Instance in(state.range(0));
  Matrix out;
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::tensor_product(in.c, in.cbar, in.t, out);
    else
      kernels::serial::tensor_product(in.c, in.cbar, in.t, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_RowArgmin(benchmark::State &state) {
  const Instance in(state.range(0));
  Matrix x;
  for (auto _ : state) {
    auto idx = Parallel ? kernels::parallel::row_argmin_plan(in.cost, in.h, x)
                        : kernels::serial::row_argmin_plan(in.cost, in.h, x);
    benchmark::DoNotOptimize(idx.data());
  }
}

template <bool Parallel>
void BM_FeatureDistances(benchmark::State &state) {
  const Instance in(state.range(0));
  Matrix out;
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::sq_distances(in.f, in.fbar, out);
    else
      kernels::serial::sq_distances(in.f, in.fbar, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_Dot(benchmark::State &state) {
  const Instance in(state.range(0));
  for (auto _ : state) {
    const double d = Parallel ? kernels::parallel::dot(in.cost, in.t) : kernels::serial::dot(in.cost, in.t);
    benchmark::DoNotOptimize(d);
  }
}

void BM_SolveCg(benchmark::State &state) {
  const Instance in(state.range(0));
  const Graph g = Graph::uniform(in.c);
  SolverConfig cfg;
  cfg.init = OuterRandom{0};
  for (auto _ : state) {
    const SolveResult r = solve(g, in.cbar, nullptr, cfg);
    benchmark::DoNotOptimize(r.loss);
  }
}

void sizes(benchmark::internal::Benchmark *b) {
  for (int n : {100, 200, 400, 800})
    b->Arg(n);
  b->Unit(benchmark::kMicrosecond);
}

}  // namespace

BENCHMARK(BM_TensorProduct<false>)->Apply(sizes)->Name("tensor_product/serial");
BENCHMARK(BM_TensorProduct<true>)->Apply(sizes)->Name("tensor_product/parallel");
BENCHMARK(BM_RowArgmin<false>)->Apply(sizes)->Name("row_argmin/serial");
BENCHMARK(BM_RowArgmin<true>)->Apply(sizes)->Name("row_argmin/parallel");
BENCHMARK(BM_FeatureDistances<false>)->Apply(sizes)->Name("sq_distances/serial");
BENCHMARK(BM_FeatureDistances<true>)->Apply(sizes)->Name("sq_distances/parallel");
BENCHMARK(BM_Dot<false>)->Apply(sizes)->Name("dot/serial");
BENCHMARK(BM_Dot<true>)->Apply(sizes)->Name("dot/parallel");
BENCHMARK(BM_SolveCg)->Apply(sizes)->Name("solve_cg");

BENCHMARK_MAIN();
