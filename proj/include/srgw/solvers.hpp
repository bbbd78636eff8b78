//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "srgw/gw.hpp"
#include "srgw/types.hpp"

namespace srgw {

class Graph;

// Initial couplings. All of them have rows summing to h.

/// T0 = h (1/m) 1^T. Stationary for identity-like targets, avoid for partitioning.
struct OuterUniform {};
/// T0 = h r^T with r drawn uniformly on the simplex.
struct OuterRandom {
  std::uint64_t seed = 0;
};
/// Hard k-means (k = m) assignment of the rows of diag(h) C.
struct KmeansHard {};
struct GivenPlan {
  Matrix plan;
};
using InitStrategy = std::variant<OuterUniform, OuterRandom, KmeansHard, GivenPlan>;

/// Called with (iteration, plan) for the initial plan and after every update.
using IterateObserver = std::function<void(int, const Matrix &)>;

struct SolverConfig {
  int max_iterations = 1000;
  double rel_tolerance = 1e-5;
  std::optional<double> epsilon;   // entropic mirror descent when set
  std::optional<double> lambda_g;  // sparsity-promoting MM when set
  std::optional<double> alpha;     // fused trade-off when features are present
  InitStrategy init = OuterRandom{0};
  std::uint64_t seed = 0;          // k-means seeding for KmeansHard
  int mm_max_outer = 50;
  double mm_rel_tolerance = 1e-5;
  IterateObserver observer;

  void validate() const;
};

struct PhaseTimings {
  double gradient_ms = 0.0;
  double direction_ms = 0.0;
  double linesearch_ms = 0.0;
  double total_ms = 0.0;
};

struct SolveResult {
  Coupling coupling;
  Vector hbar;                         // T^T 1_n
  double loss = 0.0;                   // GW (or FGW) part only
  double regularized_loss = 0.0;       // plus linear / sparsity terms
  int iterations = 0;
  bool converged = false;
  std::vector<double> loss_trajectory; // objective after each iterate (outer objective for MM)
  PhaseTimings timings;                // wall clock, not part of any determinism contract
};

enum class BaseSolver { ConditionalGradient, Entropic };

/// Linear minimization oracle over U(h, m): each row puts all of h_i on its
/// cheapest column, ties going to the lowest index.
Matrix cg_direction(const Matrix &cost, const Vector &h);

/// Exact step in [0, 1] minimizing <L(x)Z, Z> + <D, Z> on Z = T + g (X - T).
double cg_linesearch(const Matrix &c, const Matrix &cbar, const Matrix &t, const Matrix &x,
                     const Matrix *linear = nullptr);

/// Minimizer over [0, 1] of a g^2 + b g; flat or concave cases pick the
/// better endpoint, ties resolving to 0.
double quadratic_step(double a, double b);

/// diag(h / K 1) K for K = exp(log_kernel), stabilized per row.
Matrix rows_to_marginal_log(const Matrix &log_kernel, const Vector &h);

Matrix initial_plan(const Matrix &c, const Vector &h, Index m, const InitStrategy &init,
                    std::uint64_t kmeans_seed);

/// Conditional-gradient solver for srGW(C, h, Cbar), optionally with a linear
/// term <D, T>.
SolveResult solve_srgw_cg(const Matrix &c, const Vector &h, const Matrix &cbar,
                          const SolverConfig &config);
SolveResult solve_srgw_cg(const Matrix &c, const Vector &h, const Matrix &cbar, const Matrix &linear,
                          const SolverConfig &config);

/// Mirror descent in KL geometry; needs config.epsilon > 0.
SolveResult solve_srgw_entropic(const Matrix &c, const Vector &h, const Matrix &cbar,
                                const SolverConfig &config);
SolveResult solve_srgw_entropic(const Matrix &c, const Vector &h, const Matrix &cbar,
                                const Matrix &linear, const SolverConfig &config);

/// Majorization-minimization for gw + lambda_g sum_j sqrt(hbar_j).
SolveResult solve_srgw_sparse(const Matrix &c, const Vector &h, const Matrix &cbar,
                              const SolverConfig &config,
                              BaseSolver base = BaseSolver::ConditionalGradient);

/// n x m matrix whose column j is (lambda_g / 2) / sqrt(hbar_j), or a large
/// cap for emptied columns.
Matrix sparsity_linearization(const Vector &hbar, Index n, double lambda_g);

/// Fused variant: quadratic term scaled by alpha, linear term (1 - alpha) M(F, Fbar).
/// Runs mirror descent if config.epsilon is set and MM if config.lambda_g is.
SolveResult solve_srfgw(const Matrix &c, const Matrix &f, const Vector &h, const Matrix &cbar,
                        const Matrix &fbar, double alpha, const SolverConfig &config);

/// Picks the solver from the config: fused when both sides carry features,
/// MM when lambda_g is set, mirror descent when epsilon is set, CG otherwise.
SolveResult solve(const Graph &graph, const Matrix &cbar, const Matrix *fbar,
                  const SolverConfig &config);

Vector second_marginal(const Matrix &plan);

/// Sorted {j : hbar_j > tol}.
std::vector<Index> support(const Vector &hbar, double tol = 1e-9);

}  // namespace srgw
