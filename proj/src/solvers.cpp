//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "srgw/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "srgw/graph.hpp"
#include "srgw/kernels.hpp"
#include "srgw/kmeans.hpp"
#include "srgw/log.hpp"

namespace srgw {

using detail::require;

namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

constexpr double kLogFloor = 1e-300;
constexpr double kMmZeroFloor = 1e-16;
constexpr double kMmCap = 1e16;
constexpr double kEntropicInitBlend = 1e-2;

// Quadratic problem alpha <L(C,Cbar)(x)T, T> + <D, T> over U(h, m).
struct Problem {
  const Matrix &c;
  const Matrix &cbar;
  const Vector &h;
  double alpha = 1.0;
  const Matrix *linear = nullptr;
  bool symmetric = true;
  Matrix ct;
  Matrix cbart;

  Problem(const Matrix &c_, const Matrix &cbar_, const Vector &h_, double alpha_,
          const Matrix *linear_)
      : c(c_), cbar(cbar_), h(h_), alpha(alpha_), linear(linear_) {
    require(c.rows() == c.cols() && c.rows() >= 1, "C must be a nonempty square matrix");
    require(cbar.rows() == cbar.cols() && cbar.rows() >= 1, "Cbar must be a nonempty square matrix");
    require(c.allFinite() && cbar.allFinite(), "structure matrices must be finite");
    require(h.size() == c.rows(), "h must have one entry per row of C");
    require(on_simplex(h, 1e-10), "h must lie on the simplex");
    if (linear != nullptr)
      require(linear->rows() == c.rows() && linear->cols() == cbar.rows(),
              "linear term must be n x m");
    symmetric = is_symmetric(c) && is_symmetric(cbar);
    if (!symmetric) {
      ct = c.transpose();
      cbart = cbar.transpose();
    }
  }

  Index n() const { return c.rows(); }
  Index m() const { return cbar.rows(); }
};

// L(C,Cbar)(x)T and, for asymmetric inputs, L(C^T,Cbar^T)(x)T.
struct Tensors {
  Matrix lt;
  Matrix ltt;
};

Tensors tensors(const Problem &p, const Matrix &t) {
  Tensors s;
  kernels::parallel::tensor_product(p.c, p.cbar, t, s.lt);
  if (!p.symmetric)
    kernels::parallel::tensor_product(p.ct, p.cbart, t, s.ltt);
  return s;
}

Matrix gradient(const Problem &p, const Tensors &s) {
  Matrix g = p.symmetric ? Matrix(2.0 * p.alpha * s.lt) : Matrix(p.alpha * (s.lt + s.ltt));
  if (p.linear != nullptr)
    g += *p.linear;
  return g;
}

double gw_part(const Tensors &s, const Matrix &t) {
  return std::max(0.0, kernels::parallel::dot(s.lt, t));
}

double objective(const Problem &p, const Tensors &s, const Matrix &t) {
  double f = p.alpha * gw_part(s, t);
  if (p.linear != nullptr)
    f += kernels::parallel::dot(*p.linear, t);
  return f;
}

bool small_variation(double prev, double cur, double tol) {
  return std::abs(prev - cur) <= tol * std::abs(prev);
}

void check_feasible(const Matrix &t, const Problem &p, double tol) {
  require(t.rows() == p.n() && t.cols() == p.m(),
          fmt::format("initial plan is {}x{}, expected {}x{}", t.rows(), t.cols(), p.n(), p.m()));
  Coupling(t, p.h, tol);
}

SolveResult finish(Matrix t, const Vector &h, double tol) {
  SolveResult r;
  r.hbar = second_marginal(t);
  r.coupling = Coupling(std::move(t), h, tol);
  return r;
}

bool product_init(const InitStrategy &init) {
  return std::holds_alternative<OuterUniform>(init) || std::holds_alternative<OuterRandom>(init);
}

SolveResult run_cg(const Problem &p, Matrix t, const SolverConfig &cfg, bool warm = false) {
  const auto start = Clock::now();
  check_feasible(t, p, 1e-10);
  PhaseTimings tm;
  Tensors st = tensors(p, t);
  double f = objective(p, st, t);
  std::vector<double> traj{f};
  if (cfg.observer)
    cfg.observer(0, t);

  bool converged = false;
  int it = 0;
  Matrix x;
  while (it < cfg.max_iterations) {
    ++it;
    auto t0 = Clock::now();
    const Matrix g = gradient(p, st);
    if (!g.allFinite())
      throw SolverFailure("non-finite gradient in conditional-gradient solver");
    auto t1 = Clock::now();
    kernels::parallel::row_argmin_plan(g, p.h, x);
    auto t2 = Clock::now();
    if (it == 1 && !warm && product_init(cfg.init) && x == t)
      log().warn("first CG direction equals the initial plan; the initialization is stationary "
                 "(e.g. a uniform outer product on an identity-like target)");
    const Tensors sx = tensors(p, x);
    auto t3 = Clock::now();
    const Matrix delta = x - t;
    const Matrix ldelta = sx.lt - st.lt;
    const double a = p.alpha * kernels::parallel::dot(ldelta, delta);
    const double b = kernels::parallel::dot(g, delta);
    const double gamma = quadratic_step(a, b);
    auto t4 = Clock::now();
    tm.gradient_ms += ms_between(t0, t1) + ms_between(t2, t3);
    tm.direction_ms += ms_between(t1, t2);
    tm.linesearch_ms += ms_between(t3, t4);

    if (gamma == 0.0) {
      converged = true;
      break;
    }
    t = (1.0 - gamma) * t + gamma * x;
    // the tensor products are linear in T
    st.lt = (1.0 - gamma) * st.lt + gamma * sx.lt;
    if (!p.symmetric)
      st.ltt = (1.0 - gamma) * st.ltt + gamma * sx.ltt;
    const double f_new = objective(p, st, t);
    traj.push_back(f_new);
    if (cfg.observer)
      cfg.observer(it, t);
    const bool done = small_variation(f, f_new, cfg.rel_tolerance);
    f = f_new;
    if (done) {
      converged = true;
      break;
    }
  }

  SolveResult r = finish(std::move(t), p.h, 1e-10);
  r.loss = gw_part(st, r.coupling.plan());
  r.regularized_loss = f;
  r.iterations = it;
  r.converged = converged;
  r.loss_trajectory = std::move(traj);
  tm.total_ms = ms_between(start, Clock::now());
  r.timings = tm;
  return r;
}

SolveResult run_md(const Problem &p, Matrix t, double epsilon, const SolverConfig &cfg) {
  require(epsilon > 0.0, "entropic solver needs epsilon > 0");
  const auto start = Clock::now();
  check_feasible(t, p, 1e-8);

  PhaseTimings tm;
  Tensors st = tensors(p, t);
  double f = objective(p, st, t);
  std::vector<double> traj{f};
  if (cfg.observer)
    cfg.observer(0, t);

  bool converged = false;
  int it = 0;
  while (it < cfg.max_iterations) {
    ++it;
    auto t0 = Clock::now();
    const Matrix g = gradient(p, st);
    if (!g.allFinite())
      throw SolverFailure("non-finite gradient in mirror-descent solver");
    auto t1 = Clock::now();
    // T <- diag(h / K 1) K with log K = log T - (G + D) / eps
    t = rows_to_marginal_log(t.cwiseMax(kLogFloor).array().log().matrix() - g / epsilon, p.h);
    auto t2 = Clock::now();
    st = tensors(p, t);
    auto t3 = Clock::now();
    tm.gradient_ms += ms_between(t0, t1) + ms_between(t2, t3);
    tm.direction_ms += ms_between(t1, t2);

    const double f_new = objective(p, st, t);
    traj.push_back(f_new);
    if (cfg.observer)
      cfg.observer(it, t);
    const bool done = small_variation(f, f_new, cfg.rel_tolerance);
    f = f_new;
    if (done) {
      converged = true;
      break;
    }
  }

  SolveResult r = finish(std::move(t), p.h, 1e-8);
  r.loss = gw_part(st, r.coupling.plan());
  r.regularized_loss = f;
  r.iterations = it;
  r.converged = converged;
  r.loss_trajectory = std::move(traj);
  tm.total_ms = ms_between(start, Clock::now());
  r.timings = tm;
  return r;
}

Matrix entropic_start(const Matrix &c, const Vector &h, Index m, const SolverConfig &cfg) {
  Matrix t = initial_plan(c, h, m, cfg.init, cfg.seed);
  if (std::holds_alternative<GivenPlan>(cfg.init)) {
    for (Index i = 0; i < t.rows(); ++i)
      if (h(i) > 0.0)
        require((t.row(i).array() > 0.0).all(),
                "entropic solver needs a strictly positive initial plan");
    return t;
  }
  // hard or degenerate starts get a small uniform component so every log is finite
  bool has_zero = false;
  for (Index i = 0; i < t.rows(); ++i)
    if (h(i) > 0.0 && (t.row(i).array() <= 0.0).any())
      has_zero = true;
  if (has_zero)
    t = (1.0 - kEntropicInitBlend) * t +
        kEntropicInitBlend * (h * Eigen::RowVectorXd::Constant(m, 1.0 / static_cast<double>(m)));
  return t;
}

Matrix start_plan(const Matrix &c, const Vector &h, Index m, const SolverConfig &cfg,
                  BaseSolver base) {
  return base == BaseSolver::Entropic ? entropic_start(c, h, m, cfg)
                                      : initial_plan(c, h, m, cfg.init, cfg.seed);
}

SolveResult run_base(const Problem &p, Matrix t0, const SolverConfig &cfg, BaseSolver base,
                     bool warm) {
  if (base == BaseSolver::Entropic) {
    require(cfg.epsilon.has_value(), "entropic base solver needs epsilon");
    return run_md(p, std::move(t0), *cfg.epsilon, cfg);
  }
  return run_cg(p, std::move(t0), cfg, warm);
}

double sqrt_penalty(const Vector &hbar) { return hbar.cwiseMax(0.0).cwiseSqrt().sum(); }

// MM outer loop around a base solver. `base_linear` is the problem's own
// linear term (nullptr for plain srGW); `loss_of` maps a base result to the
// unregularized loss reported to the caller.
template <class LossOf>
SolveResult run_mm(const Matrix &c, const Matrix &cbar, const Vector &h, double alpha,
                   const Matrix *base_linear, const SolverConfig &cfg, BaseSolver base,
                   LossOf loss_of) {
  const double lambda = cfg.lambda_g.value_or(0.0);
  require(lambda >= 0.0, "lambda_g must be nonnegative");
  require(cfg.mm_max_outer >= 1, "mm_max_outer must be >= 1");
  const auto start = Clock::now();
  const Index n = c.rows();
  const Index m = cbar.rows();

  Matrix reg = Matrix::Zero(n, m);
  Matrix linear = base_linear != nullptr ? *base_linear : Matrix::Zero(n, m);
  Matrix t = start_plan(c, h, m, cfg, base);

  SolveResult best;
  std::vector<double> outer_traj;
  PhaseTimings tm;
  double prev = std::numeric_limits<double>::infinity();
  bool converged = false;
  int outer = 0;
  while (outer < cfg.mm_max_outer) {
    ++outer;
    const Matrix d = linear + reg;
    const Problem p(c, cbar, h, alpha, &d);
    SolveResult r = run_base(p, t, cfg, base, outer > 1);
    tm.gradient_ms += r.timings.gradient_ms;
    tm.direction_ms += r.timings.direction_ms;
    tm.linesearch_ms += r.timings.linesearch_ms;

    r.loss = loss_of(r);
    r.regularized_loss = r.loss + lambda * sqrt_penalty(r.hbar);
    outer_traj.push_back(r.regularized_loss);
    t = r.coupling.plan();
    const double cur = r.regularized_loss;
    best = std::move(r);
    if (lambda == 0.0 || (outer > 1 && small_variation(prev, cur, cfg.mm_rel_tolerance))) {
      converged = true;
      break;
    }
    prev = cur;
    reg = sparsity_linearization(best.hbar, n, lambda);
  }
  best.iterations = outer;
  best.converged = converged;
  best.loss_trajectory = std::move(outer_traj);
  tm.total_ms = ms_between(start, Clock::now());
  best.timings = tm;
  return best;
}

}  // namespace

void SolverConfig::validate() const {
  require(max_iterations >= 1, "max_iterations must be >= 1");
  require(rel_tolerance > 0.0, "rel_tolerance must be positive");
  if (epsilon)
    require(*epsilon > 0.0, "epsilon must be positive");
  if (lambda_g)
    require(*lambda_g >= 0.0, "lambda_g must be nonnegative");
  if (alpha)
    require(*alpha >= 0.0 && *alpha <= 1.0, "alpha must lie in [0, 1]");
  require(mm_max_outer >= 1, "mm_max_outer must be >= 1");
  require(mm_rel_tolerance > 0.0, "mm_rel_tolerance must be positive");
}

double quadratic_step(double a, double b) {
  if (a > 0.0)
    return std::clamp(-b / (2.0 * a), 0.0, 1.0);
  return a + b < 0.0 ? 1.0 : 0.0;
}

Matrix sparsity_linearization(const Vector &hbar, Index n, double lambda_g) {
  require(lambda_g >= 0.0, "lambda_g must be nonnegative");
  Eigen::RowVectorXd r(hbar.size());
  for (Index j = 0; j < hbar.size(); ++j)
    r(j) = hbar(j) < kMmZeroFloor ? kMmCap : 0.5 * lambda_g / std::sqrt(hbar(j));
  return r.replicate(n, 1);
}

Matrix rows_to_marginal_log(const Matrix &log_kernel, const Vector &h) {
  require(log_kernel.rows() == h.size(), "kernel rows must match h");
  require(!log_kernel.hasNaN(), "log kernel contains NaN");
  const Index n = log_kernel.rows();
  const Index m = log_kernel.cols();
  Matrix t(n, m);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    if (h(i) <= 0.0) {
      t.row(i).setZero();
      continue;
    }
    const double top = log_kernel.row(i).maxCoeff();
    const Eigen::RowVectorXd e = (log_kernel.row(i).array() - top).exp().matrix();
    t.row(i) = (h(i) / e.sum()) * e;
  }
  return t;
}

Matrix cg_direction(const Matrix &cost, const Vector &h) {
  require(cost.rows() == h.size(), "cost rows must match h");
  require(cost.cols() >= 1, "cost needs at least one column");
  require(!cost.hasNaN(), "cost matrix contains NaN");
  Matrix x;
  kernels::parallel::row_argmin_plan(cost, h, x);
  return x;
}

double cg_linesearch(const Matrix &c, const Matrix &cbar, const Matrix &t, const Matrix &x,
                     const Matrix *linear) {
  detail::check_tensor_shapes(c, cbar, t);
  detail::check_tensor_shapes(c, cbar, x);
  const Vector h = t.rowwise().sum();
  require(Coupling::marginal_error(x, h) <= 1e-10, "T and X must share their first marginal");
  require((t.array() >= 0.0).all() && (x.array() >= 0.0).all(), "T and X must be nonnegative");
  const Vector hn = h / h.sum();
  // the problem wrapper wants a simplex vector; only the matrices matter here
  const Problem p(c, cbar, hn, 1.0, linear);
  const Tensors st = tensors(p, t);
  const Tensors sx = tensors(p, x);
  const Matrix delta = x - t;
  const double a = kernels::parallel::dot(sx.lt - st.lt, delta);
  const double b = kernels::parallel::dot(gradient(p, st), delta);
  return quadratic_step(a, b);
}

Matrix initial_plan(const Matrix &c, const Vector &h, Index m, const InitStrategy &init,
                    std::uint64_t kmeans_seed) {
  const Index n = c.rows();
  require(m >= 1, "target must have at least one node");
  require(h.size() == n, "h must have one entry per node");
  return std::visit(
      [&](const auto &s) -> Matrix {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, OuterUniform>) {
          return h * Eigen::RowVectorXd::Constant(m, 1.0 / static_cast<double>(m));
        } else if constexpr (std::is_same_v<S, OuterRandom>) {
          std::mt19937_64 rng(s.seed);
          std::uniform_real_distribution<double> unif(0.0, 1.0);
          Eigen::RowVectorXd r(m);
          for (Index k = 0; k < m; ++k)
            r(k) = -std::log(1.0 - unif(rng));
          if (r.sum() <= 0.0)
            r.setOnes();
          r /= r.sum();
          return h * r;
        } else if constexpr (std::is_same_v<S, KmeansHard>) {
          const Matrix rows = h.asDiagonal() * c;
          const int k = static_cast<int>(std::min(m, n));
          const KMeansResult km = kmeans(rows, k, 10, kmeans_seed);
          Matrix t = Matrix::Zero(n, m);
          for (Index i = 0; i < n; ++i)
            t(i, km.labels[static_cast<std::size_t>(i)]) = h(i);
          return t;
        } else {
          require(s.plan.rows() == n && s.plan.cols() == m,
                  fmt::format("given plan is {}x{}, expected {}x{}", s.plan.rows(), s.plan.cols(), n, m));
          return s.plan;
        }
      },
      init);
}

SolveResult solve_srgw_cg(const Matrix &c, const Vector &h, const Matrix &cbar,
                          const SolverConfig &config) {
  config.validate();
  const Problem p(c, cbar, h, 1.0, nullptr);
  return run_cg(p, initial_plan(c, h, cbar.rows(), config.init, config.seed), config);
}

SolveResult solve_srgw_cg(const Matrix &c, const Vector &h, const Matrix &cbar, const Matrix &linear,
                          const SolverConfig &config) {
  config.validate();
  const Problem p(c, cbar, h, 1.0, &linear);
  return run_cg(p, initial_plan(c, h, cbar.rows(), config.init, config.seed), config);
}

SolveResult solve_srgw_entropic(const Matrix &c, const Vector &h, const Matrix &cbar,
                                const SolverConfig &config) {
  config.validate();
  require(config.epsilon.has_value(), "entropic solver needs epsilon");
  const Problem p(c, cbar, h, 1.0, nullptr);
  return run_md(p, entropic_start(c, h, cbar.rows(), config), *config.epsilon, config);
}

SolveResult solve_srgw_entropic(const Matrix &c, const Vector &h, const Matrix &cbar,
                                const Matrix &linear, const SolverConfig &config) {
  config.validate();
  require(config.epsilon.has_value(), "entropic solver needs epsilon");
  const Problem p(c, cbar, h, 1.0, &linear);
  return run_md(p, entropic_start(c, h, cbar.rows(), config), *config.epsilon, config);
}

SolveResult solve_srgw_sparse(const Matrix &c, const Vector &h, const Matrix &cbar,
                              const SolverConfig &config, BaseSolver base) {
  config.validate();
  return run_mm(c, cbar, h, 1.0, nullptr, config, base,
                [](const SolveResult &r) { return r.loss; });
}

SolveResult solve_srfgw(const Matrix &c, const Matrix &f, const Vector &h, const Matrix &cbar,
                        const Matrix &fbar, double alpha, const SolverConfig &config) {
  config.validate();
  require(alpha >= 0.0 && alpha <= 1.0, fmt::format("alpha = {} outside [0, 1]", alpha));
  require(f.rows() == c.rows(), "features must have one row per source node");
  require(fbar.rows() == cbar.rows(), "target features must have one row per target node");
  const Matrix feat = feature_distance_matrix(f, fbar);
  const Matrix linear = (1.0 - alpha) * feat;
  const auto fused_loss = [&](const SolveResult &r) {
    return alpha * r.loss + kernels::parallel::dot(linear, r.coupling.plan());
  };
  const BaseSolver base = config.epsilon ? BaseSolver::Entropic : BaseSolver::ConditionalGradient;
  if (config.lambda_g)
    return run_mm(c, cbar, h, alpha, &linear, config, base, fused_loss);

  const Problem p(c, cbar, h, alpha, &linear);
  SolveResult r = base == BaseSolver::Entropic
                      ? run_md(p, entropic_start(c, h, cbar.rows(), config), *config.epsilon, config)
                      : run_cg(p, initial_plan(c, h, cbar.rows(), config.init, config.seed), config);
  r.loss = r.regularized_loss;
  return r;
}

SolveResult solve(const Graph &graph, const Matrix &cbar, const Matrix *fbar,
                  const SolverConfig &config) {
  const Matrix &c = graph.structure();
  const Vector &h = graph.distribution();
  if (graph.has_features() && fbar != nullptr)
    return solve_srfgw(c, graph.features(), h, cbar, *fbar, config.alpha.value_or(0.5), config);
  if (config.lambda_g)
    return solve_srgw_sparse(c, h, cbar, config,
                             config.epsilon ? BaseSolver::Entropic : BaseSolver::ConditionalGradient);
  if (config.epsilon)
    return solve_srgw_entropic(c, h, cbar, config);
  return solve_srgw_cg(c, h, cbar, config);
}

Vector second_marginal(const Matrix &plan) { return plan.colwise().sum().transpose(); }

std::vector<Index> support(const Vector &hbar, double tol) {
  std::vector<Index> s;
  for (Index j = 0; j < hbar.size(); ++j)
    if (hbar(j) > tol)
      s.push_back(j);
  return s;
}

}  // namespace srgw
