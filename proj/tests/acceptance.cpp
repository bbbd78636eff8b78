//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include <unistd.h>

#include "oracle/oracle.hpp"
#include "srgw/bench.hpp"
#include "srgw/cli.hpp"
#include "srgw/dictionary.hpp"
#include "srgw/gw.hpp"
#include "srgw/io.hpp"
#include "srgw/metrics.hpp"
#include "srgw/solvers.hpp"
#include "srgw/tasks.hpp"
#include "test_util.hpp"

namespace srgw {
namespace {

namespace fs = std::filesystem;
using testing::random_coupling;
using testing::random_matrix;
using testing::random_simplex;
using testing::random_symmetric;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// ---- 1 ----

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  const int instances = 150;
  for (int k = 0; k < instances; ++k) {
    const Index n = 1 + static_cast<Index>(rng() % 6), m = 1 + static_cast<Index>(rng() % 6);
    const Index d = 1 + static_cast<Index>(rng() % 3);
    const Matrix c = k % 2 == 0 ? random_symmetric(n, rng) : random_matrix(n, n, rng);
    const Matrix cbar = k % 2 == 0 ? random_symmetric(m, rng) : random_matrix(m, m, rng);
    const Matrix t = random_coupling(random_simplex(n, rng), m, rng);
    const Matrix f = random_matrix(n, d, rng, -1.0, 1.0), fbar = random_matrix(m, d, rng, -1.0, 1.0);
    const double alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    worst = std::max(worst, std::abs(gw_loss(c, cbar, t) - oracle::gw_loss(c, cbar, t)));
    worst = std::max(worst, (gw_tensor_product(c, cbar, t) - oracle::tensor_product(c, cbar, t)).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(fgw_loss(c, f, cbar, fbar, t, alpha) - oracle::fgw_loss(c, f, cbar, fbar, t, alpha)));
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-10 && secs < 10.0,
          fmt::format("{} instances, max abs deviation {:.2e} (<= 1e-10), {:.2f} s (< 10 s)", instances, worst, secs)};
}

// ---- 2 ----

Outcome gradient_correctness() {
  std::mt19937_64 rng(1002);
  const int instances = 25;
  double worst[4] = {0, 0, 0, 0};
  for (int k = 0; k < instances; ++k) {
    const Index n = 2 + static_cast<Index>(rng() % 5), m = 2 + static_cast<Index>(rng() % 5), d = 2;
    const bool sym = k % 2 == 0;
    const Matrix c = sym ? random_symmetric(n, rng) : random_matrix(n, n, rng);
    const Matrix cbar = sym ? random_symmetric(m, rng) : random_matrix(m, m, rng);
    const Matrix t = random_coupling(random_simplex(n, rng), m, rng);
    const Matrix f = random_matrix(n, d, rng, -1.0, 1.0), fbar = random_matrix(m, d, rng, -1.0, 1.0);
    const double alpha = 0.2 + 0.6 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);

    const Matrix g_gw = gw_gradient(c, cbar, t, sym);
    const Matrix fd_gw = testing::finite_difference([&](const Matrix &x) { return oracle::gw_loss(c, cbar, x); }, t);
    worst[0] = std::max(worst[0], testing::relative_error(g_gw, fd_gw));

    const Matrix g_fgw = fgw_gradient(c, f, cbar, fbar, t, alpha, sym);
    const Matrix fd_fgw = testing::finite_difference(
        [&](const Matrix &x) { return oracle::fgw_loss(c, f, cbar, fbar, x, alpha); }, t);
    worst[1] = std::max(worst[1], testing::relative_error(g_fgw, fd_fgw));

    // atom gradients: mean loss over a batch of graphs with plans held fixed
    const int batch = 1 + static_cast<int>(rng() % 3);
    std::vector<Graph> graphs;
    std::vector<Matrix> plans;
    for (int b = 0; b < batch; ++b) {
      const Index nb = 2 + static_cast<Index>(rng() % 4);
      const Vector h = random_simplex(nb, rng);
      graphs.emplace_back(random_symmetric(nb, rng), h, random_matrix(nb, d, rng, -1.0, 1.0));
      plans.push_back(random_coupling(h, m, rng));
    }
    std::vector<GradientItem> items;
    for (int b = 0; b < batch; ++b)
      items.push_back({&graphs[static_cast<std::size_t>(b)], &plans[static_cast<std::size_t>(b)]});
    DictionaryAtom atom;
    atom.structure = random_symmetric(m, rng);
    atom.features = random_matrix(m, d, rng, -1.0, 1.0);

    const auto structure_loss = [&](const Matrix &x) {
      double s = 0.0;
      for (int b = 0; b < batch; ++b)
        s += oracle::gw_loss(graphs[static_cast<std::size_t>(b)].structure(), x, plans[static_cast<std::size_t>(b)]);
      return s / batch;
    };
    worst[2] = std::max(worst[2], testing::relative_error(atom_structure_gradient(items, atom),
                                                          testing::finite_difference(structure_loss, atom.structure)));

    const auto feature_loss = [&](const Matrix &x) {
      double s = 0.0;
      for (int b = 0; b < batch; ++b)
        s += (oracle::feature_distances(graphs[static_cast<std::size_t>(b)].features(), x).array() *
              plans[static_cast<std::size_t>(b)].array())
                 .sum();
      return s / batch;
    };
    worst[3] = std::max(worst[3], testing::relative_error(atom_feature_gradient(items, atom),
                                                          testing::finite_difference(feature_loss, *atom.features)));
  }
  const bool ok = std::all_of(std::begin(worst), std::end(worst), [](double w) { return w <= 1e-5; });
  return {ok, fmt::format("{} instances each, max relative error gw {:.1e}, fgw {:.1e}, atom structure {:.1e}, "
                          "atom features {:.1e} (<= 1e-5)",
                          instances, worst[0], worst[1], worst[2], worst[3])};
}

// ---- 3 ----

struct FeasibilityTally {
  int runs = 0;
  int iterates = 0;
  double worst_cg = 0.0, worst_md = 0.0;
  double worst_rise_cg = 0.0, worst_rise_mm = 0.0;
  bool negative = false;
};

Outcome feasibility_monotonicity() {
  std::mt19937_64 rng(1003);
  FeasibilityTally tally;
  const auto rise = [](const std::vector<double> &traj) {
    double r = 0.0;
    for (std::size_t k = 1; k < traj.size(); ++k)
      r = std::max(r, traj[k] - traj[k - 1]);
    return r;
  };
  for (int k = 0; k < 160; ++k) {
    const Index n = 3 + static_cast<Index>(rng() % 10), m = 2 + static_cast<Index>(rng() % 6);
    const Matrix c = k % 4 == 0 ? testing::random_adjacency(n, 0.4, rng) : random_symmetric(n, rng);
    const Matrix cbar = random_symmetric(m, rng);
    const Vector h = random_simplex(n, rng);
    const Matrix f = random_matrix(n, 2, rng), fbar = random_matrix(m, 2, rng);
    SolverConfig cfg;
    cfg.init = k % 3 == 0 ? InitStrategy{KmeansHard{}} : InitStrategy{OuterRandom{static_cast<std::uint64_t>(k)}};
    const int kind = k % 5;   // cg, md, mm over cg, mm over md, fused cg
    const bool md = kind == 1 || kind == 3;
    if (md)
      cfg.epsilon = 0.05 + 0.2 * (k % 3);
    if (kind == 2 || kind == 3)
      cfg.lambda_g = 0.05 * (1 + k % 4);
    double &worst = md ? tally.worst_md : tally.worst_cg;
    cfg.observer = [&](int, const Matrix &t) {
      ++tally.iterates;
      worst = std::max(worst, Coupling::marginal_error(t, h));
      tally.negative = tally.negative || (t.array() < 0.0).any();
    };
    SolveResult r;
    if (kind == 4)
      r = solve_srfgw(c, f, h, cbar, fbar, 0.5, cfg);
    else if (kind == 2 || kind == 3)
      r = solve_srgw_sparse(c, h, cbar, cfg, md ? BaseSolver::Entropic : BaseSolver::ConditionalGradient);
    else if (md)
      r = solve_srgw_entropic(c, h, cbar, cfg);
    else
      r = solve_srgw_cg(c, h, cbar, cfg);
    ++tally.runs;
    worst = std::max(worst, Coupling::marginal_error(r.coupling.plan(), h));
    if (kind == 0 || kind == 4)
      tally.worst_rise_cg = std::max(tally.worst_rise_cg, rise(r.loss_trajectory));
    if (kind == 2 || kind == 3)
      tally.worst_rise_mm = std::max(tally.worst_rise_mm, rise(r.loss_trajectory));
  }
  const bool ok = tally.worst_cg <= 1e-10 && tally.worst_md <= 1e-8 && !tally.negative &&
                  tally.worst_rise_cg <= 1e-12 && tally.worst_rise_mm <= 1e-10;
  return {ok, fmt::format("{} runs / {} iterates; marginal error cg {:.1e} (<= 1e-10), md {:.1e} (<= 1e-8); "
                          "max loss rise cg {:.1e} (<= 1e-12), mm {:.1e} (<= 1e-10)",
                          tally.runs, tally.iterates, tally.worst_cg, tally.worst_md, tally.worst_rise_cg,
                          tally.worst_rise_mm)};
}

// ---- 4 ----

Outcome equivalence_lemma() {
  std::mt19937_64 rng(1004);
  int ok = 0;
  double worst_gap = -std::numeric_limits<double>::infinity();
  const int instances = 50;
  for (int k = 0; k < instances; ++k) {
    const Matrix c = random_symmetric(3, rng), cbar = random_symmetric(3, rng);
    const Vector h = random_simplex(3, rng);
    const double grid = oracle::brute_force_srgw(c, h, cbar, 21);
    double best = std::numeric_limits<double>::infinity();
    // restarts alternate random outer-product starts and random hard assignments
    std::mt19937_64 pick(7000 + static_cast<std::uint64_t>(k));
    for (std::uint64_t s = 0; s < 20; ++s) {
      SolverConfig cfg;
      if (s % 2 == 0) {
        cfg.init = OuterRandom{s + 100 * static_cast<std::uint64_t>(k)};
      } else {
        Matrix start = Matrix::Zero(3, 3);
        for (Index i = 0; i < 3; ++i)
          start(i, static_cast<Index>(pick() % 3)) = h(i);
        cfg.init = GivenPlan{start};
      }
      best = std::min(best, solve_srgw_cg(c, h, cbar, cfg).loss);
    }
    worst_gap = std::max(worst_gap, best - grid);
    ok += best <= grid + 5e-3;
  }
  return {ok == instances, fmt::format("{}/{} instances with restart loss <= grid estimate + 5e-3 (max gap {:.2e})",
                                       ok, instances, worst_gap)};
}

// ---- 5 ----

Outcome vanishing_iff_reweighing() {
  std::mt19937_64 rng(1005);
  int embedded_ok = 0;
  double embedded_worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Index n = 2 + static_cast<Index>(rng() % 3), m = n + 1 + static_cast<Index>(rng() % 3);
    const Matrix c = random_symmetric(n, rng);
    Matrix cbar = random_symmetric(m, rng);
    // hide C at a random principal position
    std::vector<Index> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        cbar(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) = c(i, j);
    const Vector h = random_simplex(n, rng);
    Matrix t0 = Matrix::Zero(n, m);
    for (Index i = 0; i < n; ++i)
      t0(i, perm[static_cast<std::size_t>(i)]) = h(i);
    SolverConfig cfg;
    cfg.init = GivenPlan{t0};
    const SolveResult r = solve_srgw_cg(c, h, cbar, cfg);
    bool inside = true;
    for (Index j : support(r.hbar))
      inside = inside && std::find(perm.begin(), perm.begin() + n, j) != perm.begin() + n;
    embedded_worst = std::max(embedded_worst, r.loss);
    embedded_ok += r.loss <= 1e-10 && inside;
  }

  int separated_ok = 0, separated = 0;
  double separated_min = std::numeric_limits<double>::infinity();
  while (separated < 20) {
    const Index n = 2 + static_cast<Index>(rng() % 3), m = 2 + static_cast<Index>(rng() % 3);
    const Matrix c = random_symmetric(n, rng), cbar = random_symmetric(m, rng);
    if (oracle::has_isometric_embedding(c, cbar))
      continue;
    ++separated;
    const Vector h = random_simplex(n, rng);
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t s = 0; s < 20; ++s) {
      SolverConfig cfg;
      cfg.init = s == 0 ? InitStrategy{OuterUniform{}} : InitStrategy{OuterRandom{s}};
      best = std::min(best, solve_srgw_cg(c, h, cbar, cfg).loss);
    }
    separated_min = std::min(separated_min, best);
    separated_ok += best >= 1e-4;
  }
  return {embedded_ok == 20 && separated_ok == 20,
          fmt::format("embedded {}/20 at loss <= 1e-10 with support in block (max {:.1e}); "
                      "non-embeddable {}/20 at loss >= 1e-4 (min {:.2e})",
                      embedded_ok, embedded_worst, separated_ok, separated_min)};
}

// ---- 6 ----

Outcome partitioning() {
  const auto t0 = Clock::now();
  TuneGrid grid;
  grid.lambda_grid = {std::nullopt, 0.01, 0.1, 0.3, 1.0, 3.0};
  double ami_sum = 0.0;
  int compact = 0;
  std::string per_seed;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SbmSample s = gen_sbm(std::vector<int>{75, 45, 30}, sbm_connectivity(3, 0.5, 0.01), seed);
    const PartitionResult r3 = tune_partition(s.adjacency, 3, grid).best;
    const PartitionResult r5 = tune_partition(s.adjacency, 5, grid).best;
    const double a = ami(r3.labels, s.blocks);
    ami_sum += a;
    compact += r5.clusters.size() <= 4;
    per_seed += fmt::format(" {:.3f}/{}", a, r5.clusters.size());
  }
  const double secs = seconds_since(t0);
  const double mean_ami = ami_sum / 5.0;
  return {mean_ami >= 0.95 && compact >= 4 && secs < 60.0,
          fmt::format("q=3 mean AMI {:.3f} (>= 0.95); q=5 <= 4 clusters on {}/5 seeds (>= 4); {:.1f} s (< 60 s); "
                      "per seed AMI/clusters:{}",
                      mean_ami, compact, secs, per_seed)};
}

// ---- 7 ----

std::size_t regression_support(double lambda) {
  const SbmSample s = gen_sbm(std::vector<int>{5, 5}, sbm_connectivity(2, 0.9, 0.1), 7);
  const Vector h = Vector::Constant(10, 0.1);
  const Matrix cbar = Matrix::Ones(10, 10) - Matrix::Identity(10, 10);
  SolverConfig cfg;
  cfg.init = OuterRandom{0};
  cfg.lambda_g = lambda;
  return support(solve_srgw_sparse(s.adjacency, h, cbar, cfg).hbar).size();
}

Outcome sparsity() {
  const std::size_t dense = regression_support(0.0), sparse = regression_support(10.0);
  return {sparse < dense, fmt::format("|support| {} at lambda_g = 10 vs {} at lambda_g = 0", sparse, dense)};
}

// ---- 8 ----

GraphDataset two_template_dataset(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(15, 25);
  std::vector<Graph> graphs;
  Labels labels;
  for (int k = 0; k < count; ++k) {
    const int cls = k % 2, n = size(rng), blocks = cls == 0 ? 2 : 3;
    std::vector<int> sizes;
    for (int b = 0; b < blocks; ++b)
      sizes.push_back(n / blocks + (b < n % blocks ? 1 : 0));
    const SbmSample s = gen_sbm(sizes, sbm_connectivity(blocks, 0.8, 0.1), rng());
    graphs.push_back(Graph::uniform(s.adjacency));
    labels.push_back(cls);
  }
  return GraphDataset(std::move(graphs), std::move(labels));
}

Outcome dictionary_learning() {
  const auto t0 = Clock::now();
  const GraphDataset ds = two_template_dataset(40, 0);
  TrainConfig tc;
  tc.atom_size = 12;
  tc.max_epochs = 50;
  tc.seed = 0;
  tc.solver.epsilon = 1.0;
  tc.solver.lambda_g = 1.0;
  const TrainingResult tr = train_dictionary(ds, tc);
  const ClusterResult cr = cluster_graphs(ds, tr.atom, 2, tc.solver, 0);
  const double ri = rand_index(cr.labels, *ds.labels);
  const double first = tr.log.front().eval_loss, last = tr.log.back().eval_loss;
  const double secs = seconds_since(t0);
  return {ri >= 0.9 && last <= first && secs < 300.0,
          fmt::format("RI {:.3f} (>= 0.9); eval loss {:.5f} -> {:.5f} over {} epochs; {:.1f} s (< 300 s)", ri, first,
                      last, tr.epochs_run, secs)};
}

// ---- 9 ----

Outcome completion() {
  double acc = 0.0;
  bool contract = true;
  std::string per_seed;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::mt19937_64 rng(100 + seed);
    const auto two_cliques = [&] {
      const int a = 4 + static_cast<int>(rng() % 5);
      return gen_sbm(std::vector<int>{a, 12 - a}, sbm_connectivity(2, 1.0, 0.0), rng());
    };
    std::vector<Graph> siblings;
    for (int k = 0; k < 30; ++k)
      siblings.push_back(Graph::uniform(two_cliques().adjacency));
    TrainConfig tc;
    tc.atom_size = 12;
    tc.max_epochs = 50;
    tc.seed = seed;
    const DictionaryAtom atom = train_dictionary(GraphDataset(std::move(siblings)), tc).atom;

    const SbmSample truth = two_cliques();
    // drop the last node of each block: observed nodes first, removed ones last
    const Index a = static_cast<Index>(std::count(truth.blocks.begin(), truth.blocks.end(), 0));
    std::vector<Index> order;
    for (Index i = 0; i < 12; ++i)
      if (i != a - 1 && i != 11)
        order.push_back(i);
    order.push_back(a - 1);
    order.push_back(11);
    Matrix full(12, 12);
    for (Index i = 0; i < 12; ++i)
      for (Index j = 0; j < 12; ++j)
        full(i, j) = truth.adjacency(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    CompletionConfig cc;
    cc.seed = seed;
    const Matrix observed = full.topLeftCorner(10, 10);
    const CompletionResult r = complete_graph({observed, 12, std::nullopt, atom}, SolverConfig{}, cc);
    const double e = completion_metrics(full, r.structure, 10).edge_accuracy;
    acc += e;
    per_seed += fmt::format(" {:.3f}", e);
    bool binary = true;
    for (Index i = 0; i < 12; ++i)
      for (Index j = 0; j < 12; ++j)
        binary = binary && (r.structure(i, j) == 0.0 || r.structure(i, j) == 1.0);
    contract = contract && binary && r.structure == r.structure.transpose() &&
               Matrix(r.structure.topLeftCorner(10, 10)) == observed;
  }
  const double mean = acc / 5.0;
  return {mean >= 0.8 && contract,
          fmt::format("mean imputed-region accuracy {:.3f} (>= 0.8), per seed:{}; observed block identical, "
                      "binary and symmetric: {}",
                      mean, per_seed, contract ? "yes" : "no")};
}

// ---- 10 ----

Outcome scaling() {
  BenchOptions o;
  o.sizes = {100, 200, 400};
  o.m = 10;
  o.repeats = 25;
  const BenchTable table = bench_scaling(o);
  const double ratio = median_phase_ms(table, 400, "direction") / median_phase_ms(table, 100, "direction");

  std::mt19937_64 rng(1010);
  const Graph g = Graph::uniform(gen_sbm(std::vector<int>{15, 15}, sbm_connectivity(2, 0.6, 0.1), 1010).adjacency);
  const DictionaryAtom atom = init_atom(12, std::nullopt, nullptr, 1010);
  std::vector<double> ms;
  for (int rep = 0; rep < 21; ++rep) {
    const auto t0 = Clock::now();
    const Embedding e = embed(g, atom, SolverConfig{});
    ms.push_back(1e3 * seconds_since(t0));
    (void)e;
  }
  const double embed_ms = median(ms);
  return {ratio <= 6.0 && embed_ms < 100.0,
          fmt::format("direction-phase t(400)/t(100) = {:.2f} (<= 6), log-log slope {:.2f}; "
                      "30-node embedding onto 12-node atom median {:.2f} ms (< 100 ms)",
                      ratio, table.direction_slope, embed_ms)};
}

// ---- 11 ----

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string drop_column(const std::string &text, std::size_t col) {
  std::stringstream in(text);
  std::string out, line;
  while (std::getline(in, line)) {
    std::stringstream ls(line);
    std::size_t i = 0;
    for (std::string c; std::getline(ls, c, ','); ++i)
      if (i != col)
        out += c + ",";
    out += "\n";
  }
  return out;
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / fmt::format("srgw_acceptance_{}", ::getpid());
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto p = [&](const std::string &name) { return (dir / name).string(); };
  std::ostringstream sink;
  const auto run = [&](const std::vector<std::string> &args) { return cli::run_command(args, sink, sink); };

  bool setup = run({"gen-sbm", "--sizes", "8,8;6,5,5", "--p-in", "0.8", "--p-out", "0.1", "--count", "10", "--seed",
                    "1", "--out", p("ds")}) == 0;
  setup = setup && run({"gen-sbm", "--sizes", "20,20", "--p-in", "0.5", "--p-out", "0.05", "--seed", "2", "--out",
                        p("a.json")}) == 0;
  setup = setup && run({"gen-sbm", "--sizes", "4,4", "--p-in", "0.9", "--p-out", "0.1", "--seed", "3", "--out",
                        p("b.json")}) == 0;
  setup = setup && run({"dict-learn", "--dataset", p("ds"), "--m", "6", "--epochs", "3", "--seed", "4", "--out",
                        p("atom.json")}) == 0;
  if (!setup)
    return {false, "could not prepare inputs"};

  const std::vector<std::vector<std::string>> commands = {
      {"gen-sbm", "--sizes", "10,10", "--p-in", "0.6", "--p-out", "0.1", "--seed", "5", "--out", "@.json"},
      {"match", "--source", p("a.json"), "--target", p("b.json"), "--seed", "5", "--dump-coupling", "--out", "@.json"},
      {"partition", "--graph", p("a.json"), "--q", "3", "--tune", "--seed", "5", "--out", "@.json"},
      {"dict-learn", "--dataset", p("ds"), "--m", "6", "--epochs", "3", "--seed", "5", "--out", "@.json"},
      {"embed", "--dataset", p("ds"), "--target", p("atom.json"), "--seed", "5", "--out", "@.json"},
      {"cluster", "--dataset", p("ds"), "--target", p("atom.json"), "--seed", "5", "--out", "@.json"},
      {"complete", "--graph", p("b.json"), "--target", p("atom.json"), "--n", "10", "--seed", "5", "--out", "@.json"},
      {"bench", "--sizes", "50,100", "--repeats", "2", "--seed", "5", "--out", "@.csv"},
  };
  int identical = 0;
  std::string differing;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::string stems[2];
    bool ran = true;
    for (int rep = 0; rep < 2; ++rep) {
      stems[rep] = p(fmt::format("run{}_{}", c, rep));
      std::vector<std::string> args = commands[c];
      for (auto &a : args)
        if (a[0] == '@')
          a = stems[rep] + a.substr(1);
      ran = ran && run(args) == 0;
    }
    const bool bench = commands[c][0] == "bench";
    std::string a = slurp(stems[0] + (bench ? ".csv" : ".json")), b = slurp(stems[1] + (bench ? ".csv" : ".json"));
    if (bench) {
      a = drop_column(a, 4);
      b = drop_column(b, 4);
    }
    bool same = ran && !a.empty() && a == b;
    if (fs::exists(stems[0] + ".coupling.csv"))
      same = same && slurp(stems[0] + ".coupling.csv") == slurp(stems[1] + ".coupling.csv");
    if (fs::exists(stems[0] + ".log.csv"))
      same = same && drop_column(slurp(stems[0] + ".log.csv"), 2) == drop_column(slurp(stems[1] + ".log.csv"), 2);
    identical += same;
    if (!same)
      differing += " " + commands[c][0];
  }
  fs::remove_all(dir);
  const int total = static_cast<int>(commands.size());
  return {identical == total,
          fmt::format("{}/{} commands byte-identical across two seeded runs (wall-clock columns excluded){}", identical,
                      total, differing.empty() ? "" : "; differing:" + differing)};
}

}  // namespace
}  // namespace srgw

int main() {
  using namespace srgw;
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"gradient correctness", gradient_correctness},
      {"feasibility and monotonicity", feasibility_monotonicity},
      {"relaxed/reweighted equivalence", equivalence_lemma},
      {"zero loss iff isometric reweighing", vanishing_iff_reweighing},
      {"partitioning", partitioning},
      {"sparsity regularization", sparsity},
      {"dictionary learning", dictionary_learning},
      {"graph completion", completion},
      {"scaling", scaling},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, fmt::format("threw: {}", e.what())};
    }
    failed += !o.pass;
    std::printf("criterion %zu [%s]: %s - %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
