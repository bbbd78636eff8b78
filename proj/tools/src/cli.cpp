//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "srgw/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "srgw/bench.hpp"
#include "srgw/io.hpp"
#include "srgw/kernels.hpp"
#include "srgw/log.hpp"
#include "srgw/metrics.hpp"
#include "srgw/tasks.hpp"

namespace srgw::cli {

namespace {

using io::Json;
namespace fs = std::filesystem;

struct Flags {
  std::string source, target, graph, dataset, out, log_path, sizes, config;
  std::uint64_t seed = 0;
  int q = 3;
  Index m = 12;
  Index bench_m = 10;
  Index n = 0;
  int k = 2;
  int count = 1;
  int epochs = 100;
  int batch_size = 16;
  int repeats = 5;
  int restarts = 1;
  int jobs = 0;
  double lr = 0.01;
  double alpha = 0.5, epsilon = 0.0, lambda_g = 0.0, tol = 1e-5, heat_t = 1.0, b = 1.0;
  double p_in = 0.5, p_out = 0.01;
  int max_iter = 1000;
  std::string init, representation = "adjacency", dist = "uniform";
  bool tune = false, dump_coupling = false;

  // options of the subcommand that ran; count() > 0 when given by flag or config
  const CLI::Option *o_alpha = nullptr, *o_epsilon = nullptr, *o_lambda = nullptr, *o_b = nullptr,
                    *o_representation = nullptr, *o_dist = nullptr;
};

bool given(const CLI::Option *o) { return o != nullptr && o->count() > 0; }

std::vector<int> parse_int_list(const std::string &text, const std::string &what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    detail::require(used == tok.size() && !tok.empty(), fmt::format("{}: bad integer \"{}\"", what, tok));
    out.push_back(v);
  }
  detail::require(!out.empty(), fmt::format("{} is empty", what));
  return out;
}

/// "50,50" or several block templates separated by ';'.
std::vector<std::vector<int>> parse_templates(const std::string &text) {
  std::vector<std::vector<int>> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    auto sizes = parse_int_list(part, "--sizes");
    for (int s : sizes)
      detail::require(s >= 1, "--sizes entries must be >= 1");
    out.push_back(std::move(sizes));
  }
  detail::require(!out.empty(), "--sizes is empty");
  return out;
}

RepresentationKind representation(const Flags &f) {
  RepresentationKind r;
  r.type = io::parse_representation(f.representation);
  r.heat_t = f.heat_t;
  detail::require(r.heat_t > 0.0, "--heat-t must be positive");
  return r;
}

DistributionSpec distribution(const Flags &f) {
  const bool power = f.dist == "powerlaw" || (given(f.o_b) && !given(f.o_dist));
  if (power)
    return DistributionSpec::power_law(0.0, f.b);
  if (f.dist == "degree")
    return DistributionSpec::degree();
  return DistributionSpec::uniform();
}

InitStrategy init_strategy(const Flags &f, const InitStrategy &fallback) {
  if (f.init == "uniform")
    return OuterUniform{};
  if (f.init == "random")
    return OuterRandom{f.seed};
  if (f.init == "kmeans")
    return KmeansHard{};
  return fallback;
}

SolverConfig solver_config(const Flags &f, const InitStrategy &fallback) {
  SolverConfig c;
  c.rel_tolerance = f.tol;
  c.max_iterations = f.max_iter;
  if (given(f.o_epsilon))
    c.epsilon = f.epsilon;
  if (given(f.o_lambda))
    c.lambda_g = f.lambda_g;
  if (given(f.o_alpha))
    c.alpha = f.alpha;
  c.init = init_strategy(f, fallback);
  c.seed = f.seed;
  c.validate();
  return c;
}

TrainConfig train_config(const Flags &f) {
  TrainConfig t;
  t.atom_size = f.m;
  t.max_epochs = f.epochs;
  t.batch_size = f.batch_size;
  t.learning_rate = f.lr;
  t.seed = f.seed;
  t.solver = solver_config(f, OuterRandom{f.seed});
  t.validate();
  return t;
}

fs::path sibling(const fs::path &out, const std::string &suffix) {
  fs::path p = out;
  p.replace_extension();
  p += suffix;
  return p;
}

std::vector<std::string> file_names(const std::vector<fs::path> &paths) {
  std::vector<std::string> names;
  for (const auto &p : paths)
    names.push_back(p.filename().string());
  return names;
}

struct LoadedDataset {
  std::vector<std::string> names;
  std::vector<io::GraphFile> files;
};

LoadedDataset load_named_dataset(const Flags &f) {
  LoadedDataset d;
  if (!f.dataset.empty()) {
    const auto paths = io::dataset_files(f.dataset);
    d.names = file_names(paths);
    for (const auto &p : paths)
      d.files.push_back(io::load_graph(p));
  } else {
    detail::require(!f.graph.empty(), "either --dataset or --graph is required");
    d.names = {fs::path(f.graph).filename().string()};
    d.files = {io::load_graph(f.graph)};
  }
  return d;
}

DictionaryAtom learn_or_load_atom(const Flags &f, const GraphDataset &ds, std::ostream &out) {
  if (!f.target.empty())
    return io::load_atom(f.target);
  const TrainingResult tr = train_dictionary(ds, train_config(f));
  out << fmt::format("trained atom m={} epochs={} final eval loss {:.6g}\n", f.m, tr.epochs_run,
                     tr.log.back().eval_loss);
  if (!f.log_path.empty())
    io::write_training_log(f.log_path, tr.log);
  return tr.atom;
}

// ---- subcommands ----

int cmd_gen_sbm(const Flags &f, std::ostream &out) {
  detail::require(!f.sizes.empty(), "--sizes is required");
  const auto templates = parse_templates(f.sizes);
  detail::require(f.p_in >= 0.0 && f.p_in <= 1.0 && f.p_out >= 0.0 && f.p_out <= 1.0,
                  "--p-in and --p-out must lie in [0, 1]");
  detail::require(f.count >= 1, "--count must be >= 1");
  std::mt19937_64 seeds(f.seed);
  for (int g = 0; g < f.count; ++g) {
    const std::size_t cls = static_cast<std::size_t>(g) % templates.size();
    const auto &blocks = templates[cls];
    const std::uint64_t seed = f.count == 1 ? f.seed : seeds();
    const SbmSample s =
        gen_sbm(blocks, sbm_connectivity(static_cast<Index>(blocks.size()), f.p_in, f.p_out), seed);
    io::GraphFile file;
    file.adjacency = s.adjacency;
    file.labels = s.blocks;
    if (templates.size() > 1)
      file.graph_label = static_cast<int>(cls);
    const fs::path path = f.count == 1 ? fs::path(f.out) : fs::path(f.out) / fmt::format("g{:04}.json", g);
    io::save_graph(path, file);
  }
  out << fmt::format("wrote {} graph{} to {}\n", f.count, f.count == 1 ? "" : "s", f.out);
  return Ok;
}

int cmd_match(const Flags &f, std::ostream &out) {
  const RepresentationKind rep = representation(f);
  const Graph source = io::to_graph(io::load_graph(f.source), rep, distribution(f));
  const Json tj = io::read_json(f.target);
  Matrix cbar;
  std::optional<Matrix> fbar;
  if (tj.contains("structure")) {
    DictionaryAtom atom = io::atom_from_json(tj);
    cbar = std::move(atom.structure);
    fbar = std::move(atom.features);
  } else {
    const io::GraphFile t = io::graph_from_json(tj);
    cbar = build_representation(io::undirected_adjacency(t), rep);
    fbar = t.features;
  }
  detail::require(source.has_features() == fbar.has_value(),
                  "source and target must both carry node features or neither");
  const SolveResult r = solve(source, cbar, fbar ? &*fbar : nullptr, solver_config(f, OuterRandom{f.seed}));
  io::write_json(f.out, io::to_json(io::MatchRecord::from(r)));
  if (f.dump_coupling)
    io::write_matrix_csv(sibling(f.out, ".coupling.csv"), r.coupling.plan());
  out << fmt::format("loss {:.6g} support {} iterations {}\n", r.loss, support(r.hbar).size(), r.iterations);
  return Ok;
}

int cmd_partition(const Flags &f, std::ostream &out) {
  const io::GraphFile g = io::load_graph(f.graph);
  const Matrix a = io::undirected_adjacency(g);
  const SolverConfig base = solver_config(f, KmeansHard{});
  PartitionResult result;
  if (f.tune) {
    TuneGrid grid;
    if (given(f.o_representation))
      grid.representations = {io::parse_representation(f.representation)};
    else
      grid.representations = {Representation::Adjacency, Representation::ShortestPath, Representation::HeatKernel};
    if (given(f.o_b))
      grid.b_grid = {f.b};
    grid.epsilon_grid = {base.epsilon};
    grid.lambda_grid = given(f.o_lambda) ? std::vector<std::optional<double>>{base.lambda_g}
                                         : std::vector<std::optional<double>>{std::nullopt, 0.01, 0.1, 0.3, 1.0, 3.0};
    result = tune_partition(a, f.q, grid, base).best;
  } else {
    PartitionSettings s;
    s.representation = representation(f);
    s.distribution = distribution(f);
    s.solver = base;
    result = partition_adjacency(a, f.q, s);
  }
  io::write_json(f.out, io::to_json(io::PartitionRecord::from(result, f.q, f.tune)));
  out << fmt::format("clusters {} modularity {:.6f}\n", result.clusters.size(), result.modularity);
  return Ok;
}

int cmd_dict_learn(const Flags &f, std::ostream &out) {
  const auto files = io::load_dataset(f.dataset);
  const GraphDataset ds = io::to_dataset(files, representation(f), distribution(f));
  const TrainingResult tr = train_dictionary(ds, train_config(f));
  io::save_atom(f.out, tr.atom);
  io::write_training_log(f.log_path.empty() ? sibling(f.out, ".log.csv") : fs::path(f.log_path), tr.log);
  out << fmt::format("epochs {} eval loss {:.6g} -> {:.6g}{}\n", tr.epochs_run, tr.log.front().eval_loss,
                     tr.log.back().eval_loss, tr.early_stopped ? " (early stop)" : "");
  return Ok;
}

int cmd_embed(const Flags &f, std::ostream &out) {
  const LoadedDataset d = load_named_dataset(f);
  const DictionaryAtom atom = io::load_atom(f.target);
  const GraphDataset ds = io::to_dataset(d.files, representation(f), distribution(f));
  const auto emb = embed_all(ds.graphs, atom, solver_config(f, OuterRandom{f.seed}));
  io::EmbeddingRecord rec;
  rec.names = d.names;
  rec.hbar.resize(static_cast<Index>(emb.size()), atom.size());
  for (std::size_t i = 0; i < emb.size(); ++i) {
    rec.hbar.row(static_cast<Index>(i)) = emb[i].hbar.transpose();
    rec.losses.push_back(emb[i].loss);
  }
  io::write_json(f.out, io::to_json(rec));
  out << fmt::format("embedded {} graph{}\n", emb.size(), emb.size() == 1 ? "" : "s");
  return Ok;
}

int cmd_cluster(const Flags &f, std::ostream &out) {
  const LoadedDataset d = load_named_dataset(f);
  const GraphDataset ds = io::to_dataset(d.files, representation(f), distribution(f));
  const DictionaryAtom atom = learn_or_load_atom(f, ds, out);
  const ClusterResult cr = cluster_graphs(ds, atom, f.k, solver_config(f, OuterRandom{f.seed}), f.seed);
  io::ClusterRecord rec;
  rec.k = f.k;
  rec.names = d.names;
  rec.labels = cr.labels;
  rec.embeddings = cr.embeddings;
  rec.losses = cr.losses;
  if (ds.labels) {
    rec.rand_index = rand_index(cr.labels, *ds.labels);
    rec.adjusted_rand_index = adjusted_rand(cr.labels, *ds.labels);
    rec.adjusted_mutual_info = ami(cr.labels, *ds.labels);
    out << fmt::format("RI {:.4f} ARI {:.4f} AMI {:.4f}\n", *rec.rand_index, *rec.adjusted_rand_index,
                       *rec.adjusted_mutual_info);
  }
  io::write_json(f.out, io::to_json(rec));
  return Ok;
}

int cmd_complete(const Flags &f, std::ostream &out) {
  const io::GraphFile g = io::load_graph(f.graph);
  const DictionaryAtom atom = io::load_atom(f.target);
  detail::require(f.n >= g.size(), fmt::format("--n ({}) is below the observed node count ({})", f.n, g.size()));
  CompletionProblem problem{io::undirected_adjacency(g), f.n, g.features, atom};
  CompletionConfig cc;
  cc.seed = f.seed;
  cc.restarts = f.restarts;
  const CompletionResult r = complete_graph(problem, solver_config(f, OuterRandom{f.seed}), cc);
  io::write_json(f.out, io::to_json(io::CompletionRecord::from(r)));
  out << fmt::format("imputed {} node{} loss {:.6g}\n", f.n - g.size(), f.n - g.size() == 1 ? "" : "s", r.loss);
  return Ok;
}

int cmd_bench(const Flags &f, std::ostream &out) {
  BenchOptions o;
  if (!f.sizes.empty()) {
    o.sizes.clear();
    for (int s : parse_int_list(f.sizes, "--sizes"))
      o.sizes.push_back(s);
  }
  o.m = f.bench_m;
  o.repeats = f.repeats;
  o.seed = f.seed;
  o.rel_tolerance = f.tol;
  o.max_iterations = f.max_iter;
  const BenchTable table = bench_scaling(o);
  if (f.out.empty()) {
    write_bench_csv(out, table);
  } else {
    std::ostringstream csv;
    write_bench_csv(csv, table);
    if (fs::path(f.out).has_parent_path())
      fs::create_directories(fs::path(f.out).parent_path());
    std::ofstream file(f.out, std::ios::binary | std::ios::trunc);
    detail::require(file.good(), fmt::format("cannot write {}", f.out));
    file << csv.str();
    out << fmt::format("direction-phase log-log slope {:.3f}\n", table.direction_slope);
  }
  return Ok;
}

// ---- config files ----

std::string config_value(const nlohmann::ordered_json &v) {
  if (v.is_string())
    return v.get<std::string>();
  if (v.is_array()) {
    std::vector<std::string> parts;
    for (const auto &x : v)
      parts.push_back(config_value(x));
    return CLI::detail::join(parts, ",");
  }
  return v.dump();
}

bool on_command_line(const std::vector<std::string> &args, const std::string &flag) {
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string &a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

/// Splices `--config file.json` into flag tokens. The file is a flat JSON object
/// keyed by flag name ('_' accepted for '-'); flags already on the command line
/// keep their value.
std::vector<std::string> expand_config(const CLI::App &app, std::vector<std::string> args) {
  if (args.empty())
    return args;
  const CLI::App *sub = app.get_subcommand_no_throw(args.front());
  if (sub == nullptr)
    return args;
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty())
    return args;
  const Json j = io::read_json(path);
  detail::require(j.is_object(), fmt::format("{}: config must be a JSON object", path));
  std::vector<std::string> extra;
  for (const auto &[key, value] : j.items()) {
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    const std::string flag = "--" + name;
    const CLI::Option *opt = sub->get_option_no_throw(flag);
    detail::require(opt != nullptr && name != "config",
                    fmt::format("{}: \"{}\" is not a flag of {}", path, key, sub->get_name()));
    if (value.is_null() || on_command_line(args, flag))
      continue;
    if (opt->get_expected_min() == 0) {
      detail::require(value.is_boolean(), fmt::format("{}: \"{}\" must be true or false", path, key));
      if (value.get<bool>())
        extra.push_back(flag);
      continue;
    }
    extra.push_back(flag);
    extra.push_back(config_value(value));
  }
  args.insert(args.begin() + 1, extra.begin(), extra.end());
  return args;
}

// ---- flag registration ----

void add_seed(CLI::App *s, Flags &f) { s->add_option("--seed", f.seed, "Random seed")->capture_default_str(); }

void add_out(CLI::App *s, Flags &f, const std::string &what) { s->add_option("--out", f.out, what)->required(); }

void add_representation(CLI::App *s, Flags &f) {
  s->add_option("--representation", f.representation, "Structure matrix")
                           ->check(CLI::IsMember({"adjacency", "sp", "heat"}))
                           ->capture_default_str();
  s->add_option("--heat-t", f.heat_t, "Heat kernel time")->capture_default_str();
  s->add_option("--dist", f.dist, "Node distribution")
                 ->check(CLI::IsMember({"uniform", "degree", "powerlaw"}))
                 ->capture_default_str();
  s->add_option("--b", f.b, "Power-law exponent of the node distribution")->capture_default_str();
}

void add_solver(CLI::App *s, Flags &f) {
  s->add_option("--alpha", f.alpha, "Structure/feature trade-off for attributed graphs");
  s->add_option("--epsilon", f.epsilon, "Entropic step (mirror descent) instead of conditional gradient");
  s->add_option("--lambda-g", f.lambda_g, "Sparsity weight on the target marginal");
  s->add_option("--tol", f.tol, "Relative loss tolerance")->capture_default_str();
  s->add_option("--max-iter", f.max_iter, "Iteration cap")->capture_default_str();
  s->add_option("--init", f.init, "Initial coupling")->check(CLI::IsMember({"uniform", "random", "kmeans"}));
}

void add_training(CLI::App *s, Flags &f) {
  s->add_option("--m", f.m, "Atom size")->capture_default_str();
  s->add_option("--epochs", f.epochs, "Maximum epochs")->capture_default_str();
  s->add_option("--batch-size", f.batch_size, "Graphs per gradient step")->capture_default_str();
  s->add_option("--lr", f.lr, "Adam learning rate")->capture_default_str();
  s->add_option("--log", f.log_path, "Training log CSV");
}

void add_jobs(CLI::App *s, Flags &f) {
  s->add_option("--jobs", f.jobs, "Cap on parallel threads (0 keeps the default)");
}

}  // namespace

int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  configure_logging_from_env();
  Flags f;
  CLI::App app{"Semi-relaxed Gromov-Wasserstein graph toolkit", "srgw"};
  app.require_subcommand(1);
  const auto sub = [&](const char *name, const char *desc) {
    CLI::App *s = app.add_subcommand(name, desc);
    s->add_option("--config", f.config, "JSON file of flag values; explicit flags take precedence");
    return s;
  };

  CLI::App *gen = sub("gen-sbm", "Sample a stochastic block model graph");
  gen->add_option("--sizes", f.sizes, "Block sizes, e.g. 50,50; ';' separates templates");
  gen->add_option("--p-in", f.p_in, "Within-block edge probability")->capture_default_str();
  gen->add_option("--p-out", f.p_out, "Between-block edge probability")->capture_default_str();
  gen->add_option("--count", f.count, "Number of graphs; above 1, --out is a directory")->capture_default_str();
  add_seed(gen, f);
  add_out(gen, f, "Output graph file");

  CLI::App *match = sub("match", "Solve srGW (or srFGW) from one graph onto a target");
  match->add_option("--source", f.source, "Source graph")->required()->check(CLI::ExistingFile);
  match->add_option("--target", f.target, "Target graph or atom")->required()->check(CLI::ExistingFile);
  match->add_flag("--dump-coupling", f.dump_coupling, "Also write the coupling as <out>.coupling.csv");
  add_representation(match, f);
  add_solver(match, f);
  add_seed(match, f);
  add_jobs(match, f);
  add_out(match, f, "Result JSON");

  CLI::App *part = sub("partition", "Partition a graph by matching it onto q isolated nodes");
  part->add_option("--graph", f.graph, "Graph file")->required()->check(CLI::ExistingFile);
  part->add_option("--q", f.q, "Target node count")->capture_default_str();
  part->add_flag("--tune", f.tune, "Select hyperparameters by modularity");
  add_representation(part, f);
  add_solver(part, f);
  add_seed(part, f);
  add_jobs(part, f);
  add_out(part, f, "Result JSON");

  CLI::App *learn = sub("dict-learn", "Learn a single-atom dictionary");
  learn->add_option("--dataset", f.dataset, "Directory of graph files")->required()->check(CLI::ExistingDirectory);
  add_training(learn, f);
  add_representation(learn, f);
  add_solver(learn, f);
  add_seed(learn, f);
  add_jobs(learn, f);
  add_out(learn, f, "Atom JSON");

  CLI::App *emb = sub("embed", "Embed graphs onto an atom");
  emb->add_option("--dataset", f.dataset, "Directory of graph files")->check(CLI::ExistingDirectory);
  emb->add_option("--graph", f.graph, "Single graph file")->check(CLI::ExistingFile);
  emb->add_option("--target", f.target, "Atom JSON")->required()->check(CLI::ExistingFile);
  add_representation(emb, f);
  add_solver(emb, f);
  add_seed(emb, f);
  add_jobs(emb, f);
  add_out(emb, f, "Embeddings JSON");

  CLI::App *clu = sub("cluster", "Cluster graphs by k-means on their embeddings");
  clu->add_option("--dataset", f.dataset, "Directory of graph files")->required()->check(CLI::ExistingDirectory);
  clu->add_option("--target", f.target, "Atom JSON; learned from the dataset when absent")->check(CLI::ExistingFile);
  clu->add_option("--k", f.k, "Number of clusters")->capture_default_str();
  add_training(clu, f);
  add_representation(clu, f);
  add_solver(clu, f);
  add_seed(clu, f);
  add_jobs(clu, f);
  add_out(clu, f, "Result JSON");

  CLI::App *comp = sub("complete", "Impute missing nodes of a partially observed graph");
  comp->add_option("--graph", f.graph, "Observed graph")->required()->check(CLI::ExistingFile);
  comp->add_option("--target", f.target, "Atom JSON")->required()->check(CLI::ExistingFile);
  comp->add_option("--n", f.n, "Total node count after completion")->required();
  comp->add_option("--restarts", f.restarts, "Independent starts; lowest loss wins")->capture_default_str();
  add_solver(comp, f);
  add_seed(comp, f);
  add_jobs(comp, f);
  add_out(comp, f, "Result JSON");

  CLI::App *bench = sub("bench", "Time the conditional gradient phases over graph sizes");
  bench->add_option("--sizes", f.sizes, "Graph sizes, ascending (default 100,200,400)");
  bench->add_option("--m", f.bench_m, "Target size")->capture_default_str();
  bench->add_option("--repeats", f.repeats, "Runs per size")->capture_default_str();
  bench->add_option("--tol", f.tol, "Relative loss tolerance")->capture_default_str();
  bench->add_option("--max-iter", f.max_iter, "Iteration cap")->capture_default_str();
  add_seed(bench, f);
  add_jobs(bench, f);
  bench->add_option("--out", f.out, "CSV file (stdout when absent)");

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(app, args);
  } catch (const InvalidInput &e) {
    err << "error: " << e.what() << "\n";
    return ValidationError;
  }
  std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    CLI::App *s = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    out << s->help();
    return Ok;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return Ok;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n\n";
    CLI::App *s = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << s->help();
    return ValidationError;
  }

  const CLI::App *ran = app.get_subcommands().front();
  f.o_alpha = ran->get_option_no_throw("--alpha");
  f.o_epsilon = ran->get_option_no_throw("--epsilon");
  f.o_lambda = ran->get_option_no_throw("--lambda-g");
  f.o_b = ran->get_option_no_throw("--b");
  f.o_representation = ran->get_option_no_throw("--representation");
  f.o_dist = ran->get_option_no_throw("--dist");

  if (f.jobs < 0) {
    err << "error: --jobs must be >= 0\n";
    return ValidationError;
  }
  if (f.jobs > 0)
    kernels::set_max_threads(f.jobs);

  try {
    if (app.got_subcommand(gen))
      return cmd_gen_sbm(f, out);
    if (app.got_subcommand(match))
      return cmd_match(f, out);
    if (app.got_subcommand(part))
      return cmd_partition(f, out);
    if (app.got_subcommand(learn))
      return cmd_dict_learn(f, out);
    if (app.got_subcommand(emb))
      return cmd_embed(f, out);
    if (app.got_subcommand(clu))
      return cmd_cluster(f, out);
    if (app.got_subcommand(comp))
      return cmd_complete(f, out);
    if (app.got_subcommand(bench))
      return cmd_bench(f, out);
  } catch (const SolverFailure &e) {
    err << "solver failure: " << e.what() << "\n";
    return SolverError;
  } catch (const InvalidInput &e) {
    err << "error: " << e.what() << "\n";
    return ValidationError;
  } catch (const fs::filesystem_error &e) {
    err << "error: " << e.what() << "\n";
    return ValidationError;
  } catch (const std::exception &e) {
    err << "failure: " << e.what() << "\n";
    return SolverError;
  }
  return ValidationError;
}

int run_command(int argc, const char *const *argv) {
  std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
  return run_command(args, std::cout, std::cerr);
}

}  // namespace srgw::cli
