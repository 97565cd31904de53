// biasedwalk: biased random-walk node embeddings with evaluation harnesses.
//
// Subcommands: embed, walks, nodeclass, linkpred, sweep, bench, rerun.
// Exit codes: 0 success, 2 input parse error, 3 parameter error, 4 runtime
// error.

#include <sys/resource.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "biasedwalk/eval.hpp"
#include "biasedwalk/graph.hpp"
#include "biasedwalk/skipgram.hpp"
#include "biasedwalk/walker.hpp"

using json = nlohmann::json;
using namespace biasedwalk;

namespace {

struct Params {
  std::string command;
  std::string input;
  std::string output;
  std::string labels;
  std::string embeddings;  // reuse a saved embedding instead of training
  bool directed = false;
  bool weighted = false;
  std::string walk_type = "dfs";
  double alpha = 0.5;
  int num_walks = 10;    // gamma
  int walk_length = 80;  // L
  int window = 10;       // c
  int dim = 128;
  int negatives = 5;
  int epochs = 1;
  double lr = 0.025;
  double final_lr = 1e-4;
  std::uint64_t seed = 1;
  int workers = 0;  // 0 = all hardware threads
  bool deterministic = false;
  // evaluation
  double lambda = 1e-4;
  int cls_epochs = 300;
  int instances = 10;
  double fraction = 0.5;  // edges removed for link prediction
  bool standardize = false;
  bool save_splits = true;
  int folds = 10;
  bool linkpred_sweep = false;
  std::string walk_types = "bfs,dfs";
  std::string alphas = "0.125,0.25,0.5,1.0";
  // bench
  std::string sizes = "1000,10000,100000";
  double avg_degree = 10.0;
  // graph utility
  bool lcc = false;
  std::int64_t gen_nodes = 0;  // > 0 selects Erdos-Renyi generation
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(
    Params, command, input, output, labels, embeddings, directed, weighted,
    walk_type, alpha, num_walks, walk_length, window, dim, negatives, epochs,
    lr, final_lr, seed, workers, deterministic, lambda, cls_epochs, instances,
    fraction, standardize, save_splits, folds, linkpred_sweep, walk_types,
    alphas, sizes, avg_degree, lcc, gen_nodes)

class StageTimer {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const std::chrono::duration<double> d = now - mark_;
    mark_ = now;
    return d.count();
  }

 private:
  std::chrono::steady_clock::time_point mark_ =
      std::chrono::steady_clock::now();
};

double peak_rss_mb() {
  rusage ru{};
  getrusage(RUSAGE_SELF, &ru);
  return static_cast<double>(ru.ru_maxrss) / 1024.0;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  return out;
}

Graph load_graph(const Params& p) {
  auto in = open_input(p.input);
  Graph g = Graph::load_edge_list(in, p.directed, p.weighted);
  if (g.node_count() == 0) {
    throw ParamError("input graph '" + p.input + "' has no nodes");
  }
  return g;
}

WalkConfig walk_config(const Params& p) {
  WalkConfig cfg;
  cfg.sampling = sampling_type_from_string(p.walk_type);
  cfg.alpha = p.alpha;
  cfg.max_length = p.walk_length;
  cfg.seed = p.seed;
  cfg.workers = p.workers;
  cfg.validate();
  return cfg;
}

TrainConfig train_config(const Params& p) {
  TrainConfig cfg;
  cfg.dim = p.dim;
  cfg.window = p.window;
  cfg.negatives = p.negatives;
  cfg.epochs = p.epochs;
  cfg.initial_lr = p.lr;
  cfg.final_lr = p.final_lr;
  cfg.seed = p.seed;
  cfg.deterministic = p.deterministic;
  cfg.workers = p.workers;
  cfg.validate();
  return cfg;
}

EvalOptions eval_options(const Params& p) {
  EvalOptions opts;
  opts.lambda = p.lambda;
  opts.cls_epochs = p.cls_epochs;
  opts.standardize = p.standardize;
  return opts;
}

std::vector<GridPoint> parse_grid(const Params& p) {
  std::vector<GridPoint> grid;
  std::istringstream types(p.walk_types);
  std::string t;
  while (std::getline(types, t, ',')) {
    const SamplingType type = sampling_type_from_string(t);
    std::istringstream alphas(p.alphas);
    std::string a;
    while (std::getline(alphas, a, ',')) {
      grid.push_back({type, std::stod(a)});
    }
  }
  return grid;
}

void write_manifest(const Params& p, const json& inputs, const json& outputs,
                    const json& timings, const json& extra = {}) {
  json manifest;
  manifest["command"] = p.command;
  manifest["seed"] = p.seed;
  manifest["parameters"] = p;
  manifest["inputs"] = inputs;
  manifest["outputs"] = outputs;
  manifest["timings_seconds"] = timings;
  if (!extra.empty()) manifest["details"] = extra;
  const std::string path = p.output + ".manifest.json";
  auto out = open_output(path);
  out << manifest.dump(2) << '\n';
}

// Trains embeddings with the command's walk/train flags, or loads them from
// --embeddings. Returns sampling and training wall-times through the pointers.
EmbeddingModel<float> make_embeddings(const Params& p, const Graph& g,
                                      double* sampling_s, double* training_s) {
  if (!p.embeddings.empty()) {
    auto in = open_input(p.embeddings);
    *sampling_s = 0.0;
    *training_s = 0.0;
    return load_embeddings<float>(in);
  }
  StageTimer timer;
  const Corpus corpus = generate_walk_set(g, walk_config(p), p.num_walks);
  *sampling_s = timer.lap();
  auto result = train<float>(corpus, train_config(p));
  *training_s = timer.lap();
  return std::move(result.model);
}

int run_embed(const Params& p) {
  const Graph g = load_graph(p);
  StageTimer timer;
  const Corpus corpus = generate_walk_set(g, walk_config(p), p.num_walks);
  const double sampling_s = timer.lap();
  auto result = train<float>(corpus, train_config(p));
  const double training_s = timer.lap();
  {
    auto out = open_output(p.output);
    save_embeddings(out, result.model);
  }
  std::printf("embedded %d nodes into %d dims (sampling %.2fs, training %.2fs)\n",
              g.node_count(), p.dim, sampling_s, training_s);
  write_manifest(p, {{"graph", p.input}}, {{"embeddings", p.output}},
                 {{"sampling", sampling_s}, {"training", training_s}},
                 {{"epoch_mean_loss", result.epoch_mean_loss}});
  return 0;
}

int run_walks(const Params& p) {
  const Graph g = load_graph(p);
  StageTimer timer;
  const Corpus corpus = generate_walk_set(g, walk_config(p), p.num_walks);
  const double sampling_s = timer.lap();
  {
    auto out = open_output(p.output);
    corpus.save(out);
  }
  std::printf("wrote %zu walks (%lld tokens) in %.2fs\n", corpus.walks.size(),
              static_cast<long long>(corpus.total_tokens), sampling_s);
  write_manifest(p, {{"graph", p.input}}, {{"corpus", p.output}},
                 {{"sampling", sampling_s}});
  return 0;
}

int run_nodeclass(const Params& p) {
  if (p.labels.empty()) throw ParamError("--labels is required for nodeclass");
  const Graph g = load_graph(p);
  double sampling_s = 0, training_s = 0;
  const EmbeddingModel<float> emb =
      make_embeddings(p, g, &sampling_s, &training_s);

  LabeledDataset data;
  {
    auto in = open_input(p.labels);
    data = LabeledDataset::load(in);
  }
  data = data.aligned_to(emb.index);
  if (data.size() < 2) throw ParamError("fewer than two labeled nodes usable");

  StageTimer timer;
  const EvalOptions opts = eval_options(p);
  auto out = open_output(p.output);
  out << "fraction,instance,macro_f1,micro_f1\n";
  double macro50 = 0, micro50 = 0;
  char buf[160];
  for (int f = 1; f <= 9; ++f) {
    const double fraction = f / 10.0;
    for (int inst = 0; inst < p.instances; ++inst) {
      const Scores s = nodeclass_instance(
          emb, data, fraction, hash_combine(hash_combine(p.seed, f), inst),
          opts);
      std::snprintf(buf, sizeof buf, "%.1f,%d,%.6f,%.6f\n", fraction, inst,
                    s.macro, s.micro);
      out << buf;
      if (f == 5) {
        macro50 += s.macro;
        micro50 += s.micro;
      }
    }
  }
  const double evaluation_s = timer.lap();
  std::printf("50/50 split over %d instances: Macro-F1 %.4f, Micro-F1 %.4f\n",
              p.instances, macro50 / p.instances, micro50 / p.instances);
  write_manifest(p, {{"graph", p.input}, {"labels", p.labels}},
                 {{"scores", p.output}},
                 {{"sampling", sampling_s},
                  {"training", training_s},
                  {"evaluation", evaluation_s}},
                 {{"macro_f1_50", macro50 / p.instances},
                  {"micro_f1_50", micro50 / p.instances}});
  return 0;
}

int run_linkpred(const Params& p) {
  Graph g = load_graph(p);
  if (!g.is_connected()) {
    const Graph lcc = g.largest_connected_component();
    std::fprintf(stderr,
                 "note: using the largest connected component (%d of %d "
                 "nodes)\n",
                 lcc.node_count(), g.node_count());
    g = lcc;
  }

  const EvalOptions opts = eval_options(p);
  auto out = open_output(p.output);
  out << "instance,macro_f1,micro_f1\n";
  double macro_sum = 0, micro_sum = 0;
  double sampling_s = 0, training_s = 0, evaluation_s = 0;
  json split_files = json::array();
  char buf[160];
  for (int inst = 0; inst < p.instances; ++inst) {
    const std::uint64_t inst_seed = hash_combine(p.seed, inst);
    const LinkPredSplit split =
        split_edges_for_linkpred(g, p.fraction, inst_seed);

    if (p.save_splits) {
      const std::string stem = p.output + ".split" + std::to_string(inst);
      {
        auto f = open_output(stem + ".residual.edgelist");
        split.residual.save_edge_list(f);
      }
      {
        auto f = open_output(stem + ".positives.edgelist");
        save_pairs_edge_list(f, g, split.positives);
      }
      {
        auto f = open_output(stem + ".negatives.edgelist");
        save_pairs_edge_list(f, g, split.negatives);
      }
      split_files.push_back({{"instance", inst},
                             {"seed", inst_seed},
                             {"residual", stem + ".residual.edgelist"},
                             {"positives", stem + ".positives.edgelist"},
                             {"negatives", stem + ".negatives.edgelist"}});
    }

    StageTimer timer;
    Params inst_params = p;
    inst_params.seed = inst_seed;
    const Corpus corpus =
        generate_walk_set(split.residual, walk_config(inst_params), p.num_walks);
    sampling_s += timer.lap();
    const auto emb = train<float>(corpus, train_config(inst_params)).model;
    training_s += timer.lap();
    const Scores s = linkpred_instance(emb, g, split, 0.5, inst_seed, opts);
    evaluation_s += timer.lap();
    macro_sum += s.macro;
    micro_sum += s.micro;
    std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f\n", inst, s.macro, s.micro);
    out << buf;
  }
  std::printf(
      "link prediction over %d split instances: Macro-F1 %.4f, Micro-F1 "
      "%.4f\n",
      p.instances, macro_sum / p.instances, micro_sum / p.instances);
  write_manifest(p, {{"graph", p.input}}, {{"scores", p.output}},
                 {{"sampling", sampling_s},
                  {"training", training_s},
                  {"evaluation", evaluation_s}},
                 {{"macro_f1", macro_sum / p.instances},
                  {"micro_f1", micro_sum / p.instances},
                  {"splits", split_files}});
  return 0;
}

int run_sweep(const Params& p) {
  const Graph g = load_graph(p);
  const std::vector<GridPoint> grid = parse_grid(p);
  const EvalOptions opts = eval_options(p);
  const WalkConfig wcfg = walk_config(p);
  const TrainConfig tcfg = train_config(p);

  StageTimer timer;
  SweepResult result;
  if (!p.labels.empty()) {
    LabeledDataset data;
    {
      auto in = open_input(p.labels);
      data = LabeledDataset::load(in);
    }
    // Sweep embeds the whole graph, so align against its node set.
    std::unordered_map<std::string, NodeId> vocab;
    for (NodeId i = 0; i < g.node_count(); ++i) vocab.emplace(g.name_of(i), i);
    data = data.aligned_to(vocab);
    result = sweep_nodeclass(g, data, grid, p.folds, wcfg, tcfg, p.num_walks,
                             opts);
  } else if (p.linkpred_sweep) {
    Graph target = g;
    if (!target.is_connected()) {
      target = target.largest_connected_component();
      std::fprintf(stderr, "note: sweeping on the largest component (%d nodes)\n",
                   target.node_count());
    }
    result = sweep_linkpred(target, p.fraction, grid, p.folds, wcfg, tcfg,
                            p.num_walks, opts);
  } else {
    throw ParamError("sweep needs --labels (classification) or --linkpred");
  }
  const double evaluation_s = timer.lap();

  auto out = open_output(p.output);
  out << "setting,fold,macro_f1,micro_f1\n";
  char buf[160];
  for (const auto& row : result.table) {
    std::snprintf(buf, sizeof buf, "%s:%g,%d,%.6f,%.6f\n",
                  to_string(row.point.type), row.point.alpha, row.fold,
                  row.scores.macro, row.scores.micro);
    out << buf;
  }
  std::printf("best setting: walk_type=%s alpha=%g (mean Macro-F1 %.4f)\n",
              to_string(result.best.type), result.best.alpha,
              result.best_mean_macro);
  write_manifest(p, {{"graph", p.input}, {"labels", p.labels}},
                 {{"table", p.output}},
                 {{"evaluation", evaluation_s}},
                 {{"best_walk_type", to_string(result.best.type)},
                  {"best_alpha", result.best.alpha},
                  {"best_mean_macro_f1", result.best_mean_macro}});
  return 0;
}

int run_bench(const Params& p) {
  std::vector<std::int64_t> sizes;
  {
    std::istringstream list(p.sizes);
    std::string tok;
    while (std::getline(list, tok, ',')) sizes.push_back(std::stoll(tok));
  }
  if (sizes.empty()) throw ParamError("--sizes is empty");

  auto out = open_output(p.output);
  out << "n,sampling_seconds,total_seconds,training_seconds,peak_rss_mb,edges\n";
  char buf[200];
  json rows = json::array();
  double sampling_total = 0, training_total = 0;
  for (std::int64_t n : sizes) {
    if (n < 1 || n > std::numeric_limits<NodeId>::max()) {
      throw ParamError("bench size out of range: " + std::to_string(n));
    }
    const Graph g =
        Graph::erdos_renyi(static_cast<NodeId>(n), p.avg_degree, p.seed);
    StageTimer timer;
    const Corpus corpus = generate_walk_set(g, walk_config(p), p.num_walks);
    const double sampling_s = timer.lap();
    const auto result = train<float>(corpus, train_config(p));
    const double training_s = timer.lap();
    const double total_s = sampling_s + training_s;
    sampling_total += sampling_s;
    training_total += training_s;
    std::snprintf(buf, sizeof buf, "%lld,%.3f,%.3f,%.3f,%.1f,%lld\n",
                  static_cast<long long>(n), sampling_s, total_s, training_s,
                  peak_rss_mb(), static_cast<long long>(g.edge_count()));
    out << buf;
    out.flush();
    std::printf("n=%lld: sampling %.2fs, training %.2fs, rss %.0f MB\n",
                static_cast<long long>(n), sampling_s, training_s,
                peak_rss_mb());
    rows.push_back({{"n", n},
                    {"sampling_seconds", sampling_s},
                    {"total_seconds", total_s},
                    {"peak_rss_mb", peak_rss_mb()}});
  }
  write_manifest(p, {{"generator", "erdos_renyi"}}, {{"table", p.output}},
                 {{"sampling", sampling_total}, {"training", training_total}},
                 {{"rows", rows}});
  return 0;
}

int run_graph(const Params& p) {
  Graph g;
  json inputs;
  if (p.gen_nodes > 0) {
    if (p.gen_nodes > std::numeric_limits<NodeId>::max()) {
      throw ParamError("--nodes out of range");
    }
    g = Graph::erdos_renyi(static_cast<NodeId>(p.gen_nodes), p.avg_degree,
                           p.seed);
    inputs = {{"generator", "erdos_renyi"},
              {"nodes", p.gen_nodes},
              {"avg_degree", p.avg_degree}};
  } else if (!p.input.empty()) {
    g = load_graph(p);
    inputs = {{"graph", p.input}};
  } else {
    throw ParamError("graph needs --input or --nodes");
  }
  if (p.lcc) {
    const Graph lcc = g.largest_connected_component();
    std::printf("largest component: %d of %d nodes, %lld edges\n",
                lcc.node_count(), g.node_count(),
                static_cast<long long>(lcc.edge_count()));
    g = lcc;
  } else {
    std::printf("%d nodes, %lld edges\n", g.node_count(),
                static_cast<long long>(g.edge_count()));
  }
  {
    auto out = open_output(p.output);
    g.save_edge_list(out);
  }
  write_manifest(p, inputs, {{"graph", p.output}}, json::object());
  return 0;
}

int dispatch(const Params& p) {
  if (p.command == "embed") return run_embed(p);
  if (p.command == "walks") return run_walks(p);
  if (p.command == "nodeclass") return run_nodeclass(p);
  if (p.command == "linkpred") return run_linkpred(p);
  if (p.command == "sweep") return run_sweep(p);
  if (p.command == "bench") return run_bench(p);
  if (p.command == "graph") return run_graph(p);
  throw ParamError("unknown command '" + p.command + "'");
}

int run_rerun(const std::string& manifest_path) {
  auto in = open_input(manifest_path);
  json manifest;
  try {
    manifest = json::parse(in);
  } catch (const json::exception& e) {
    throw biasedwalk::ParseError("manifest '" + manifest_path +
                                 "': " + e.what());
  }
  if (!manifest.contains("parameters") || !manifest.contains("command")) {
    throw biasedwalk::ParseError("manifest '" + manifest_path +
                                 "' lacks command/parameters");
  }
  Params p = manifest["parameters"].get<Params>();
  p.command = manifest["command"].get<std::string>();
  std::printf("re-running '%s' from %s\n", p.command.c_str(),
              manifest_path.c_str());
  return dispatch(p);
}

}  // namespace

int main(int argc, char** argv) {
  Params p;
  std::string manifest_path;

  CLI::App app{"biased random-walk node embeddings and evaluation"};
  app.require_subcommand(1);

  auto add_graph_flags = [&](CLI::App* cmd) {
    cmd->add_option("--input", p.input, "edge list file")->required();
    cmd->add_flag("--directed", p.directed, "treat edges as directed arcs");
    cmd->add_flag("--weighted", p.weighted, "read a third weight column");
  };
  auto add_walk_flags = [&](CLI::App* cmd) {
    cmd->add_option("--walk-type", p.walk_type, "bfs|dfs|uniform");
    cmd->add_option("--alpha", p.alpha, "proximity decay, 0 < alpha <= 1");
    cmd->add_option("--num-walks", p.num_walks, "walks per node (gamma)");
    cmd->add_option("--walk-length", p.walk_length, "maximum walk length (L)");
  };
  auto add_train_flags = [&](CLI::App* cmd) {
    cmd->add_option("--window", p.window, "context window size (c)");
    cmd->add_option("--dim", p.dim, "embedding dimensions (d)");
    cmd->add_option("--negatives", p.negatives,
                    "noise samples per pair; 0 = full softmax");
    cmd->add_option("--epochs", p.epochs, "training passes over the corpus");
    cmd->add_option("--lr", p.lr, "initial learning rate");
    cmd->add_option("--final-lr", p.final_lr, "final learning rate");
  };
  auto add_common_flags = [&](CLI::App* cmd) {
    cmd->add_option("--output", p.output, "output file")->required();
    cmd->add_option("--seed", p.seed, "rng seed");
    cmd->add_option("--workers", p.workers, "thread cap (0 = all cores)");
    cmd->add_flag("--deterministic", p.deterministic,
                  "bit-reproducible single-worker training");
  };
  auto add_eval_flags = [&](CLI::App* cmd) {
    cmd->add_option("--lambda", p.lambda, "L2 strength of the classifier");
    cmd->add_option("--cls-epochs", p.cls_epochs, "classifier epoch cap");
    cmd->add_flag("--standardize", p.standardize,
                  "z-score features with train statistics");
    cmd->add_option("--embeddings", p.embeddings,
                    "reuse a saved embedding file instead of training");
  };

  auto* embed = app.add_subcommand("embed", "sample walks and train embeddings");
  add_graph_flags(embed);
  add_walk_flags(embed);
  add_train_flags(embed);
  add_common_flags(embed);

  auto* walks = app.add_subcommand("walks", "write the walk corpus only");
  add_graph_flags(walks);
  add_walk_flags(walks);
  add_common_flags(walks);

  auto* nodeclass =
      app.add_subcommand("nodeclass", "multilabel classification scores");
  add_graph_flags(nodeclass);
  add_walk_flags(nodeclass);
  add_train_flags(nodeclass);
  add_common_flags(nodeclass);
  add_eval_flags(nodeclass);
  nodeclass->add_option("--labels", p.labels, "node label file")->required();
  nodeclass->add_option("--instances", p.instances,
                        "random splits per train fraction");

  auto* linkpred = app.add_subcommand("linkpred", "link prediction scores");
  add_graph_flags(linkpred);
  add_walk_flags(linkpred);
  add_train_flags(linkpred);
  add_common_flags(linkpred);
  add_eval_flags(linkpred);
  linkpred->add_option("--instances", p.instances, "split instances");
  linkpred->add_option("--fraction", p.fraction, "edge fraction removed");
  linkpred->add_flag("--save-splits,!--no-save-splits", p.save_splits,
                     "write residual/positive/negative edge lists");

  auto* sweep =
      app.add_subcommand("sweep", "cross-validated walk_type x alpha search");
  add_graph_flags(sweep);
  add_walk_flags(sweep);
  add_train_flags(sweep);
  add_common_flags(sweep);
  add_eval_flags(sweep);
  sweep->add_option("--labels", p.labels, "label file (classification sweep)");
  sweep->add_flag("--linkpred", p.linkpred_sweep, "sweep link prediction");
  sweep->add_option("--fraction", p.fraction, "edge fraction removed");
  sweep->add_option("--folds", p.folds, "cross-validation folds");
  sweep->add_option("--walk-types", p.walk_types, "comma list of walk types");
  sweep->add_option("--alphas", p.alphas, "comma list of alpha values");

  auto* bench =
      app.add_subcommand("bench", "scaling run on Erdos-Renyi graphs");
  add_walk_flags(bench);
  add_train_flags(bench);
  add_common_flags(bench);
  bench->add_option("--sizes", p.sizes, "comma list of node counts");
  bench->add_option("--avg-degree", p.avg_degree, "average degree");

  auto* graph_cmd = app.add_subcommand(
      "graph", "edge-list utilities: component extraction, generation");
  graph_cmd->add_option("--input", p.input, "edge list file");
  graph_cmd->add_flag("--directed", p.directed, "treat edges as directed arcs");
  graph_cmd->add_flag("--weighted", p.weighted, "read a third weight column");
  graph_cmd->add_flag("--lcc", p.lcc,
                      "keep only the largest (strongly) connected component");
  graph_cmd->add_option("--nodes", p.gen_nodes,
                        "generate an Erdos-Renyi graph of this many nodes");
  graph_cmd->add_option("--avg-degree", p.avg_degree, "average degree");
  graph_cmd->add_option("--output", p.output, "output edge list")->required();
  graph_cmd->add_option("--seed", p.seed, "rng seed");

  auto* rerun = app.add_subcommand("rerun", "repeat a run from its manifest");
  rerun->add_option("manifest", manifest_path, "manifest json path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (rerun->parsed()) return run_rerun(manifest_path);
    if (p.workers <= 0) {
      p.workers = std::max(1u, std::thread::hardware_concurrency());
    }
    p.command = app.get_subcommands().front()->get_name();
    return dispatch(p);
  } catch (const biasedwalk::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const ParamError& e) {
    std::fprintf(stderr, "parameter error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
}
