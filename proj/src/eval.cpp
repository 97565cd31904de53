#include "biasedwalk/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace biasedwalk {

namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double stable_softplus(double m) {
  if (m > 30.0) return m;
  if (m < -30.0) return std::exp(m);
  return std::log1p(std::exp(m));
}

struct DisjointSet {
  std::vector<NodeId> parent;
  explicit DisjointSet(NodeId n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  NodeId find(NodeId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

LabeledDataset LabeledDataset::load(std::istream& in) {
  LabeledDataset data;
  std::unordered_map<std::string, std::size_t> node_row;
  std::unordered_map<std::string, int> label_id;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError("label file line " + std::to_string(lineno) +
                       ": expected 'node<TAB>label,label,...'");
    }
    const std::string node = trim(line.substr(0, tab));
    if (node.empty()) {
      throw ParseError("label file line " + std::to_string(lineno) +
                       ": empty node token");
    }
    std::vector<int> labels;
    for (const auto& raw : split_on(line.substr(tab + 1), ',')) {
      const std::string tok = trim(raw);
      if (tok.empty()) continue;
      auto [it, inserted] =
          label_id.emplace(tok, static_cast<int>(data.label_names.size()));
      if (inserted) data.label_names.push_back(tok);
      labels.push_back(it->second);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    auto [it, inserted] = node_row.emplace(node, data.nodes.size());
    if (inserted) {
      data.nodes.push_back(node);
      data.label_sets.push_back(std::move(labels));
    } else {
      auto& existing = data.label_sets[it->second];
      existing.insert(existing.end(), labels.begin(), labels.end());
      std::sort(existing.begin(), existing.end());
      existing.erase(std::unique(existing.begin(), existing.end()),
                     existing.end());
    }
  }
  return data;
}

LabeledDataset LabeledDataset::aligned_to(
    const std::unordered_map<std::string, NodeId>& vocab,
    std::int64_t* dropped) const {
  LabeledDataset out;
  out.label_names = label_names;
  std::int64_t missing = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (vocab.count(nodes[i])) {
      out.nodes.push_back(nodes[i]);
      out.label_sets.push_back(label_sets[i]);
    } else {
      ++missing;
    }
  }
  if (missing > 0) {
    std::fprintf(stderr,
                 "warning: %lld labeled node(s) missing from the vocabulary\n",
                 static_cast<long long>(missing));
  }
  if (dropped) *dropped = missing;
  return out;
}

LinkPredSplit split_edges_for_linkpred(const Graph& g, double fraction,
                                       std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw ParamError("link prediction fraction must lie in (0, 1)");
  }
  if (!g.is_connected()) {
    throw ParamError("link prediction split requires a connected input graph");
  }
  const NodeId n = g.node_count();

  // Edge list with stable indices; undirected edges appear once as (u<v).
  std::vector<EdgeTuple> edges;
  edges.reserve(g.edge_count());
  std::unordered_map<std::uint64_t, std::size_t> edge_index;
  edge_index.reserve(g.edge_count() * 2);
  for (NodeId u = 0; u < n; ++u) {
    auto nb = g.neighbors(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const NodeId v = nb.ids[i];
      if (!g.directed() && v < u) continue;
      edge_index.emplace(pair_key(u, v), edges.size());
      edges.emplace_back(u, v, nb.weights[i]);
    }
  }

  Rng rng = Rng::stream(seed, 0x73706c69ull, 0);  // "spli"
  std::vector<char> retained(edges.size(), 0);

  if (!g.directed()) {
    // Random spanning tree by shuffled Kruskal.
    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    shuffle(order, rng);
    DisjointSet dsu(n);
    for (std::size_t idx : order) {
      if (dsu.unite(std::get<0>(edges[idx]), std::get<1>(edges[idx]))) {
        retained[idx] = 1;
      }
    }
  } else {
    // Out- plus in-arborescence from a random root keeps strong connectivity.
    const auto root = static_cast<NodeId>(rng.bounded(n));
    for (const bool reverse : {false, true}) {
      std::vector<char> seen(n, 0);
      std::vector<NodeId> queue{root};
      seen[root] = 1;
      std::vector<NodeId> shuffled;
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const NodeId x = queue[qi];
        auto nb = reverse ? g.in_neighbors(x) : g.neighbors(x);
        shuffled.assign(nb.ids.begin(), nb.ids.end());
        shuffle(shuffled, rng);
        for (NodeId y : shuffled) {
          if (seen[y]) continue;
          seen[y] = 1;
          queue.push_back(y);
          const auto key = reverse ? pair_key(y, x) : pair_key(x, y);
          retained[edge_index.at(key)] = 1;
        }
      }
    }
  }

  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!retained[i]) pool.push_back(i);
  }
  const auto need = static_cast<std::int64_t>(
      std::llround(fraction * static_cast<double>(g.edge_count())));
  if (static_cast<std::int64_t>(pool.size()) < need) {
    throw ParamError("insufficient removable edges: need " +
                     std::to_string(need) + " but only " +
                     std::to_string(pool.size()) +
                     " lie outside the spanning structure");
  }
  shuffle(pool, rng);

  LinkPredSplit split;
  split.seed = seed;
  std::vector<char> removed(edges.size(), 0);
  for (std::int64_t i = 0; i < need; ++i) {
    removed[pool[i]] = 1;
    split.positives.emplace_back(std::get<0>(edges[pool[i]]),
                                 std::get<1>(edges[pool[i]]));
  }
  std::vector<EdgeTuple> residual;
  residual.reserve(edges.size() - need);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!removed[i]) residual.push_back(edges[i]);
  }
  split.residual =
      Graph::from_edges(g.names(), residual, g.directed(), g.weighted());

  // Uniform distinct non-edges of the original graph.
  std::unordered_set<std::uint64_t> taken;
  taken.reserve(static_cast<std::size_t>(need) * 2);
  const std::int64_t attempt_cap = 200 * need + 10000;
  std::int64_t attempts = 0;
  while (static_cast<std::int64_t>(split.negatives.size()) < need) {
    if (++attempts > attempt_cap) {
      throw ParamError("could not sample enough non-edges (graph too dense)");
    }
    auto u = static_cast<NodeId>(rng.bounded(n));
    auto v = static_cast<NodeId>(rng.bounded(n));
    if (u == v) continue;
    if (!g.directed() && u > v) std::swap(u, v);
    if (g.has_arc(u, v)) continue;
    if (!taken.insert(pair_key(u, v)).second) continue;
    split.negatives.emplace_back(u, v);
  }
  return split;
}

void save_pairs_edge_list(std::ostream& out, const Graph& g,
                          std::span<const std::pair<NodeId, NodeId>> pairs) {
  for (const auto& [u, v] : pairs) {
    out << g.name_of(u) << ' ' << g.name_of(v) << '\n';
  }
}

double ovr_objective(const FeatureMatrix& X, const LabelMatrix& Y,
                     const Eigen::MatrixXd& weights,
                     const Eigen::RowVectorXd& bias, double lambda) {
  const auto n = static_cast<double>(X.rows());
  Eigen::ArrayXXd margin =
      ((X * weights).rowwise() + bias).array() * (1.0 - 2.0 * Y.array());
  const double data_loss =
      margin.unaryExpr([](double m) { return stable_softplus(m); }).sum() / n;
  return data_loss + 0.5 * lambda * weights.squaredNorm();
}

void ovr_gradient(const FeatureMatrix& X, const LabelMatrix& Y,
                  const Eigen::MatrixXd& weights,
                  const Eigen::RowVectorXd& bias, double lambda,
                  Eigen::MatrixXd& grad_w, Eigen::RowVectorXd& grad_b) {
  const auto n = static_cast<double>(X.rows());
  Eigen::MatrixXd residual = ((X * weights).rowwise() + bias);
  residual = residual.unaryExpr(
      [](double z) { return 1.0 / (1.0 + std::exp(-z)); });
  residual -= Y;
  grad_w.noalias() = X.transpose() * residual / n;
  grad_w += lambda * weights;
  grad_b = residual.colwise().sum() / n;
}

OneVsRestModel train_linear(const FeatureMatrix& X, const LabelMatrix& Y,
                            double lambda, int max_epochs,
                            [[maybe_unused]] std::uint64_t seed) {
  if (X.rows() == 0 || Y.cols() == 0) {
    throw ParamError("train_linear: empty training data");
  }
  if (X.rows() != Y.rows()) {
    throw ParamError("train_linear: feature/label row mismatch");
  }
  if (lambda < 0) throw ParamError("train_linear: lambda must be >= 0");
  const auto n = X.rows();
  const auto d = X.cols();
  const auto k = Y.cols();

  OneVsRestModel model;
  model.lambda = lambda;
  model.weights = Eigen::MatrixXd::Zero(d, k);
  model.bias = Eigen::RowVectorXd::Zero(k);

  Eigen::RowVectorXd positives = Y.colwise().sum();

  double loss = ovr_objective(X, Y, model.weights, model.bias, lambda);
  double step = 1.0;
  Eigen::MatrixXd grad_w(d, k), trial_w(d, k);
  Eigen::RowVectorXd grad_b(k), trial_b(k);
  for (int epoch = 0; epoch < max_epochs; ++epoch) {
    ovr_gradient(X, Y, model.weights, model.bias, lambda, grad_w, grad_b);
    bool accepted = false;
    double trial_loss = loss;
    for (int halving = 0; halving < 60; ++halving) {
      trial_w = model.weights - step * grad_w;
      trial_b = model.bias - step * grad_b;
      trial_loss = ovr_objective(X, Y, trial_w, trial_b, lambda);
      if (trial_loss <= loss) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const double improvement = loss - trial_loss;
    model.weights.swap(trial_w);
    model.bias.swap(trial_b);
    loss = trial_loss;
    step *= 1.1;
    if (improvement < 1e-6) break;
  }

  for (Eigen::Index col = 0; col < k; ++col) {
    const double pos = positives[col];
    if (pos > 0 && pos < static_cast<double>(n)) continue;
    ++model.degenerate_labels;
    const double rate = (pos + 1.0) / (static_cast<double>(n) + 2.0);
    model.weights.col(col).setZero();
    model.bias[col] = std::log(rate / (1.0 - rate));
  }
  if (model.degenerate_labels > 0) {
    std::fprintf(stderr,
                 "warning: %d label column(s) were all-positive or "
                 "all-negative; fitted constant predictors\n",
                 model.degenerate_labels);
  }
  return model;
}

Eigen::MatrixXd predict_proba(const OneVsRestModel& model,
                              const FeatureMatrix& X) {
  Eigen::MatrixXd z = (X * model.weights).rowwise() + model.bias;
  return z.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

std::vector<std::vector<int>> predict_multilabel(const OneVsRestModel& model,
                                                 const FeatureMatrix& X,
                                                 std::span<const int> k_per_node) {
  if (static_cast<std::size_t>(X.rows()) != k_per_node.size()) {
    throw ParamError("predict_multilabel: row/k mismatch");
  }
  const int label_universe = static_cast<int>(model.weights.cols());
  const Eigen::MatrixXd probs = predict_proba(model, X);
  std::vector<std::vector<int>> out(X.rows());
  std::vector<int> ranked(label_universe);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const int k = k_per_node[i];
    if (k < 0 || k > label_universe) {
      throw ParamError("predict_multilabel: k=" + std::to_string(k) +
                       " outside the label universe of " +
                       std::to_string(label_universe));
    }
    if (k == 0) continue;
    std::iota(ranked.begin(), ranked.end(), 0);
    std::partial_sort(ranked.begin(), ranked.begin() + k, ranked.end(),
                      [&](int a, int b) {
                        if (probs(i, a) != probs(i, b)) {
                          return probs(i, a) > probs(i, b);
                        }
                        return a < b;  // documented tie rule: lower label id
                      });
    out[i].assign(ranked.begin(), ranked.begin() + k);
    std::sort(out[i].begin(), out[i].end());
  }
  return out;
}

namespace {

struct Confusion {
  std::int64_t tp = 0, fp = 0, fn = 0;
  double f1() const {
    const std::int64_t denom = 2 * tp + fp + fn;
    return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / denom;
  }
};

std::vector<int> sorted_unique(const std::vector<int>& v) {
  std::vector<int> s = v;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

double micro_f1(const std::vector<std::vector<int>>& pred,
                const std::vector<std::vector<int>>& truth) {
  if (pred.size() != truth.size()) {
    throw ParamError("micro_f1: prediction/truth size mismatch");
  }
  Confusion pooled;
  std::vector<int> inter;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const auto p = sorted_unique(pred[i]);
    const auto t = sorted_unique(truth[i]);
    inter.clear();
    std::set_intersection(p.begin(), p.end(), t.begin(), t.end(),
                          std::back_inserter(inter));
    pooled.tp += static_cast<std::int64_t>(inter.size());
    pooled.fp += static_cast<std::int64_t>(p.size() - inter.size());
    pooled.fn += static_cast<std::int64_t>(t.size() - inter.size());
  }
  return pooled.f1();
}

double macro_f1(const std::vector<std::vector<int>>& pred,
                const std::vector<std::vector<int>>& truth, int label_count) {
  if (pred.size() != truth.size()) {
    throw ParamError("macro_f1: prediction/truth size mismatch");
  }
  if (label_count < 1) throw ParamError("macro_f1: label_count must be >= 1");
  std::vector<Confusion> per_label(label_count);
  std::vector<int> inter;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const auto p = sorted_unique(pred[i]);
    const auto t = sorted_unique(truth[i]);
    for (int lbl : p) {
      if (lbl < 0 || lbl >= label_count) {
        throw ParamError("macro_f1: label id out of range");
      }
    }
    for (int lbl : t) {
      if (lbl < 0 || lbl >= label_count) {
        throw ParamError("macro_f1: label id out of range");
      }
    }
    inter.clear();
    std::set_intersection(p.begin(), p.end(), t.begin(), t.end(),
                          std::back_inserter(inter));
    for (int lbl : inter) ++per_label[lbl].tp;
    std::size_t pi = 0;
    for (int lbl : p) {
      if (pi < inter.size() && inter[pi] == lbl) {
        ++pi;
        continue;
      }
      ++per_label[lbl].fp;
    }
    std::size_t ti = 0;
    for (int lbl : t) {
      if (ti < inter.size() && inter[ti] == lbl) {
        ++ti;
        continue;
      }
      ++per_label[lbl].fn;
    }
  }
  double total = 0.0;
  for (const auto& c : per_label) total += c.f1();
  return total / label_count;
}

namespace {

// Gathers embedding rows (as doubles) for a list of tokens.
FeatureMatrix gather_rows(const EmbeddingModel<float>& emb,
                          const std::vector<std::string>& tokens) {
  FeatureMatrix X(tokens.size(), emb.dim());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    X.row(i) = emb.target.row(emb.row_of(tokens[i])).cast<double>();
  }
  return X;
}

void standardize_features(FeatureMatrix& train, FeatureMatrix& test) {
  const Eigen::RowVectorXd mean = train.colwise().mean();
  Eigen::RowVectorXd std_dev =
      ((train.rowwise() - mean).array().square().colwise().sum() /
       std::max<double>(1.0, static_cast<double>(train.rows())))
          .sqrt();
  for (Eigen::Index j = 0; j < std_dev.size(); ++j) {
    if (std_dev[j] < 1e-12) std_dev[j] = 1.0;
  }
  train = (train.rowwise() - mean).array().rowwise() / std_dev.array();
  test = (test.rowwise() - mean).array().rowwise() / std_dev.array();
}

Scores score_split(const FeatureMatrix& X, const LabeledDataset& data,
                   const std::vector<std::size_t>& train_idx,
                   const std::vector<std::size_t>& test_idx,
                   const EvalOptions& opts, std::uint64_t seed) {
  const int K = data.label_count();
  FeatureMatrix Xtr(train_idx.size(), X.cols()), Xte(test_idx.size(), X.cols());
  LabelMatrix Ytr = LabelMatrix::Zero(train_idx.size(), K);
  for (std::size_t i = 0; i < train_idx.size(); ++i) {
    Xtr.row(i) = X.row(train_idx[i]);
    for (int lbl : data.label_sets[train_idx[i]]) Ytr(i, lbl) = 1.0;
  }
  std::vector<int> k_per(test_idx.size());
  std::vector<std::vector<int>> truth(test_idx.size());
  for (std::size_t i = 0; i < test_idx.size(); ++i) {
    Xte.row(i) = X.row(test_idx[i]);
    truth[i] = data.label_sets[test_idx[i]];
    k_per[i] = static_cast<int>(truth[i].size());
  }
  if (opts.standardize) standardize_features(Xtr, Xte);
  OneVsRestModel model =
      train_linear(Xtr, Ytr, opts.lambda, opts.cls_epochs, seed);
  const auto pred = predict_multilabel(model, Xte, k_per);
  return {macro_f1(pred, truth, K), micro_f1(pred, truth)};
}

}  // namespace

Scores nodeclass_instance(const EmbeddingModel<float>& emb,
                          const LabeledDataset& data, double train_fraction,
                          std::uint64_t seed, const EvalOptions& opts) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ParamError("train fraction must lie in (0, 1)");
  }
  const std::size_t n = data.size();
  if (n < 2) throw ParamError("need at least two labeled nodes");
  const FeatureMatrix X = gather_rows(emb, data.nodes);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng = Rng::stream(seed, 0x6e636c73ull, 0);  // "ncls"
  shuffle(order, rng);
  auto n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(n)));
  n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
  std::vector<std::size_t> train_idx(order.begin(), order.begin() + n_train);
  std::vector<std::size_t> test_idx(order.begin() + n_train, order.end());
  return score_split(X, data, train_idx, test_idx, opts, seed);
}

Scores linkpred_instance(const EmbeddingModel<float>& emb, const Graph& graph,
                         const LinkPredSplit& split, double train_fraction,
                         std::uint64_t seed, const EvalOptions& opts) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ParamError("train fraction must lie in (0, 1)");
  }
  const std::size_t n_pos = split.positives.size();
  const std::size_t n = n_pos + split.negatives.size();
  if (n < 4) throw ParamError("too few labeled pairs for link prediction");

  FeatureMatrix X(n, emb.dim());
  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [u, v] =
        i < n_pos ? split.positives[i] : split.negatives[i - n_pos];
    const NodeId a = emb.row_of(graph.name_of(u));
    const NodeId b = emb.row_of(graph.name_of(v));
    X.row(i) =
        emb.target.row(a).cwiseProduct(emb.target.row(b)).cast<double>();
    y[i] = i < n_pos ? 1 : 0;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng = Rng::stream(seed, 0x6c707264ull, 0);  // "lprd"
  shuffle(order, rng);
  auto n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(n)));
  n_train = std::clamp<std::size_t>(n_train, 1, n - 1);

  FeatureMatrix Xtr(n_train, X.cols()), Xte(n - n_train, X.cols());
  LabelMatrix Ytr = LabelMatrix::Zero(n_train, 1);
  std::vector<std::vector<int>> truth(n - n_train);
  for (std::size_t i = 0; i < n_train; ++i) {
    Xtr.row(i) = X.row(order[i]);
    Ytr(i, 0) = y[order[i]];
  }
  for (std::size_t i = n_train; i < n; ++i) {
    Xte.row(i - n_train) = X.row(order[i]);
    truth[i - n_train] = {y[order[i]]};
  }
  if (opts.standardize) standardize_features(Xtr, Xte);
  OneVsRestModel model =
      train_linear(Xtr, Ytr, opts.lambda, opts.cls_epochs, seed);
  const Eigen::MatrixXd probs = predict_proba(model, Xte);
  std::vector<std::vector<int>> pred(probs.rows());
  for (Eigen::Index i = 0; i < probs.rows(); ++i) {
    pred[i] = {probs(i, 0) >= 0.5 ? 1 : 0};
  }
  return {macro_f1(pred, truth, 2), micro_f1(pred, truth)};
}

std::vector<GridPoint> default_grid() {
  std::vector<GridPoint> grid;
  for (SamplingType t : {SamplingType::kBfs, SamplingType::kDfs}) {
    for (double a : {0.125, 0.25, 0.5, 1.0}) grid.push_back({t, a});
  }
  return grid;
}

bool grid_point_preferred(const GridPoint& a, double a_score,
                          const GridPoint& b, double b_score) {
  if (a_score != b_score) return a_score > b_score;
  if (a.type != b.type) return a.type == SamplingType::kBfs;
  return a.alpha < b.alpha;
}

namespace {

std::vector<std::vector<std::size_t>> make_folds(std::size_t n, int folds,
                                                 Rng& rng) {
  if (folds < 2) throw ParamError("cross-validation needs folds >= 2");
  if (static_cast<std::size_t>(folds) > n) {
    throw ParamError("more folds than samples");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);
  std::vector<std::vector<std::size_t>> blocks(folds);
  for (int f = 0; f < folds; ++f) {
    const std::size_t lo = n * f / folds;
    const std::size_t hi = n * (f + 1) / folds;
    blocks[f].assign(order.begin() + lo, order.begin() + hi);
  }
  return blocks;
}

}  // namespace

SweepResult sweep_nodeclass(const Graph& g, const LabeledDataset& data,
                            std::span<const GridPoint> grid, int folds,
                            const WalkConfig& walk_base,
                            const TrainConfig& train_base, int gamma,
                            const EvalOptions& opts) {
  if (grid.empty()) throw ParamError("sweep grid is empty");
  Rng fold_rng = Rng::stream(walk_base.seed, 0x63766e63ull, 0);
  const auto blocks = make_folds(data.size(), folds, fold_rng);

  SweepResult result;
  bool have_best = false;
  for (const GridPoint& point : grid) {
    WalkConfig cfg = walk_base;
    cfg.sampling = point.type;
    cfg.alpha = point.alpha;
    const Corpus corpus = generate_walk_set(g, cfg, gamma);
    const EmbeddingModel<float> emb =
        train<float>(corpus, train_base).model;
    const FeatureMatrix X = gather_rows(emb, data.nodes);

    double macro_sum = 0.0;
    for (int f = 0; f < folds; ++f) {
      std::vector<std::size_t> train_idx;
      for (int o = 0; o < folds; ++o) {
        if (o == f) continue;
        train_idx.insert(train_idx.end(), blocks[o].begin(), blocks[o].end());
      }
      const Scores s =
          score_split(X, data, train_idx, blocks[f], opts, walk_base.seed);
      macro_sum += s.macro;
      result.table.push_back({point, f, s});
    }
    const double mean_macro = macro_sum / folds;
    if (!have_best ||
        grid_point_preferred(point, mean_macro, result.best,
                             result.best_mean_macro)) {
      result.best = point;
      result.best_mean_macro = mean_macro;
      have_best = true;
    }
  }
  return result;
}

SweepResult sweep_linkpred(const Graph& g, double fraction,
                           std::span<const GridPoint> grid, int folds,
                           const WalkConfig& walk_base,
                           const TrainConfig& train_base, int gamma,
                           const EvalOptions& opts) {
  if (grid.empty()) throw ParamError("sweep grid is empty");
  const LinkPredSplit split =
      split_edges_for_linkpred(g, fraction, walk_base.seed);
  const std::size_t n_pos = split.positives.size();
  const std::size_t n = n_pos + split.negatives.size();
  Rng fold_rng = Rng::stream(walk_base.seed, 0x63766c70ull, 0);
  const auto blocks = make_folds(n, folds, fold_rng);

  SweepResult result;
  bool have_best = false;
  for (const GridPoint& point : grid) {
    WalkConfig cfg = walk_base;
    cfg.sampling = point.type;
    cfg.alpha = point.alpha;
    const Corpus corpus = generate_walk_set(split.residual, cfg, gamma);
    const EmbeddingModel<float> emb =
        train<float>(corpus, train_base).model;

    FeatureMatrix X(n, emb.dim());
    LabelMatrix Y(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& [u, v] =
          i < n_pos ? split.positives[i] : split.negatives[i - n_pos];
      const NodeId a = emb.row_of(g.name_of(u));
      const NodeId b = emb.row_of(g.name_of(v));
      X.row(i) =
          emb.target.row(a).cwiseProduct(emb.target.row(b)).cast<double>();
      Y(i, 0) = i < n_pos ? 1.0 : 0.0;
    }

    double macro_sum = 0.0;
    for (int f = 0; f < folds; ++f) {
      std::vector<std::size_t> train_idx;
      for (int o = 0; o < folds; ++o) {
        if (o == f) continue;
        train_idx.insert(train_idx.end(), blocks[o].begin(), blocks[o].end());
      }
      FeatureMatrix Xtr(train_idx.size(), X.cols());
      FeatureMatrix Xte(blocks[f].size(), X.cols());
      LabelMatrix Ytr(train_idx.size(), 1);
      std::vector<std::vector<int>> truth(blocks[f].size());
      for (std::size_t i = 0; i < train_idx.size(); ++i) {
        Xtr.row(i) = X.row(train_idx[i]);
        Ytr(i, 0) = Y(train_idx[i], 0);
      }
      for (std::size_t i = 0; i < blocks[f].size(); ++i) {
        Xte.row(i) = X.row(blocks[f][i]);
        truth[i] = {Y(blocks[f][i], 0) > 0.5 ? 1 : 0};
      }
      if (opts.standardize) standardize_features(Xtr, Xte);
      OneVsRestModel model =
          train_linear(Xtr, Ytr, opts.lambda, opts.cls_epochs, walk_base.seed);
      const Eigen::MatrixXd probs = predict_proba(model, Xte);
      std::vector<std::vector<int>> pred(probs.rows());
      for (Eigen::Index i = 0; i < probs.rows(); ++i) {
        pred[i] = {probs(i, 0) >= 0.5 ? 1 : 0};
      }
      const Scores s = {macro_f1(pred, truth, 2), micro_f1(pred, truth)};
      macro_sum += s.macro;
      result.table.push_back({point, f, s});
    }
    const double mean_macro = macro_sum / folds;
    if (!have_best ||
        grid_point_preferred(point, mean_macro, result.best,
                             result.best_mean_macro)) {
      result.best = point;
      result.best_mean_macro = mean_macro;
      have_best = true;
    }
  }
  return result;
}

}  // namespace biasedwalk
