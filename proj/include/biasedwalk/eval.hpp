#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "biasedwalk/graph.hpp"
#include "biasedwalk/skipgram.hpp"
#include "biasedwalk/types.hpp"
#include "biasedwalk/walker.hpp"

namespace biasedwalk {

using FeatureMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using LabelMatrix = FeatureMatrix;  // binary indicator columns

// Node -> label-set table. File format: one line per node,
// "node_token<TAB>label,label,...". Label tokens are mapped to dense ids in
// first-appearance order; duplicate node lines merge their label sets.
struct LabeledDataset {
  std::vector<std::string> nodes;
  std::vector<std::vector<int>> label_sets;  // sorted, parallel to nodes
  std::vector<std::string> label_names;

  int label_count() const { return static_cast<int>(label_names.size()); }
  std::size_t size() const { return nodes.size(); }

  static LabeledDataset load(std::istream& in);

  // Rows restricted to nodes present in the vocabulary.
  LabeledDataset aligned_to(const std::unordered_map<std::string, NodeId>& vocab,
                            std::int64_t* dropped = nullptr) const;
};

// Edge split for link prediction: the residual graph keeps a connectivity-
// preserving spanning structure plus every edge not removed; removed edges are
// the positive test pairs and an equal count of uniformly sampled non-edges of
// the original graph are the negatives.
struct LinkPredSplit {
  Graph residual;
  std::vector<std::pair<NodeId, NodeId>> positives;
  std::vector<std::pair<NodeId, NodeId>> negatives;
  std::uint64_t seed = 0;
};

LinkPredSplit split_edges_for_linkpred(const Graph& g, double fraction,
                                       std::uint64_t seed);

void save_pairs_edge_list(std::ostream& out, const Graph& g,
                          std::span<const std::pair<NodeId, NodeId>> pairs);

// Hadamard edge feature: elementwise product of the two target vectors.
template <typename Scalar>
Eigen::VectorXd hadamard_features(const EmbeddingModel<Scalar>& m, NodeId u,
                                  NodeId v) {
  if (u < 0 || u >= m.vocab_size() || v < 0 || v >= m.vocab_size()) {
    throw ParamError("hadamard_features: node id out of range");
  }
  return m.target.row(u)
      .cwiseProduct(m.target.row(v))
      .transpose()
      .template cast<double>();
}

template <typename Scalar>
Eigen::VectorXd hadamard_features(const EmbeddingModel<Scalar>& m,
                                  const std::string& u, const std::string& v) {
  return hadamard_features(m, m.row_of(u), m.row_of(v));
}

// One-vs-rest logistic regression, one weight column (plus bias) per label.
struct OneVsRestModel {
  Eigen::MatrixXd weights;   // d x K
  Eigen::RowVectorXd bias;   // 1 x K
  double lambda = 0.0;
  int degenerate_labels = 0;  // columns fitted as constant predictors
};

// Mean log loss over samples (summed over labels) plus (lambda/2)*||W||^2.
// The bias is not regularized.
double ovr_objective(const FeatureMatrix& X, const LabelMatrix& Y,
                     const Eigen::MatrixXd& weights,
                     const Eigen::RowVectorXd& bias, double lambda);
void ovr_gradient(const FeatureMatrix& X, const LabelMatrix& Y,
                  const Eigen::MatrixXd& weights,
                  const Eigen::RowVectorXd& bias, double lambda,
                  Eigen::MatrixXd& grad_w, Eigen::RowVectorXd& grad_b);

// Full-batch gradient descent with an adaptive step (halved on loss increase),
// stopping when the epoch loss change drops below 1e-6 or the epoch cap is
// reached. All-positive or all-negative label columns get a constant predictor
// and a warning on stderr.
OneVsRestModel train_linear(const FeatureMatrix& X, const LabelMatrix& Y,
                            double lambda, int max_epochs, std::uint64_t seed);

Eigen::MatrixXd predict_proba(const OneVsRestModel& model,
                              const FeatureMatrix& X);

// Top-k_i labels per node by predicted probability, ties to the lower id.
std::vector<std::vector<int>> predict_multilabel(const OneVsRestModel& model,
                                                 const FeatureMatrix& X,
                                                 std::span<const int> k_per_node);

// F1 over globally pooled TP/FP/FN. Inputs are per-node label sets.
double micro_f1(const std::vector<std::vector<int>>& pred,
                const std::vector<std::vector<int>>& truth);
// Unweighted mean of per-label F1 over the label universe 0..label_count-1;
// a label with no TP, FP and FN scores 0.
double macro_f1(const std::vector<std::vector<int>>& pred,
                const std::vector<std::vector<int>>& truth, int label_count);

struct EvalOptions {
  double lambda = 1e-4;
  int cls_epochs = 300;
  bool standardize = false;  // z-score features with training-split statistics
};

struct Scores {
  double macro = 0.0;
  double micro = 0.0;
};

// Multilabel classification with a random train/test split of the labeled
// nodes. The true label count of each test node is assumed known (top-k_i
// prediction rule).
Scores nodeclass_instance(const EmbeddingModel<float>& emb,
                          const LabeledDataset& data, double train_fraction,
                          std::uint64_t seed, const EvalOptions& opts);

// Link prediction on a split: Hadamard features of positive/negative pairs,
// logistic regression on a random train/test half of the labeled pairs,
// threshold 0.5.
Scores linkpred_instance(const EmbeddingModel<float>& emb, const Graph& graph,
                         const LinkPredSplit& split, double train_fraction,
                         std::uint64_t seed, const EvalOptions& opts);

struct GridPoint {
  SamplingType type = SamplingType::kBfs;
  double alpha = 1.0;
};

struct SweepRow {
  GridPoint point;
  int fold = 0;
  Scores scores;
};

struct SweepResult {
  GridPoint best;
  double best_mean_macro = 0.0;
  std::vector<SweepRow> table;
};

std::vector<GridPoint> default_grid();  // {bfs,dfs} x {0.125,0.25,0.5,1.0}

// Selection order for sweep results: higher score wins; exact ties go to BFS,
// then to the smaller alpha (documented, arbitrary).
bool grid_point_preferred(const GridPoint& a, double a_score,
                          const GridPoint& b, double b_score);

// Trains one embedding per grid point and scores it by k-fold cross-validation
// mean Macro-F1 on the labeled nodes; ties break toward BFS, then smaller
// alpha.
SweepResult sweep_nodeclass(const Graph& g, const LabeledDataset& data,
                            std::span<const GridPoint> grid, int folds,
                            const WalkConfig& walk_base,
                            const TrainConfig& train_base, int gamma,
                            const EvalOptions& opts);

// Same selection over a single link-prediction split, cross-validating over
// the labeled pairs.
SweepResult sweep_linkpred(const Graph& g, double fraction,
                           std::span<const GridPoint> grid, int folds,
                           const WalkConfig& walk_base,
                           const TrainConfig& train_base, int gamma,
                           const EvalOptions& opts);

}  // namespace biasedwalk
