#pragma once

#include <Eigen/Core>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "biasedwalk/random.hpp"
#include "biasedwalk/types.hpp"
#include "biasedwalk/walker.hpp"

namespace biasedwalk {

template <typename Scalar>
using EmbeddingMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Target (phi) and context (phi') vectors, one row per vocabulary entry.
template <typename Scalar>
struct EmbeddingModel {
  EmbeddingMatrix<Scalar> target;
  EmbeddingMatrix<Scalar> context;
  std::vector<std::string> tokens;
  std::unordered_map<std::string, NodeId> index;

  NodeId vocab_size() const { return static_cast<NodeId>(target.rows()); }
  int dim() const { return static_cast<int>(target.cols()); }

  NodeId row_of(const std::string& token) const {
    auto it = index.find(token);
    if (it == index.end()) {
      throw ParamError("unknown node '" + token + "'");
    }
    return it->second;
  }

  void rebuild_index() {
    index.clear();
    index.reserve(tokens.size());
    for (NodeId i = 0; i < static_cast<NodeId>(tokens.size()); ++i) {
      index.emplace(tokens[i], i);
    }
  }

  template <typename T>
  EmbeddingModel<T> cast() const {
    EmbeddingModel<T> out;
    out.target = target.template cast<T>();
    out.context = context.template cast<T>();
    out.tokens = tokens;
    out.index = index;
    return out;
  }
};

struct TrainConfig {
  int dim = 128;     // d
  int window = 10;   // c
  int negatives = 5; // k; 0 selects the full-softmax path (small vocab only)
  int epochs = 1;
  double initial_lr = 0.025;
  double final_lr = 1e-4;
  std::uint64_t seed = 1;
  bool deterministic = false;  // forces a single worker and fixed pair order
  int workers = 1;

  void validate() const {
    if (dim < 1) throw ParamError("dim must be >= 1");
    if (window < 1) throw ParamError("window must be >= 1");
    if (negatives < 0) throw ParamError("negatives must be >= 0");
    if (epochs < 1) throw ParamError("epochs must be >= 1");
    if (initial_lr <= 0 || final_lr <= 0 || final_lr > initial_lr) {
      throw ParamError("learning rates must satisfy 0 < final_lr <= initial_lr");
    }
    if (workers < 1) throw ParamError("workers must be >= 1");
  }
};

template <typename Scalar>
inline Scalar sigmoid(Scalar x) {
  return Scalar(1) / (Scalar(1) + std::exp(-x));
}

// log(sigmoid(x)), stable for large |x|.
template <typename Scalar>
inline Scalar log_sigmoid(Scalar x) {
  if (x >= Scalar(0)) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

// Enumerates (target, context) pairs of one walk: positions j with
// |j - i| <= window, j != i, clipped at the ends. The window is fixed (no
// random shrinking).
template <typename Fn>
inline void for_each_context_pair(std::span<const NodeId> walk, int window,
                                  Fn&& fn) {
  const int n = static_cast<int>(walk.size());
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - window);
    const int hi = std::min(n - 1, i + window);
    for (int j = lo; j <= hi; ++j) {
      if (j != i) fn(walk[i], walk[j]);
    }
  }
}

std::vector<std::pair<NodeId, NodeId>> context_pairs(const Corpus& corpus,
                                                     int window);
std::int64_t count_context_pairs(const Corpus& corpus, int window);

// log p(context | target) under the full softmax over the vocabulary,
// computed with max subtraction. Oracle path; cost is O(|V| d).
template <typename Scalar>
double softmax_log_prob(const EmbeddingModel<Scalar>& m, NodeId target,
                        NodeId context) {
  Eigen::VectorXd logits =
      (m.context * m.target.row(target).transpose()).template cast<double>();
  const double mx = logits.maxCoeff();
  const double lse = mx + std::log((logits.array() - mx).exp().sum());
  return logits[context] - lse;
}

template <typename Scalar>
struct SgnsScratch {
  Eigen::RowVectorX<Scalar> grad_target;
  std::vector<Scalar> neg_slope;
};

// One negative-sampling gradient step on the pair (target, context) with the
// given noise nodes. All slopes are evaluated at the pre-update parameters, so
// repeated noise nodes accumulate exactly; returns the pre-update loss
//   -log sig(phi'(ctx) . phi(t)) - sum_neg log sig(-phi'(neg) . phi(t)).
template <typename Scalar>
Scalar sgns_step(EmbeddingModel<Scalar>& m, NodeId target, NodeId context,
                 std::span<const NodeId> negatives, Scalar lr,
                 SgnsScratch<Scalar>& scratch) {
  auto phi_t = m.target.row(target);
  scratch.grad_target.setZero(m.dim());
  scratch.neg_slope.resize(negatives.size());
  Scalar loss = 0;

  const Scalar x_pos = phi_t.dot(m.context.row(context));
  const Scalar slope_pos = sigmoid(x_pos) - Scalar(1);  // d loss / d x_pos
  loss -= log_sigmoid(x_pos);
  scratch.grad_target += slope_pos * m.context.row(context);

  for (std::size_t i = 0; i < negatives.size(); ++i) {
    const Scalar x = phi_t.dot(m.context.row(negatives[i]));
    const Scalar slope = sigmoid(x);
    loss -= log_sigmoid(-x);
    scratch.neg_slope[i] = slope;
    scratch.grad_target += slope * m.context.row(negatives[i]);
  }

  m.context.row(context) -= lr * slope_pos * phi_t;
  for (std::size_t i = 0; i < negatives.size(); ++i) {
    m.context.row(negatives[i]) -= lr * scratch.neg_slope[i] * phi_t;
  }
  m.target.row(target) -= lr * scratch.grad_target;
  return loss;
}

template <typename Scalar>
Scalar sgns_step(EmbeddingModel<Scalar>& m, NodeId target, NodeId context,
                 std::span<const NodeId> negatives, Scalar lr) {
  SgnsScratch<Scalar> scratch;
  return sgns_step(m, target, context, negatives, lr, scratch);
}

// Noise distribution proportional to count^power, drawn by Vose's alias
// method (two rng draws per sample, exact distribution).
class UnigramTable {
 public:
  explicit UnigramTable(std::span<const std::int64_t> counts,
                        double power = 0.75);

  NodeId draw(Rng& rng) const {
    const auto slot = static_cast<std::size_t>(rng.bounded(prob_.size()));
    return rng.uniform() < prob_[slot] ? static_cast<NodeId>(slot)
                                       : alias_[slot];
  }

 private:
  std::vector<double> prob_;
  std::vector<NodeId> alias_;
};

template <typename Scalar = float>
struct TrainResult {
  EmbeddingModel<Scalar> model;
  std::vector<double> epoch_mean_loss;
  std::int64_t total_pairs = 0;  // per epoch
};

namespace detail {

// Full-softmax gradient step; used when cfg.negatives == 0.
template <typename Scalar>
struct SoftmaxScratch {
  Eigen::VectorX<Scalar> probs;
  Eigen::RowVectorX<Scalar> grad_target;
};

template <typename Scalar>
Scalar softmax_step(EmbeddingModel<Scalar>& m, NodeId target, NodeId context,
                    Scalar lr, SoftmaxScratch<Scalar>& s) {
  s.probs.noalias() = m.context * m.target.row(target).transpose();
  const Scalar mx = s.probs.maxCoeff();
  s.probs = (s.probs.array() - mx).exp();
  const Scalar z = s.probs.sum();
  const Scalar loss = -(std::log(s.probs[context]) - std::log(z));
  s.probs /= z;
  s.probs[context] -= Scalar(1);  // d loss / d logits
  s.grad_target.noalias() = s.probs.transpose() * m.context;
  m.context.noalias() -= lr * s.probs * m.target.row(target);
  m.target.row(target) -= lr * s.grad_target;
  return loss;
}

}  // namespace detail

// Skip-gram training over the walk corpus. Initializes phi with uniform noise
// in [-0.5/d, 0.5/d] and phi' at zero, then makes cfg.epochs passes over the
// walks (order reshuffled each epoch) with the learning rate decaying linearly
// from initial_lr to final_lr over all pairs. Multi-worker runs update the
// shared matrices without synchronization; deterministic mode forces one
// worker, which makes the result bit-for-bit reproducible.
template <typename Scalar = float>
TrainResult<Scalar> train(const Corpus& corpus, const TrainConfig& cfg) {
  cfg.validate();
  if (corpus.walks.empty()) throw ParamError("cannot train on an empty corpus");
  const auto vocab = static_cast<NodeId>(corpus.tokens.size());
  if (vocab == 0) throw ParamError("cannot train on an empty vocabulary");
  if (cfg.negatives == 0 && vocab > 10000) {
    throw ParamError("full-softmax path (negatives=0) is limited to small "
                     "vocabularies (10000)");
  }

  TrainResult<Scalar> result;
  auto& model = result.model;
  model.tokens = corpus.tokens;
  model.rebuild_index();
  model.target.resize(vocab, cfg.dim);
  model.context = EmbeddingMatrix<Scalar>::Zero(vocab, cfg.dim);
  {
    Rng rng = Rng::stream(cfg.seed, 0x696e6974ull, 0);  // "init"
    for (NodeId r = 0; r < vocab; ++r) {
      for (int c = 0; c < cfg.dim; ++c) {
        model.target(r, c) =
            static_cast<Scalar>((rng.uniform() - 0.5) / cfg.dim);
      }
    }
  }

  const std::int64_t pairs_per_epoch = count_context_pairs(corpus, cfg.window);
  if (pairs_per_epoch == 0) {
    throw ParamError("corpus yields no context pairs (all walks length 1?)");
  }
  result.total_pairs = pairs_per_epoch;
  const double total_pairs_all =
      static_cast<double>(pairs_per_epoch) * cfg.epochs;

  UnigramTable noise(corpus.counts);
  const int workers = cfg.deterministic ? 1 : cfg.workers;

  std::vector<std::int64_t> order(corpus.walks.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = static_cast<std::int64_t>(i);
  }

  std::atomic<std::int64_t> processed{0};
  const double lr_span = cfg.initial_lr - cfg.final_lr;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng shuffle_rng = Rng::stream(cfg.seed, 0x73687566ull, epoch);  // "shuf"
    shuffle(order, shuffle_rng);

    std::atomic<double> epoch_loss{0.0};

    auto run_range = [&](std::size_t begin, std::size_t end, int worker_id) {
      Rng rng = Rng::stream(cfg.seed, 0x6e656773ull + worker_id, epoch);
      SgnsScratch<Scalar> scratch;
      detail::SoftmaxScratch<Scalar> softmax_scratch;
      std::vector<NodeId> negs;
      negs.reserve(cfg.negatives);
      double local_loss = 0.0;
      std::int64_t local_pairs = 0;
      auto lr_now = [&]() {
        const double frac =
            static_cast<double>(processed.load(std::memory_order_relaxed)) /
            total_pairs_all;
        return static_cast<Scalar>(
            std::max(cfg.final_lr, cfg.initial_lr - lr_span * frac));
      };
      Scalar lr = lr_now();

      for (std::size_t w = begin; w < end; ++w) {
        const auto& walk = corpus.walks[order[w]];
        for_each_context_pair(
            std::span<const NodeId>(walk), cfg.window,
            [&](NodeId target, NodeId context) {
              if (cfg.negatives > 0) {
                negs.clear();
                for (int s = 0; s < cfg.negatives; ++s) {
                  const NodeId nd = noise.draw(rng);
                  if (nd != context) negs.push_back(nd);
                }
                local_loss += static_cast<double>(
                    sgns_step(model, target, context,
                              std::span<const NodeId>(negs), lr, scratch));
              } else {
                local_loss += static_cast<double>(detail::softmax_step(
                    model, target, context, lr, softmax_scratch));
              }
              if (++local_pairs % 4096 == 0) {
                processed.fetch_add(4096, std::memory_order_relaxed);
                lr = lr_now();
              }
            });
      }
      processed.fetch_add(local_pairs % 4096, std::memory_order_relaxed);
      // atomic<double> += is C++20; emulate for toolchains without it
      double expected = epoch_loss.load();
      while (!epoch_loss.compare_exchange_weak(expected,
                                               expected + local_loss)) {
      }
    };

    if (workers == 1) {
      run_range(0, order.size(), 0);
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (order.size() + workers - 1) / workers;
      for (int t = 0; t < workers; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(order.size(), begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(run_range, begin, end, t);
      }
      for (auto& th : pool) th.join();
    }

    result.epoch_mean_loss.push_back(epoch_loss.load() /
                                     static_cast<double>(pairs_per_epoch));
  }
  return result;
}

// word2vec text format: header "|V| d", then one line per node with the token
// and d decimal values (10 significant digits).
template <typename Scalar>
void save_embeddings(std::ostream& out, const EmbeddingModel<Scalar>& m);

template <typename Scalar = float>
EmbeddingModel<Scalar> load_embeddings(std::istream& in);

}  // namespace biasedwalk
