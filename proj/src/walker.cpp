#include "biasedwalk/walker.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace biasedwalk {

const char* to_string(SamplingType t) {
  switch (t) {
    case SamplingType::kBfs:
      return "bfs";
    case SamplingType::kDfs:
      return "dfs";
    case SamplingType::kUniform:
      return "uniform";
  }
  return "?";
}

SamplingType sampling_type_from_string(const std::string& s) {
  if (s == "bfs") return SamplingType::kBfs;
  if (s == "dfs") return SamplingType::kDfs;
  if (s == "uniform") return SamplingType::kUniform;
  throw ParamError("unknown walk type '" + s + "' (expected bfs|dfs|uniform)");
}

void WalkConfig::validate() const {
  if (sampling != SamplingType::kUniform &&
      !(alpha > 0.0 && alpha <= 1.0)) {
    throw ParamError("alpha must satisfy 0 < alpha <= 1");
  }
  if (max_length < 1) throw ParamError("walk length must be >= 1");
  if (workers < 1) throw ParamError("workers must be >= 1");
}

void update_proximity(ProximityMap& tau, const Graph& g, NodeId u,
                      int step_index, double alpha) {
  const double inc = std::pow(alpha, step_index - 1);
  auto nb = g.proximity_neighbors(u);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    tau[nb.ids[i]] += nb.weights[i] * inc;
  }
}

namespace {

double candidate_score(const ProximityMap& tau, NodeId v, double weight,
                       SamplingType mode) {
  if (mode == SamplingType::kUniform) return weight;
  auto it = tau.find(v);
  if (it == tau.end() || it->second <= 0.0) {
    throw std::logic_error("proximity score missing or non-positive for node " +
                           std::to_string(v));
  }
  return mode == SamplingType::kBfs ? it->second : 1.0 / it->second;
}

}  // namespace

std::vector<std::pair<NodeId, double>> transition_distribution(
    const ProximityMap& tau, const Graph& g, NodeId u, SamplingType mode) {
  auto nb = g.neighbors(u);
  std::vector<std::pair<NodeId, double>> dist;
  if (nb.empty()) return dist;  // dead-end signal
  dist.reserve(nb.size());
  double total = 0.0;
  for (std::size_t i = 0; i < nb.size(); ++i) {
    double s = candidate_score(tau, nb.ids[i], nb.weights[i], mode);
    total += s;
    dist.emplace_back(nb.ids[i], s);
  }
  for (auto& [v, p] : dist) p /= total;
  return dist;
}

Walk global_random_walk(const Graph& g, NodeId source, const WalkConfig& cfg,
                        Rng& rng, ProximityMap* tau_out) {
  cfg.validate();
  Walk walk;
  walk.source = source;
  walk.nodes.push_back(source);
  ProximityMap tau;
  std::vector<double> cumulative;

  for (int step = 1; step < cfg.max_length; ++step) {
    const NodeId u = walk.nodes.back();
    auto nb = g.neighbors(u);
    if (nb.empty()) break;

    if (cfg.sampling != SamplingType::kUniform) {
      update_proximity(tau, g, u, step, cfg.alpha);
    }

    // Inverse CDF over unnormalized candidate scores, adjacency order.
    cumulative.resize(nb.size());
    double total = 0.0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      total += candidate_score(tau, nb.ids[i], nb.weights[i], cfg.sampling);
      cumulative[i] = total;
    }
    const double r = rng.uniform() * total;
    std::size_t pick = 0;
    while (pick + 1 < nb.size() && cumulative[pick] <= r) ++pick;
    walk.nodes.push_back(nb.ids[pick]);
  }
  if (tau_out) *tau_out = std::move(tau);
  return walk;
}

Corpus generate_walk_set(const Graph& g, const WalkConfig& cfg, int gamma) {
  cfg.validate();
  if (gamma < 1) throw ParamError("gamma must be >= 1");
  const std::int64_t total =
      static_cast<std::int64_t>(gamma) * g.node_count();

  Corpus corpus;
  corpus.walks.resize(total);
  corpus.tokens = g.names();

  auto run_range = [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t w = begin; w < end; ++w) {
      const auto source = static_cast<NodeId>(w / gamma);
      const auto rep = static_cast<std::uint64_t>(w % gamma);
      Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(source), rep);
      corpus.walks[w] = global_random_walk(g, source, cfg, rng).nodes;
    }
  };

  const int workers = std::max(1, cfg.workers);
  if (workers == 1 || total < 2 * workers) {
    run_range(0, total);
  } else {
    std::vector<std::thread> pool;
    const std::int64_t chunk = (total + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
      const std::int64_t begin = t * chunk;
      const std::int64_t end = std::min(total, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  corpus.recount();
  return corpus;
}

void Corpus::recount() {
  counts.assign(tokens.size(), 0);
  total_tokens = 0;
  for (const auto& walk : walks) {
    for (NodeId v : walk) ++counts[v];
    total_tokens += static_cast<std::int64_t>(walk.size());
  }
}

void Corpus::save(std::ostream& out) const {
  for (const auto& walk : walks) {
    for (std::size_t i = 0; i < walk.size(); ++i) {
      if (i > 0) out << ' ';
      out << tokens[walk[i]];
    }
    out << '\n';
  }
}

Corpus Corpus::load(std::istream& in) {
  Corpus corpus;
  std::unordered_map<std::string, NodeId> index;
  std::string line, tok;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::vector<NodeId> walk;
    while (fields >> tok) {
      auto it = index.find(tok);
      NodeId id;
      if (it == index.end()) {
        id = static_cast<NodeId>(corpus.tokens.size());
        corpus.tokens.push_back(tok);
        index.emplace(tok, id);
      } else {
        id = it->second;
      }
      walk.push_back(id);
    }
    if (!walk.empty()) corpus.walks.push_back(std::move(walk));
  }
  corpus.recount();
  return corpus;
}

}  // namespace biasedwalk
