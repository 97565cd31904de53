#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "biasedwalk/graph.hpp"
#include "biasedwalk/random.hpp"
#include "biasedwalk/types.hpp"

namespace biasedwalk {

enum class SamplingType { kBfs, kDfs, kUniform };

const char* to_string(SamplingType t);
SamplingType sampling_type_from_string(const std::string& s);

struct WalkConfig {
  SamplingType sampling = SamplingType::kDfs;
  double alpha = 0.5;   // in (0, 1]; ignored by kUniform
  int max_length = 80;  // L
  std::uint64_t seed = 1;
  int workers = 1;  // corpus generation threads; output independent of count

  void validate() const;
};

// Per-walk accumulated proximity scores, keyed by node id. Ordered map keeps
// score access logarithmic in the number of touched nodes.
using ProximityMap = std::map<NodeId, double>;

struct Walk {
  NodeId source = 0;
  std::vector<NodeId> nodes;  // nodes[0] == source, length <= max_length
};

// Set of walk sentences plus the vocabulary and unigram totals derived from
// them. Row i of tokens corresponds to node id i.
struct Corpus {
  std::vector<std::vector<NodeId>> walks;
  std::vector<std::string> tokens;
  std::vector<std::int64_t> counts;
  std::int64_t total_tokens = 0;

  void save(std::ostream& out) const;  // one walk per line, tokens space-separated
  static Corpus load(std::istream& in);

  void recount();  // rebuilds counts/total_tokens from walks
};

// Adds weight(u,v) * alpha^(step_index-1) to every node adjacent to u (in- and
// out-neighbors of directed graphs, each once). step_index is 1-based: u is
// the step_index-th node of the walk.
void update_proximity(ProximityMap& tau, const Graph& g, NodeId u,
                      int step_index, double alpha);

// Next-node distribution over the out-neighbors of u, in adjacency order.
// BFS: p proportional to tau; DFS: proportional to 1/tau; UNIFORM: to edge
// weight. Returns an empty vector when u has no out-neighbors (dead end).
std::vector<std::pair<NodeId, double>> transition_distribution(
    const ProximityMap& tau, const Graph& g, NodeId u, SamplingType mode);

// One biased walk from source. tau persists and accumulates over the whole
// walk. Terminates early only at dead ends. tau_out, when given, receives the
// final proximity map.
Walk global_random_walk(const Graph& g, NodeId source, const WalkConfig& cfg,
                        Rng& rng, ProximityMap* tau_out = nullptr);

// gamma walks from every node: walk index = source * gamma + repetition, and
// each walk draws from Rng::stream(cfg.seed, source, repetition), so the
// corpus does not depend on cfg.workers.
Corpus generate_walk_set(const Graph& g, const WalkConfig& cfg, int gamma);

}  // namespace biasedwalk
