#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "biasedwalk/types.hpp"

namespace biasedwalk {

// Neighbor ids and weights of one node; parallel views into the CSR arrays.
struct NeighborView {
  std::span<const NodeId> ids;
  std::span<const double> weights;

  std::size_t size() const { return ids.size(); }
  bool empty() const { return ids.empty(); }
};

using EdgeTuple = std::tuple<NodeId, NodeId, double>;

// Immutable graph in compressed (offset-indexed) adjacency form. Undirected
// edges are stored in both endpoint lists; directed graphs additionally keep a
// reverse index and a merged in/out index used for proximity updates.
// Adjacency lists are sorted by neighbor id. Construction drops self-loops and
// merges duplicate edges by summing their weights.
class Graph {
 public:
  struct LoadStats {
    std::int64_t self_loops_dropped = 0;
    std::int64_t duplicates_merged = 0;
  };

  Graph() = default;

  // Parses "src dst" / "src dst weight" lines; '#' starts a comment line.
  // Internal ids follow first appearance of tokens. Throws ParseError with the
  // offending line number on malformed input.
  static Graph load_edge_list(std::istream& in, bool directed, bool weighted,
                              LoadStats* stats = nullptr);

  // Same ingestion rules as load_edge_list, starting from in-memory edges over
  // nodes 0..names.size()-1.
  static Graph from_edges(std::vector<std::string> names,
                          const std::vector<EdgeTuple>& edges, bool directed,
                          bool weighted, LoadStats* stats = nullptr);

  // Undirected G(n, m) with m = round(n * avg_degree / 2) distinct edges drawn
  // uniformly; bit-identical for a fixed seed.
  static Graph erdos_renyi(NodeId n, double avg_degree, std::uint64_t seed);

  NodeId node_count() const { return static_cast<NodeId>(names_.size()); }
  std::int64_t edge_count() const { return edge_count_; }  // |E|
  std::int64_t arc_count() const {                         // stored out-arcs
    return static_cast<std::int64_t>(targets_.size());
  }
  bool directed() const { return directed_; }
  bool weighted() const { return weighted_; }
  double average_degree() const {
    return node_count() == 0 ? 0.0
                             : static_cast<double>(arc_count()) / node_count();
  }

  NeighborView neighbors(NodeId u) const;     // out-neighbors
  NeighborView in_neighbors(NodeId u) const;  // == neighbors(u) if undirected
  // Union of in- and out-neighbors, each neighbor once; when both arcs exist
  // the out-arc weight is used.
  NeighborView proximity_neighbors(NodeId u) const;

  bool has_arc(NodeId u, NodeId v) const;  // arc u->v ({u,v} if undirected)

  const std::string& name_of(NodeId u) const { return names_.at(u); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<NodeId> find_id(const std::string& token) const;

  // Induced subgraph on the largest weakly (undirected) or strongly (directed)
  // connected component; ids are remapped contiguously, names preserved.
  Graph largest_connected_component() const;

  bool is_connected() const;  // under the same connectivity notion as above

  // One line per edge (each undirected edge once); reloading with the same
  // flags reproduces the adjacency structure exactly.
  void save_edge_list(std::ostream& out) const;

 private:
  static Graph build(std::vector<std::string> names,
                     std::vector<EdgeTuple> merged_edges, bool directed,
                     bool weighted);
  std::vector<NodeId> component_of_largest() const;

  bool directed_ = false;
  bool weighted_ = false;
  std::int64_t edge_count_ = 0;

  std::vector<std::int64_t> offsets_;  // size n+1, non-decreasing
  std::vector<NodeId> targets_;
  std::vector<double> weights_;

  // Directed graphs only.
  std::vector<std::int64_t> in_offsets_;
  std::vector<NodeId> in_targets_;
  std::vector<double> in_weights_;
  std::vector<std::int64_t> prox_offsets_;
  std::vector<NodeId> prox_targets_;
  std::vector<double> prox_weights_;

  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
};

}  // namespace biasedwalk
