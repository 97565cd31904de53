#include "biasedwalk/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "biasedwalk/random.hpp"

namespace biasedwalk {

namespace {

std::uint64_t arc_key(NodeId u, NodeId v) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

double parse_weight(const std::string& tok, int lineno) {
  std::size_t pos = 0;
  double w = 0.0;
  try {
    w = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError("edge list line " + std::to_string(lineno) +
                     ": non-numeric weight '" + tok + "'");
  }
  if (pos != tok.size() || !std::isfinite(w)) {
    throw ParseError("edge list line " + std::to_string(lineno) +
                     ": non-numeric weight '" + tok + "'");
  }
  if (w <= 0.0) {
    throw ParseError("edge list line " + std::to_string(lineno) +
                     ": non-positive weight " + tok);
  }
  return w;
}

// Sorts one adjacency bucket by target id, keeping weights aligned.
void sort_bucket(std::span<NodeId> ids, std::span<double> ws) {
  std::vector<std::pair<NodeId, double>> tmp(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) tmp[i] = {ids[i], ws[i]};
  std::sort(tmp.begin(), tmp.end());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    ids[i] = tmp[i].first;
    ws[i] = tmp[i].second;
  }
}

void build_csr(NodeId n, const std::vector<EdgeTuple>& arcs, bool both_ways,
               std::vector<std::int64_t>& offsets, std::vector<NodeId>& targets,
               std::vector<double>& weights) {
  std::vector<std::int64_t> degree(n, 0);
  for (const auto& [u, v, w] : arcs) {
    ++degree[u];
    if (both_ways) ++degree[v];
  }
  offsets.assign(n + 1, 0);
  for (NodeId i = 0; i < n; ++i) offsets[i + 1] = offsets[i] + degree[i];
  targets.resize(offsets[n]);
  weights.resize(offsets[n]);
  std::vector<std::int64_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [u, v, w] : arcs) {
    targets[cursor[u]] = v;
    weights[cursor[u]] = w;
    ++cursor[u];
    if (both_ways) {
      targets[cursor[v]] = u;
      weights[cursor[v]] = w;
      ++cursor[v];
    }
  }
  for (NodeId i = 0; i < n; ++i) {
    sort_bucket({targets.data() + offsets[i],
                 static_cast<std::size_t>(degree[i])},
                {weights.data() + offsets[i],
                 static_cast<std::size_t>(degree[i])});
  }
}

}  // namespace

Graph Graph::build(std::vector<std::string> names,
                   std::vector<EdgeTuple> merged_edges, bool directed,
                   bool weighted) {
  Graph g;
  g.directed_ = directed;
  g.weighted_ = weighted;
  g.names_ = std::move(names);
  g.index_.reserve(g.names_.size());
  for (NodeId i = 0; i < g.node_count(); ++i) g.index_.emplace(g.names_[i], i);
  g.edge_count_ = static_cast<std::int64_t>(merged_edges.size());

  const NodeId n = g.node_count();
  build_csr(n, merged_edges, !directed, g.offsets_, g.targets_, g.weights_);

  if (directed) {
    std::vector<EdgeTuple> reversed(merged_edges.size());
    std::transform(merged_edges.begin(), merged_edges.end(), reversed.begin(),
                   [](const EdgeTuple& e) {
                     return EdgeTuple{std::get<1>(e), std::get<0>(e),
                                      std::get<2>(e)};
                   });
    build_csr(n, reversed, false, g.in_offsets_, g.in_targets_, g.in_weights_);

    // Merged in/out lists for proximity updates: each adjacent node appears
    // once, with the out-arc weight taking precedence.
    g.prox_offsets_.assign(n + 1, 0);
    std::vector<NodeId> ids;
    std::vector<double> ws;
    for (NodeId u = 0; u < n; ++u) {
      auto out = g.neighbors(u);
      auto in = g.in_neighbors(u);
      std::size_t i = 0, j = 0;
      while (i < out.size() || j < in.size()) {
        if (j >= in.size() || (i < out.size() && out.ids[i] < in.ids[j])) {
          ids.push_back(out.ids[i]);
          ws.push_back(out.weights[i]);
          ++i;
        } else if (i >= out.size() || in.ids[j] < out.ids[i]) {
          ids.push_back(in.ids[j]);
          ws.push_back(in.weights[j]);
          ++j;
        } else {  // same node both ways
          ids.push_back(out.ids[i]);
          ws.push_back(out.weights[i]);
          ++i;
          ++j;
        }
      }
      g.prox_offsets_[u + 1] = static_cast<std::int64_t>(ids.size());
    }
    g.prox_targets_ = std::move(ids);
    g.prox_weights_ = std::move(ws);
  }
  return g;
}

Graph Graph::from_edges(std::vector<std::string> names,
                        const std::vector<EdgeTuple>& edges, bool directed,
                        bool weighted, LoadStats* stats) {
  LoadStats local;
  std::unordered_map<std::uint64_t, double> merged;
  std::vector<std::uint64_t> order;  // first-appearance order of merged edges
  merged.reserve(edges.size());
  for (const auto& [u, v, w] : edges) {
    if (u < 0 || v < 0 || u >= static_cast<NodeId>(names.size()) ||
        v >= static_cast<NodeId>(names.size())) {
      throw ParamError("edge endpoint out of range");
    }
    if (u == v) {
      ++local.self_loops_dropped;
      continue;
    }
    NodeId a = u, b = v;
    if (!directed && a > b) std::swap(a, b);
    auto [it, inserted] = merged.emplace(arc_key(a, b), w);
    if (!inserted) {
      it->second += w;
      ++local.duplicates_merged;
    } else {
      order.push_back(arc_key(a, b));
    }
  }
  std::vector<EdgeTuple> list;
  list.reserve(order.size());
  for (std::uint64_t k : order) {
    list.emplace_back(static_cast<NodeId>(k >> 32),
                      static_cast<NodeId>(k & 0xffffffffu), merged[k]);
  }
  if (stats) *stats = local;
  return build(std::move(names), std::move(list), directed, weighted);
}

Graph Graph::load_edge_list(std::istream& in, bool directed, bool weighted,
                            LoadStats* stats) {
  std::vector<std::string> names;
  std::unordered_map<std::string, NodeId> index;
  auto intern = [&](const std::string& tok) -> NodeId {
    auto it = index.find(tok);
    if (it != index.end()) return it->second;
    NodeId id = static_cast<NodeId>(names.size());
    names.push_back(tok);
    index.emplace(tok, id);
    return id;
  };

  std::vector<EdgeTuple> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    std::string src, dst, wtok, extra;
    fields >> src >> dst;
    if (dst.empty()) {
      throw ParseError("edge list line " + std::to_string(lineno) +
                       ": expected 'src dst" +
                       (weighted ? " [weight]'" : "'"));
    }
    double w = 1.0;
    if (fields >> wtok) {
      if (!weighted) {
        throw ParseError("edge list line " + std::to_string(lineno) +
                         ": unexpected third field in unweighted mode");
      }
      w = parse_weight(wtok, lineno);
    }
    if (fields >> extra) {
      throw ParseError("edge list line " + std::to_string(lineno) +
                       ": too many fields");
    }
    const NodeId uid = intern(src);
    const NodeId vid = intern(dst);
    edges.emplace_back(uid, vid, w);
  }
  LoadStats local;
  Graph g = from_edges(std::move(names), edges, directed, weighted, &local);
  if (local.self_loops_dropped > 0) {
    std::fprintf(stderr, "warning: dropped %lld self-loop(s)\n",
                 static_cast<long long>(local.self_loops_dropped));
  }
  if (stats) *stats = local;
  return g;
}

Graph Graph::erdos_renyi(NodeId n, double avg_degree, std::uint64_t seed) {
  if (n < 1) throw ParamError("erdos_renyi: n must be >= 1");
  if (avg_degree < 0) throw ParamError("erdos_renyi: avg_degree must be >= 0");
  const auto m = static_cast<std::int64_t>(std::llround(n * avg_degree / 2.0));
  const std::int64_t max_edges =
      static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (m > max_edges) {
    throw ParamError("erdos_renyi: " + std::to_string(m) +
                     " edges requested but only " + std::to_string(max_edges) +
                     " distinct pairs exist");
  }
  Rng rng = Rng::stream(seed, 0x45524447ull, n);  // one stream per (seed, n)
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(static_cast<std::size_t>(m) * 2);
  std::vector<EdgeTuple> edges;
  edges.reserve(m);
  while (static_cast<std::int64_t>(edges.size()) < m) {
    auto u = static_cast<NodeId>(rng.bounded(n));
    auto v = static_cast<NodeId>(rng.bounded(n));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (!seen.insert(arc_key(u, v)).second) continue;
    edges.emplace_back(u, v, 1.0);
  }
  std::vector<std::string> names(n);
  for (NodeId i = 0; i < n; ++i) names[i] = std::to_string(i);
  return from_edges(std::move(names), edges, /*directed=*/false,
                    /*weighted=*/false);
}

NeighborView Graph::neighbors(NodeId u) const {
  if (u < 0 || u >= node_count()) {
    throw std::out_of_range("node id " + std::to_string(u) + " out of range");
  }
  const auto lo = offsets_[u], hi = offsets_[u + 1];
  return {{targets_.data() + lo, static_cast<std::size_t>(hi - lo)},
          {weights_.data() + lo, static_cast<std::size_t>(hi - lo)}};
}

NeighborView Graph::in_neighbors(NodeId u) const {
  if (!directed_) return neighbors(u);
  if (u < 0 || u >= node_count()) {
    throw std::out_of_range("node id " + std::to_string(u) + " out of range");
  }
  const auto lo = in_offsets_[u], hi = in_offsets_[u + 1];
  return {{in_targets_.data() + lo, static_cast<std::size_t>(hi - lo)},
          {in_weights_.data() + lo, static_cast<std::size_t>(hi - lo)}};
}

NeighborView Graph::proximity_neighbors(NodeId u) const {
  if (!directed_) return neighbors(u);
  if (u < 0 || u >= node_count()) {
    throw std::out_of_range("node id " + std::to_string(u) + " out of range");
  }
  const auto lo = prox_offsets_[u], hi = prox_offsets_[u + 1];
  return {{prox_targets_.data() + lo, static_cast<std::size_t>(hi - lo)},
          {prox_weights_.data() + lo, static_cast<std::size_t>(hi - lo)}};
}

bool Graph::has_arc(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.ids.begin(), nb.ids.end(), v);
}

std::optional<NodeId> Graph::find_id(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<NodeId> Graph::component_of_largest() const {
  const NodeId n = node_count();
  if (n == 0) return {};
  std::vector<int> comp(n, -1);
  int ncomp = 0;

  if (!directed_) {
    std::vector<NodeId> stack;
    for (NodeId s = 0; s < n; ++s) {
      if (comp[s] != -1) continue;
      comp[s] = ncomp;
      stack.push_back(s);
      while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v : neighbors(u).ids) {
          if (comp[v] == -1) {
            comp[v] = ncomp;
            stack.push_back(v);
          }
        }
      }
      ++ncomp;
    }
  } else {
    // Iterative Tarjan SCC.
    std::vector<std::int64_t> low(n, -1), num(n, -1);
    std::vector<NodeId> scc_stack;
    std::vector<char> on_stack(n, 0);
    std::int64_t counter = 0;
    struct Frame {
      NodeId u;
      std::int64_t next;
    };
    std::vector<Frame> frames;
    for (NodeId s = 0; s < n; ++s) {
      if (num[s] != -1) continue;
      frames.push_back({s, offsets_[s]});
      num[s] = low[s] = counter++;
      scc_stack.push_back(s);
      on_stack[s] = 1;
      while (!frames.empty()) {
        auto& fr = frames.back();
        if (fr.next < offsets_[fr.u + 1]) {
          NodeId v = targets_[fr.next++];
          if (num[v] == -1) {
            num[v] = low[v] = counter++;
            scc_stack.push_back(v);
            on_stack[v] = 1;
            frames.push_back({v, offsets_[v]});
          } else if (on_stack[v]) {
            low[fr.u] = std::min(low[fr.u], num[v]);
          }
        } else {
          NodeId u = fr.u;
          frames.pop_back();
          if (!frames.empty()) {
            low[frames.back().u] = std::min(low[frames.back().u], low[u]);
          }
          if (low[u] == num[u]) {
            while (true) {
              NodeId w = scc_stack.back();
              scc_stack.pop_back();
              on_stack[w] = 0;
              comp[w] = ncomp;
              if (w == u) break;
            }
            ++ncomp;
          }
        }
      }
    }
  }

  std::vector<std::int64_t> size(ncomp, 0);
  for (NodeId u = 0; u < n; ++u) ++size[comp[u]];
  int best = 0;
  for (int c = 1; c < ncomp; ++c) {
    if (size[c] > size[best]) best = c;
  }
  std::vector<NodeId> members;
  members.reserve(size[best]);
  for (NodeId u = 0; u < n; ++u) {
    if (comp[u] == best) members.push_back(u);
  }
  return members;  // ascending old ids
}

Graph Graph::largest_connected_component() const {
  if (node_count() == 0) throw ParamError("empty graph has no components");
  std::vector<NodeId> members = component_of_largest();
  std::vector<NodeId> remap(node_count(), -1);
  std::vector<std::string> names(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    remap[members[i]] = static_cast<NodeId>(i);
    names[i] = names_[members[i]];
  }
  std::vector<EdgeTuple> edges;
  for (NodeId u : members) {
    auto nb = neighbors(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      NodeId v = nb.ids[i];
      if (remap[v] == -1) continue;
      if (!directed_ && v < u) continue;  // each undirected edge once
      edges.emplace_back(remap[u], remap[v], nb.weights[i]);
    }
  }
  return build(std::move(names), std::move(edges), directed_, weighted_);
}

bool Graph::is_connected() const {
  if (node_count() == 0) return false;
  return static_cast<NodeId>(component_of_largest().size()) == node_count();
}

void Graph::save_edge_list(std::ostream& out) const {
  char buf[64];
  for (NodeId u = 0; u < node_count(); ++u) {
    auto nb = neighbors(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      NodeId v = nb.ids[i];
      if (!directed_ && v < u) continue;
      out << names_[u] << ' ' << names_[v];
      if (weighted_) {
        std::snprintf(buf, sizeof buf, " %.17g", nb.weights[i]);
        out << buf;
      }
      out << '\n';
    }
  }
}

}  // namespace biasedwalk
