#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

#include "biasedwalk/graph.hpp"
#include "test_util.hpp"

using namespace biasedwalk;

namespace {

Graph load(const std::string& text, bool directed = false,
           bool weighted = false, Graph::LoadStats* stats = nullptr) {
  std::istringstream in(text);
  return Graph::load_edge_list(in, directed, weighted, stats);
}

std::map<std::string, std::map<std::string, double>> adjacency_by_name(
    const Graph& g) {
  std::map<std::string, std::map<std::string, double>> adj;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto nb = g.neighbors(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      adj[g.name_of(u)][g.name_of(nb.ids[i])] = nb.weights[i];
    }
    adj.try_emplace(g.name_of(u));  // keep isolated nodes visible
  }
  return adj;
}

}  // namespace

TEST_CASE("edge list loading and basic counts") {
  Graph g = load("a b\nb c");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.arc_count() == 4);
  CHECK(g.neighbors(*g.find_id("b")).size() == 2);
  CHECK(g.average_degree() == doctest::Approx(4.0 / 3.0));
  CHECK_FALSE(g.directed());
}

TEST_CASE("duplicate edges merge by weight summation") {
  Graph g = load("0 1\n0 1");
  CHECK(g.edge_count() == 1);
  auto nb = g.neighbors(0);
  REQUIRE(nb.size() == 1);
  CHECK(nb.weights[0] == 2.0);

  Graph h = load("0 1 1.5\n1 0 2.0", false, true);
  CHECK(h.edge_count() == 1);
  CHECK(h.neighbors(0).weights[0] == 3.5);
}

TEST_CASE("weighted mode defaults a missing third field to 1.0") {
  Graph g = load("a b 2.5\nb c", false, true);
  CHECK(g.neighbors(*g.find_id("c")).weights[0] == 1.0);
  CHECK(g.neighbors(*g.find_id("a")).weights[0] == 2.5);
}

TEST_CASE("parse errors name the line") {
  CHECK_THROWS_WITH_AS(load("0 1 -3", false, true),
                       doctest::Contains("line 1"), ParseError);
  CHECK_THROWS_AS(load("0 1 x", false, true), ParseError);
  CHECK_THROWS_AS(load("0 1 2", false, false), ParseError);  // field count
  CHECK_THROWS_AS(load("0"), ParseError);
  CHECK_THROWS_AS(load("0 1 2 3", false, true), ParseError);
  CHECK_THROWS_WITH_AS(load("a b\nc\n", false, false),
                       doctest::Contains("line 2"), ParseError);
}

TEST_CASE("comments, blank lines and CRLF are tolerated") {
  Graph g = load("# header\n\n  \na b\r\n# end\nb c\n");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
}

TEST_CASE("self-loops are dropped and counted") {
  Graph::LoadStats stats;
  Graph g = load("a a\na b\nb b", false, false, &stats);
  CHECK(stats.self_loops_dropped == 2);
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("internal ids follow first appearance") {
  Graph g = load("x y\nz x");
  CHECK(g.name_of(0) == "x");
  CHECK(g.name_of(1) == "y");
  CHECK(g.name_of(2) == "z");
  CHECK(g.find_id("y") == NodeId{1});
  CHECK_FALSE(g.find_id("w").has_value());
}

TEST_CASE("neighbor queries") {
  SUBCASE("path") {
    Graph g = load("a b");
    auto nb = g.neighbors(0);
    REQUIRE(nb.size() == 1);
    CHECK(nb.ids[0] == 1);
    CHECK(nb.weights[0] == 1.0);
  }
  SUBCASE("isolated node") {
    Graph g = Graph::from_edges({"a", "b", "c"}, {{0, 1, 1.0}}, false, false);
    CHECK(g.neighbors(2).empty());
  }
  SUBCASE("direction semantics") {
    Graph g = load("a b", true);
    CHECK(g.neighbors(1).empty());
    auto in = g.in_neighbors(1);
    REQUIRE(in.size() == 1);
    CHECK(in.ids[0] == 0);
    CHECK(in.weights[0] == 1.0);
  }
  SUBCASE("out of range") {
    Graph g = load("a b");
    CHECK_THROWS_AS(g.neighbors(2), std::out_of_range);
    CHECK_THROWS_AS(g.neighbors(-1), std::out_of_range);
  }
}

TEST_CASE("proximity neighbors merge in- and out-lists once") {
  // a<->b both ways with different weights, a->c one way.
  Graph g = Graph::from_edges({"a", "b", "c"},
                              {{0, 1, 2.0}, {1, 0, 5.0}, {0, 2, 1.0}}, true,
                              true);
  auto pn = g.proximity_neighbors(0);
  REQUIRE(pn.size() == 2);
  CHECK(pn.ids[0] == 1);
  CHECK(pn.weights[0] == 2.0);  // out-arc weight wins over the 5.0 in-arc
  CHECK(pn.ids[1] == 2);
  auto pb = g.proximity_neighbors(1);
  REQUIRE(pb.size() == 1);
  CHECK(pb.weights[0] == 5.0);
}

TEST_CASE("largest connected component") {
  SUBCASE("connected graph is identity up to remap") {
    Graph g = load("a b\nb c\nc a");
    Graph lcc = g.largest_connected_component();
    CHECK(adjacency_by_name(lcc) == adjacency_by_name(g));
  }
  SUBCASE("undirected picks the bigger component") {
    Graph g = load("a b\nb c\nx y");
    Graph lcc = g.largest_connected_component();
    CHECK(lcc.node_count() == 3);
    CHECK(lcc.find_id("a").has_value());
    CHECK_FALSE(lcc.find_id("x").has_value());
    CHECK(lcc.is_connected());
  }
  SUBCASE("directed cycle with pendant arc keeps the cycle") {
    Graph g = load("1 2\n2 3\n3 1\n3 4", true);
    Graph lcc = g.largest_connected_component();
    CHECK(lcc.node_count() == 3);
    CHECK_FALSE(lcc.find_id("4").has_value());
    CHECK(lcc.is_connected());

    auto comp = testutil::kosaraju_scc(g);
    CHECK(comp[0] == comp[1]);
    CHECK(comp[1] == comp[2]);
    CHECK(comp[3] != comp[0]);
  }
  SUBCASE("matches Kosaraju on random directed graphs") {
    Rng rng(77);
    for (int trial = 0; trial < 40; ++trial) {
      Graph g = testutil::random_graph(rng, 30, true, false, 0.08);
      auto comp = testutil::kosaraju_scc(g);
      std::map<int, int> sizes;
      for (int c : comp) ++sizes[c];
      int best = 0;
      for (auto [c, s] : sizes) best = std::max(best, s);
      Graph lcc = g.largest_connected_component();
      CHECK(lcc.node_count() == best);
      CHECK(lcc.is_connected());
    }
  }
  SUBCASE("singleton graph returns itself") {
    Graph g = Graph::from_edges({"a"}, {}, false, false);
    CHECK(g.largest_connected_component().node_count() == 1);
  }
}

TEST_CASE("erdos_renyi generator") {
  SUBCASE("n=1 gives an empty graph") {
    Graph g = Graph::erdos_renyi(1, 0.0, 7);
    CHECK(g.node_count() == 1);
    CHECK(g.edge_count() == 0);
  }
  SUBCASE("edge count is exactly n*avg/2") {
    Graph g = Graph::erdos_renyi(100, 10.0, 7);
    CHECK(g.node_count() == 100);
    CHECK(g.edge_count() == 500);
    CHECK_FALSE(g.directed());
  }
  SUBCASE("deterministic per seed") {
    Graph a = Graph::erdos_renyi(64, 6.0, 3);
    Graph b = Graph::erdos_renyi(64, 6.0, 3);
    Graph c = Graph::erdos_renyi(64, 6.0, 4);
    CHECK(adjacency_by_name(a) == adjacency_by_name(b));
    CHECK(adjacency_by_name(a) != adjacency_by_name(c));
  }
  SUBCASE("impossible edge count is rejected") {
    CHECK_THROWS_AS(Graph::erdos_renyi(4, 20.0, 1), ParamError);
    CHECK_THROWS_AS(Graph::erdos_renyi(0, 1.0, 1), ParamError);
  }
}

TEST_CASE("edge list round-trip reproduces the adjacency structure") {
  Rng rng(123);
  for (int trial = 0; trial < 30; ++trial) {
    const bool directed = trial % 2 == 0;
    const bool weighted = trial % 3 == 0;
    Graph g = testutil::random_graph(rng, 25, directed, weighted);
    std::ostringstream out;
    g.save_edge_list(out);
    std::istringstream in(out.str());
    Graph h = Graph::load_edge_list(in, directed, weighted);
    CHECK(h.edge_count() == g.edge_count());
    // Isolated nodes cannot appear in an edge list, so compare non-isolated.
    auto ga = adjacency_by_name(g);
    auto ha = adjacency_by_name(h);
    for (auto& [name, nbrs] : ga) {
      if (nbrs.empty() && (!directed || g.in_neighbors(*g.find_id(name)).empty())) {
        continue;
      }
      CHECK(ha.at(name) == nbrs);
    }
  }
}

TEST_CASE("undirected adjacency is symmetric") {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = testutil::random_graph(rng, 30, false, trial % 2 == 1);
    for (NodeId u = 0; u < g.node_count(); ++u) {
      for (NodeId v : g.neighbors(u).ids) {
        CHECK(g.has_arc(v, u));
      }
    }
  }
}

TEST_CASE("adjacency order is stable and sorted") {
  Graph g = load("a c\na b\na d");
  auto nb = g.neighbors(0);
  REQUIRE(nb.size() == 3);
  CHECK(std::is_sorted(nb.ids.begin(), nb.ids.end()));
  auto again = g.neighbors(0);
  CHECK(std::equal(nb.ids.begin(), nb.ids.end(), again.ids.begin()));
}
