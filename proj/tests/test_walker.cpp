#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "biasedwalk/walker.hpp"
#include "test_util.hpp"

using namespace biasedwalk;

namespace {

// Triangle 1-2-3 plus pendant edge 3-4; ids equal token values minus one.
Graph triangle_pendant() {
  return Graph::from_edges({"1", "2", "3", "4"},
                           {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}, {2, 3, 1.0}},
                           false, false);
}

double prob_of(const std::vector<std::pair<NodeId, double>>& dist, NodeId v) {
  for (const auto& [node, p] : dist) {
    if (node == v) return p;
  }
  FAIL("node missing from distribution");
  return -1;
}

}  // namespace

TEST_CASE("update_proximity increments") {
  Graph g = triangle_pendant();
  ProximityMap tau;

  SUBCASE("first step adds one to each neighbor of the source") {
    update_proximity(tau, g, 0, 1, 0.25);
    CHECK(tau.at(1) == 1.0);
    CHECK(tau.at(2) == 1.0);
    CHECK(tau.size() == 2);
  }
  SUBCASE("step 3 with alpha 0.5 adds 0.25") {
    update_proximity(tau, g, 3, 3, 0.5);
    CHECK(tau.at(2) == 0.25);
  }
  SUBCASE("scores accumulate over the walk prefix") {
    // Walk 1,2: node 3 is adjacent to both visited nodes.
    update_proximity(tau, g, 0, 1, 0.5);
    update_proximity(tau, g, 1, 2, 0.5);
    CHECK(tau.at(2) == 1.5);
    CHECK(tau.at(0) == 0.5);
    CHECK(tau.at(1) == 1.0);
  }
  SUBCASE("weighted increments scale by edge weight") {
    Graph w = Graph::from_edges({"a", "b"}, {{0, 1, 2.5}}, false, true);
    update_proximity(tau, w, 0, 2, 0.5);
    CHECK(tau.at(1) == 2.5 * 0.5);
  }
}

TEST_CASE("transition_distribution") {
  Graph g = triangle_pendant();

  SUBCASE("symmetric scores give a uniform choice") {
    ProximityMap tau;
    update_proximity(tau, g, 0, 1, 0.5);  // tau[1]=tau[2]=1
    auto dist = transition_distribution(tau, g, 0, SamplingType::kBfs);
    REQUIRE(dist.size() == 2);
    CHECK(prob_of(dist, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(prob_of(dist, 2) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("triangle-plus-pendant hand values after walk 1,2") {
    ProximityMap tau;
    update_proximity(tau, g, 0, 1, 0.5);
    update_proximity(tau, g, 1, 2, 0.5);
    auto bfs = transition_distribution(tau, g, 1, SamplingType::kBfs);
    CHECK(prob_of(bfs, 0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(prob_of(bfs, 2) == doctest::Approx(0.75).epsilon(1e-12));
    auto dfs = transition_distribution(tau, g, 1, SamplingType::kDfs);
    CHECK(prob_of(dfs, 0) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(prob_of(dfs, 2) == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("uniform mode follows edge weights and ignores tau") {
    Graph w = Graph::from_edges({"u", "a", "b"}, {{0, 1, 1.0}, {0, 2, 3.0}},
                                false, true);
    ProximityMap tau;  // deliberately empty
    auto dist = transition_distribution(tau, w, 0, SamplingType::kUniform);
    CHECK(prob_of(dist, 1) == doctest::Approx(0.25));
    CHECK(prob_of(dist, 2) == doctest::Approx(0.75));
  }
  SUBCASE("dead end yields an empty distribution") {
    Graph d = Graph::from_edges({"a", "b"}, {{0, 1, 1.0}}, true, false);
    ProximityMap tau;
    CHECK(transition_distribution(tau, d, 1, SamplingType::kBfs).empty());
  }
  SUBCASE("missing score among candidates is an invariant violation") {
    ProximityMap tau;  // update_proximity never ran
    CHECK_THROWS_AS(transition_distribution(tau, g, 0, SamplingType::kBfs),
                    std::logic_error);
  }
}

TEST_CASE("DFS favors nodes whose only visited neighbor is the walk head") {
  // Star-of-source layout: walk 1,5,7; nodes 4 and 5 sit near the source
  // while 8 and 9 hang off node 7 only.
  Graph g = Graph::from_edges(
      {"1", "4", "5", "7", "8", "9"},
      {{0, 2, 1.0}, {0, 1, 1.0}, {2, 1, 1.0}, {2, 3, 1.0},
       {3, 1, 1.0}, {3, 4, 1.0}, {3, 5, 1.0}},
      false, false);
  const NodeId n1 = *g.find_id("1"), n4 = *g.find_id("4"), n5 = *g.find_id("5"),
               n7 = *g.find_id("7"), n8 = *g.find_id("8"), n9 = *g.find_id("9");
  const double alpha = 0.5;
  ProximityMap tau;
  update_proximity(tau, g, n1, 1, alpha);
  update_proximity(tau, g, n5, 2, alpha);
  update_proximity(tau, g, n7, 3, alpha);
  CHECK(tau.at(n8) == alpha * alpha);
  CHECK(tau.at(n4) == 1.0 + alpha + alpha * alpha);
  CHECK(tau.at(n5) == 1.0 + alpha * alpha);

  auto dfs = transition_distribution(tau, g, n7, SamplingType::kDfs);
  CHECK(prob_of(dfs, n8) == prob_of(dfs, n9));
  CHECK(prob_of(dfs, n8) > prob_of(dfs, n4));
  CHECK(prob_of(dfs, n8) > prob_of(dfs, n5));
  auto bfs = transition_distribution(tau, g, n7, SamplingType::kBfs);
  CHECK(prob_of(bfs, n4) > prob_of(bfs, n8));
}

TEST_CASE("global_random_walk") {
  WalkConfig cfg;
  cfg.alpha = 0.5;
  cfg.max_length = 5;

  SUBCASE("isolated source stops immediately") {
    Graph g = Graph::from_edges({"a", "b"}, {{0, 1, 1.0}}, true, false);
    Rng rng(1);
    Walk w = global_random_walk(g, 1, cfg, rng);
    CHECK(w.nodes == std::vector<NodeId>{1});
  }
  SUBCASE("single-candidate path bounces deterministically") {
    Graph g = Graph::from_edges({"a", "b"}, {{0, 1, 1.0}}, false, false);
    Rng rng(1);
    Walk w = global_random_walk(g, 0, cfg, rng);
    CHECK(w.nodes == std::vector<NodeId>{0, 1, 0, 1, 0});
  }
  SUBCASE("directed dead end truncates the walk") {
    Graph g = Graph::from_edges({"a", "b", "c"}, {{0, 1, 1.0}, {1, 2, 1.0}},
                                true, false);
    Rng rng(1);
    Walk w = global_random_walk(g, 0, cfg, rng);
    CHECK(w.nodes == std::vector<NodeId>{0, 1, 2});
  }
  SUBCASE("fixed rng state fixes the walk") {
    Graph g = triangle_pendant();
    Rng a(42), b(42);
    CHECK(global_random_walk(g, 0, cfg, a).nodes ==
          global_random_walk(g, 0, cfg, b).nodes);
  }
  SUBCASE("alpha outside (0,1] is rejected for biased modes") {
    Graph g = triangle_pendant();
    Rng rng(1);
    WalkConfig bad = cfg;
    bad.alpha = 0.0;
    CHECK_THROWS_AS(global_random_walk(g, 0, bad, rng), ParamError);
    bad.alpha = 1.5;
    CHECK_THROWS_AS(global_random_walk(g, 0, bad, rng), ParamError);
    bad.sampling = SamplingType::kUniform;  // uniform ignores alpha
    CHECK_NOTHROW(global_random_walk(g, 0, bad, rng));
  }
}

TEST_CASE("DFS prefix 1,2,1 has probability 0.375 on the triangle-pendant") {
  Graph g = triangle_pendant();
  WalkConfig cfg;
  cfg.sampling = SamplingType::kDfs;
  cfg.alpha = 0.5;
  cfg.max_length = 3;
  const int trials = 100000;
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(99, 0, t);
    Walk w = global_random_walk(g, 0, cfg, rng);
    REQUIRE(w.nodes.size() == 3);
    if (w.nodes[1] == 1 && w.nodes[2] == 0) ++hits;
  }
  CHECK(std::abs(static_cast<double>(hits) / trials - 0.375) < 0.01);
}

TEST_CASE("internal tau matches the brute-force recomputation exactly") {
  Rng meta(2024);
  const double alphas[] = {0.125, 0.25, 0.5, 1.0, 0.37};
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const bool directed = trial % 3 == 0;
    const bool weighted = trial % 2 == 1;
    Graph g = testutil::random_graph(meta, 50, directed, weighted);
    WalkConfig cfg;
    cfg.sampling = trial % 2 == 0 ? SamplingType::kBfs : SamplingType::kDfs;
    cfg.alpha = alphas[trial % 5];
    cfg.max_length = 1 + static_cast<int>(meta.bounded(40));
    for (int s = 0; s < 4; ++s) {
      const auto source = static_cast<NodeId>(meta.bounded(g.node_count()));
      Rng rng = Rng::stream(7, trial, s);
      ProximityMap tau;
      Walk w = global_random_walk(g, source, cfg, rng, &tau);
      REQUIRE(w.nodes[0] == source);
      REQUIRE(static_cast<int>(w.nodes.size()) <= cfg.max_length);
      if (static_cast<int>(w.nodes.size()) < cfg.max_length) {
        CHECK(g.neighbors(w.nodes.back()).empty());
      }
      ProximityMap expected = testutil::brute_force_tau(g, w.nodes, cfg.alpha);
      CHECK(tau.size() == expected.size());
      // Per-walk state stays within O(L * degree) map entries.
      std::size_t degree_sum = 0;
      for (std::size_t i = 0; i + 1 < w.nodes.size(); ++i) {
        degree_sum += g.proximity_neighbors(w.nodes[i]).size();
      }
      CHECK(tau.size() <= degree_sum);
      for (const auto& [v, score] : expected) {
        REQUIRE(tau.count(v) == 1);
        CHECK(tau.at(v) == score);  // exact, same summation order
      }
      ++checked;
    }
  }
  CHECK(checked == 240);
}

TEST_CASE("transition probabilities normalize on random walk states") {
  Rng meta(5150);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = testutil::random_graph(meta, 50, trial % 4 == 0, trial % 3 == 0);
    WalkConfig cfg;
    cfg.sampling = trial % 2 == 0 ? SamplingType::kBfs : SamplingType::kDfs;
    cfg.alpha = 0.125 * (1 + meta.bounded(8));
    cfg.max_length = 2 + static_cast<int>(meta.bounded(20));
    const auto source = static_cast<NodeId>(meta.bounded(g.node_count()));
    Rng rng = Rng::stream(3, trial, 0);
    ProximityMap tau;
    Walk w = global_random_walk(g, source, cfg, rng, &tau);
    const NodeId last = w.nodes.back();
    if (g.neighbors(last).empty() || tau.empty()) continue;
    // tau covers N(last) only after expanding last; emulate the next step.
    update_proximity(tau, g, last, static_cast<int>(w.nodes.size()), cfg.alpha);
    for (auto mode : {SamplingType::kBfs, SamplingType::kDfs,
                      SamplingType::kUniform}) {
      auto dist = transition_distribution(tau, g, last, mode);
      double sum = 0.0;
      for (const auto& [v, p] : dist) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0 + 1e-12);
        sum += p;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("generate_walk_set") {
  Graph g = triangle_pendant();

  SUBCASE("gamma walks per source in canonical order") {
    WalkConfig cfg;
    cfg.max_length = 4;
    Corpus corpus = generate_walk_set(g, cfg, 2);
    REQUIRE(corpus.walks.size() == 8);
    for (std::size_t w = 0; w < corpus.walks.size(); ++w) {
      CHECK(corpus.walks[w][0] == static_cast<NodeId>(w / 2));
    }
    CHECK(corpus.tokens == g.names());
    std::int64_t total = 0;
    for (const auto& walk : corpus.walks) total += walk.size();
    CHECK(corpus.total_tokens == total);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      CHECK(corpus.counts[v] >= 2);  // every node is a source gamma times
    }
  }
  SUBCASE("independent of worker count") {
    WalkConfig one;
    one.workers = 1;
    one.seed = 31;
    WalkConfig four = one;
    four.workers = 4;
    Corpus a = generate_walk_set(g, one, 5);
    Corpus b = generate_walk_set(g, four, 5);
    CHECK(a.walks == b.walks);
    CHECK(a.counts == b.counts);
  }
  SUBCASE("seed changes the corpus") {
    WalkConfig a, b;
    a.seed = 1;
    b.seed = 2;
    CHECK(generate_walk_set(g, a, 3).walks != generate_walk_set(g, b, 3).walks);
  }
  SUBCASE("gamma must be positive") {
    WalkConfig cfg;
    CHECK_THROWS_AS(generate_walk_set(g, cfg, 0), ParamError);
  }
}

TEST_CASE("corpus serialization uses external tokens, one walk per line") {
  Graph g = Graph::from_edges({"alpha", "beta"}, {{0, 1, 1.0}}, false, false);
  WalkConfig cfg;
  cfg.max_length = 3;
  Corpus corpus = generate_walk_set(g, cfg, 1);
  std::ostringstream out;
  corpus.save(out);
  CHECK(out.str() == "alpha beta alpha\nbeta alpha beta\n");

  std::istringstream in(out.str());
  Corpus loaded = Corpus::load(in);
  CHECK(loaded.walks.size() == corpus.walks.size());
  CHECK(loaded.tokens.size() == 2);
  CHECK(loaded.total_tokens == corpus.total_tokens);
}

TEST_CASE("DFS walks roam farther from the source than BFS walks") {
  Graph g = testutil::grid_graph(10, 10);
  const NodeId center = *g.find_id("5_5");
  auto dist = testutil::bfs_distances(g, center);

  auto mean_distance = [&](SamplingType mode) {
    WalkConfig cfg;
    cfg.sampling = mode;
    cfg.alpha = 0.125;
    cfg.max_length = 40;
    cfg.seed = 11;
    double total = 0.0;
    const int walks = 300;
    for (int i = 0; i < walks; ++i) {
      Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(mode), i);
      Walk w = global_random_walk(g, center, cfg, rng);
      double sum = 0.0;
      for (NodeId v : w.nodes) sum += dist[v];
      total += sum / static_cast<double>(w.nodes.size());
    }
    return total / walks;
  };

  CHECK(mean_distance(SamplingType::kDfs) >
        mean_distance(SamplingType::kBfs));
}
