#include <catch2/catch_amalgamated.hpp>

#include "dyntd/graph.hpp"
#include "helpers.hpp"

using namespace dyntd;

TEST_CASE("add_edge basics") {
  Graph g(2);
  g.add_edge(0, 1);
  CHECK(g.has_edge(0, 1));
  g.add_edge(0, 1);  // idempotent
  CHECK(g.edge_count() == 1);
  CHECK_THROWS_AS(g.add_edge(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 5), std::out_of_range);
}

TEST_CASE("remove_edge basics") {
  Graph g(4);
  g.add_edge(0, 1);
  g.remove_edge(0, 1);
  CHECK(!g.has_edge(0, 1));
  g.remove_edge(2, 3);  // absent: no-op
  CHECK(g.edge_count() == 0);
  g.add_edge(0, 1);
  g.remove_edge(1, 0);
  CHECK(g.neighbors(0).empty());
  CHECK_THROWS_AS(g.remove_edge(0, 9), std::out_of_range);
}

TEST_CASE("has_edge basics") {
  Graph g(4);
  CHECK(!g.has_edge(0, 1));
  g.add_edge(2, 3);
  CHECK(g.has_edge(3, 2));
  g.remove_edge(2, 3);
  CHECK(!g.has_edge(2, 3));
}

TEST_CASE("symmetry and dictionary consistency under random ops") {
  testutil::Rng rng(42);
  Graph g(9);
  for (int step = 0; step < 2000; ++step) {
    auto [u, v] = testutil::rand_pair(rng, 9);
    if (g.has_edge(u, v))
      g.remove_edge(u, v);
    else
      g.add_edge(u, v);

    // symmetry + adjacency/dictionary agreement on a sampled pair
    auto [a, b] = testutil::rand_pair(rng, 9);
    CHECK(g.has_edge(a, b) == g.has_edge(b, a));
    CHECK(g.has_edge(a, b) == set_contains(g.neighbors(a), b));
  }
  size_t adj_edges = 0;
  for (Vertex v = 0; v < g.n(); ++v) adj_edges += g.neighbors(v).size();
  CHECK(adj_edges == 2 * g.edge_count());
}

TEST_CASE("induced subgraph") {
  Graph g = testutil::complete_graph(5);
  Graph h = g.induced({0, 2, 4});
  CHECK(h.edge_count() == 3);
  CHECK(h.has_edge(0, 2));
  CHECK(!h.has_edge(0, 1));
}
