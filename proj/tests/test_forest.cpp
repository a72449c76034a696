#include <catch2/catch_amalgamated.hpp>

#include "dyntd/forest.hpp"
#include "dyntd/treedepth_solver.hpp"
#include "helpers.hpp"

using namespace dyntd;

TEST_CASE("validate_elim_forest basics") {
  // edgeless graph, all roots
  Graph g0(3);
  Forest f0(3);
  CHECK(validate_elim_forest(g0, f0));

  // single edge needs ancestry
  Graph g1(2);
  g1.add_edge(0, 1);
  Forest chain(2);
  chain.set_parent(1, 0);
  CHECK(validate_elim_forest(g1, chain));
  Forest both_roots(2);
  CHECK(!validate_elim_forest(g1, both_roots));

  // triangle under a chain: the chain dominates all pairs
  Graph tri = testutil::complete_graph(3);
  Forest c3(3);
  c3.set_parent(1, 0);
  c3.set_parent(2, 1);
  CHECK(validate_elim_forest(tri, c3));
}

TEST_CASE("validate_elim_forest rejects parent cycles") {
  Graph g(3);
  Forest f(3);
  f.set_parent(0, 1);
  f.set_parent(1, 0);
  CHECK(!validate_elim_forest(g, f));
}

TEST_CASE("restrict_forest") {
  Forest f(3);
  f.set_parent(1, 0);
  f.set_parent(2, 1);

  SECTION("identity on the full domain") {
    Forest r = restrict_forest(f, {0, 1, 2});
    CHECK(r == f);
  }
  SECTION("skipped vertex: transitive parent") {
    Forest r = restrict_forest(f, {0, 2});
    CHECK(r.parent(2) == 0);
    CHECK(r.is_root(0));
    CHECK(!r.in_domain(1));
  }
  SECTION("roots only") {
    Forest r = restrict_forest(f, {0});
    CHECK(r.is_root(0));
  }
}

TEST_CASE("strong reach and up-neighbor sets") {
  // path 0-1-2-3 eliminated by the balanced tree: 1 root, children 0 and 2, 3 under 2
  Graph g = testutil::path_graph(4);
  Forest f(4);
  f.set_parent(0, 1);
  f.set_parent(2, 1);
  f.set_parent(3, 2);
  REQUIRE(validate_elim_forest(g, f));
  auto sr = strong_reach_sets(g, f);
  auto nu = up_neighbor_sets(g, f);
  CHECK(sr[0] == VertexSet{1});
  CHECK(sr[2] == VertexSet{1});
  CHECK(sr[3] == VertexSet{2});
  CHECK(sr[1] == VertexSet{});
  CHECK(nu[3] == VertexSet{2});
  CHECK(nu[2] == VertexSet{1});
}

TEST_CASE("strong reach propagates through subtrees") {
  testutil::Rng rng(7);
  for (int round = 0; round < 40; ++round) {
    Graph g = testutil::random_graph(rng, 10, 12);
    Forest f = static_elim_forest(g);
    REQUIRE(validate_elim_forest(g, f));
    auto sr = strong_reach_sets(g, f);
    auto desc = f.descendant_sets();
    for (Vertex v = 0; v < g.n(); ++v) {
      // reference: N(desc(v)) computed directly
      VertexSet ref;
      for (Vertex d : desc[v])
        for (Vertex w : g.neighbors(d))
          if (!set_contains(desc[v], w)) set_insert(ref, w);
      CHECK(sr[v] == ref);
    }
  }
}

TEST_CASE("restriction of an elimination forest decomposes the induced subgraph") {
  testutil::Rng rng(11);
  for (int round = 0; round < 40; ++round) {
    Graph g = testutil::random_graph(rng, 9, 10);
    Forest f = static_elim_forest(g);
    VertexSet a;
    for (Vertex v = 0; v < g.n(); ++v)
      if (rng() % 2) a.push_back(v);
    Forest r = restrict_forest(f, a);
    CHECK(validate_elim_forest(g.induced(a), r));
  }
}
