#include <catch2/catch_amalgamated.hpp>

#include "dyntd/kpath_scheme.hpp"
#include "dyntd/td_core.hpp"
#include "helpers.hpp"

using namespace dyntd;

using PathTd = MugStructure<KPathScheme>;

TEST_CASE("membership flag on small builds") {
  SECTION("edgeless graphs") {
    for (int k = 1; k <= 4; ++k) {
      PathTd s(3, std::max(1, k - 1), KPathScheme(k));
      CHECK(s.member() == (k == 1));  // a single vertex is a 1-path
    }
    PathTd none(0, 1, KPathScheme(1));
    CHECK(!none.member());  // no vertices at all
  }

  SECTION("at k=2 the height budget of 1 admits no edge at all") {
    PathTd s(2, 1, KPathScheme(2));
    CHECK(s.insert(0, 1) == InsertResult::kRejected);
    CHECK(!s.member());
  }

  SECTION("building a k-path edge by edge flips the flag on the last edge") {
    for (int k = 3; k <= 5; ++k) {
      PathTd s(k, k - 1, KPathScheme(k));
      for (int i = 0; i + 1 < k; ++i) {
        CHECK(!s.member());
        REQUIRE(s.insert(i, i + 1) == InsertResult::kAccepted);
      }
      CHECK(s.member());
    }
  }
}

TEST_CASE("member tracks the brute-force answer through random sessions") {
  testutil::Rng rng(71);
  for (int k = 2; k <= 5; ++k) {
    int n = 9, d = k - 1;
    Graph shadow(n);
    PathTd s(n, d, KPathScheme(k));
    for (int step = 0; step < 300; ++step) {
      auto [u, v] = testutil::rand_pair(rng, n);
      if (shadow.has_edge(u, v)) {
        shadow.remove_edge(u, v);
        s.remove(u, v);
      } else if (s.insert(u, v) == InsertResult::kAccepted) {
        shadow.add_edge(u, v);
      }
      CHECK(s.member() == oracle::has_k_path_bf(shadow, k));
      s.check_against(shadow);
    }
  }
}

TEST_CASE("insert-remove round trip restores the flag") {
  testutil::Rng rng(72);
  int k = 4, n = 10;
  Graph shadow(n);
  PathTd s(n, k - 1, KPathScheme(k));
  for (int step = 0; step < 200; ++step) {
    auto [u, v] = testutil::rand_pair(rng, n);
    if (shadow.has_edge(u, v)) continue;
    bool before = s.member();
    if (s.insert(u, v) == InsertResult::kAccepted) {
      s.remove(u, v);
      CHECK(s.member() == before);
      if (s.insert(u, v) == InsertResult::kAccepted) shadow.add_edge(u, v);
    }
  }
}

TEST_CASE("per-vertex configuration sets match the brute-force sets") {
  testutil::Rng rng(73);
  int rounds = 0;
  for (int round = 0; round < 200 && rounds < 60; ++round) {
    int k = testutil::rand_int(rng, 2, 4);
    int n = testutil::rand_int(rng, 2, 8);
    int d = k - 1;
    Graph shadow(n);
    PathTd s(n, d, KPathScheme(k));
    for (int step = 0; step < 3 * n; ++step) {
      auto [u, v] = testutil::rand_pair(rng, n);
      if (shadow.has_edge(u, v)) continue;
      if (s.insert(u, v) == InsertResult::kAccepted) shadow.add_edge(u, v);
    }
    ++rounds;
    Forest f = s.export_forest();
    auto desc = f.descendant_sets();
    auto sr = strong_reach_sets(shadow, f);
    for (Vertex w = 0; w < n; ++w) {
      // the boundaried subtree graph: descendants plus their reach set, with
      // only the edges incident to the descendants
      oracle::BoundariedGraph bg;
      bg.graph = Graph(n);
      for (Vertex x : desc[w])
        for (Vertex y : shadow.neighbors(x)) bg.graph.add_edge(x, y);
      bg.vertices = set_union(desc[w], sr[w]);
      bg.boundary = sr[w];
      if (bg.vertices.size() > 8) continue;
      CHECK(s.config_set_of(w) == oracle::conf_bf(bg, k));
    }
  }
  CHECK(rounds >= 40);
}

TEST_CASE("mug structure rejects like the plain structure") {
  int k = 3;
  PathTd s(3, k - 1, KPathScheme(k));
  REQUIRE(s.insert(0, 1) == InsertResult::kAccepted);
  REQUIRE(s.insert(1, 2) == InsertResult::kAccepted);
  CHECK(s.member());
  Forest before = s.export_forest();
  bool member_before = s.member();
  CHECK(s.insert(0, 2) == InsertResult::kRejected);
  CHECK(s.export_forest() == before);
  CHECK(s.member() == member_before);
}
