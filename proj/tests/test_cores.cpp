#include <catch2/catch_amalgamated.hpp>

#include "dyntd/cores.hpp"
#include "dyntd/treedepth_solver.hpp"
#include "helpers.hpp"

using namespace dyntd;

namespace {

int64_t core_size_bound(int q, int d) {
  // q * ((q(d^2+1))^d - 1) / (q(d^2+1) - 1)
  int64_t base = int64_t{q} * (int64_t{d} * d + 1);
  int64_t pw = 1, sum = 0;
  for (int i = 0; i < d; ++i) {
    sum += pw;
    pw *= base;
  }
  return q * sum;
}

// Toggle some edges inside k: arbitrary additions, at most `removals` removals.
Graph restricted_augmentation(testutil::Rng& rng, const Graph& g, const VertexSet& k,
                              int removals) {
  Graph h = g;
  int removed = 0;
  for (size_t i = 0; i < k.size(); ++i) {
    for (size_t j = i + 1; j < k.size(); ++j) {
      if (rng() % 4 != 0) continue;
      Vertex u = k[i], v = k[j];
      if (h.has_edge(u, v)) {
        if (removed < removals) {
          h.remove_edge(u, v);
          ++removed;
        }
      } else {
        h.add_edge(u, v);
      }
    }
  }
  return h;
}

}  // namespace

TEST_CASE("find_core basics") {
  SECTION("single vertex") {
    Graph g(1);
    Forest f(1);
    CHECK(find_core(g, f, {0}, 1) == VertexSet{0});
  }

  SECTION("star keeps a bounded number of leaves") {
    Graph star = testutil::star_graph(5);
    Forest f(6);
    for (int leaf = 1; leaf <= 5; ++leaf) f.set_parent(leaf, 0);
    VertexSet k = find_core(star, f, {0}, 2);
    CHECK(set_contains(k, 0));
    // X ranges over {}, {0}: two quota rounds of two leaves each
    CHECK(k.size() <= 5);
    CHECK(verify_qcore(star, f, k, 2));
  }

  SECTION("core is ancestor closed and contains the seed") {
    testutil::Rng rng(51);
    for (int round = 0; round < 60; ++round) {
      Graph g = testutil::random_graph(rng, 10, 12);
      Forest f = static_elim_forest(g);
      VertexSet l;
      for (Vertex v = 0; v < g.n(); ++v)
        if (rng() % 3 == 0) l.push_back(v);
      int q = testutil::rand_int(rng, 1, 4);
      VertexSet k = find_core(g, f, l, q);
      CHECK(is_prefix(f, k));
      for (Vertex v : l) CHECK(set_contains(k, v));
      CHECK(verify_qcore(g, f, k, q));
    }
  }
}

TEST_CASE("find_core respects the closed-form size bound") {
  testutil::Rng rng(52);
  for (int round = 0; round < 1000; ++round) {
    int n = testutil::rand_int(rng, 1, 12);
    Graph g = testutil::random_graph(rng, n, testutil::rand_int(rng, 0, 2 * n));
    Forest f = static_elim_forest(g);
    int d = f.height();
    if (d > 4) continue;
    int q = testutil::rand_int(rng, 1, d + 2);
    VertexSet k = find_core(g, f, {}, q);
    CHECK((int64_t)k.size() <= core_size_bound(q, d));
    CHECK(verify_qcore(g, f, k, q));
  }
}

TEST_CASE("verify_qcore basics") {
  Graph star = testutil::star_graph(5);
  Forest f(6);
  for (int leaf = 1; leaf <= 5; ++leaf) f.set_parent(leaf, 0);

  VertexSet all;
  for (Vertex v = 0; v < 6; ++v) all.push_back(v);
  CHECK(verify_qcore(star, f, all, 7));  // no appendices: vacuous

  // center plus one leaf: the appendices see only one qualifying sibling
  CHECK(!verify_qcore(star, f, {0, 1}, 2));
  CHECK(verify_qcore(star, f, {0, 1}, 1));
}

TEST_CASE("attachability basics") {
  SECTION("empty residual forest") {
    Graph g(3);
    g.add_edge(0, 1);
    Forest fk(3, Forest::kAbsent);
    fk.set_parent(0, Forest::kRoot);
    fk.set_parent(1, 0);
    fk.set_parent(2, 0);
    Forest r(3, Forest::kAbsent);
    CHECK(is_attachable(g, fk, r));
    CHECK(extend_forest(g, fk, r) == fk);
    CHECK(has_ssp(g, fk, r));
  }

  SECTION("path through the kept middle vertex") {
    Graph p3 = testutil::path_graph(3);  // 0-1-2
    Forest fk(3, Forest::kAbsent);
    fk.set_parent(1, Forest::kRoot);
    Forest r(3, Forest::kAbsent);
    r.set_parent(0, Forest::kRoot);
    r.set_parent(2, Forest::kRoot);
    CHECK(is_attachable(p3, fk, r));
    Forest ext = extend_forest(p3, fk, r);
    CHECK(ext.parent(0) == 1);
    CHECK(ext.parent(2) == 1);
    CHECK(ext.height() == 2);
    CHECK(validate_elim_forest(p3, ext));
  }

  SECTION("cycle with unrelated kept roots is not attachable") {
    Graph c4 = testutil::cycle_graph(4);  // 0-1-2-3-0
    Forest fk(4, Forest::kAbsent);
    fk.set_parent(0, Forest::kRoot);
    fk.set_parent(2, Forest::kRoot);
    Forest r(4, Forest::kAbsent);
    r.set_parent(1, Forest::kRoot);
    CHECK(!is_attachable(c4, fk, r));
  }
}

TEST_CASE("extension round trip restores the original forest") {
  testutil::Rng rng(53);
  for (int round = 0; round < 200; ++round) {
    int n = testutil::rand_int(rng, 1, 11);
    Graph g = testutil::random_graph(rng, n, testutil::rand_int(rng, 0, 2 * n));
    Forest f = static_elim_forest(g);
    int q = testutil::rand_int(rng, 1, 3);
    VertexSet k = find_core(g, f, {}, q);
    Forest fk = restrict_forest(f, k);
    VertexSet rest;
    for (Vertex v = 0; v < n; ++v)
      if (!set_contains(k, v)) rest.push_back(v);
    Forest r = restrict_forest(f, rest);
    REQUIRE(is_attachable(g, fk, r));
    CHECK(extend_forest(g, fk, r) == f);
  }
}

TEST_CASE("no tall sibling breaks the substitution property") {
  // 0 keeps a single short child 1; the residual tree 2-3 attaches under 0
  Graph h(4);
  h.add_edge(0, 1);
  h.add_edge(0, 2);
  h.add_edge(2, 3);
  Forest fk(4, Forest::kAbsent);
  fk.set_parent(0, Forest::kRoot);
  fk.set_parent(1, 0);
  Forest r(4, Forest::kAbsent);
  r.set_parent(2, Forest::kRoot);
  r.set_parent(3, 2);
  REQUIRE(is_attachable(h, fk, r));
  CHECK(!has_ssp(h, fk, r));
}

TEST_CASE("substitution property holds for big-enough cores") {
  testutil::Rng rng(54);
  int rounds = 0;
  for (int round = 0; round < 400 && rounds < 120; ++round) {
    int n = testutil::rand_int(rng, 2, 10);
    Graph g = testutil::random_graph(rng, n, testutil::rand_int(rng, 1, 2 * n));
    Forest f = static_elim_forest(g);
    int d = f.height();
    if (d > 4) continue;
    int ell = testutil::rand_int(rng, 0, 1);
    VertexSet k = find_core(g, f, {}, d + ell + 1);
    Graph h = restricted_augmentation(rng, g, k, ell);
    Graph hk = h.induced(k);
    if (exact_treedepth(hk) > d) continue;
    Forest fkk = static_elim_forest(hk);
    Forest fk = restrict_forest(fkk, k);
    VertexSet rest;
    for (Vertex v = 0; v < n; ++v)
      if (!set_contains(k, v)) rest.push_back(v);
    Forest r = restrict_forest(f, rest);
    ++rounds;
    REQUIRE(is_attachable(h, fk, r));
    CHECK(has_ssp(h, fk, r));
  }
  CHECK(rounds >= 60);
}

TEST_CASE("reach sets of core members match the induced subgraph") {
  testutil::Rng rng(55);
  for (int round = 0; round < 100; ++round) {
    int n = testutil::rand_int(rng, 1, 10);
    Graph g = testutil::random_graph(rng, n, testutil::rand_int(rng, 0, 2 * n));
    Forest f = static_elim_forest(g);
    VertexSet k = find_core(g, f, {}, 1);
    Graph gk = g.induced(k);
    auto sr = strong_reach_sets(g, f);
    auto desc = f.descendant_sets();
    oracle::TreedepthOracle conn(gk);
    for (Vertex u : k) {
      VertexSet kd;
      for (Vertex v : desc[u])
        if (set_contains(k, v)) kd.push_back(v);
      CHECK(conn.connected(to_mask(kd)));
      VertexSet nb;
      for (Vertex v : kd)
        for (Vertex w : gk.neighbors(v))
          if (!set_contains(kd, w)) set_insert(nb, w);
      CHECK(nb == sr[u]);
    }
  }
}

TEST_CASE("reach sets of appendices stay straight in replacement forests") {
  testutil::Rng rng(56);
  int rounds = 0;
  for (int round = 0; round < 400 && rounds < 100; ++round) {
    int n = testutil::rand_int(rng, 2, 10);
    Graph g = testutil::random_graph(rng, n, testutil::rand_int(rng, 1, 2 * n));
    Forest f = static_elim_forest(g);
    int d = f.height();
    if (d > 4) continue;
    int ell = testutil::rand_int(rng, 0, 1);
    VertexSet k = find_core(g, f, {}, d + ell);
    Graph h = restricted_augmentation(rng, g, k, ell);
    Graph hk = h.induced(k);
    if (exact_treedepth(hk) > d) continue;
    Forest fk = restrict_forest(static_elim_forest(hk), k);
    ++rounds;
    auto sr = strong_reach_sets(g, f);
    auto depth = fk.depths();
    for (Vertex u : prefix_appendices(f, k)) {
      Vertex deepest = -1;
      for (Vertex x : sr[u])
        if (deepest == -1 || depth[x] > depth[deepest]) deepest = x;
      for (Vertex x : sr[u]) CHECK(fk.is_ancestor(x, deepest));
    }
  }
  CHECK(rounds >= 50);
}

TEST_CASE("cores preserve subtree treedepth") {
  testutil::Rng rng(57);
  int rounds = 0;
  for (int round = 0; round < 200 && rounds < 80; ++round) {
    int n = testutil::rand_int(rng, 1, 10);
    Graph g = testutil::random_graph(rng, n, testutil::rand_int(rng, 0, 2 * n));
    Forest f = static_elim_forest(g);
    int d = f.height();
    if (d > 4) continue;
    ++rounds;
    VertexSet k = find_core(g, f, {}, d);
    auto desc = f.descendant_sets();
    for (Vertex v : k) {
      VertexSet kd;
      for (Vertex w : desc[v])
        if (set_contains(k, w)) kd.push_back(w);
      CHECK(oracle::treedepth_bf(g.induced(kd)) ==
            oracle::treedepth_bf(g.induced(desc[v])));
    }
  }
  CHECK(rounds >= 40);
}

TEST_CASE("replacing the core forest keeps recursive optimality") {
  testutil::Rng rng(58);
  int rounds = 0;
  for (int round = 0; round < 400 && rounds < 100; ++round) {
    int n = testutil::rand_int(rng, 2, 10);
    Graph g = testutil::random_graph(rng, n, testutil::rand_int(rng, 1, 2 * n));
    Forest f = static_elim_forest(g);
    int d = f.height();
    if (d > 4) continue;
    int ell = testutil::rand_int(rng, 0, 1);
    VertexSet k = find_core(g, f, {}, d + ell + 1);
    Graph h = restricted_augmentation(rng, g, k, ell);
    Graph hk = h.induced(k);
    if (exact_treedepth(hk) > d) continue;
    Forest fk = restrict_forest(static_elim_forest(hk), k);
    VertexSet rest;
    for (Vertex v = 0; v < n; ++v)
      if (!set_contains(k, v)) rest.push_back(v);
    Forest r = restrict_forest(f, rest);
    ++rounds;
    REQUIRE(is_attachable(h, fk, r));
    Forest ext = extend_forest(h, fk, r);
    CHECK(validate_elim_forest(h, ext));
    CHECK(is_recursively_optimal(h, ext));
    CHECK(ext.height() <= d);
  }
  CHECK(rounds >= 50);
}
