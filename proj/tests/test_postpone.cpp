#include <catch2/catch_amalgamated.hpp>

#include "dyntd/postpone.hpp"
#include "helpers.hpp"

using namespace dyntd;

TEST_CASE("wrapper basics around the treedepth family") {
  // k=3: inner keeps treedepth < 3
  LongPathDetector det(3, 3);
  det.set_front_probing(true);
  CHECK(det.wrapper().family_member());
  CHECK(!det.contains());

  det.insert(0, 1);
  det.insert(1, 2);
  CHECK(det.wrapper().family_member());
  CHECK(det.contains());  // the 3-path itself

  det.insert(0, 2);  // triangle: treedepth 3, parked
  CHECK(!det.wrapper().family_member());
  CHECK(det.wrapper().queue_size() == 1);
  CHECK(det.contains());

  // inserting while the queue is non-empty parks immediately
  LongPathDetector det2(5, 3);
  det2.insert(0, 1);
  det2.insert(1, 2);
  det2.insert(0, 2);
  REQUIRE(det2.wrapper().queue_size() == 1);
  det2.insert(3, 4);  // would be accepted by the inner structure, still parked
  CHECK(det2.wrapper().queue_size() == 2);

  // removing the blocking edge flushes the queue back into the structure
  det2.remove(1, 2);
  CHECK(det2.wrapper().queue_empty());
  CHECK(det2.wrapper().family_member());

  // removing from the middle of the queue
  LongPathDetector det3(6, 3);
  det3.insert(0, 1);
  det3.insert(1, 2);
  det3.insert(0, 2);  // parked (front)
  det3.insert(3, 4);  // parked
  det3.insert(4, 5);  // parked
  REQUIRE(det3.wrapper().queue_size() == 3);
  det3.remove(3, 4);  // middle removal; front still blocked
  CHECK(det3.wrapper().queue_size() == 2);
  CHECK(!det3.wrapper().family_member());

  // removing an absent element is a no-op
  det3.remove(2, 4);
  CHECK(det3.wrapper().queue_size() == 2);
}

TEST_CASE("triangle at k=3 answers true through the queue") {
  LongPathDetector det(3, 3);
  det.insert(0, 1);
  det.insert(1, 2);
  CHECK(det.contains());
  det.insert(0, 2);
  CHECK(det.contains());
  det.remove(0, 1);
  det.remove(1, 2);
  det.remove(0, 2);
  CHECK(!det.contains());
  CHECK(det.wrapper().queue_empty());
}

TEST_CASE("degenerate path lengths") {
  LongPathDetector one(4, 1);
  CHECK(one.contains());  // any vertex is a 1-path

  LongPathDetector two(4, 2);
  CHECK(!two.contains());
  two.insert(2, 3);
  CHECK(two.contains());
  two.remove(2, 3);
  CHECK(!two.contains());

  LongPathDetector zero(0, 1);
  CHECK(!zero.contains());
}

TEST_CASE("detector tracks the brute-force answer with bounded inner work") {
  testutil::Rng rng(91);
  for (int k = 3; k <= 5; ++k) {
    int n = 20;
    Graph shadow(n);
    LongPathDetector det(n, k);
    det.set_front_probing(true);
    uint64_t wrapper_ops = 0;
    for (int step = 0; step < 600; ++step) {
      auto [u, v] = testutil::rand_pair(rng, n);
      ++wrapper_ops;
      if (shadow.has_edge(u, v)) {
        shadow.remove_edge(u, v);
        det.remove(u, v);
      } else {
        shadow.add_edge(u, v);
        det.insert(u, v);
      }
      CHECK(det.contains() == oracle::has_k_path_bf(shadow, k));
      CHECK(det.has_edge(u, v) == shadow.has_edge(u, v));
    }
    CHECK(det.inner_ops() <= 3 * wrapper_ops);
  }
}

TEST_CASE("wide graphs exercise the truncated child folds") {
  // large sibling groups push the per-configuration sublists well past the
  // truncation threshold, so the recomputation must rely on representatives
  testutil::Rng rng(92);
  int n = 80, k = 4;
  Graph shadow(n);
  LongPathDetector det(n, k);
  // stars first: one bucket with dozens of identical leaves
  for (int leaf = 1; leaf <= 40; ++leaf) {
    det.insert(0, leaf);
    shadow.add_edge(0, leaf);
  }
  CHECK(det.contains() == oracle::has_k_path_bf(shadow, k));
  // hover around the answer boundary so the inner structure keeps working
  for (int step = 0; step < 1200; ++step) {
    bool prefer_remove = det.contains() ? rng() % 100 < 70 : rng() % 100 < 30;
    auto edges = shadow.edges();
    auto [u, v] = (prefer_remove && !edges.empty())
                      ? edges[rng() % edges.size()]
                      : testutil::rand_pair(rng, n);
    if (shadow.has_edge(u, v)) {
      shadow.remove_edge(u, v);
      det.remove(u, v);
    } else {
      shadow.add_edge(u, v);
      det.insert(u, v);
    }
    CHECK(det.contains() == oracle::has_k_path_bf(shadow, k));
  }
}
