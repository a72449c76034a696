#include <catch2/catch_amalgamated.hpp>

#include "dyntd/treedepth_solver.hpp"
#include "helpers.hpp"

using namespace dyntd;

TEST_CASE("static_elim_forest on named graphs") {
  Graph empty(5);
  Forest f = static_elim_forest(empty);
  CHECK(f.roots().size() == 5);
  CHECK(f.height() == 1);

  Forest k4 = static_elim_forest(testutil::complete_graph(4));
  CHECK(k4.height() == 4);

  Forest p7 = static_elim_forest(testutil::path_graph(7));
  CHECK(p7.height() == 3);
}

TEST_CASE("is_recursively_optimal basics") {
  Graph one(1);
  CHECK(is_recursively_optimal(one, Forest(1)));

  // a path on 3 vertices eliminated as a chain is valid but not optimal
  Graph p3 = testutil::path_graph(3);
  Forest chain(3);
  chain.set_parent(1, 0);
  chain.set_parent(2, 1);
  REQUIRE(validate_elim_forest(p3, chain));
  CHECK(!is_recursively_optimal(p3, chain));

  Graph star = testutil::star_graph(3);
  Forest sf(4);
  for (int leaf = 1; leaf <= 3; ++leaf) sf.set_parent(leaf, 0);
  CHECK(is_recursively_optimal(star, sf));
}

TEST_CASE("solver output is recursively optimal on random graphs") {
  testutil::Rng rng(21);
  for (int round = 0; round < 120; ++round) {
    int n = testutil::rand_int(rng, 1, 12);
    Graph g = testutil::random_graph(rng, n, testutil::rand_int(rng, 0, 2 * n));
    Forest f = static_elim_forest(g);
    CHECK(validate_elim_forest(g, f));
    CHECK(is_recursively_optimal(g, f));
  }
}

TEST_CASE("solver height equals brute-force treedepth") {
  testutil::Rng rng(22);
  for (int round = 0; round < 10000; ++round) {
    int n = testutil::rand_int(rng, 1, 9);
    Graph g = testutil::random_graph(rng, n, testutil::rand_int(rng, 0, 3 * n));
    Forest f = static_elim_forest(g);
    CHECK(f.height() == oracle::treedepth_bf(g));
  }
}

TEST_CASE("solver honors the vertex cap") {
  Graph big(80);
  CHECK_THROWS_AS(static_elim_forest(big), SolverCapError);
  CHECK_THROWS_AS(static_elim_forest(Graph(10), 5), SolverCapError);
}
