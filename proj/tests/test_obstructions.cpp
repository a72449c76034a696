#include <catch2/catch_amalgamated.hpp>

#include "dyntd/obstructions.hpp"
#include "helpers.hpp"

using namespace dyntd;

TEST_CASE("is_minimal_obstruction basics") {
  CHECK(is_minimal_obstruction(testutil::path_graph(2), 1));
  CHECK(is_minimal_obstruction(testutil::path_graph(4), 2));
  CHECK(is_minimal_obstruction(testutil::complete_graph(4), 3));
  CHECK(!is_minimal_obstruction(testutil::path_graph(5), 2));  // not minimal
  CHECK(!is_minimal_obstruction(testutil::path_graph(4), 3));  // not an obstruction
}

TEST_CASE("depth-1 obstructions up to six vertices") {
  auto obs = enumerate_min_obstructions(1, 6);
  REQUIRE(obs.size() == 1);
  CHECK(obs[0].n() == 2);
  CHECK(obs[0].has_edge(0, 1));
}

TEST_CASE("depth-2 obstructions up to eight vertices") {
  auto obs = enumerate_min_obstructions(2, 8);
  bool has_p4 = false;
  bool has_acyclic_4 = false;
  for (const Graph& g : obs) {
    CHECK(is_minimal_obstruction(g, 2));
    CHECK((int64_t)g.n() <= obstruction_size_bound(2));
    if (g.n() == 4 && oracle::longest_cycle_bf(g) == 0) {
      has_acyclic_4 = true;
      // the acyclic obstruction on 2^2 vertices is the 4-vertex path
      CHECK(g.edge_count() == 3);
      bool is_path = oracle::has_k_path_bf(g, 4);
      CHECK(is_path);
      has_p4 |= is_path;
    }
  }
  CHECK(has_p4);
  CHECK(has_acyclic_4);
}

TEST_CASE("obstructions are their own cores") {
  for (int d = 1; d <= 2; ++d) {
    auto obs = enumerate_min_obstructions(d, d == 1 ? 6 : 8);
    for (const Graph& g : obs) {
      Forest f = static_elim_forest(g);
      REQUIRE(f.height() == d + 1);
      VertexSet root = f.roots();
      VertexSet core = find_core(g, f, root, d + 1);
      CHECK((int)core.size() == g.n());
    }
  }
}

TEST_CASE("enumeration caps") {
  CHECK_THROWS_AS(enumerate_min_obstructions(3, 6), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_min_obstructions(2, 12), std::invalid_argument);
}
