#pragma once

#include <random>
#include <vector>

#include "dyntd/graph.hpp"
#include "dyntd/oracle.hpp"

namespace testutil {

using dyntd::Graph;
using dyntd::Vertex;

using Rng = std::mt19937_64;

// Deterministic across platforms (no distribution objects).
inline int rand_int(Rng& rng, int lo, int hi) {  // inclusive bounds
  return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

inline std::pair<Vertex, Vertex> rand_pair(Rng& rng, int n) {
  Vertex u = rand_int(rng, 0, n - 1);
  Vertex v = rand_int(rng, 0, n - 2);
  if (v >= u) ++v;
  return {u, v};
}

inline Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph cycle_graph(int n) {
  Graph g = path_graph(n);
  g.add_edge(n - 1, 0);
  return g;
}

inline Graph complete_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

inline Graph star_graph(int leaves) {
  Graph g(leaves + 1);
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

inline Graph random_graph(Rng& rng, int n, int edges) {
  Graph g(n);
  if (n < 2) return g;
  for (int tries = 0; tries < edges * 4 && static_cast<int>(g.edge_count()) < edges;
       ++tries) {
    auto [u, v] = rand_pair(rng, n);
    g.add_edge(u, v);
  }
  return g;
}

// Random graph with treedepth at most `d`, built by rejecting edges that
// would push the brute-force treedepth over the bound.
inline Graph random_bounded_td_graph(Rng& rng, int n, int d, int attempts) {
  Graph g(n);
  for (int i = 0; i < attempts; ++i) {
    auto [u, v] = rand_pair(rng, n);
    if (g.has_edge(u, v)) continue;
    g.add_edge(u, v);
    if (dyntd::oracle::treedepth_bf(g) > d) g.remove_edge(u, v);
  }
  return g;
}

}  // namespace testutil
