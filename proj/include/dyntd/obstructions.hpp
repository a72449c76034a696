#pragma once

// Minimal obstructions for bounded treedepth: graphs whose treedepth
// exceeds d while every single-vertex deletion brings it back within d.
// The enumeration walks canonical connected graphs by vertex augmentation,
// pruning anything whose treedepth already exceeds d+1 (induced subgraphs of
// an obstruction never do).

#include <cstdint>
#include <unordered_set>

#include "dyntd/cores.hpp"
#include "dyntd/oracle.hpp"
#include "dyntd/treedepth_solver.hpp"

namespace dyntd {

inline bool is_minimal_obstruction(const Graph& g, int d) {
  if (g.n() == 0 || g.n() > oracle::kMaxMaskVertices) return false;
  if (oracle::treedepth_bf(g) <= d) return false;
  for (Vertex v = 0; v < g.n(); ++v) {
    VertexSet rest;
    for (Vertex w = 0; w < g.n(); ++w)
      if (w != v) rest.push_back(w);
    if (oracle::treedepth_bf(g.induced(rest)) > d) return false;
  }
  return true;
}

namespace detail {

// Canonical form: the minimum adjacency bitstring over all vertex
// relabelings. Pairs are laid out so that placing one more vertex appends a
// contiguous bit block, which makes prefix pruning a masked comparison.
// Bit for the pair (i, j) with i < j sits at j*(j-1)/2 + i.

inline uint64_t canonical_bits(const Graph& g) {
  int n = g.n();
  if (n > 11) throw SolverCapError("canonical form: too many vertices");
  uint64_t best = ~0ULL;
  std::vector<int> chosen;
  chosen.reserve(n);
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, uint64_t bits) -> void {
    int m = static_cast<int>(chosen.size());
    if (m == n) {
      best = std::min(best, bits);
      return;
    }
    int block_base = m * (m - 1) / 2;  // pairs gained by placing position m
    int next_base = (m + 1) * m / 2;
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      uint64_t add = 0;
      for (int i = 0; i < m; ++i)
        if (g.has_edge(v, chosen[i])) add |= 1ULL << (block_base + i);
      uint64_t bits2 = bits | add;
      uint64_t prefix_mask = (next_base >= 64) ? ~0ULL : ((1ULL << next_base) - 1);
      if ((bits2 & prefix_mask) > (best & prefix_mask)) continue;
      used[v] = 1;
      chosen.push_back(v);
      self(self, bits2);
      chosen.pop_back();
      used[v] = 0;
    }
  };
  rec(rec, 0);
  return best;
}

inline Graph from_bits(int n, uint64_t bits) {
  Graph g(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (bits >> (j * (j - 1) / 2 + i) & 1) g.add_edge(i, j);
  return g;
}

inline bool is_connected(const Graph& g) {
  if (g.n() == 0) return true;
  oracle::TreedepthOracle o(g);
  return o.connected(o.all_mask());
}

}  // namespace detail

// All non-isomorphic minimal obstructions for treedepth d on at most max_n
// vertices. Exhaustive and exact; capped to small d and max_n.
inline std::vector<Graph> enumerate_min_obstructions(int d, int max_n) {
  if (d < 1 || d > 2 || max_n < 1 || max_n > 10)
    throw std::invalid_argument("enumerate_min_obstructions: caps are d <= 2, n <= 10");

  std::vector<Graph> out;
  // canonical connected graphs with treedepth <= d+1, per vertex count
  std::vector<uint64_t> level{0};  // the single-vertex graph
  {
    Graph one(1);
    if (is_minimal_obstruction(one, d)) out.push_back(one);
  }
  for (int n = 2; n <= max_n; ++n) {
    std::unordered_set<uint64_t> next;
    std::vector<uint32_t> order;  // neighborhoods by increasing size
    for (uint32_t nbrs = 1; nbrs < (1u << (n - 1)); ++nbrs) order.push_back(nbrs);
    std::sort(order.begin(), order.end(), [](uint32_t a, uint32_t b) {
      int pa = std::popcount(a), pb = std::popcount(b);
      return pa != pb ? pa < pb : a < b;
    });
    for (uint64_t bits : level) {
      Graph base = detail::from_bits(n - 1, bits);
      Graph grown(n);
      for (auto [a, b] : base.edges()) grown.add_edge(a, b);
      // treedepth grows with the neighborhood, so supersets of a rejected
      // neighborhood are rejected without another solve
      std::vector<uint32_t> rejected;
      for (uint32_t nbrs : order) {
        bool skip = false;
        for (uint32_t r : rejected)
          if ((nbrs & r) == r) {
            skip = true;
            break;
          }
        if (skip) continue;
        Graph candidate = grown;
        for (int i = 0; i < n - 1; ++i)
          if (nbrs >> i & 1) candidate.add_edge(n - 1, i);
        if (oracle::treedepth_bf(candidate) > d + 1) {
          rejected.push_back(nbrs);
          continue;
        }
        next.insert(detail::canonical_bits(candidate));
      }
    }
    level.assign(next.begin(), next.end());
    std::sort(level.begin(), level.end());
    for (uint64_t bits : level) {
      Graph g = detail::from_bits(n, bits);
      if (is_minimal_obstruction(g, d)) out.push_back(g);
    }
  }
  return out;
}

// Closed-form size bound matching the core extraction count at q = d+1.
inline int64_t obstruction_size_bound(int d) {
  int64_t q = d + 1;
  int64_t base = q * (q * q + 1);
  int64_t pw = 1, sum = 0;
  for (int i = 0; i < d + 1; ++i) {
    sum += pw;
    pw *= base;
  }
  return q * sum;
}

}  // namespace dyntd
