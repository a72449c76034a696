#pragma once

// Core machinery on explicit (graph, forest) pairs. A q-core is an
// ancestor-closed vertex set that keeps, for every vertex hanging just below
// it and every pair of its reach-set vertices, q interchangeable siblings of
// no smaller subtree height. Cores are what the dynamic structure re-solves
// on updates; here the same notions are available standalone.

#include <stdexcept>

#include "dyntd/forest.hpp"
#include "dyntd/graph.hpp"

namespace dyntd {

// Ancestor-minimal vertices outside the prefix k: non-members that are roots
// or whose parent is a member.
inline VertexSet prefix_appendices(const Forest& f, const VertexSet& k) {
  VertexSet out;
  for (Vertex v = 0; v < f.n(); ++v) {
    if (!f.in_domain(v) || set_contains(k, v)) continue;
    if (f.is_root(v) || set_contains(k, f.parent(v))) out.push_back(v);
  }
  return out;
}

inline bool is_prefix(const Forest& f, const VertexSet& k) {
  for (Vertex v : k) {
    if (!f.in_domain(v)) return false;
    if (!f.is_root(v) && !set_contains(k, f.parent(v))) return false;
  }
  return true;
}

namespace detail {

// All subsets of `base` of size at most two (including the empty set).
inline std::vector<VertexSet> le2_subsets(const VertexSet& base) {
  std::vector<VertexSet> out{{}};
  for (size_t i = 0; i < base.size(); ++i) {
    out.push_back({base[i]});
    for (size_t j = i + 1; j < base.size(); ++j)
      out.push_back({base[i], base[j]});
  }
  return out;
}

}  // namespace detail

// Siblings w of u qualifying for the pair (u, X): members of k whose reach
// set covers X and whose subtree is at least as tall as u's.
inline VertexSet core_witnesses(const Graph& g, const Forest& f, const VertexSet& k,
                                Vertex u, const VertexSet& x) {
  auto sr = strong_reach_sets(g, f);
  auto heights = f.subtree_heights();
  VertexSet out;
  int p = f.parent(u);
  for (Vertex w = 0; w < f.n(); ++w) {
    if (w == u || !f.in_domain(w) || f.parent(w) != p) continue;
    if (!set_contains(k, w)) continue;
    if (!set_subset(x, sr[w])) continue;
    if (heights[w] < heights[u]) continue;
    out.push_back(w);
  }
  return out;
}

inline bool verify_qcore(const Graph& g, const Forest& f, const VertexSet& k, int q) {
  if (!is_prefix(f, k)) throw std::invalid_argument("verify_qcore: not a prefix");
  auto sr = strong_reach_sets(g, f);
  auto heights = f.subtree_heights();
  auto children = f.children_lists();
  auto roots = f.roots();
  for (Vertex u : prefix_appendices(f, k)) {
    const std::vector<Vertex>& sibs = f.is_root(u) ? roots : children[f.parent(u)];
    for (const VertexSet& x : detail::le2_subsets(sr[u])) {
      int count = 0;
      for (Vertex w : sibs) {
        if (w == u || !set_contains(k, w)) continue;
        if (heights[w] < heights[u]) continue;
        if (!set_subset(x, sr[w])) continue;
        ++count;
      }
      if (count < q) return false;
    }
  }
  return true;
}

// Extract a q-core containing the ancestor closure of l, by the recursive
// marking procedure: per vertex and per at-most-2-subset X of its closed
// reach set, keep the q tallest children whose reach set covers X (ties by
// smaller id), then recurse into everything kept.
inline VertexSet find_core(const Graph& g, const Forest& f, const VertexSet& l,
                           int q) {
  if (q < 1) throw std::invalid_argument("find_core: q must be positive");
  auto sr = strong_reach_sets(g, f);
  auto heights = f.subtree_heights();
  auto children = f.children_lists();
  auto roots = f.roots();

  VertexSet lhat;
  for (Vertex v : l)
    for (Vertex a : f.ancestors(v)) set_insert(lhat, a);

  VertexSet core;
  auto mark = [&](auto&& self, int u) -> void {
    const std::vector<Vertex>& kids = u < 0 ? roots : children[u];
    VertexSet selected;
    for (Vertex w : kids)
      if (set_contains(lhat, w)) set_insert(selected, w);

    VertexSet closed_reach = u < 0 ? VertexSet{} : sr[u];
    if (u >= 0) set_insert(closed_reach, u);
    for (const VertexSet& x : detail::le2_subsets(closed_reach)) {
      std::vector<Vertex> candidates;
      for (Vertex w : kids)
        if (set_subset(x, sr[w])) candidates.push_back(w);
      std::sort(candidates.begin(), candidates.end(), [&](Vertex a, Vertex b) {
        return heights[a] != heights[b] ? heights[a] > heights[b] : a < b;
      });
      int budget = q;
      for (Vertex w : candidates) {
        if (budget == 0) break;
        set_insert(selected, w);
        --budget;
      }
    }
    for (Vertex w : selected) self(self, w);
    if (u >= 0) set_insert(core, u);
  };
  mark(mark, -1);
  return core;
}

// For each tree of r, its outside neighborhood must sit on one root-to-leaf
// path of fk; that makes the tree attachable below the deepest such vertex.
inline bool is_attachable(const Graph& h, const Forest& fk, const Forest& r) {
  auto fk_depth = fk.depths();
  auto desc = r.descendant_sets();
  for (Vertex s = 0; s < r.n(); ++s) {
    if (!r.in_domain(s) || !r.is_root(s)) continue;
    VertexSet nbhd;
    for (Vertex v : desc[s])
      for (Vertex w : h.neighbors(v))
        if (!set_contains(desc[s], w)) set_insert(nbhd, w);
    Vertex deepest = -1;
    for (Vertex x : nbhd) {
      if (!fk.in_domain(x)) return false;
      if (deepest == -1 || fk_depth[x] > fk_depth[deepest]) deepest = x;
    }
    for (Vertex x : nbhd)
      if (x != deepest && !fk.is_ancestor(x, deepest)) return false;
  }
  return true;
}

// Hang every tree of r below the deepest vertex of its outside neighborhood
// in fk (as a new root when that neighborhood is empty).
inline Forest extend_forest(const Graph& h, const Forest& fk, const Forest& r) {
  if (!is_attachable(h, fk, r))
    throw std::invalid_argument("extend_forest: not attachable");
  Forest out(h.n(), Forest::kAbsent);
  for (Vertex v = 0; v < h.n(); ++v) {
    if (fk.in_domain(v)) out.set_parent(v, fk.parent(v));
    if (r.in_domain(v) && !r.is_root(v)) out.set_parent(v, r.parent(v));
  }
  auto fk_depth = fk.depths();
  auto desc = r.descendant_sets();
  for (Vertex s = 0; s < r.n(); ++s) {
    if (!r.in_domain(s) || !r.is_root(s)) continue;
    Vertex deepest = -1;
    for (Vertex v : desc[s])
      for (Vertex w : h.neighbors(v))
        if (!set_contains(desc[s], w) &&
            (deepest == -1 || fk_depth[w] > fk_depth[deepest]))
          deepest = w;
    out.set_parent(s, deepest == -1 ? Forest::kRoot : deepest);
  }
  return out;
}

// Every re-attached root keeps a sibling inside fk whose subtree is at least
// as tall, so the extension cannot grow past fk's height.
inline bool has_ssp(const Graph& h, const Forest& fk, const Forest& r) {
  if (!is_attachable(h, fk, r))
    throw std::invalid_argument("has_ssp: not attachable");
  auto fk_depth = fk.depths();
  auto fk_heights = fk.subtree_heights();
  auto fk_children = fk.children_lists();
  auto fk_roots = fk.roots();
  auto r_heights = r.subtree_heights();
  auto desc = r.descendant_sets();
  for (Vertex s = 0; s < r.n(); ++s) {
    if (!r.in_domain(s) || !r.is_root(s)) continue;
    Vertex deepest = -1;
    for (Vertex v : desc[s])
      for (Vertex w : h.neighbors(v))
        if (!set_contains(desc[s], w) &&
            (deepest == -1 || fk_depth[w] > fk_depth[deepest]))
          deepest = w;
    const std::vector<Vertex>& sibs =
        deepest == -1 ? fk_roots : fk_children[deepest];
    bool found = false;
    for (Vertex z : sibs)
      if (fk_heights[z] >= r_heights[s]) found = true;
    if (!found) return false;
  }
  return true;
}

}  // namespace dyntd
