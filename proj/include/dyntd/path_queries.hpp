#pragma once

// Endpoint-constrained path queries on top of the scheme-augmented
// structure. A query marks a small prefix of the tree guided by the
// single-edge configurations stored in the sublists (keeping a bounded
// number of interchangeable witnesses per endpoint pair and length), then
// answers exactly on the induced subgraph of the marked prefix.

#include <optional>

#include "dyntd/kpath_scheme.hpp"
#include "dyntd/td_core.hpp"

namespace dyntd {

namespace detail {

// The pair-configuration (J, j): only the edge xy over boundary X.
inline Config pair_config(const VertexSet& x_key, Vertex x, Vertex y, int j) {
  Config c;
  c.boundary = x_key;
  c.edges = {{std::min(x, y), std::max(x, y)}};
  c.index = j;
  return c;
}

inline bool exact_search(const std::vector<std::vector<int>>& adj, int cur,
                         int target, int want, std::vector<int>& path,
                         std::vector<char>& used) {
  if (cur == target) return static_cast<int>(path.size()) == want;
  if (static_cast<int>(path.size()) >= want) return false;
  for (int w : adj[cur]) {
    if (used[w]) continue;
    used[w] = 1;
    path.push_back(w);
    if (exact_search(adj, w, target, want, path, used)) return true;
    path.pop_back();
    used[w] = 0;
  }
  return false;
}

inline bool long_search(const std::vector<std::vector<int>>& adj, int cur,
                        int target, int want, std::vector<int>& path,
                        std::vector<char>& used) {
  if (cur == target) return static_cast<int>(path.size()) >= want;
  for (int w : adj[cur]) {
    if (used[w]) continue;
    used[w] = 1;
    path.push_back(w);
    if (long_search(adj, w, target, want, path, used)) return true;
    path.pop_back();
    used[w] = 0;
  }
  return false;
}

}  // namespace detail

// The marked prefix for a u-v query: per vertex, per pair of its closed
// reach set and per length class, keep up to d sublist witnesses; the
// ancestors of both endpoints are always kept.
template <class Scheme>
std::vector<Slot> path_query_prefix(const MugStructure<Scheme>& m, Slot su,
                                    Slot sv) {
  int d = m.budget();
  int k = m.scheme().k();

  std::unordered_set<Slot> anc;
  for (Slot a = su; a != kNoSlot; a = m.parent_slot(a)) anc.insert(a);
  for (Slot a = sv; a != kNoSlot; a = m.parent_slot(a)) anc.insert(a);

  std::vector<int> lengths;
  for (int j = 2; j < k; ++j) lengths.push_back(j);
  lengths.push_back(kIdxInf);

  std::vector<Slot> marked;
  std::unordered_set<Slot> in_k;
  auto mark = [&](auto&& self, Slot w) -> void {
    if (!in_k.insert(w).second) return;
    marked.push_back(w);
    std::vector<Slot> next;
    std::unordered_set<Slot> next_set;
    auto take = [&](Slot c) {
      if (next_set.insert(c).second) next.push_back(c);
    };
    const BucketIndex& kids = m.kid_buckets(w);
    for (auto& [key, b] : kids)
      for (Slot c : b->members)
        if (anc.count(c)) take(c);

    VertexSet closed = m.reach_of(w);
    set_insert(closed, m.label(w));
    for (size_t xi = 0; xi < closed.size(); ++xi) {
      for (size_t yi = xi + 1; yi < closed.size(); ++yi) {
        for (int j : lengths) {
          int quota = d;
          for (auto& [key, b] : kids) {
            if (!set_contains(key.x, closed[xi]) ||
                !set_contains(key.x, closed[yi]))
              continue;
            auto cid = m.interner().find(
                detail::pair_config(key.x, closed[xi], closed[yi], j));
            if (!cid) continue;
            auto it = b->by_config.find(*cid);
            if (it == b->by_config.end()) continue;
            for (Slot c : it->second) {
              take(c);
              if (--quota == 0) break;
            }
            if (quota == 0) break;
          }
        }
      }
    }
    for (Slot c : next) self(self, c);
  };

  Slot root = m.root_slot(su);
  mark(mark, root);
  return marked;
}

namespace detail {

struct PrefixGraph {
  std::vector<Slot> slots;
  std::unordered_map<Slot, int> index;
  std::vector<std::vector<int>> adj;
};

template <class Scheme>
PrefixGraph prefix_graph(const MugStructure<Scheme>& m,
                         const std::vector<Slot>& prefix) {
  PrefixGraph g;
  g.slots = prefix;
  for (size_t i = 0; i < prefix.size(); ++i) g.index[prefix[i]] = static_cast<int>(i);
  g.adj.resize(prefix.size());
  for (Slot s : prefix) {
    for (Vertex lbl : m.up_of(s)) {
      Slot a = m.ancestor_with_label(s, lbl);
      int i = g.index.at(s), j = g.index.at(a);
      g.adj[i].push_back(j);
      g.adj[j].push_back(i);
    }
  }
  return g;
}

}  // namespace detail

// A simple u-v path on exactly `want` vertices, as labels, or nullopt.
template <class Scheme>
std::optional<std::vector<Vertex>> path_exact(const MugStructure<Scheme>& m,
                                              Slot su, Slot sv, int want) {
  if (want < 1 || want > m.scheme().k())
    throw std::invalid_argument("path_exact: length out of range");
  if (su == sv) {
    if (want != 1) return std::nullopt;
    return std::vector<Vertex>{m.label(su)};
  }
  if (want == 1 || m.root_slot(su) != m.root_slot(sv)) return std::nullopt;

  auto prefix = path_query_prefix(m, su, sv);
  auto g = detail::prefix_graph(m, prefix);
  std::vector<int> path{g.index.at(su)};
  std::vector<char> used(g.slots.size(), 0);
  used[path[0]] = 1;
  if (!detail::exact_search(g.adj, path[0], g.index.at(sv), want, path, used))
    return std::nullopt;
  std::vector<Vertex> labels;
  for (int i : path) labels.push_back(m.label(g.slots[i]));
  return labels;
}

// Is there a simple u-v path on at least k vertices?
template <class Scheme>
std::optional<std::vector<Vertex>> path_geq_k(const MugStructure<Scheme>& m,
                                              Slot su, Slot sv) {
  int k = m.scheme().k();
  if (su == sv) {
    if (k > 1) return std::nullopt;
    return std::vector<Vertex>{m.label(su)};
  }
  if (m.root_slot(su) != m.root_slot(sv)) return std::nullopt;
  auto prefix = path_query_prefix(m, su, sv);
  auto g = detail::prefix_graph(m, prefix);
  std::vector<int> path{g.index.at(su)};
  std::vector<char> used(g.slots.size(), 0);
  used[path[0]] = 1;
  if (!detail::long_search(g.adj, path[0], g.index.at(sv), k, path, used))
    return std::nullopt;
  std::vector<Vertex> labels;
  for (int i : path) labels.push_back(m.label(g.slots[i]));
  return labels;
}

}  // namespace dyntd
