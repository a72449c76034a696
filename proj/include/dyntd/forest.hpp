#pragma once

#include <stdexcept>
#include <vector>

#include "dyntd/graph.hpp"

namespace dyntd {

// Rooted forest on a subset of [0, n), stored as a parent vector.
// Vertices outside the domain carry kAbsent.
class Forest {
 public:
  static constexpr int kRoot = -1;
  static constexpr int kAbsent = -2;

  Forest() = default;
  explicit Forest(int n, int fill = kRoot) : parent_(n, fill) {}

  int n() const { return static_cast<int>(parent_.size()); }
  int parent(Vertex v) const { return parent_[v]; }
  void set_parent(Vertex v, int p) { parent_[v] = p; }
  bool in_domain(Vertex v) const { return parent_[v] != kAbsent; }
  bool is_root(Vertex v) const { return parent_[v] == kRoot; }

  VertexSet domain() const {
    VertexSet d;
    for (Vertex v = 0; v < n(); ++v)
      if (in_domain(v)) d.push_back(v);
    return d;
  }

  VertexSet roots() const {
    VertexSet r;
    for (Vertex v = 0; v < n(); ++v)
      if (is_root(v)) r.push_back(v);
    return r;
  }

  // Ancestors of v including v itself, bottom-up order.
  std::vector<Vertex> ancestors(Vertex v) const {
    std::vector<Vertex> out;
    for (int x = v; x != kRoot; x = parent_[x]) {
      if (x == kAbsent || out.size() > parent_.size())
        throw std::logic_error("forest: broken parent chain");
      out.push_back(x);
    }
    return out;
  }

  bool is_ancestor(Vertex a, Vertex v) const {
    for (int x = v; x != kRoot; x = parent_[x]) {
      if (x == a) return true;
    }
    return false;
  }

  // depth[v] = number of ancestors of v including itself; 0 outside domain.
  std::vector<int> depths() const {
    std::vector<int> d(n(), 0);
    for (Vertex v = 0; v < n(); ++v) {
      if (!in_domain(v) || d[v] != 0) continue;
      std::vector<Vertex> chain;
      int x = v;
      while (x != kRoot && d[x] == 0) {
        chain.push_back(x);
        x = parent_[x];
      }
      int base = (x == kRoot) ? 0 : d[x];
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) d[*it] = ++base;
    }
    return d;
  }

  std::vector<std::vector<Vertex>> children_lists() const {
    std::vector<std::vector<Vertex>> ch(n());
    for (Vertex v = 0; v < n(); ++v)
      if (in_domain(v) && !is_root(v)) ch[parent_[v]].push_back(v);
    return ch;
  }

  // subtree_height[v] = height of the subtree rooted at v (1 for a leaf).
  std::vector<int> subtree_heights() const {
    std::vector<int> h(n(), 0);
    auto order = topo_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) h[*it] = 1;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      Vertex v = *it;
      if (!is_root(v)) h[parent_[v]] = std::max(h[parent_[v]], h[v] + 1);
    }
    return h;
  }

  int height() const {
    int best = 0;
    auto d = depths();
    for (Vertex v = 0; v < n(); ++v) best = std::max(best, d[v]);
    return best;
  }

  // Domain vertices ordered so that parents precede children.
  std::vector<Vertex> topo_order() const {
    std::vector<Vertex> order;
    auto d = depths();
    order.reserve(n());
    for (Vertex v = 0; v < n(); ++v)
      if (in_domain(v)) order.push_back(v);
    std::sort(order.begin(), order.end(),
              [&](Vertex a, Vertex b) { return d[a] != d[b] ? d[a] < d[b] : a < b; });
    return order;
  }

  // Descendant set of every vertex, as sorted lists.
  std::vector<VertexSet> descendant_sets() const {
    std::vector<VertexSet> desc(n());
    auto order = topo_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) desc[*it].push_back(*it);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      Vertex v = *it;
      if (!is_root(v)) {
        VertexSet& p = desc[parent_[v]];
        p = set_union(p, desc[v]);
      }
    }
    return desc;
  }

  bool operator==(const Forest& o) const { return parent_ == o.parent_; }

 private:
  std::vector<int> parent_;
};

// True iff the parent relation is acyclic and every edge of g joins a vertex
// with one of its ancestors ("straight" pairs). Only edges inside the
// forest's domain are considered; for a full-domain forest this is the
// elimination-forest property for g itself.
inline bool validate_elim_forest(const Graph& g, const Forest& f) {
  if (f.n() != g.n()) return false;
  // acyclicity: every parent chain must terminate
  std::vector<int> state(f.n(), 0);
  for (Vertex v = 0; v < f.n(); ++v) {
    if (!f.in_domain(v)) continue;
    int x = v;
    std::vector<Vertex> trail;
    while (x != Forest::kRoot && state[x] == 0) {
      state[x] = 1;
      trail.push_back(x);
      x = f.parent(x);
      if (x == Forest::kAbsent) return false;
      if (x != Forest::kRoot && state[x] == 1) return false;  // cycle
    }
    for (Vertex t : trail) state[t] = 2;
  }
  auto depth = f.depths();
  for (auto [u, v] : g.edges()) {
    if (!f.in_domain(u) || !f.in_domain(v)) continue;
    Vertex lo = depth[u] >= depth[v] ? u : v;
    Vertex hi = lo == u ? v : u;
    int x = lo;
    while (x != Forest::kRoot && depth[x] > depth[hi]) x = f.parent(x);
    if (x != hi) return false;
  }
  return true;
}

// F restricted to A: the ancestor relation is inherited, i.e. the parent of
// u in the result is its nearest strict ancestor that lies in A.
inline Forest restrict_forest(const Forest& f, const VertexSet& a) {
  Forest out(f.n(), Forest::kAbsent);
  for (Vertex v : a) {
    if (!f.in_domain(v)) throw std::invalid_argument("restrict: vertex outside domain");
    int x = f.parent(v);
    while (x != Forest::kRoot && !set_contains(a, x)) x = f.parent(x);
    out.set_parent(v, x == Forest::kRoot ? Forest::kRoot : x);
  }
  return out;
}

// Strong reachability sets: strong_reach[u] = N_g(desc(u)), a set of strict
// ancestors of u whenever f is an elimination forest of g. Computed for the
// forest's whole domain.
inline std::vector<VertexSet> strong_reach_sets(const Graph& g, const Forest& f) {
  std::vector<VertexSet> sr(g.n());
  auto order = f.topo_order();
  auto depth = f.depths();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Vertex v = *it;
    VertexSet s;
    for (Vertex w : g.neighbors(v))
      if (f.in_domain(w) && depth[w] < depth[v] && f.is_ancestor(w, v))
        set_insert(s, w);
    sr[v] = set_union(sr[v], s);
    if (!f.is_root(v)) {
      Vertex p = f.parent(v);
      VertexSet up = sr[v];
      set_erase(up, p);
      sr[p] = set_union(sr[p], up);
    }
  }
  return sr;
}

// up_neighbors[u] = N_g(u) ∩ strong_reach[u] (neighbors among strict ancestors).
inline std::vector<VertexSet> up_neighbor_sets(const Graph& g, const Forest& f) {
  std::vector<VertexSet> nu(g.n());
  auto depth = f.depths();
  for (Vertex v = 0; v < g.n(); ++v) {
    if (!f.in_domain(v)) continue;
    for (Vertex w : g.neighbors(v))
      if (f.in_domain(w) && depth[w] < depth[v] && f.is_ancestor(w, v))
        set_insert(nu[v], w);
  }
  return nu;
}

}  // namespace dyntd
