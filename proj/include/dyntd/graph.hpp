#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dyntd/common.hpp"

namespace dyntd {

// Canonical key for an unordered pair of vertices.
inline uint64_t edge_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32) |
         static_cast<uint32_t>(v);
}

inline std::pair<Vertex, Vertex> key_edge(uint64_t key) {
  return {static_cast<Vertex>(key >> 32),
          static_cast<Vertex>(key & 0xffffffffULL)};
}

// Hash dictionary from unordered vertex pairs to per-edge records.
template <class Record>
class EdgeMap {
 public:
  bool contains(Vertex u, Vertex v) const {
    return map_.count(edge_key(u, v)) != 0;
  }
  Record* find(Vertex u, Vertex v) {
    auto it = map_.find(edge_key(u, v));
    return it == map_.end() ? nullptr : &it->second;
  }
  const Record* find(Vertex u, Vertex v) const {
    auto it = map_.find(edge_key(u, v));
    return it == map_.end() ? nullptr : &it->second;
  }
  void insert(Vertex u, Vertex v, Record r) { map_[edge_key(u, v)] = std::move(r); }
  void erase(Vertex u, Vertex v) { map_.erase(edge_key(u, v)); }
  size_t size() const { return map_.size(); }
  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

 private:
  std::unordered_map<uint64_t, Record> map_;
};

// Mutable undirected simple graph over a fixed vertex set [0, n).
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(n) {}

  int n() const { return static_cast<int>(adj_.size()); }
  size_t edge_count() const { return dict_.size(); }

  void add_edge(Vertex u, Vertex v) {
    check_pair(u, v);
    if (u == v) throw std::invalid_argument("graph: self-loop");
    if (dict_.contains(u, v)) return;
    dict_.insert(u, v, 1);
    set_insert(adj_[u], v);
    set_insert(adj_[v], u);
  }

  void remove_edge(Vertex u, Vertex v) {
    check_pair(u, v);
    if (u == v || !dict_.contains(u, v)) return;
    dict_.erase(u, v);
    set_erase(adj_[u], v);
    set_erase(adj_[v], u);
  }

  bool has_edge(Vertex u, Vertex v) const {
    check_pair(u, v);
    return u != v && dict_.contains(u, v);
  }

  const VertexSet& neighbors(Vertex u) const {
    check_vertex(u);
    return adj_[u];
  }

  int degree(Vertex u) const { return static_cast<int>(neighbors(u).size()); }

  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(dict_.size());
    for (Vertex u = 0; u < n(); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  Graph induced(const VertexSet& verts) const {
    Graph g(n());
    for (Vertex u : verts)
      for (Vertex v : adj_[u])
        if (u < v && set_contains(verts, v)) g.add_edge(u, v);
    return g;
  }

 private:
  void check_vertex(Vertex u) const {
    if (u < 0 || u >= n()) throw std::out_of_range("graph: vertex out of range");
  }
  void check_pair(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
  }

  std::vector<VertexSet> adj_;
  EdgeMap<char> dict_;
};

// A small graph on an explicit vertex list, used to hand induced subgraphs
// around without carrying the full vertex universe.
struct Subgraph {
  VertexSet vertices;
  std::vector<std::pair<Vertex, Vertex>> edges;

  void add_edge(Vertex u, Vertex v) { edges.emplace_back(u, v); }
};

}  // namespace dyntd
