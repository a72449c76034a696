#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "dyntd/common.hpp"

namespace dyntd {

// Endpoint markers for the two path ends tracked by the k-path scheme.
// They never collide with real vertex ids (which are >= 0).
constexpr Vertex kEndA = -2;  // "s"
constexpr Vertex kEndB = -1;  // "t"

constexpr int kIdxInf = 1 << 29;  // index value standing for "at least k edges"

// A configuration over a boundary X: a linear forest on X ∪ {s,t} in which
// s and t have degree at most one, plus an edge-count index in
// {0, ..., k-1, ∞}. An edgeless forest forces index 0.
struct Config {
  VertexSet boundary;                              // sorted vertex ids
  std::vector<std::pair<Vertex, Vertex>> edges;    // sorted pairs, first < second
  int index = 0;

  void canonicalize() {
    for (auto& e : edges)
      if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges.begin(), edges.end());
  }

  bool operator==(const Config& o) const {
    return index == o.index && boundary == o.boundary && edges == o.edges;
  }
  bool operator<(const Config& o) const {
    return std::tie(boundary, edges, index) < std::tie(o.boundary, o.edges, o.index);
  }
};

struct ConfigHash {
  size_t operator()(const Config& c) const {
    uint64_t h = hash_mix(0x5bd1e995, c.index);
    for (Vertex v : c.boundary) h = hash_mix(h, static_cast<uint64_t>(v) + 7);
    for (auto& e : c.edges) {
      h = hash_mix(h, static_cast<uint64_t>(static_cast<int64_t>(e.first)) + 3);
      h = hash_mix(h, static_cast<uint64_t>(static_cast<int64_t>(e.second)) + 11);
    }
    return static_cast<size_t>(h);
  }
};

// A set of configurations over a common boundary.
struct ConfigSet {
  VertexSet boundary;
  std::vector<Config> items;  // sorted, unique

  void insert(Config c) {
    auto it = std::lower_bound(items.begin(), items.end(), c);
    if (it == items.end() || !(*it == c)) items.insert(it, std::move(c));
  }
  bool contains(const Config& c) const {
    return std::binary_search(items.begin(), items.end(), c);
  }
  size_t size() const { return items.size(); }
  bool operator==(const ConfigSet& o) const {
    return boundary == o.boundary && items == o.items;
  }
};

}  // namespace dyntd
