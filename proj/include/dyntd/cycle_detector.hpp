#pragma once

// Fully dynamic detector for "contains a simple cycle on at least k
// vertices": a maximal spanning forest locates short tree paths between
// update endpoints, a block partition with height budget k*k maintains the
// biconnected components (a biconnected graph without a long cycle has
// treedepth below k*k), and the postpone wrapper parks every insertion the
// pair refuses, so the query is simply "is anything parked".

#include <memory>

#include "dyntd/block_partition.hpp"
#include "dyntd/link_cut_forest.hpp"
#include "dyntd/postpone.hpp"

namespace dyntd {

class CycleInner {
 public:
  CycleInner(int n, int k)
      : n_(n), k_(std::max(k, 3)), forest_(n), parts_(n, k_ * k_, k_) {}

  // Insertion refusing edges that would close a cycle on >= k vertices.
  bool try_insert(uint64_t e) {
    auto [u, v] = key_edge(e);
    int p = forest_.pathlen(u, v);
    if (p == kUnreachable) {
      parts_.new_part(u, v);
      forest_.link(u, v);
      return true;
    }
    // p tree-path edges plus uv close a cycle on p+1 vertices
    if (p >= k_ - 1) return false;
    auto pi = *forest_.path(u, v);

    auto snaps = parts_.snapshot_parts(pi);
    bool merged = false;
    auto rollback = [&] {
      if (merged) parts_.restore_parts(pi, snaps);
    };
    try {
      for (size_t i = 0; i + 1 < pi.size(); ++i) {
        if (parts_.same(pi[i], pi[i + 1])) continue;
        parts_.merge(pi[i], pi[i + 1]);
        merged = true;
      }
    } catch (const TdLimitExceeded&) {
      rollback();
      return false;
    } catch (...) {
      // abnormal failures (e.g. a solver cap) must not leave the chain
      // half-merged
      rollback();
      throw;
    }
    if (parts_.pathlb(u, v, pi.front(), pi.back())) {
      rollback();
      return false;
    }
    parts_.insert(u, v, pi.front(), pi.back());
    return true;
  }

  void erase(uint64_t e) {
    auto [u, v] = key_edge(e);
    if (parts_.bridge(u, v)) {
      parts_.destroy(u, v);
      forest_.cut(u, v);
      return;
    }
    // substitute u-v path inside the biconnected component, < k vertices
    std::vector<Vertex> pi_verts;
    for (int p = 3; p <= k_ - 1; ++p) {
      auto got = parts_.pathub(p, u, v, {u, v}, {u, v});
      if (got) {
        pi_verts = *got;
        break;
      }
    }
    if (pi_verts.empty())
      throw std::logic_error("cycle detector: no substitute path for a non-bridge");
    std::vector<BlockPartition::EdgePair> pi;
    for (size_t i = 0; i + 1 < pi_verts.size(); ++i)
      pi.emplace_back(pi_verts[i], pi_verts[i + 1]);

    parts_.remove(u, v);

    if (forest_.has_edge(u, v)) {
      forest_.cut(u, v);
      for (auto [a, b] : pi)
        if (forest_.link(a, b)) break;
    }

    // split at every articulation joint along the substitute path; a
    // temporary chord to v keeps the far side biconnected for the split
    for (size_t i = 0; i + 1 < pi.size(); ++i) {
      if (!parts_.articul(pi[i], pi[i + 1])) continue;
      Vertex y = pi[i].second;
      bool added = false;
      if (y != v && !parts_.edge(y, v)) {
        parts_.insert(y, v, pi[i], pi.back());
        added = true;
      }
      parts_.split(pi[i], pi[i + 1]);
      if (added) parts_.remove(y, v);
    }
  }

  bool probe_refuses(uint64_t e) const {
    CycleInner scratch(n_, k_);
    for (auto edge : all_edges())
      if (!scratch.try_insert(edge))
        throw std::logic_error("cycle detector: replay refused a held edge");
    return !scratch.try_insert(e);
  }

  std::vector<uint64_t> all_edges() const {
    std::vector<uint64_t> out;
    for (const auto& part : parts_.all_parts())
      for (auto [a, b] : part.sub.edges) out.push_back(edge_key(a, b));
    std::sort(out.begin(), out.end());
    return out;
  }

  LinkCutForest& spanning_forest() { return forest_; }
  BlockPartition& partition() { return parts_; }
  const BlockPartition& partition() const { return parts_; }

 private:
  int n_;
  int k_;
  LinkCutForest forest_;
  BlockPartition parts_;
};

class LongCycleDetector {
 public:
  LongCycleDetector(int n, int k)
      : n_(n), pw_(std::make_unique<CycleInner>(n, k)) {}

  void insert(Vertex u, Vertex v) {
    check(u, v);
    pw_.insert(edge_key(u, v));
  }
  void remove(Vertex u, Vertex v) {
    check(u, v);
    pw_.erase(edge_key(u, v));
  }
  bool has_edge(Vertex u, Vertex v) const {
    return pw_.contains_element(edge_key(u, v));
  }

  // The inner graph never holds a long cycle, so the answer is exactly
  // "some insertion is parked".
  bool contains() const { return !pw_.queue_empty(); }

  uint64_t inner_ops() const { return pw_.inner_ops(); }
  void set_front_probing(bool on) { pw_.set_front_probing(on); }
  CycleInner& inner() { return pw_.inner(); }
  const CycleInner& inner() const { return pw_.inner(); }
  PostponeWrapper<CycleInner>& wrapper() { return pw_; }

 private:
  void check(Vertex u, Vertex v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw std::out_of_range("detector: vertex out of range");
    if (u == v) throw std::invalid_argument("detector: self-loop");
  }

  int n_;
  PostponeWrapper<CycleInner> pw_;
};

}  // namespace dyntd
