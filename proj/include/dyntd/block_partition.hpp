#pragma once

// Partition of a dynamic graph into connected unions of biconnected
// components ("parts"), one scheme-augmented treedepth structure per part.
// Vertices get one slot per part containing them, all slots live in one
// shared arena, and reach sets and bucket keys are written in global vertex
// ids, which is what lets merged and split parts inherit each other's
// buckets verbatim. A global edge dictionary maps every edge to the slot of
// its endpoint that sits deeper in its part's elimination tree.

#include <memory>

#include "dyntd/kpath_scheme.hpp"
#include "dyntd/path_queries.hpp"
#include "dyntd/td_core.hpp"

namespace dyntd {

class BlockPartition {
 public:
  using PartTd = MugStructure<KPathScheme>;
  using EdgePair = std::pair<Vertex, Vertex>;

  BlockPartition(int n, int d, int k) : n_(n), d_(d), scheme_(k) {
    // a single-edge part already eliminates at height 2
    if (d < 2) throw std::invalid_argument("partition: height budget must be >= 2");
  }

  int n() const { return n_; }
  int budget() const { return d_; }
  size_t part_count() const { return parts_.size(); }
  size_t edge_count() const { return edict_.size(); }

  // -- simple queries --------------------------------------------------------

  bool edge(Vertex u, Vertex v) const {
    check(u);
    check(v);
    return edict_.count(edge_key(u, v)) != 0;
  }

  bool bridge(Vertex u, Vertex v) const {
    return part_of_edge(u, v)->is_single_edge();
  }

  bool same(EdgePair e1, EdgePair e2) const {
    return part_of_edge(e1.first, e1.second) == part_of_edge(e2.first, e2.second);
  }

  // -- simple updates ---------------------------------------------------------

  // Add uv as a fresh single-edge part. The endpoints must lie in different
  // connected components of the whole graph.
  void new_part(Vertex u, Vertex v) {
    check(u);
    check(v);
    if (edge(u, v)) throw std::invalid_argument("new_part: edge present");
    auto part = std::make_unique<PartTd>(d_, scheme_, &arena_, &interner_);
    Subgraph sub;
    sub.vertices = {std::min(u, v), std::max(u, v)};
    sub.add_edge(u, v);
    auto solved = solve_subgraph(sub);
    std::vector<Slot> slots{arena_.alloc(sub.vertices[0]),
                            arena_.alloc(sub.vertices[1])};
    part->extend_slots(sub, solved.parent, slots);
    refresh_edict(*part, slots);
    parts_.emplace(part.get(), std::move(part));
  }

  // Remove a part consisting of the single edge uv.
  void destroy(Vertex u, Vertex v) {
    PartTd* part = part_of_edge(u, v);
    if (!part->is_single_edge())
      throw std::invalid_argument("destroy: part is not a single edge");
    part->dismantle();
    edict_.erase(edge_key(u, v));
    parts_.erase(part);
  }

  // -- structural updates ------------------------------------------------------

  // Insert the edge uv into the part holding the anchor edges ux and vy.
  // Throws TdLimitExceeded (leaving every part unchanged) if the part's
  // treedepth would exceed the budget.
  void insert(Vertex u, Vertex v, EdgePair ux, EdgePair vy) {
    if (edge(u, v)) throw std::invalid_argument("insert: edge present");
    PartTd* part = part_of_edge(ux.first, ux.second);
    if (part != part_of_edge(vy.first, vy.second))
      throw std::invalid_argument("insert: anchors in different parts");
    Slot su = retrieve(u, ux);
    Slot sv = retrieve(v, vy);
    std::vector<Slot> core;
    if (part->insert_slots(su, sv, &core) == InsertResult::kRejected)
      throw TdLimitExceeded("insert: treedepth budget exceeded");
    refresh_edict(*part, core);
  }

  // Remove the edge uv from its part; uv must not be a bridge of the graph.
  void remove(Vertex u, Vertex v) {
    Slot lower = edict_.at(edge_key(u, v));
    PartTd* part = part_of_slot(lower);
    if (part->is_single_edge())
      throw std::invalid_argument("remove: edge is a bridge part");
    Slot su = label_of(lower) == u ? lower : ancestor_slot(lower, u);
    Slot sv = label_of(lower) == v ? lower : ancestor_slot(lower, v);
    std::vector<Slot> core;
    part->remove_slots(su, sv, &core);
    edict_.erase(edge_key(u, v));
    refresh_edict(*part, core);
  }

  // Merge the parts I (holding vx) and J (holding vy, biconnected) along
  // their shared vertex into one part. Throws TdLimitExceeded, leaving both
  // parts unchanged, if the merged treedepth would exceed the budget.
  void merge(EdgePair vx, EdgePair vy) {
    Vertex v = common_vertex(vx, vy);
    PartTd* pi = part_of_edge(vx.first, vx.second);
    PartTd* pj = part_of_edge(vy.first, vy.second);
    if (pi == pj) throw std::invalid_argument("merge: same part");
    Slot vi = retrieve(v, vx);
    Slot xi = retrieve(other_endpoint(vx, v), vx);
    Slot vj = retrieve(v, vy);
    Slot yj = retrieve(other_endpoint(vy, v), vy);

    auto ki = pi->extract_core({vi, xi}, d_ + 1);
    auto kj = pj->extract_core({vj, yj}, d_ + 1);
    VertexSet labels;
    for (Slot s : ki) set_insert(labels, label_of(s));
    for (Slot s : kj) set_insert(labels, label_of(s));
    Subgraph sub = copy_subgraph(labels);
    auto solved = solve_subgraph_within(sub, d_);
    if (!solved) throw TdLimitExceeded("merge: treedepth budget exceeded");

    // all fallible steps are done; now rebuild
    pi->trim_slots(ki);
    pj->trim_slots(kj);
    for (Slot s : ki) arena_.release(s);
    for (Slot s : kj) arena_.release(s);
    pi->absorb_partial(*pj);
    std::vector<Slot> fresh;
    for (Vertex lbl : sub.vertices) fresh.push_back(arena_.alloc(lbl));
    pi->extend_slots(sub, solved->parent, fresh);
    refresh_edict(*pi, fresh);
    parts_.erase(pj);
  }

  // Split the part holding vx and vy, which has exactly the two
  // biconnected components I (with vx) and J (with vy), meeting at the cut
  // vertex v, into those two parts.
  void split(EdgePair vx, EdgePair vy) {
    Vertex v = common_vertex(vx, vy);
    PartTd* part = part_of_edge(vx.first, vx.second);
    if (part != part_of_edge(vy.first, vy.second))
      throw std::invalid_argument("split: edges in different parts");
    Slot sv = retrieve(v, vx);
    Slot sx = retrieve(other_endpoint(vx, v), vx);
    Slot sy = retrieve(other_endpoint(vy, v), vy);

    auto core = part->extract_core({sv, sx, sy}, d_ + 2);
    VertexSet labels;
    for (Slot s : core) set_insert(labels, label_of(s));
    Subgraph sub = copy_subgraph(labels);

    // sides of the cut vertex inside the core subgraph
    VertexSet side_x = component_avoiding(sub, other_endpoint(vx, v), v);
    VertexSet side_y = component_avoiding(sub, other_endpoint(vy, v), v);
    if (set_contains(side_x, other_endpoint(vy, v)))
      throw std::invalid_argument("split: no cut vertex between the anchors");
    VertexSet labels_i = side_x, labels_j = side_y;
    set_insert(labels_i, v);
    set_insert(labels_j, v);
    Subgraph sub_i = induced_subgraph(sub, labels_i);
    Subgraph sub_j = induced_subgraph(sub, labels_j);
    auto solved_i = solve_subgraph_within(sub_i, d_);
    auto solved_j = solve_subgraph_within(sub_j, d_);
    if (!solved_i || !solved_j)
      throw std::logic_error("split: side treedepth above budget");

    if (set_union(labels_i, labels_j) != sub.vertices)
      throw std::logic_error("split: core splits into more than two sides");

    part->trim_slots(core);
    for (Slot s : core) arena_.release(s);
    auto part_j = std::make_unique<PartTd>(d_, scheme_, &arena_, &interner_);
    VertexSet side_j_wo_v = set_minus(labels_j, {v});
    part->split_partial_into(
        [&](const VertexSet& x) {
          VertexSet rest = set_minus(x, {v});
          bool to_j = !rest.empty() && set_subset(rest, side_j_wo_v);
          // pending keys never mix the two sides
          assert(to_j || set_subset(rest, side_x));
          return to_j;
        },
        *part_j);

    std::vector<Slot> fresh_i, fresh_j;
    for (Vertex lbl : sub_i.vertices) fresh_i.push_back(arena_.alloc(lbl));
    for (Vertex lbl : sub_j.vertices) fresh_j.push_back(arena_.alloc(lbl));
    part->extend_slots(sub_i, solved_i->parent, fresh_i);
    part_j->extend_slots(sub_j, solved_j->parent, fresh_j);
    refresh_edict(*part, fresh_i);
    refresh_edict(*part_j, fresh_j);
    parts_.emplace(part_j.get(), std::move(part_j));
  }

  // Are x and y separated by v inside their common part?
  bool articul(EdgePair vx, EdgePair vy) const {
    Vertex v = common_vertex(vx, vy);
    PartTd* part = part_of_edge(vx.first, vx.second);
    if (part != part_of_edge(vy.first, vy.second))
      throw std::invalid_argument("articul: edges in different parts");
    Slot sv = retrieve(v, vx);
    Slot sx = retrieve(other_endpoint(vx, v), vx);
    Slot sy = retrieve(other_endpoint(vy, v), vy);
    auto core = part->extract_core({sv, sx, sy}, 2);
    VertexSet labels;
    for (Slot s : core) set_insert(labels, label_of(s));
    Subgraph sub = copy_subgraph(labels);
    VertexSet side_x = component_avoiding(sub, other_endpoint(vx, v), v);
    return !set_contains(side_x, other_endpoint(vy, v));
  }

  // -- path queries -------------------------------------------------------------

  // Is there a simple u-v path on at least k vertices inside the part
  // holding the anchor edges?
  bool pathlb(Vertex u, Vertex v, EdgePair ux, EdgePair vy) const {
    PartTd* part = part_of_edge(ux.first, ux.second);
    if (part != part_of_edge(vy.first, vy.second))
      throw std::invalid_argument("pathlb: anchors in different parts");
    return path_geq_k(*part, retrieve(u, ux), retrieve(v, vy)).has_value();
  }

  // A simple u-v path on exactly `want` vertices inside the part, as global
  // vertex ids.
  std::optional<std::vector<Vertex>> pathub(int want, Vertex u, Vertex v,
                                            EdgePair ux, EdgePair vy) const {
    PartTd* part = part_of_edge(ux.first, ux.second);
    if (part != part_of_edge(vy.first, vy.second))
      throw std::invalid_argument("pathub: anchors in different parts");
    return path_exact(*part, retrieve(u, ux), retrieve(v, vy), want);
  }

  // -- snapshots (caller-driven transactions) -----------------------------------

  struct PartState {
    Subgraph sub;
    std::vector<int> parent;
  };

  PartState snapshot_of(PartTd* part) const {
    PartState out;
    auto slots = part->collect_slots();
    std::sort(slots.begin(), slots.end(),
              [&](Slot a, Slot b) { return label_of(a) < label_of(b); });
    std::unordered_map<Vertex, int> index;
    for (Slot s : slots) {
      index[label_of(s)] = static_cast<int>(out.sub.vertices.size());
      out.sub.vertices.push_back(label_of(s));
    }
    for (Slot s : slots)
      for (Vertex g : part->up_of(s)) out.sub.add_edge(label_of(s), g);
    out.parent.resize(slots.size());
    for (size_t i = 0; i < slots.size(); ++i) {
      Slot p = parent_slot(slots[i]);
      out.parent[i] = p == kNoSlot ? -1 : index.at(label_of(p));
    }
    return out;
  }

  // Distinct parts currently holding the listed edges, snapshotted.
  std::vector<PartState> snapshot_parts(const std::vector<EdgePair>& edges) const {
    std::vector<PartTd*> seen;
    std::vector<PartState> out;
    for (auto [u, v] : edges) {
      PartTd* p = part_of_edge(u, v);
      if (std::find(seen.begin(), seen.end(), p) != seen.end()) continue;
      seen.push_back(p);
      out.push_back(snapshot_of(p));
    }
    return out;
  }

  // Dismantle the current owners of the listed edges and rebuild the
  // snapshotted parts in their place.
  void restore_parts(const std::vector<EdgePair>& edges,
                     const std::vector<PartState>& snaps) {
    std::vector<PartTd*> owners;
    for (auto [u, v] : edges) {
      PartTd* p = part_of_edge(u, v);
      if (std::find(owners.begin(), owners.end(), p) == owners.end())
        owners.push_back(p);
    }
    for (PartTd* p : owners) {
      p->dismantle();
      parts_.erase(p);
    }
    for (const PartState& snap : snaps) rebuild_part(snap);
  }

  void rebuild_part(const PartState& snap) {
    auto part = std::make_unique<PartTd>(d_, scheme_, &arena_, &interner_);
    std::vector<Slot> slots;
    for (Vertex lbl : snap.sub.vertices) slots.push_back(arena_.alloc(lbl));
    part->extend_slots(snap.sub, snap.parent, slots);
    refresh_edict(*part, slots);
    parts_.emplace(part.get(), std::move(part));
  }

  // -- inspection (tests, harnesses) ---------------------------------------------

  // Rebuild every part's records from its own exported state and compare:
  // reach sets, up-neighbor sets, subtree heights, and the dictionary's
  // deeper-endpoint entries.
  void validate_parts() const {
    for (auto& [ptr, part] : parts_) {
      PartState ps = snapshot_of(part.get());
      int m = static_cast<int>(ps.sub.vertices.size());
      Graph g(m);
      std::unordered_map<Vertex, int> index;
      for (int i = 0; i < m; ++i) index[ps.sub.vertices[i]] = i;
      for (auto [a, b] : ps.sub.edges) g.add_edge(index.at(a), index.at(b));
      Forest f(m);
      for (int i = 0; i < m; ++i)
        f.set_parent(i, ps.parent[i] == -1 ? Forest::kRoot : ps.parent[i]);
      if (!validate_elim_forest(g, f))
        throw std::logic_error("partition: part forest is invalid");
      auto sr = strong_reach_sets(g, f);
      auto nu = up_neighbor_sets(g, f);
      auto hs = f.subtree_heights();
      auto slots = part->collect_slots();
      for (Slot s : slots) {
        int i = index.at(label_of(s));
        VertexSet reach, up;
        for (int j : sr[i]) reach.push_back(ps.sub.vertices[j]);
        for (int j : nu[i]) up.push_back(ps.sub.vertices[j]);
        if (part->reach_of(s) != reach)
          throw std::logic_error("partition: reach set mismatch");
        if (part->up_of(s) != up)
          throw std::logic_error("partition: up set mismatch");
        if (part->height_of(s) != hs[i])
          throw std::logic_error("partition: height mismatch");
        for (Vertex gl : up)
          if (edict_.at(edge_key(label_of(s), gl)) != s)
            throw std::logic_error("partition: dictionary entry mismatch");
      }
    }
  }

  std::vector<PartState> all_parts() const {
    std::vector<PartState> out;
    for (auto& [ptr, part] : parts_) out.push_back(snapshot_of(part.get()));
    std::sort(out.begin(), out.end(), [](const PartState& a, const PartState& b) {
      return a.sub.vertices < b.sub.vertices;
    });
    return out;
  }

  PartTd* part_of_edge(Vertex u, Vertex v) const {
    auto it = edict_.find(edge_key(u, v));
    if (it == edict_.end()) throw std::invalid_argument("edge not present");
    return part_of_slot(it->second);
  }

  Slot lower_slot(Vertex u, Vertex v) const { return edict_.at(edge_key(u, v)); }

  // Local copy of u inside the part holding the edge ux.
  Slot retrieve(Vertex u, EdgePair ux) const {
    Slot s = edict_.at(edge_key(ux.first, ux.second));
    return label_of(s) == u ? s : ancestor_slot(s, u);
  }

 private:
  void check(Vertex u) const {
    if (u < 0 || u >= n_) throw std::out_of_range("partition: vertex out of range");
  }

  Vertex label_of(Slot s) const { return arena_[s].label; }
  Slot parent_slot(Slot s) const { return arena_[s].bucket->owner; }

  Slot ancestor_slot(Slot s, Vertex lbl) const {
    while (s != kNoSlot && label_of(s) != lbl) s = parent_slot(s);
    if (s == kNoSlot) throw std::logic_error("partition: label not on root path");
    return s;
  }

  PartTd* part_of_slot(Slot s) const {
    while (parent_slot(s) != kNoSlot) s = parent_slot(s);
    const void* home = arena_[s].bucket->home;
    auto it = parts_.find(home);
    if (it == parts_.end()) throw std::logic_error("partition: unregistered part");
    return it->second.get();
  }

  static Vertex common_vertex(EdgePair a, EdgePair b) {
    if (a.first == b.first || a.first == b.second) return a.first;
    if (a.second == b.first || a.second == b.second) return a.second;
    throw std::invalid_argument("edges share no vertex");
  }

  static Vertex other_endpoint(EdgePair e, Vertex v) {
    return e.first == v ? e.second : e.first;
  }

  // G[labels] materialized through the edge dictionary.
  Subgraph copy_subgraph(const VertexSet& labels) const {
    Subgraph sub;
    sub.vertices = labels;
    for (size_t i = 0; i < labels.size(); ++i)
      for (size_t j = i + 1; j < labels.size(); ++j)
        if (edict_.count(edge_key(labels[i], labels[j])))
          sub.add_edge(labels[i], labels[j]);
    return sub;
  }

  static Subgraph induced_subgraph(const Subgraph& sub, const VertexSet& keep) {
    Subgraph out;
    out.vertices = keep;
    for (auto [a, b] : sub.edges)
      if (set_contains(keep, a) && set_contains(keep, b)) out.add_edge(a, b);
    return out;
  }

  // Vertices reachable from `start` in sub minus `avoid`.
  static VertexSet component_avoiding(const Subgraph& sub, Vertex start,
                                      Vertex avoid) {
    std::unordered_map<Vertex, std::vector<Vertex>> adj;
    for (auto [a, b] : sub.edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    VertexSet comp{start};
    std::vector<Vertex> stack{start};
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex w : adj[x]) {
        if (w == avoid || set_contains(comp, w)) continue;
        set_insert(comp, w);
        stack.push_back(w);
      }
    }
    return comp;
  }

  // Point the dictionary entries of every edge incident to the given slots
  // at the deeper endpoint's slot. The up sets name exactly those edges.
  void refresh_edict(const PartTd& part, const std::vector<Slot>& slots) {
    for (Slot s : slots)
      for (Vertex g : part.up_of(s))
        edict_[edge_key(part.label(s), g)] = s;
  }

  int n_;
  int d_;
  KPathScheme scheme_;
  SlotArena arena_;
  ConfigInterner interner_;
  std::unordered_map<uint64_t, Slot> edict_;
  std::unordered_map<const void*, std::unique_ptr<PartTd>> parts_;
};

}  // namespace dyntd
