#pragma once

// Dynamic structure maintaining a recursively optimal elimination forest of
// height at most d under edge updates. Vertices live in slots; each slot's
// children are partitioned into buckets keyed by (reach set, subtree height),
// and all members of a bucket share one parent cell, so whole buckets can be
// re-attached elsewhere by a single key rename. An update extracts a small
// core around the touched edge, re-solves it statically, and re-attaches the
// untouched residual forest bucket by bucket.
//
// When instantiated with a configuration scheme, each bucket additionally
// keeps per-configuration sublists of its members, and the structure
// maintains the realized configuration set of every vertex's subtree graph
// plus a membership flag for the scheme's recognized property.

#include <cassert>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "dyntd/cores.hpp"
#include "dyntd/forest.hpp"
#include "dyntd/graph.hpp"
#include "dyntd/kpath_config.hpp"
#include "dyntd/treedepth_solver.hpp"

namespace dyntd {

using Slot = int32_t;
constexpr Slot kNoSlot = -1;

enum class InsertResult { kAccepted, kRejected };

struct TdLimitExceeded : std::runtime_error {
  explicit TdLimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct NullScheme {};

// Exact elimination forest of a small labeled subgraph, as parent positions.
struct SolvedSubgraph {
  int height = 0;
  std::vector<int> parent;  // position into the subgraph's vertex list, or -1
};

// Recursively optimal forest of the subgraph if its treedepth is within
// `budget`, otherwise nothing (computed no deeper than the refusal needs).
inline std::optional<SolvedSubgraph> solve_subgraph_within(const Subgraph& sub,
                                                           int budget) {
  int m = static_cast<int>(sub.vertices.size());
  std::unordered_map<Vertex, int> index;
  for (int i = 0; i < m; ++i) index[sub.vertices[i]] = i;
  Graph dense(m);
  for (auto [a, b] : sub.edges) dense.add_edge(index.at(a), index.at(b));
  StaticTdSolver solver(dense);
  auto f = solver.solve_within(budget);
  if (!f) return std::nullopt;
  SolvedSubgraph out;
  out.height = f->height();
  out.parent.resize(m);
  for (int i = 0; i < m; ++i) out.parent[i] = f->parent(i);
  return out;
}

inline SolvedSubgraph solve_subgraph(const Subgraph& sub) {
  auto solved = solve_subgraph_within(sub, static_cast<int>(sub.vertices.size()));
  if (!solved) throw std::logic_error("solve_subgraph: unbounded solve failed");
  return *std::move(solved);
}

// Bucket key: taller buckets first, then by reach set.
struct BucketKey {
  int height = 1;
  VertexSet x;
  bool operator<(const BucketKey& o) const {
    if (height != o.height) return height > o.height;
    return x < o.x;
  }
  bool operator==(const BucketKey& o) const {
    return height == o.height && x == o.x;
  }
};

struct Bucket;
using BucketIndex = std::map<BucketKey, Bucket*>;

struct Bucket {
  Slot owner = kNoSlot;  // the shared parent cell: all members' parent
  BucketKey key;
  std::vector<Slot> members;
  std::map<int, std::vector<Slot>> by_config;  // config id -> member sublist
  const void* home = nullptr;                  // structure owning this bucket
};

struct SlotRec {
  Vertex label = -1;
  Bucket* bucket = nullptr;
  uint32_t pos = 0;
  VertexSet reach;  // labels of ancestors adjacent to the subtree
  VertexSet up;     // labels of ancestors adjacent to this vertex
  int height = 1;
  std::vector<int> confs;          // sorted config ids of the subtree graph
  std::vector<uint32_t> conf_pos;  // positions inside bucket sublists
  BucketIndex kids;                // this slot's child buckets
};

class SlotArena {
 public:
  Slot alloc(Vertex label) {
    Slot s;
    if (!free_.empty()) {
      s = free_.back();
      free_.pop_back();
      recs_[s] = SlotRec{};
    } else {
      s = static_cast<Slot>(recs_.size());
      recs_.emplace_back();
    }
    recs_[s].label = label;
    return s;
  }
  void release(Slot s) {
    recs_[s] = SlotRec{};
    free_.push_back(s);
  }
  SlotRec& operator[](Slot s) { return recs_[s]; }
  const SlotRec& operator[](Slot s) const { return recs_[s]; }
  size_t live_count() const { return recs_.size() - free_.size(); }

 private:
  std::vector<SlotRec> recs_;
  std::vector<Slot> free_;
};

class ConfigInterner {
 public:
  int intern(const Config& c) {
    auto it = ids_.find(c);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(configs_.size());
    configs_.push_back(c);
    ids_.emplace(c, id);
    return id;
  }
  std::optional<int> find(const Config& c) const {
    auto it = ids_.find(c);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }
  const Config& config(int id) const { return configs_[id]; }

 private:
  std::unordered_map<Config, int, ConfigHash> ids_;
  std::vector<Config> configs_;
};

template <class Scheme = NullScheme>
class BasicTdStructure {
 public:
  static constexpr bool kHasScheme = !std::is_same_v<Scheme, NullScheme>;

  // Standalone structure over the fixed vertex set [0, n): slot ids coincide
  // with vertex ids and the initial graph is edgeless.
  BasicTdStructure(int n, int d, Scheme scheme = Scheme{})
      : d_(d),
        scheme_(std::move(scheme)),
        owned_arena_(std::make_unique<SlotArena>()),
        owned_interner_(std::make_unique<ConfigInterner>()) {
    if (d < 1) throw std::invalid_argument("structure: height budget must be >= 1");
    if (n < 0) throw std::invalid_argument("structure: negative vertex count");
    arena_ = owned_arena_.get();
    interner_ = owned_interner_.get();
    Subgraph sub;
    std::vector<Slot> slots;
    std::vector<int> parents(n, -1);
    for (Vertex v = 0; v < n; ++v) {
      sub.vertices.push_back(v);
      Slot s = arena_->alloc(v);
      assert(s == v);
      slots.push_back(s);
    }
    partial_ = true;
    extend_slots(sub, parents, slots);
  }

  // Structure sharing an external arena and interner (one part of a
  // partition). Starts empty in partial mode; populate with extend_slots.
  BasicTdStructure(int d, Scheme scheme, SlotArena* arena, ConfigInterner* interner)
      : d_(d), scheme_(std::move(scheme)), arena_(arena), interner_(interner) {
    if (d < 1) throw std::invalid_argument("structure: height budget must be >= 1");
    partial_ = true;
  }

  ~BasicTdStructure() {
    for (auto& [key, b] : root_index_) destroy_subtree(b);
    for (Bucket* b : apps_) destroy_subtree(b);
  }

  // Buckets carry a back-pointer to their structure, so the address is
  // identity: no copies, no moves. Parts and clones live behind unique_ptr.
  BasicTdStructure(const BasicTdStructure&) = delete;
  BasicTdStructure& operator=(const BasicTdStructure&) = delete;
  BasicTdStructure(BasicTdStructure&&) = delete;
  BasicTdStructure& operator=(BasicTdStructure&&) = delete;

  int budget() const { return d_; }
  bool in_partial_mode() const { return partial_; }
  const Scheme& scheme() const { return scheme_; }
  const ConfigInterner& interner() const { return *interner_; }
  SlotArena& arena() { return *arena_; }
  const SlotArena& arena() const { return *arena_; }

  // -- slot-level accessors ------------------------------------------------

  Vertex label(Slot s) const { return (*arena_)[s].label; }
  const VertexSet& reach_of(Slot s) const { return (*arena_)[s].reach; }
  const VertexSet& up_of(Slot s) const { return (*arena_)[s].up; }
  int height_of(Slot s) const { return (*arena_)[s].height; }
  const BucketIndex& kid_buckets(Slot s) const { return (*arena_)[s].kids; }
  const BucketIndex& root_buckets() const { return root_index_; }

  Slot parent_slot(Slot s) const { return (*arena_)[s].bucket->owner; }

  Slot root_slot(Slot s) const {
    while (parent_slot(s) != kNoSlot) s = parent_slot(s);
    return s;
  }

  // Walk up from s to the ancestor carrying the given label.
  Slot ancestor_with_label(Slot s, Vertex lbl) const {
    while (s != kNoSlot && label(s) != lbl) s = parent_slot(s);
    if (s == kNoSlot) throw std::logic_error("structure: label not an ancestor");
    return s;
  }

  bool has_edge_slots(Slot su, Slot sv) const {
    return set_contains((*arena_)[su].up, label(sv)) ||
           set_contains((*arena_)[sv].up, label(su));
  }

  // Realized configuration set of the subtree graph rooted at s.
  ConfigSet config_set_of(Slot s) const {
    static_assert(kHasScheme);
    ConfigSet out;
    out.boundary = (*arena_)[s].reach;
    for (int id : (*arena_)[s].confs) out.insert(interner_->config(id));
    return out;
  }

  // -- whole-structure queries ----------------------------------------------

  int height() const {
    check_full("height");
    if (root_index_.empty()) return 0;
    return root_index_.begin()->first.height;  // keys are ordered tallest-first
  }

  bool connected(Slot su, Slot sv) const {
    check_full("connected");
    return root_slot(su) == root_slot(sv);
  }

  bool member() const {
    static_assert(kHasScheme);
    check_full("member");
    return member_;
  }

  // Standalone export: slot ids are vertex ids.
  Forest export_forest() const {
    check_full("export_forest");
    Forest f(static_cast<int>(arena_->live_count()));
    for (Slot s = 0; s < f.n(); ++s) {
      Slot p = parent_slot(s);
      f.set_parent(s, p == kNoSlot ? Forest::kRoot : p);
    }
    return f;
  }

  std::vector<Slot> collect_slots() const {
    std::vector<Slot> out;
    auto from_bucket = [&](auto&& self, const Bucket* b) -> void {
      for (Slot s : b->members) {
        out.push_back(s);
        for (auto& [key, kb] : (*arena_)[s].kids) self(self, kb);
      }
    };
    for (auto& [key, b] : root_index_) from_bucket(from_bucket, b);
    for (const Bucket* b : apps_) from_bucket(from_bucket, b);
    return out;
  }

  bool is_single_edge() const {
    check_full("is_single_edge");
    if (root_index_.size() != 1) return false;
    const Bucket* rb = root_index_.begin()->second;
    if (rb->key.height != 2 || rb->members.size() != 1) return false;
    Slot r = rb->members[0];
    const BucketIndex& kids = (*arena_)[r].kids;
    if (kids.size() != 1) return false;
    const Bucket* cb = kids.begin()->second;
    return cb->members.size() == 1 && (*arena_)[cb->members[0]].kids.empty();
  }

  const std::vector<Slot>& last_touched() const { return touched_; }

  // -- core extraction -------------------------------------------------------

  // q-core containing the ancestor closure of `seeds`, straight off the
  // buckets: per vertex and per at-most-2 subset X of its closed reach set,
  // walk its buckets tallest-first and keep the first q members whose key
  // covers X.
  std::vector<Slot> extract_core(const std::vector<Slot>& seeds, int q) const {
    check_full("extract_core");
    std::vector<Slot> closure;
    {
      std::unordered_set<Slot> seen;
      for (Slot s : seeds)
        for (Slot a = s; a != kNoSlot; a = parent_slot(a))
          if (seen.insert(a).second) closure.push_back(a);
    }

    std::vector<Slot> core;
    auto rec = [&](auto&& self, Slot u) -> void {
      const BucketIndex& kids = u == kNoSlot ? root_index_ : (*arena_)[u].kids;
      std::vector<Slot> selected;
      std::unordered_set<Slot> sel;
      auto take = [&](Slot w) {
        if (sel.insert(w).second) selected.push_back(w);
      };
      for (Slot c : closure)
        if (c != u && parent_slot(c) == u) take(c);
      VertexSet closed;
      if (u != kNoSlot) {
        closed = (*arena_)[u].reach;
        set_insert(closed, label(u));
      }
      for (const VertexSet& x : detail::le2_subsets(closed)) {
        int budget = q;
        for (auto& [key, b] : kids) {
          if (!set_subset(x, key.x)) continue;
          for (Slot w : b->members) {
            take(w);
            if (--budget == 0) break;
          }
          if (budget == 0) break;
        }
      }
      for (Slot w : selected) self(self, w);
      if (u != kNoSlot) core.push_back(u);
    };
    rec(rec, kNoSlot);
    return core;
  }

  // Materialize the subgraph induced by a prefix, from the up-neighbor sets.
  Subgraph materialize(const std::vector<Slot>& prefix) const {
    Subgraph sub;
    for (Slot s : prefix) sub.vertices.push_back(label(s));
    std::sort(sub.vertices.begin(), sub.vertices.end());
    for (Slot s : prefix)
      for (Vertex g : (*arena_)[s].up) sub.add_edge(label(s), g);
    return sub;
  }

  // -- update pipeline -------------------------------------------------------

  InsertResult insert_slots(Slot su, Slot sv, std::vector<Slot>* core_out = nullptr) {
    check_full("insert");
    if (su == sv) throw std::invalid_argument("insert: self-loop");
    if (has_edge_slots(su, sv)) throw std::invalid_argument("insert: edge present");
    touched_.clear();
    auto core = extract_core({su, sv}, d_ + 1);
    Subgraph sub = materialize(core);
    sub.add_edge(label(su), label(sv));
    auto solved = solve_subgraph_within(sub, d_);
    if (!solved) return InsertResult::kRejected;
    std::sort(core.begin(), core.end(),
              [&](Slot a, Slot b) { return label(a) < label(b); });
    trim_slots(core);
    extend_slots(sub, solved->parent, core);
    if (core_out) *core_out = std::move(core);
    return InsertResult::kAccepted;
  }

  void remove_slots(Slot su, Slot sv, std::vector<Slot>* core_out = nullptr) {
    check_full("remove");
    if (!has_edge_slots(su, sv)) throw std::invalid_argument("remove: edge absent");
    touched_.clear();
    auto core = extract_core({su, sv}, d_ + 2);
    Subgraph sub = materialize(core);
    Vertex lu = label(su), lv = label(sv);
    std::erase_if(sub.edges, [&](auto e) {
      return (e.first == lu && e.second == lv) || (e.first == lv && e.second == lu);
    });
    auto solved = solve_subgraph_within(sub, d_);
    if (!solved) throw std::logic_error("remove: treedepth grew on deletion");
    std::sort(core.begin(), core.end(),
              [&](Slot a, Slot b) { return label(a) < label(b); });
    trim_slots(core);
    extend_slots(sub, solved->parent, core);
    if (core_out) *core_out = std::move(core);
  }

  // -- standalone conveniences (slot ids are vertex ids) ---------------------

  InsertResult insert(Vertex u, Vertex v) { return insert_slots(u, v); }
  void remove(Vertex u, Vertex v) { remove_slots(u, v); }

  void trim(const VertexSet& prefix) {
    trim_slots(std::vector<Slot>(prefix.begin(), prefix.end()));
  }

  // Public extension entry: fk is a forest over exactly sub.vertices.
  void extend(const Subgraph& sub, const Forest& fk) {
    int m = static_cast<int>(sub.vertices.size());
    std::unordered_map<Vertex, int> index;
    for (int i = 0; i < m; ++i) index[sub.vertices[i]] = i;
    std::vector<int> parent(m);
    std::vector<Slot> slots(m);
    for (int i = 0; i < m; ++i) {
      Vertex v = sub.vertices[i];
      if (!fk.in_domain(v))
        throw std::invalid_argument("extend: forest domain mismatch");
      parent[i] = fk.is_root(v) ? -1 : index.at(fk.parent(v));
      slots[i] = v;
    }
    extend_slots(sub, parent, slots);
  }

  // -- trim / extend ---------------------------------------------------------

  // Remove a prefix from the buckets and hand every bucket owned by the
  // prefix (or by the virtual root) to the pending list, keyed ownerless.
  // Records of vertices outside the prefix are left untouched.
  void trim_slots(const std::vector<Slot>& prefix) {
    check_full("trim");
    std::unordered_set<Slot> in_prefix(prefix.begin(), prefix.end());
    for (Slot s : prefix) {
      Slot p = parent_slot(s);
      if (p != kNoSlot && !in_prefix.count(p))
        throw std::invalid_argument("trim: not a prefix");
    }
    for (Slot s : prefix) unbucket(s);
    for (Slot s : prefix) {
      for (auto& [key, b] : (*arena_)[s].kids) {
        if (b->members.empty()) {
          delete b;
          continue;
        }
        b->owner = kNoSlot;
        b->home = this;
        apps_.push_back(b);
      }
      (*arena_)[s].kids.clear();
    }
    for (auto& [key, b] : root_index_) {
      if (b->members.empty()) {
        delete b;
        continue;
      }
      apps_.push_back(b);
    }
    root_index_.clear();
    partial_ = true;
    assert(apps_keys_unique());
  }

  size_t apps_size() const { return apps_.size(); }
  const std::vector<Bucket*>& apps() const { return apps_; }

  // Rebuild the structure over the prefix: re-attach every pending bucket
  // below the deepest vertex of its key in the new prefix forest, then
  // recompute the prefix records bottom-up and re-bucket them.
  //
  // `sub` lists the prefix labels (sorted) with its induced edges,
  // `parent[i]` is the parent position of vertex i in the prefix forest (or
  // -1), and `slots[i]` is the slot to (re)use for vertex i.
  void extend_slots(const Subgraph& sub, const std::vector<int>& parent,
                    const std::vector<Slot>& slots) {
    if (!partial_) throw std::logic_error("extend: structure is not partial");
    int m = static_cast<int>(sub.vertices.size());
    std::unordered_map<Vertex, int> index;
    for (int i = 0; i < m; ++i) index[sub.vertices[i]] = i;

    std::vector<int> depth(m, 0);
    std::vector<std::vector<int>> adj(m);
    for (auto [a, b] : sub.edges) {
      adj[index.at(a)].push_back(index.at(b));
      adj[index.at(b)].push_back(index.at(a));
    }
    std::vector<int> order = topo_order(parent, &depth);

    // re-attach pending buckets
    for (Bucket* b : apps_) {
      b->home = this;
      if (b->key.x.empty()) {
        bool fresh = root_index_.emplace(b->key, b).second;
        if (!fresh) throw std::logic_error("extend: duplicate root bucket");
        continue;
      }
      int deepest = -1;
      for (Vertex lbl : b->key.x) {
        auto it = index.find(lbl);
        if (it == index.end())
          throw std::logic_error("extend: bucket key outside the prefix");
        if (deepest == -1 || depth[it->second] > depth[deepest]) deepest = it->second;
      }
      Slot ms = slots[deepest];
      b->owner = ms;
      bool fresh = (*arena_)[ms].kids.emplace(b->key, b).second;
      if (!fresh) throw std::logic_error("extend: duplicate child bucket");
    }
    apps_.clear();

    // bottom-up recompute of prefix records
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int i = *it;
      Slot s = slots[i];
      SlotRec& rec = (*arena_)[s];
      rec.label = sub.vertices[i];
      rec.up.clear();
      for (int j = parent[i]; j != -1; j = parent[j]) {
        Vertex anc = sub.vertices[j];
        for (int nb : adj[i])
          if (nb == j) set_insert(rec.up, anc);
      }
      rec.reach = rec.up;
      rec.height = 1;
      for (auto& [key, b] : rec.kids) {
        rec.height = std::max(rec.height, key.height + 1);
        for (Vertex lbl : key.x)
          if (lbl != rec.label) set_insert(rec.reach, lbl);
      }
      touched_.push_back(s);
      if constexpr (kHasScheme) {
        ConfigSet conf = subtree_config_set(s);
        rec.confs.clear();
        for (const Config& c : conf.items) rec.confs.push_back(interner_->intern(c));
        std::sort(rec.confs.begin(), rec.confs.end());
        rec.conf_pos.assign(rec.confs.size(), 0);
      }
      Slot ps = parent[i] == -1 ? kNoSlot : slots[parent[i]];
      Bucket* b = get_or_create_bucket(ps, BucketKey{rec.height, rec.reach});
      bucket_append(b, s);
    }
    partial_ = false;
    if constexpr (kHasScheme) recompute_member();
  }

  // Merge another partial structure into this one: pending buckets are
  // concatenated, everything else is already in place.
  void absorb_partial(BasicTdStructure& other) {
    if (!partial_ || !other.partial_)
      throw std::logic_error("absorb: both structures must be partial");
    if (arena_ != other.arena_ || interner_ != other.interner_)
      throw std::logic_error("absorb: different arenas");
    for (Bucket* b : other.apps_) {
      b->home = this;
      apps_.push_back(b);
    }
    other.apps_.clear();
    assert(apps_keys_unique());
  }

  // Move the pending buckets selected by `pred` (on the bucket key) into
  // `out`, an empty partial structure sharing this one's arena.
  template <class Pred>
  void split_partial_into(const Pred& pred, BasicTdStructure& out) {
    if (!partial_ || !out.partial_)
      throw std::logic_error("split: both structures must be partial");
    if (out.arena_ != arena_ || !out.apps_.empty() || !out.root_index_.empty())
      throw std::logic_error("split: target must be empty and share the arena");
    std::vector<Bucket*> keep;
    for (Bucket* b : apps_) {
      if (pred(b->key.x)) {
        b->home = &out;
        out.apps_.push_back(b);
      } else {
        keep.push_back(b);
      }
    }
    apps_ = std::move(keep);
  }

  // Tear the structure down eagerly: delete every bucket and hand every
  // reachable slot back to the arena. Used when a part is destroyed or
  // rolled back while the arena lives on.
  void dismantle() {
    std::vector<Slot> slots = collect_slots();
    for (auto& [key, b] : root_index_) destroy_subtree(b);
    for (Bucket* b : apps_) destroy_subtree(b);
    root_index_.clear();
    apps_.clear();
    for (Slot s : slots) arena_->release(s);
    partial_ = true;
  }

  // Structural self-check against a shadow graph (standalone structures):
  // recompute every record from the exported forest and compare.
  void check_against(const Graph& shadow) const {
    check_full("check_against");
    Forest f = export_forest();
    if (!validate_elim_forest(shadow, f))
      throw std::logic_error("check: not an elimination forest of the shadow");
    auto sr = strong_reach_sets(shadow, f);
    auto nu = up_neighbor_sets(shadow, f);
    auto hs = f.subtree_heights();
    for (Slot s = 0; s < f.n(); ++s) {
      const SlotRec& rec = (*arena_)[s];
      if (rec.reach != sr[s]) throw std::logic_error("check: reach mismatch");
      if (rec.up != nu[s]) throw std::logic_error("check: up mismatch");
      if (rec.height != hs[s]) throw std::logic_error("check: height mismatch");
      if (!(rec.bucket->key == BucketKey{rec.height, rec.reach}))
        throw std::logic_error("check: bucket key mismatch");
      if (rec.bucket->members[rec.pos] != s)
        throw std::logic_error("check: bucket position mismatch");
      if constexpr (kHasScheme) {
        for (size_t i = 0; i < rec.confs.size(); ++i) {
          auto it = rec.bucket->by_config.find(rec.confs[i]);
          if (it == rec.bucket->by_config.end() ||
              it->second[rec.conf_pos[i]] != s)
            throw std::logic_error("check: config sublist mismatch");
        }
      }
    }
  }

  // Rebuild an equivalent standalone structure from scratch (deep copy;
  // standalone structures only, where slot ids are vertex ids).
  std::unique_ptr<BasicTdStructure> clone() const {
    check_full("clone");
    Forest f = export_forest();
    int n = f.n();
    auto out = std::make_unique<BasicTdStructure>(0, d_, scheme_);
    Subgraph sub;
    std::vector<int> parent(n);
    std::vector<Slot> slots(n);
    for (Vertex v = 0; v < n; ++v) {
      sub.vertices.push_back(v);
      parent[v] = f.parent(v) == Forest::kRoot ? -1 : f.parent(v);
      slots[v] = out->arena_->alloc(v);
    }
    for (Slot s = 0; s < n; ++s)
      for (Vertex g : (*arena_)[s].up) sub.add_edge(s, g);
    out->partial_ = true;
    out->extend_slots(sub, parent, slots);
    return out;
  }

 private:
  static std::vector<int> topo_order(const std::vector<int>& parent,
                                     std::vector<int>* depth) {
    int m = static_cast<int>(parent.size());
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    for (int i = 0; i < m; ++i) {
      int d = 0;
      for (int j = i; j != -1; j = parent[j]) ++d;
      (*depth)[i] = d;
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return (*depth)[a] != (*depth)[b] ? (*depth)[a] < (*depth)[b] : a < b;
    });
    return order;
  }

  void check_full(const char* op) const {
    if (partial_)
      throw std::logic_error(std::string(op) + ": structure is in partial mode");
  }

  void destroy_subtree(Bucket* b) {
    for (Slot s : b->members) {
      for (auto& [key, kb] : (*arena_)[s].kids) destroy_subtree(kb);
      (*arena_)[s].kids.clear();
    }
    delete b;
  }

  Bucket* get_or_create_bucket(Slot owner, BucketKey key) {
    BucketIndex& index = owner == kNoSlot ? root_index_ : (*arena_)[owner].kids;
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    Bucket* b = new Bucket;
    b->owner = owner;
    b->key = std::move(key);
    b->home = this;
    index.emplace(b->key, b);
    return b;
  }

  void bucket_append(Bucket* b, Slot s) {
    SlotRec& rec = (*arena_)[s];
    rec.bucket = b;
    rec.pos = static_cast<uint32_t>(b->members.size());
    b->members.push_back(s);
    if constexpr (kHasScheme) {
      for (size_t i = 0; i < rec.confs.size(); ++i) {
        auto& lst = b->by_config[rec.confs[i]];
        rec.conf_pos[i] = static_cast<uint32_t>(lst.size());
        lst.push_back(s);
      }
    }
  }

  void unbucket(Slot s) {
    SlotRec& rec = (*arena_)[s];
    Bucket* b = rec.bucket;
    if constexpr (kHasScheme) {
      for (size_t i = 0; i < rec.confs.size(); ++i) {
        auto it = b->by_config.find(rec.confs[i]);
        auto& lst = it->second;
        Slot moved = lst.back();
        lst[rec.conf_pos[i]] = moved;
        lst.pop_back();
        if (moved != s) fix_conf_pos(moved, rec.confs[i], rec.conf_pos[i]);
        if (lst.empty()) b->by_config.erase(it);
      }
    }
    Slot moved = b->members.back();
    b->members[rec.pos] = moved;
    b->members.pop_back();
    if (moved != s) (*arena_)[moved].pos = rec.pos;
    rec.bucket = nullptr;
  }

  void fix_conf_pos(Slot s, int config_id, uint32_t new_pos) {
    SlotRec& rec = (*arena_)[s];
    auto it = std::lower_bound(rec.confs.begin(), rec.confs.end(), config_id);
    assert(it != rec.confs.end() && *it == config_id);
    rec.conf_pos[it - rec.confs.begin()] = new_pos;
  }

  bool apps_keys_unique() const {
    std::map<BucketKey, int> seen;
    for (const Bucket* b : apps_)
      if (++seen[b->key] > 1) return false;
    return true;
  }

  // Realized configuration set of the subtree graph at s, from the truncated
  // child sublists: glue one edge base case per up-neighbor and tau
  // representatives per (bucket, configuration), then forget s itself.
  ConfigSet subtree_config_set(Slot s) {
    static_assert(kHasScheme);
    const SlotRec& rec = (*arena_)[s];
    ConfigSet acc = scheme_.base_vertex(rec.label);
    for (Vertex g : rec.up) acc = scheme_.unite(acc, scheme_.base_edge(rec.label, g));
    for (Slot w : truncated_children(rec.kids))
      acc = scheme_.unite(acc, config_set_of(w));
    acc = scheme_.forget(acc, rec.label);
    assert(acc.boundary == rec.reach);
    return acc;
  }

  std::vector<Slot> truncated_children(const BucketIndex& kids) const {
    static_assert(kHasScheme);
    size_t tau = static_cast<size_t>(scheme_.tau(d_));
    std::vector<Slot> w;
    std::unordered_set<Slot> seen;
    for (auto& [key, b] : kids) {
      for (auto& [cid, lst] : b->by_config) {
        size_t take = std::min(tau, lst.size());
        for (size_t i = 0; i < take; ++i)
          if (seen.insert(lst[i]).second) w.push_back(lst[i]);
      }
    }
    return w;
  }

  void recompute_member() {
    static_assert(kHasScheme);
    ConfigSet acc = scheme_.base_empty();
    for (Slot w : truncated_children(root_index_))
      acc = scheme_.unite(acc, config_set_of(w));
    member_ = scheme_.is_final(acc);
  }

  int d_;
  Scheme scheme_;
  SlotArena* arena_ = nullptr;
  ConfigInterner* interner_ = nullptr;
  std::unique_ptr<SlotArena> owned_arena_;
  std::unique_ptr<ConfigInterner> owned_interner_;
  BucketIndex root_index_;
  std::vector<Bucket*> apps_;
  bool partial_ = false;
  bool member_ = false;
  std::vector<Slot> touched_;
};

// The plain structure maintains the forest alone; instantiating with a
// configuration scheme adds the per-configuration sublists and the property
// membership flag.
using TdStructure = BasicTdStructure<NullScheme>;

template <class Scheme>
using MugStructure = BasicTdStructure<Scheme>;

}  // namespace dyntd
