#pragma once

// Brute-force reference implementations used as test oracles. These are
// deliberately independent of the incremental structures in the rest of the
// library: they recompute everything from scratch on explicit graphs.

#include <bit>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dyntd/graph.hpp"
#include "dyntd/kpath_config.hpp"

namespace dyntd::oracle {

constexpr int kMaxMaskVertices = 64;

struct MaskGraph {
  int n = 0;
  std::vector<uint64_t> adj;

  explicit MaskGraph(const Graph& g) : n(g.n()), adj(g.n(), 0) {
    if (g.n() > kMaxMaskVertices)
      throw SolverCapError("oracle: graph too large for mask representation");
    for (Vertex u = 0; u < g.n(); ++u)
      for (Vertex v : g.neighbors(u)) adj[u] |= 1ULL << v;
  }

  uint64_t component_of(uint64_t mask, int start) const {
    uint64_t comp = 1ULL << start;
    uint64_t frontier = comp;
    while (frontier) {
      uint64_t next = 0;
      uint64_t f = frontier;
      while (f) {
        int v = std::countr_zero(f);
        f &= f - 1;
        next |= adj[v] & mask;
      }
      frontier = next & ~comp;
      comp |= frontier;
    }
    return comp;
  }

  std::vector<uint64_t> components(uint64_t mask) const {
    std::vector<uint64_t> out;
    while (mask) {
      uint64_t c = component_of(mask, std::countr_zero(mask));
      out.push_back(c);
      mask &= ~c;
    }
    return out;
  }

  bool connected(uint64_t mask) const {
    if (mask == 0) return true;
    return component_of(mask, std::countr_zero(mask)) == mask;
  }
};

// Exact treedepth with memoized lower/upper bounds per connected vertex set.
// td_upto(mask, cutoff) returns min(td(G[mask]), cutoff), so callers that
// only need to refute "td < h" pay for that refutation and nothing more.
class TreedepthOracle {
 public:
  explicit TreedepthOracle(const Graph& g) : mg_(g) {}

  int treedepth() { return td_upto(all_mask(), mg_.n + 1); }

  int treedepth(uint64_t mask) {
    return td_upto(mask, std::popcount(mask) + 1);
  }

  bool treedepth_leq(uint64_t mask, int b) { return td_upto(mask, b + 1) <= b; }

  int td_upto(uint64_t mask, int cutoff) {
    if (mask == 0 || cutoff <= 0) return 0;
    int result = 0;
    for (uint64_t comp : mg_.components(mask))
      result = std::max(result, td_conn(comp, cutoff));
    return result;
  }

  bool connected(uint64_t mask) const { return mg_.connected(mask); }

  uint64_t all_mask() const {
    return mg_.n == 64 ? ~0ULL : (1ULL << mg_.n) - 1;
  }

 private:
  struct Bounds {
    int lb = 1;
    int ub = 1 << 20;
  };

  // td > degeneracy: peel minimum degrees for a cheap lower bound.
  int degeneracy_bound(uint64_t mask) const {
    int degen = 0;
    while (mask) {
      int best_v = -1, best_deg = 1 << 20;
      for (uint64_t m = mask; m;) {
        int v = std::countr_zero(m);
        m &= m - 1;
        int deg = std::popcount(mg_.adj[v] & mask);
        if (deg < best_deg) {
          best_deg = deg;
          best_v = v;
        }
      }
      degen = std::max(degen, best_deg);
      mask &= ~(1ULL << best_v);
    }
    return degen + 1;
  }

  int td_conn(uint64_t mask, int cutoff) {
    int pc = std::popcount(mask);
    if (pc <= 1 || cutoff <= 0) return std::min(pc, cutoff);
    // copy out: recursive calls may rehash the memo table
    Bounds b;
    if (auto it = memo_.find(mask); it != memo_.end()) b = it->second;
    if (b.lb >= cutoff) return cutoff;
    if (b.lb == b.ub) return std::min(b.lb, cutoff);
    if (b.lb == 1) {
      b.lb = std::max(b.lb, degeneracy_bound(mask));
      if (b.lb >= cutoff) {
        memo_[mask] = b;
        return cutoff;
      }
    }

    int best = std::min(pc, cutoff);
    // High-degree vertices first: good removal candidates shrink `best` early.
    std::vector<int> order;
    order.reserve(pc);
    for (uint64_t m = mask; m;) {
      int v = std::countr_zero(m);
      m &= m - 1;
      order.push_back(v);
    }
    std::sort(order.begin(), order.end(), [&](int a, int c) {
      int da = std::popcount(mg_.adj[a] & mask), dc = std::popcount(mg_.adj[c] & mask);
      return da != dc ? da > dc : a < c;
    });
    for (int v : order) {
      if (best <= b.lb) break;
      int inner = 0;
      for (uint64_t comp : mg_.components(mask & ~(1ULL << v))) {
        inner = std::max(inner, td_conn(comp, best - 1));
        if (inner >= best - 1) break;
      }
      best = std::min(best, 1 + inner);
    }
    if (best < cutoff) {
      b.lb = b.ub = best;  // exact
    } else {
      b.lb = std::max(b.lb, cutoff);
    }
    memo_[mask] = b;
    return best;
  }

  MaskGraph mg_;
  std::unordered_map<uint64_t, Bounds> memo_;
};

inline int treedepth_bf(const Graph& g) {
  TreedepthOracle o(g);
  return o.treedepth();
}

// ---------------------------------------------------------------------------
// Paths and cycles by plain backtracking.

namespace detail {

inline bool extend_path(const Graph& g, std::vector<Vertex>& path,
                        std::vector<char>& used, int want) {
  if (static_cast<int>(path.size()) == want) return true;
  for (Vertex w : g.neighbors(path.back())) {
    if (used[w]) continue;
    used[w] = 1;
    path.push_back(w);
    if (extend_path(g, path, used, want)) return true;
    path.pop_back();
    used[w] = 0;
  }
  return false;
}

}  // namespace detail

// Does g contain a simple path on k vertices?
inline bool has_k_path_bf(const Graph& g, int k) {
  if (k <= 0) return true;
  if (k == 1) return g.n() > 0;
  std::vector<char> used(g.n(), 0);
  std::vector<Vertex> path;
  for (Vertex s = 0; s < g.n(); ++s) {
    used.assign(g.n(), 0);
    used[s] = 1;
    path.assign(1, s);
    if (detail::extend_path(g, path, used, k)) return true;
  }
  return false;
}

namespace detail {

// Longest simple cycle; paths are rooted at their minimum vertex to avoid
// revisiting each cycle n times. `stop_at` allows early exit once a cycle of
// that many vertices has been found.
inline void cycle_search(const Graph& g, Vertex root, std::vector<Vertex>& path,
                         std::vector<char>& used, int* best, int stop_at) {
  if (*best >= stop_at) return;
  Vertex cur = path.back();
  for (Vertex w : g.neighbors(cur)) {
    if (w == root && path.size() >= 3) *best = std::max(*best, (int)path.size());
    if (*best >= stop_at) return;
    if (w <= root || used[w]) continue;
    used[w] = 1;
    path.push_back(w);
    cycle_search(g, root, path, used, best, stop_at);
    path.pop_back();
    used[w] = 0;
  }
}

inline int longest_cycle_upto(const Graph& g, int stop_at) {
  int best = 0;
  std::vector<char> used(g.n(), 0);
  std::vector<Vertex> path;
  for (Vertex root = 0; root < g.n() && best < stop_at; ++root) {
    used.assign(g.n(), 0);
    used[root] = 1;
    path.assign(1, root);
    cycle_search(g, root, path, used, &best, stop_at);
  }
  return best;
}

}  // namespace detail

// Vertex count of the longest simple cycle, 0 if acyclic.
inline int longest_cycle_bf(const Graph& g) {
  return detail::longest_cycle_upto(g, g.n() + 1);
}

// Does g contain a simple cycle on at least k vertices? Early-exits as soon
// as one is found, so this is the form the stress harnesses use.
inline bool has_cycle_geq_bf(const Graph& g, int k) {
  int goal = std::max(k, 3);  // simple cycles have at least 3 vertices
  return detail::longest_cycle_upto(g, goal) >= goal;
}

namespace detail {

inline bool uv_path_search(const Graph& g, Vertex target, std::vector<Vertex>& path,
                           std::vector<char>& used, int want, bool at_least) {
  int len = static_cast<int>(path.size());
  if (path.back() == target) {
    // a simple path visits the target once, so this branch ends here
    return at_least ? len >= want : len == want;
  }
  if (!at_least && len >= want) return false;
  for (Vertex w : g.neighbors(path.back())) {
    if (used[w]) continue;
    used[w] = 1;
    path.push_back(w);
    if (uv_path_search(g, target, path, used, want, at_least)) return true;
    path.pop_back();
    used[w] = 0;
  }
  return false;
}

}  // namespace detail

// Some simple u-v path on exactly i vertices, or nullopt.
inline std::optional<std::vector<Vertex>> exact_path_bf(const Graph& g, Vertex u,
                                                        Vertex v, int i) {
  if (i < 1) return std::nullopt;
  if (i == 1) {
    if (u == v) return std::vector<Vertex>{u};
    return std::nullopt;
  }
  if (u == v) return std::nullopt;
  std::vector<char> used(g.n(), 0);
  used[u] = 1;
  std::vector<Vertex> path{u};
  if (detail::uv_path_search(g, v, path, used, i, /*at_least=*/false)) return path;
  return std::nullopt;
}

// Is there a simple u-v path on at least k vertices?
inline bool has_path_geq_bf(const Graph& g, Vertex u, Vertex v, int k) {
  if (u == v) return k <= 1;
  std::vector<char> used(g.n(), 0);
  used[u] = 1;
  std::vector<Vertex> path{u};
  return detail::uv_path_search(g, v, path, used, std::max(k, 2), /*at_least=*/true);
}

// ---------------------------------------------------------------------------
// Biconnected components (lowpoint DFS). Returns the partition of the edge
// set: one sorted list of canonical edge keys per component.

inline std::vector<std::vector<uint64_t>> biconnected_components_bf(const Graph& g) {
  int n = g.n();
  std::vector<int> depth(n, -1), low(n, 0);
  std::vector<uint64_t> stack;
  std::vector<std::vector<uint64_t>> out;

  struct Frame {
    Vertex v;
    Vertex parent;
    size_t next_nbr;
  };
  for (Vertex root = 0; root < n; ++root) {
    if (depth[root] != -1) continue;
    std::vector<Frame> st{{root, -1, 0}};
    depth[root] = 0;
    low[root] = 0;
    while (!st.empty()) {
      Frame& fr = st.back();
      const VertexSet& nbrs = g.neighbors(fr.v);
      if (fr.next_nbr < nbrs.size()) {
        Vertex w = nbrs[fr.next_nbr++];
        if (w == fr.parent) {
          fr.parent = -1;  // consume one parent edge (no multi-edges anyway)
          continue;
        }
        if (depth[w] == -1) {
          depth[w] = depth[fr.v] + 1;
          low[w] = depth[w];
          stack.push_back(edge_key(fr.v, w));
          st.push_back({w, fr.v, 0});
        } else if (depth[w] < depth[fr.v]) {
          stack.push_back(edge_key(fr.v, w));
          low[fr.v] = std::min(low[fr.v], depth[w]);
        }
      } else {
        Vertex w = fr.v;
        st.pop_back();
        if (st.empty()) continue;
        Vertex p = st.back().v;
        low[p] = std::min(low[p], low[w]);
        if (low[w] >= depth[p]) {
          std::vector<uint64_t> comp;
          uint64_t pw = edge_key(p, w);
          while (!stack.empty()) {
            uint64_t e = stack.back();
            stack.pop_back();
            comp.push_back(e);
            if (e == pw) break;
          }
          std::sort(comp.begin(), comp.end());
          out.push_back(std::move(comp));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Exact configuration sets, by exhaustive enumeration of path families.

struct BoundariedGraph {
  Graph graph;        // over [0, n); only `vertices` participate
  VertexSet vertices; // the fragment's vertex set
  VertexSet boundary; // subset of `vertices`
};

namespace detail {

struct ConfEnv {
  const Graph* g;
  const VertexSet* boundary;
  int k;
  // catalog of simple paths with no internal boundary vertices; a path is a
  // vertex sequence with front <= back; single-vertex paths included
  std::vector<std::vector<Vertex>> catalog;
  ConfigSet* out;
};

inline void emit(ConfEnv& env, const std::vector<std::pair<Vertex, Vertex>>& hedges,
                 int total_edges) {
  Config c;
  c.boundary = *env.boundary;
  c.edges = hedges;
  c.canonicalize();
  if (total_edges < env.k)
    c.index = total_edges;
  else
    c.index = kIdxInf;
  env.out->insert(std::move(c));
}

class FamilyEnum {
 public:
  FamilyEnum(ConfEnv& env) : env_(env), used_(env.g->n(), 0), end_cnt_(env.g->n(), 0) {}

  void run() {
    emit(env_, hedges_, 0);
    grow(0, 0);
  }

 private:
  // DSU over boundary ∪ {s,t} for H-acyclicity.
  int64_t find(int64_t x) {
    auto it = parent_.find(x);
    if (it == parent_.end()) {
      parent_[x] = x;
      return x;
    }
    if (it->second == x) return x;
    int64_t r = find(it->second);
    parent_[x] = r;
    return r;
  }

  bool is_boundary(Vertex v) const { return set_contains(*env_.boundary, v); }

  void grow(size_t from, int total_edges) {
    size_t limit = env_.boundary->size() + 1;
    if (hedges_.size() >= limit) return;
    for (size_t pi = from; pi < env_.catalog.size(); ++pi) {
      const auto& path = env_.catalog[pi];
      if (!compatible(path)) continue;
      attach(pi, total_edges);
    }
  }

  bool compatible(const std::vector<Vertex>& path) {
    for (size_t i = 0; i < path.size(); ++i) {
      Vertex v = path[i];
      bool endpoint = (i == 0 || i + 1 == path.size());
      if (used_[v]) return false;
      if (!endpoint) continue;
      if (is_boundary(v)) {
        if (end_cnt_[v] >= 2) return false;
      } else if (end_cnt_[v] > 0) {
        return false;  // free endpoints are exclusive
      }
    }
    return true;
  }

  void attach(size_t pi, int total_edges) {
    const auto& path = env_.catalog[pi];
    Vertex a = path.front(), b = path.back();
    int edges = static_cast<int>(path.size()) - 1;
    bool trivial = path.size() == 1;

    // enumerate H-edge assignments for this path
    std::vector<std::pair<Vertex, Vertex>> options;
    if (trivial) {
      if (is_boundary(a)) {
        if (!s_used_) options.emplace_back(a, kEndA);
        if (!t_used_) options.emplace_back(a, kEndB);
      } else if (!s_used_ && !t_used_) {
        options.emplace_back(kEndA, kEndB);
      }
    } else if (is_boundary(a) && is_boundary(b)) {
      options.emplace_back(a, b);
    } else if (is_boundary(a) || is_boundary(b)) {
      Vertex x = is_boundary(a) ? a : b;
      if (!s_used_) options.emplace_back(x, kEndA);
      if (!t_used_) options.emplace_back(x, kEndB);
    } else {
      if (!s_used_ && !t_used_) options.emplace_back(kEndA, kEndB);
    }

    for (auto he : options) {
      // reject parallel H-edges and H-cycles
      bool dup = false;
      auto canon = he;
      if (canon.first > canon.second) std::swap(canon.first, canon.second);
      for (auto& e : hedges_)
        if (e == canon) dup = true;
      if (dup) continue;
      int64_t ra = find(canon.first), rb = find(canon.second);
      if (ra == rb) continue;

      // apply
      auto saved_parent = parent_;
      parent_[ra] = rb;
      bool s_was = s_used_, t_was = t_used_;
      if (canon.first == kEndA || canon.second == kEndA) s_used_ = true;
      if (canon.first == kEndB || canon.second == kEndB) t_used_ = true;
      std::vector<Vertex> marked;
      for (size_t i = 0; i < path.size(); ++i) {
        Vertex v = path[i];
        bool endpoint = (i == 0 || i + 1 == path.size());
        if (endpoint && is_boundary(v)) {
          end_cnt_[v]++;
        } else {
          used_[v] = 1;
          marked.push_back(v);
        }
      }
      hedges_.push_back(canon);

      emit(env_, hedges_, total_edges + edges);
      grow(pi + 1, total_edges + edges);

      // undo
      hedges_.pop_back();
      for (Vertex v : marked) used_[v] = 0;
      for (size_t i = 0; i < path.size(); ++i) {
        Vertex v = path[i];
        bool endpoint = (i == 0 || i + 1 == path.size());
        if (endpoint && is_boundary(v)) end_cnt_[v]--;
      }
      s_used_ = s_was;
      t_used_ = t_was;
      parent_ = std::move(saved_parent);
    }
  }

  ConfEnv& env_;
  std::vector<char> used_;
  std::vector<int> end_cnt_;
  bool s_used_ = false, t_used_ = false;
  std::vector<std::pair<Vertex, Vertex>> hedges_;
  std::unordered_map<int64_t, int64_t> parent_;
};

}  // namespace detail

// Exact realized configuration set of a boundaried graph, by exhaustive
// enumeration of families of internally disjoint paths.
inline ConfigSet conf_bf(const BoundariedGraph& bg, int k) {
  if (bg.vertices.size() > 8)
    throw SolverCapError("conf_bf: fragment too large");
  detail::ConfEnv env;
  env.g = &bg.graph;
  env.boundary = &bg.boundary;
  env.k = k;
  ConfigSet out;
  out.boundary = bg.boundary;
  env.out = &out;

  // catalog: single-vertex paths, then longer simple paths (front <= back)
  // whose internal vertices avoid the boundary. A trivial path at a boundary
  // vertex may serve two marker edges at once, so it appears twice.
  for (Vertex v : bg.vertices) {
    env.catalog.push_back({v});
    if (set_contains(bg.boundary, v)) env.catalog.push_back({v});
  }
  std::vector<Vertex> path;
  std::vector<char> used(bg.graph.n(), 0);
  auto dfs = [&](auto&& self, Vertex cur) -> void {
    // extending would make `cur` an internal vertex; internal vertices must
    // avoid the boundary
    if (path.size() >= 2 && set_contains(bg.boundary, cur)) return;
    for (Vertex w : bg.graph.neighbors(cur)) {
      if (used[w] || !set_contains(bg.vertices, w)) continue;
      used[w] = 1;
      path.push_back(w);
      if (path.front() <= path.back()) env.catalog.push_back(path);
      self(self, w);
      path.pop_back();
      used[w] = 0;
    }
  };
  for (Vertex v : bg.vertices) {
    used.assign(bg.graph.n(), 0);
    used[v] = 1;
    path.assign(1, v);
    dfs(dfs, v);
  }

  detail::FamilyEnum fe(env);
  fe.run();
  return out;
}

}  // namespace dyntd::oracle
