#pragma once

// Exact static treedepth solver for small graphs, producing recursively
// optimal elimination forests: every subtree spans a connected induced
// subgraph and decomposes it at optimum height.
//
// The recursion memoizes lower/upper treedepth bounds per connected vertex
// subset and works against a cutoff, so callers that only need "is the
// treedepth within this budget, and if so give me an optimal forest" never
// pay for anything deeper.

#include <bit>
#include <cstdint>
#include <unordered_map>

#include "dyntd/forest.hpp"
#include "dyntd/graph.hpp"
#include "dyntd/oracle.hpp"

namespace dyntd {

constexpr int kSolverDefaultVertexCap = 64;
constexpr size_t kSolverMemoCap = size_t{1} << 24;

class StaticTdSolver {
 public:
  explicit StaticTdSolver(const Graph& g, int vertex_cap = kSolverDefaultVertexCap)
      : n_(g.n()), adj_(g.n(), 0) {
    if (vertex_cap > 64) vertex_cap = 64;
    if (n_ > vertex_cap)
      throw SolverCapError("static solver: vertex cap exceeded");
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : g.neighbors(u)) adj_[u] |= 1ULL << v;
  }

  int treedepth() { return treedepth_upto(n_ + 1); }

  // min(td(G), cutoff): exact whenever the treedepth lies below the cutoff.
  int treedepth_upto(int cutoff) {
    int best = 0;
    for (uint64_t comp : components(full_mask()))
      best = std::max(best, td_conn(comp, cutoff));
    return best;
  }

  // Recursively optimal elimination forest, or absence when the treedepth
  // exceeds the budget. Per connected set, the smallest vertex whose removal
  // lowers the treedepth becomes the root of the recursively built forest.
  std::optional<Forest> solve_within(int budget) {
    if (treedepth_upto(budget + 1) > budget) return std::nullopt;
    Forest f(n_);
    for (uint64_t comp : components(full_mask())) build_tree(comp, Forest::kRoot, &f);
    return f;
  }

  Forest solve() {
    auto f = solve_within(n_);
    if (!f) throw std::logic_error("static solver: unbounded solve failed");
    return *std::move(f);
  }

 private:
  struct Bounds {
    int lb = 1;
    int ub = 1 << 20;
  };

  uint64_t full_mask() const { return n_ == 64 ? ~0ULL : (1ULL << n_) - 1; }

  std::vector<uint64_t> components(uint64_t mask) const {
    std::vector<uint64_t> out;
    while (mask) {
      uint64_t comp = 1ULL << std::countr_zero(mask);
      uint64_t frontier = comp;
      while (frontier) {
        uint64_t next = 0;
        for (uint64_t f = frontier; f;) {
          int v = std::countr_zero(f);
          f &= f - 1;
          next |= adj_[v] & mask;
        }
        frontier = next & ~comp;
        comp |= frontier;
      }
      out.push_back(comp);
      mask &= ~comp;
    }
    return out;
  }

  // High-degree vertices first: the best roots are found early, which lets
  // the min-search cut off the rest.
  std::vector<int> removal_order(uint64_t mask) const {
    std::vector<int> order;
    order.reserve(std::popcount(mask));
    for (uint64_t m = mask; m;) {
      int v = std::countr_zero(m);
      m &= m - 1;
      order.push_back(v);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      int da = std::popcount(adj_[a] & mask), db = std::popcount(adj_[b] & mask);
      return da != db ? da > db : a < b;
    });
    return order;
  }

  // Treedepth exceeds the degeneracy, so peeling minimum degrees gives a
  // cheap lower bound that refutes dense subsets without branching.
  int degeneracy_bound(uint64_t mask) const {
    int degen = 0;
    while (mask) {
      int best_v = -1, best_deg = 1 << 20;
      for (uint64_t m = mask; m;) {
        int v = std::countr_zero(m);
        m &= m - 1;
        int deg = std::popcount(adj_[v] & mask);
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

  // min(td of the connected set, cutoff); exact values are memoized, values
  // at or above the cutoff only tighten the stored lower bound.
  int td_conn(uint64_t mask, int cutoff) {
    int pc = std::popcount(mask);
    if (pc <= 1 || cutoff <= 0) return std::min(pc, cutoff);
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
    if (memo_.size() >= kSolverMemoCap)
      throw SolverCapError("static solver: memo cap exceeded");

    int best = std::min(pc, cutoff);
    for (int v : removal_order(mask)) {
      if (best <= b.lb) break;
      int inner = 0;
      for (uint64_t comp : components(mask & ~(1ULL << v))) {
        inner = std::max(inner, td_conn(comp, best - 1));
        if (inner >= best - 1) break;
      }
      best = std::min(best, 1 + inner);
    }
    if (best < cutoff)
      b.lb = b.ub = best;  // exact
    else
      b.lb = std::max(b.lb, cutoff);
    memo_[mask] = b;
    return best;
  }

  void build_tree(uint64_t mask, int parent, Forest* f) {
    int v = pick_root(mask);
    f->set_parent(v, parent);
    for (uint64_t comp : components(mask & ~(1ULL << v)))
      build_tree(comp, v, f);
  }

  // Smallest vertex whose removal lowers the treedepth of the connected set.
  int pick_root(uint64_t mask) {
    if (std::popcount(mask) == 1) return std::countr_zero(mask);
    int t = td_conn(mask, std::popcount(mask) + 1);
    for (uint64_t m = mask; m;) {
      int v = std::countr_zero(m);
      m &= m - 1;
      int inner = 0;
      for (uint64_t comp : components(mask & ~(1ULL << v))) {
        inner = std::max(inner, td_conn(comp, t));
        if (inner >= t) break;
      }
      if (inner < t) return v;
    }
    throw std::logic_error("static solver: no admissible vertex");
  }

  int n_;
  std::vector<uint64_t> adj_;
  std::unordered_map<uint64_t, Bounds> memo_;
};

inline Forest static_elim_forest(const Graph& g,
                                 int vertex_cap = kSolverDefaultVertexCap) {
  StaticTdSolver solver(g, vertex_cap);
  return solver.solve();
}

inline int exact_treedepth(const Graph& g,
                           int vertex_cap = kSolverDefaultVertexCap) {
  StaticTdSolver solver(g, vertex_cap);
  return solver.treedepth();
}

inline uint64_t to_mask(const VertexSet& s) {
  uint64_t m = 0;
  for (Vertex v : s) m |= 1ULL << v;
  return m;
}

// True iff f is an elimination forest of g in which every subtree spans a
// connected set and has optimal height. Treedepth values come from the
// brute-force oracle, kept independent of the solver above.
inline bool is_recursively_optimal(const Graph& g, const Forest& f) {
  if (!validate_elim_forest(g, f)) return false;
  oracle::TreedepthOracle td(g);
  auto desc = f.descendant_sets();
  auto heights = f.subtree_heights();
  for (Vertex v = 0; v < g.n(); ++v) {
    if (!f.in_domain(v)) continue;
    uint64_t mask = to_mask(desc[v]);
    if (!td.connected(mask)) return false;
    // F_v is an elimination tree of g[desc(v)], so td <= height; optimality
    // fails exactly when a strictly lower height is achievable.
    if (td.td_upto(mask, heights[v]) < heights[v]) return false;
  }
  return true;
}

}  // namespace dyntd
