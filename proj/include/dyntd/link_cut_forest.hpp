#pragma once

// Dynamic unrooted forest with link, cut, path length, and short-path
// retrieval, implemented as link-cut trees over splay auxiliaries. The splay
// subtree size gives the vertex count of the exposed path, and an in-order
// walk of the exposed splay tree reports the path itself in time
// proportional to its length (plus the usual logarithmic splay work).

#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dyntd/common.hpp"

namespace dyntd {

constexpr int kUnreachable = std::numeric_limits<int>::max();

class LinkCutForest {
 public:
  explicit LinkCutForest(int n) : nodes_(n + 1) {
    nodes_[0].size = 0;  // null sentinel
  }

  int n() const { return static_cast<int>(nodes_.size()) - 1; }

  // Add the edge uv unless u and v are already connected; reports whether
  // the edge was added.
  bool link(Vertex u, Vertex v) {
    int a = id(u), b = id(v);
    if (connected_internal(a, b)) return false;
    make_root(a);
    nodes_[a].parent = b;
    return true;
  }

  // Remove the forest edge uv.
  void cut(Vertex u, Vertex v) {
    int a = id(u), b = id(v);
    make_root(a);
    access(b);
    splay(b);
    // with a as root, the edge exists iff a is b's immediate splay
    // predecessor with nothing between them
    if (nodes_[b].child[0] != a || nodes_[a].child[1] != 0)
      throw std::invalid_argument("cut: edge not in the forest");
    nodes_[b].child[0] = 0;
    nodes_[a].parent = 0;
    pull(b);
  }

  bool connected(Vertex u, Vertex v) {
    return connected_internal(id(u), id(v));
  }

  bool has_edge(Vertex u, Vertex v) { return pathlen(u, v) == 1; }

  // Edge count of the unique u-v path, or kUnreachable.
  int pathlen(Vertex u, Vertex v) {
    int a = id(u), b = id(v);
    if (a == b) return 0;
    if (!connected_internal(a, b)) return kUnreachable;
    make_root(a);
    access(b);
    splay(b);
    return nodes_[b].size - 1;
  }

  // The u-v path as an ordered list of edges, or nullopt.
  std::optional<std::vector<std::pair<Vertex, Vertex>>> path(Vertex u, Vertex v) {
    int a = id(u), b = id(v);
    if (!connected_internal(a, b)) return std::nullopt;
    std::vector<std::pair<Vertex, Vertex>> out;
    if (a == b) return out;
    make_root(a);
    access(b);
    splay(b);
    std::vector<Vertex> verts;
    collect(b, &verts);
    for (size_t i = 0; i + 1 < verts.size(); ++i)
      out.emplace_back(verts[i], verts[i + 1]);
    return out;
  }

 private:
  struct Node {
    int child[2] = {0, 0};
    int parent = 0;
    int size = 1;
    bool flip = false;
  };

  static int id(Vertex v) { return v + 1; }

  bool is_splay_root(int x) const {
    int p = nodes_[x].parent;
    return p == 0 || (nodes_[p].child[0] != x && nodes_[p].child[1] != x);
  }

  void pull(int x) {
    nodes_[x].size =
        1 + nodes_[nodes_[x].child[0]].size + nodes_[nodes_[x].child[1]].size;
  }

  void push(int x) {
    if (!nodes_[x].flip) return;
    std::swap(nodes_[x].child[0], nodes_[x].child[1]);
    for (int c : nodes_[x].child)
      if (c) nodes_[c].flip = !nodes_[c].flip;
    nodes_[x].flip = false;
  }

  void rotate(int x) {
    int p = nodes_[x].parent;
    int g = nodes_[p].parent;
    int dir = nodes_[p].child[1] == x;
    int mid = nodes_[x].child[!dir];
    if (!is_splay_root(p)) nodes_[g].child[nodes_[g].child[1] == p] = x;
    nodes_[x].parent = g;
    nodes_[p].child[dir] = mid;
    if (mid) nodes_[mid].parent = p;
    nodes_[x].child[!dir] = p;
    nodes_[p].parent = x;
    pull(p);
    pull(x);
  }

  void splay(int x) {
    std::vector<int> stack{x};
    for (int y = x; !is_splay_root(y); y = nodes_[y].parent)
      stack.push_back(nodes_[y].parent);
    while (!stack.empty()) {
      push(stack.back());
      stack.pop_back();
    }
    while (!is_splay_root(x)) {
      int p = nodes_[x].parent;
      if (!is_splay_root(p)) {
        int g = nodes_[p].parent;
        if ((nodes_[g].child[1] == p) == (nodes_[p].child[1] == x))
          rotate(p);
        else
          rotate(x);
      }
      rotate(x);
    }
  }

  void access(int x) {
    int last = 0;
    for (int y = x; y; y = nodes_[y].parent) {
      splay(y);
      nodes_[y].child[1] = last;
      pull(y);
      last = y;
    }
    splay(x);
  }

  void make_root(int x) {
    access(x);
    nodes_[x].flip = !nodes_[x].flip;
    push(x);
  }

  int find_root(int x) {
    access(x);
    while (true) {
      push(x);
      if (!nodes_[x].child[0]) break;
      x = nodes_[x].child[0];
    }
    splay(x);
    return x;
  }

  bool connected_internal(int a, int b) {
    if (a == b) return true;
    return find_root(a) == find_root(b);
  }

  void collect(int x, std::vector<Vertex>* out) {
    if (!x) return;
    push(x);
    collect(nodes_[x].child[0], out);
    out->push_back(x - 1);
    collect(nodes_[x].child[1], out);
  }

  std::vector<Node> nodes_;
};

}  // namespace dyntd
