#pragma once

// Turning a structure that merely *survives* under a downward-closed
// invariant into one that answers membership for arbitrary element sets:
// insertions the inner structure refuses are parked in a FIFO queue, and the
// queue's front element certifies non-membership until deletions make room.

#include <cstdint>
#include <list>
#include <memory>
#include <unordered_map>

#include "dyntd/graph.hpp"
#include "dyntd/kpath_scheme.hpp"
#include "dyntd/path_queries.hpp"
#include "dyntd/td_core.hpp"

namespace dyntd {

// Inner must provide: try_insert(x) -> bool (state unchanged on refusal),
// erase(x), and probe_refuses(x) -> bool on a scratch copy (debug only).
template <class Inner, class Element = uint64_t>
class PostponeWrapper {
 public:
  explicit PostponeWrapper(std::unique_ptr<Inner> inner)
      : inner_(std::move(inner)) {}

  Inner& inner() { return *inner_; }
  const Inner& inner() const { return *inner_; }

  bool contains_element(Element x) const { return locator_.count(x) != 0; }
  bool queue_empty() const { return queue_.empty(); }
  size_t queue_size() const { return queue_.size(); }

  // The maintained set belongs to the family iff nothing is parked: the
  // front of a non-empty queue is exactly an element the inner set cannot
  // absorb, and the family is downward closed.
  bool family_member() const { return queue_.empty(); }

  void insert(Element x) {
    if (locator_.count(x)) return;
    if (queue_.empty() && count_op(inner_->try_insert(x))) {
      locator_.emplace(x, queue_.end());
      return;
    }
    queue_.push_back(x);
    locator_.emplace(x, std::prev(queue_.end()));
    check_front_blocked();
  }

  void erase(Element x) {
    auto it = locator_.find(x);
    if (it == locator_.end()) return;
    if (it->second == queue_.end()) {
      count_op(true);
      inner_->erase(x);
    } else {
      queue_.erase(it->second);
    }
    locator_.erase(it);
    flush();
  }

  // Statistics for amortization checks: inner operations per wrapper call.
  uint64_t inner_ops() const { return inner_ops_; }

  // Debug validation of the blocked-front invariant via a scratch copy.
  void set_front_probing(bool on) { probe_front_ = on; }

 private:
  void flush() {
    while (!queue_.empty()) {
      Element x = queue_.front();
      if (!count_op(inner_->try_insert(x))) break;
      queue_.pop_front();
      locator_[x] = queue_.end();
    }
    check_front_blocked();
  }

  void check_front_blocked() const {
    if (!probe_front_ || queue_.empty()) return;
    if (!inner_->probe_refuses(queue_.front()))
      throw std::logic_error("postpone: queue front is not blocked");
  }

  bool count_op(bool r) {
    ++inner_ops_;
    return r;
  }

  std::unique_ptr<Inner> inner_;
  std::list<Element> queue_;
  // end() iterator marks "stored in the inner structure"
  std::unordered_map<Element, typename std::list<Element>::iterator> locator_;
  uint64_t inner_ops_ = 0;
  bool probe_front_ = false;
};

// Inner adapter: the scheme-augmented structure under the family
// "treedepth below k", with the k-path flag as the property verdict.
class KPathInner {
 public:
  KPathInner(int n, int k)
      : k_(k), td_(n, std::max(1, k - 1), KPathScheme(k)) {}

  bool try_insert(uint64_t e) {
    auto [u, v] = key_edge(e);
    return td_.insert(u, v) == InsertResult::kAccepted;
  }
  void erase(uint64_t e) {
    auto [u, v] = key_edge(e);
    td_.remove(u, v);
  }
  bool probe_refuses(uint64_t e) const {
    auto scratch = td_.clone();
    auto [u, v] = key_edge(e);
    return scratch->insert(u, v) == InsertResult::kRejected;
  }
  bool has_k_path() const { return td_.member(); }
  MugStructure<KPathScheme>& structure() { return td_; }
  const MugStructure<KPathScheme>& structure() const { return td_; }

 private:
  int k_;
  MugStructure<KPathScheme> td_;
};

// Fully dynamic detector for "contains a simple path on k vertices".
// Inserting an edge that would push the treedepth to k or beyond parks it in
// the queue; a parked edge already certifies a k-path.
class LongPathDetector {
 public:
  LongPathDetector(int n, int k)
      : n_(n), k_(k), pw_(std::make_unique<KPathInner>(n, k)) {}

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

  bool contains() const {
    if (n_ < 1) return false;
    if (k_ <= 1) return true;
    return !pw_.queue_empty() || pw_.inner().has_k_path();
  }

  uint64_t inner_ops() const { return pw_.inner_ops(); }
  void set_front_probing(bool on) { pw_.set_front_probing(on); }
  PostponeWrapper<KPathInner>& wrapper() { return pw_; }
  const PostponeWrapper<KPathInner>& wrapper() const { return pw_; }

 private:
  void check(Vertex u, Vertex v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw std::out_of_range("detector: vertex out of range");
    if (u == v) throw std::invalid_argument("detector: self-loop");
  }

  int n_;
  int k_;
  PostponeWrapper<KPathInner> pw_;
};

}  // namespace dyntd
