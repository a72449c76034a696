#pragma once

// Scripted and randomized driver sessions over the three detectors:
//   path:  "contains a simple path on k vertices"
//   cycle: "contains a simple cycle on at least k vertices"
//   td:    "has treedepth at most k"
// Replay executes a text script; stress runs random toggles cross-checked
// against the brute-force oracles; bench measures per-update times.

#include <chrono>
#include <istream>
#include <random>
#include <sstream>
#include <string>
#include <variant>

#include "dyntd/cycle_detector.hpp"
#include "dyntd/oracle.hpp"
#include "dyntd/postpone.hpp"

namespace dyntd {

enum class Mode { kPath, kCycle, kTd };

inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::kPath: return "path";
    case Mode::kCycle: return "cycle";
    default: return "td";
  }
}

inline std::optional<Mode> parse_mode(const std::string& s) {
  if (s == "path") return Mode::kPath;
  if (s == "cycle") return Mode::kCycle;
  if (s == "td") return Mode::kTd;
  return std::nullopt;
}

// Inner adapter for the family "treedepth at most k".
class TdFamilyInner {
 public:
  TdFamilyInner(int n, int k) : td_(n, k) {}
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
  TdStructure& structure() { return td_; }
  const TdStructure& structure() const { return td_; }

 private:
  TdStructure td_;
};

// One detector behind a mode switch.
class Session {
 public:
  Session(Mode mode, int n, int k) : mode_(mode), n_(n), k_(k) {
    switch (mode) {
      case Mode::kPath:
        det_.emplace<std::unique_ptr<LongPathDetector>>(
            std::make_unique<LongPathDetector>(n, k));
        break;
      case Mode::kCycle:
        det_.emplace<std::unique_ptr<LongCycleDetector>>(
            std::make_unique<LongCycleDetector>(n, k));
        break;
      case Mode::kTd:
        det_.emplace<std::unique_ptr<PostponeWrapper<TdFamilyInner>>>(
            std::make_unique<PostponeWrapper<TdFamilyInner>>(
                std::make_unique<TdFamilyInner>(n, k)));
        break;
    }
  }

  Mode mode() const { return mode_; }
  int n() const { return n_; }
  int k() const { return k_; }

  void add(Vertex u, Vertex v) {
    validate(u, v);
    if (auto* p = path()) return (*p)->insert(u, v);
    if (auto* c = cycle()) return (*c)->insert(u, v);
    (*td())->insert(edge_key(u, v));
  }

  void del(Vertex u, Vertex v) {
    validate(u, v);
    if (auto* p = path()) return (*p)->remove(u, v);
    if (auto* c = cycle()) return (*c)->remove(u, v);
    (*td())->erase(edge_key(u, v));
  }

  bool has_edge(Vertex u, Vertex v) const {
    if (auto* p = path()) return (*p)->has_edge(u, v);
    if (auto* c = cycle()) return (*c)->has_edge(u, v);
    return (*td())->contains_element(edge_key(u, v));
  }

  bool query() const {
    if (auto* p = path()) return (*p)->contains();
    if (auto* c = cycle()) return (*c)->contains();
    return (*td())->family_member();
  }

  bool oracle_answer(const Graph& shadow) const {
    switch (mode_) {
      case Mode::kPath: return oracle::has_k_path_bf(shadow, k_);
      case Mode::kCycle: return oracle::has_cycle_geq_bf(shadow, k_);
      default: return oracle::treedepth_bf(shadow) <= k_;
    }
  }

  // Extra structural checks for td mode: the inner structure must hold a
  // recursively optimal forest of the non-parked edges.
  void check_td_structure() const {
    auto* w = td();
    if (!w) return;
    Graph inner_shadow(n_);
    Forest f = (*w)->inner().structure().export_forest();
    for (Vertex v = 0; v < n_; ++v)
      for (Vertex g : (*w)->inner().structure().up_of(v)) inner_shadow.add_edge(v, g);
    if (!is_recursively_optimal(inner_shadow, f))
      throw std::logic_error("td session: inner forest is not recursively optimal");
  }

 private:
  void validate(Vertex u, Vertex v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw std::out_of_range("session: vertex out of range");
    if (u == v) throw std::invalid_argument("session: self-loop");
  }

  using PathPtr = std::unique_ptr<LongPathDetector>;
  using CyclePtr = std::unique_ptr<LongCycleDetector>;
  using TdPtr = std::unique_ptr<PostponeWrapper<TdFamilyInner>>;

  const PathPtr* path() const { return std::get_if<PathPtr>(&det_); }
  const CyclePtr* cycle() const { return std::get_if<CyclePtr>(&det_); }
  const TdPtr* td() const { return std::get_if<TdPtr>(&det_); }

  Mode mode_;
  int n_;
  int k_;
  std::variant<std::monostate, PathPtr, CyclePtr, TdPtr> det_;
};

// ---------------------------------------------------------------------------
// Replay

struct ReplayResult {
  int exit_code = 0;
  std::vector<std::string> output;    // one line per query
  std::vector<std::string> warnings;  // non-fatal notes, with line numbers
  std::string error;                  // first fatal problem, with line number
};

// Script grammar, one operation per line:
//   add U V
//   del U V
//   query            (optionally: query  # expect true|false)
//   # comment
inline ReplayResult run_replay(Mode mode, int n, int k, std::istream& script) {
  ReplayResult res;
  Session session(mode, n, k);
  Graph shadow(n);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg, int code) {
    res.error = "line " + std::to_string(lineno) + ": " + msg;
    res.exit_code = code;
    return res;
  };
  while (std::getline(script, line)) {
    ++lineno;
    std::string body = line, comment;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      body = line.substr(0, hash);
      comment = line.substr(hash + 1);
    }
    std::istringstream in(body);
    std::string op;
    if (!(in >> op)) continue;  // blank or comment-only
    if (op == "add" || op == "del") {
      Vertex u, v;
      if (!(in >> u >> v)) return fail("expected two vertex ids", 2);
      if (u < 0 || v < 0 || u >= n || v >= n || u == v)
        return fail("bad vertex pair", 2);
      bool present = shadow.has_edge(u, v);
      if (op == "add") {
        if (present) {
          res.warnings.push_back("line " + std::to_string(lineno) +
                                 ": edge already present, skipped");
          continue;
        }
        session.add(u, v);
        shadow.add_edge(u, v);
      } else {
        if (!present) {
          res.warnings.push_back("line " + std::to_string(lineno) +
                                 ": edge absent, skipped");
          continue;
        }
        session.del(u, v);
        shadow.remove_edge(u, v);
      }
    } else if (op == "query") {
      bool got = session.query();
      res.output.push_back(got ? "true" : "false");
      std::istringstream cin(comment);
      std::string word;
      if (cin >> word) {
        if (word != "expect") return fail("unknown query annotation", 2);
        std::string want;
        if (!(cin >> want) || (want != "true" && want != "false"))
          return fail("expect needs true or false", 2);
        if ((want == "true") != got)
          return fail("expected " + want + ", got " + (got ? "true" : "false"), 1);
      }
    } else {
      return fail("unknown operation '" + op + "'", 2);
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Stress

struct StressOptions {
  Mode mode = Mode::kPath;
  int n = 12;
  int k = 4;
  int ops = 1000;
  uint64_t seed = 1;
  int inject_mismatch_at = -1;  // test hook: corrupt the model answer once
};

struct StressReport {
  uint64_t ops = 0;
  uint64_t mismatches = 0;
  std::string repro;  // reproduction script, filled on the first mismatch

  std::string summary() const {
    return "ops=" + std::to_string(ops) + " mismatches=" + std::to_string(mismatches);
  }
};

inline StressReport run_stress(const StressOptions& opt) {
  StressReport rep;
  Session session(opt.mode, opt.n, opt.k);
  Graph shadow(opt.n);
  std::mt19937_64 rng(opt.seed);
  std::ostringstream script;
  for (int step = 0; step < opt.ops; ++step) {
    Vertex u = static_cast<Vertex>(rng() % opt.n);
    Vertex v = static_cast<Vertex>(rng() % (opt.n - 1));
    if (v >= u) ++v;
    if (shadow.has_edge(u, v)) {
      session.del(u, v);
      shadow.remove_edge(u, v);
      script << "del " << u << " " << v << "\n";
    } else {
      session.add(u, v);
      shadow.add_edge(u, v);
      script << "add " << u << " " << v << "\n";
    }
    ++rep.ops;
    bool got = session.query();
    if (step == opt.inject_mismatch_at) got = !got;
    bool want = session.oracle_answer(shadow);
    if (opt.mode == Mode::kTd) session.check_td_structure();
    if (got != want) {
      ++rep.mismatches;
      if (rep.repro.empty()) {
        script << "query  # expect " << (want ? "true" : "false") << "\n";
        rep.repro = script.str();
      }
      break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Bench

struct BenchOptions {
  Mode mode = Mode::kPath;
  std::vector<int> ns{1000};
  int k = 4;
  int ops = 2000;
  uint64_t seed = 1;
};

struct BenchRow {
  int n;
  Mode mode;
  int64_t median_ns;
  int64_t p99_ns;
};

// Edge toggles confined to constant-size vertex groups, at most a few edges
// per group. Components then never outgrow the height budget, so every
// update at every graph size performs the same kind of real structural work,
// which is exactly what a size-independence measurement needs. (Uniform
// random pairs degenerate at large n: one over-budget component parks all
// subsequent insertions, and the medians would only measure queue pushes.)
inline BenchRow bench_one(Mode mode, int n, int k, int ops, uint64_t seed) {
  constexpr int kGroup = 10;
  constexpr int kEdgesPerGroup = 4;
  if (n < kGroup) throw std::invalid_argument("bench: vertex count too small");
  Session session(mode, n, k);
  std::mt19937_64 rng(seed);
  int groups = n / kGroup;
  std::vector<std::vector<uint64_t>> group_edges(groups);

  auto toggle_in_group = [&](int g) {
    auto& edges = group_edges[g];
    if (static_cast<int>(edges.size()) >= kEdgesPerGroup) {
      size_t pos = rng() % edges.size();
      uint64_t key = edges[pos];
      edges[pos] = edges.back();
      edges.pop_back();
      auto [u, v] = key_edge(key);
      session.del(u, v);
      return;
    }
    while (true) {
      Vertex u = g * kGroup + static_cast<Vertex>(rng() % kGroup);
      Vertex v = g * kGroup + static_cast<Vertex>(rng() % (kGroup - 1));
      if (v >= u) ++v;
      uint64_t key = edge_key(u, v);
      if (std::find(edges.begin(), edges.end(), key) != edges.end()) continue;
      session.add(u, v);
      edges.push_back(key);
      return;
    }
  };

  // warm up with a few edges everywhere
  for (int g = 0; g < groups; ++g)
    for (int i = 0; i < kEdgesPerGroup / 2; ++i) toggle_in_group(g);

  std::vector<int64_t> samples;
  samples.reserve(ops);
  for (int i = 0; i < ops; ++i) {
    int g = static_cast<int>(rng() % groups);
    auto t0 = std::chrono::steady_clock::now();
    toggle_in_group(g);
    auto t1 = std::chrono::steady_clock::now();
    samples.push_back(
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
  }
  std::sort(samples.begin(), samples.end());
  BenchRow row;
  row.n = n;
  row.mode = mode;
  row.median_ns = samples[samples.size() / 2];
  row.p99_ns = samples[samples.size() * 99 / 100];
  return row;
}

inline std::vector<BenchRow> run_bench(const BenchOptions& opt) {
  std::vector<BenchRow> rows;
  for (int n : opt.ns) rows.push_back(bench_one(opt.mode, n, opt.k, opt.ops, opt.seed));
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "n,mode,median_update_ns,p99_update_ns\n";
  for (const BenchRow& r : rows)
    out += std::to_string(r.n) + "," + mode_name(r.mode) + "," +
           std::to_string(r.median_ns) + "," + std::to_string(r.p99_ns) + "\n";
  return out;
}

}  // namespace dyntd
