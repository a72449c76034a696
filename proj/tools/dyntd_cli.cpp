// Command-line driver: replay scripted update sessions, random stress runs
// cross-checked against brute-force oracles, per-update benchmarks, and
// enumeration of minimal treedepth obstructions.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "dyntd/obstructions.hpp"
#include "dyntd/session.hpp"

using namespace dyntd;

namespace {

Mode mode_from_flag(const std::string& flag) {
  auto mode = parse_mode(flag);
  if (!mode) throw CLI::ValidationError("--mode must be path, cycle, or td");
  return *mode;
}

int cmd_replay(const std::string& mode_flag, int n, int k,
               const std::string& script_path) {
  std::ifstream script(script_path);
  if (!script) {
    std::cerr << "cannot open script: " << script_path << "\n";
    return 2;
  }
  ReplayResult res = run_replay(mode_from_flag(mode_flag), n, k, script);
  for (const std::string& line : res.output) std::cout << line << "\n";
  for (const std::string& warning : res.warnings)
    std::cerr << "warning: " << warning << "\n";
  if (!res.error.empty()) std::cerr << "error: " << res.error << "\n";
  return res.exit_code;
}

int cmd_stress(const std::string& mode_flag, int n, int k, int ops,
               uint64_t seed, int inject_at, const std::string& repro_path) {
  StressOptions opt;
  opt.mode = mode_from_flag(mode_flag);
  opt.n = n;
  opt.k = k;
  opt.ops = ops;
  opt.seed = seed;
  opt.inject_mismatch_at = inject_at;
  StressReport rep = run_stress(opt);
  std::cout << rep.summary() << "\n";
  if (rep.mismatches > 0) {
    std::ofstream out(repro_path);
    out << rep.repro;
    std::cerr << "mismatch: reproduction script written to " << repro_path << "\n";
    return 1;
  }
  return 0;
}

int cmd_bench(const std::string& mode_flag, std::vector<int> ns, int k, int ops,
              uint64_t seed, const std::string& csv_path) {
  BenchOptions opt;
  opt.mode = mode_from_flag(mode_flag);
  if (!ns.empty()) opt.ns = std::move(ns);
  opt.k = k;
  opt.ops = ops;
  opt.seed = seed;
  std::string csv = bench_csv(run_bench(opt));
  if (csv_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(csv_path);
    out << csv;
  }
  return 0;
}

int cmd_obstructions(int d, int max_n) {
  auto obs = enumerate_min_obstructions(d, max_n);
  // edge-list text format: "graph <index> n=<vertices> m=<edges>" followed by
  // one "u v" line per edge, blank line between graphs
  for (size_t i = 0; i < obs.size(); ++i) {
    const Graph& g = obs[i];
    std::cout << "graph " << i << " n=" << g.n() << " m=" << g.edge_count() << "\n";
    for (auto [u, v] : g.edges()) std::cout << u << " " << v << "\n";
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamic treedepth structures: path/cycle detection drivers"};
  app.require_subcommand(1);

  std::string mode = "path";
  int n = 16, k = 4, ops = 1000, d = 2, max_n = 8, inject_at = -1;
  uint64_t seed = 1;
  std::string script_path, csv_path, repro_path = "repro.txt";
  std::vector<int> ns;

  auto* replay = app.add_subcommand("replay", "execute a scripted session");
  replay->add_option("--mode", mode, "path|cycle|td");
  replay->add_option("--n", n, "vertex count");
  replay->add_option("--k", k, "parameter k");
  replay->add_option("--script", script_path, "script file")->required();

  auto* stress = app.add_subcommand("stress", "random ops cross-checked vs oracles");
  stress->add_option("--mode", mode, "path|cycle|td");
  stress->add_option("--n", n, "vertex count");
  stress->add_option("--k", k, "parameter k");
  stress->add_option("--ops", ops, "operation count");
  stress->add_option("--seed", seed, "random seed");
  stress->add_option("--repro", repro_path, "mismatch script output path");
  stress->add_option("--inject-mismatch-at", inject_at,
                     "test hook: corrupt the answer at this step")
      ->group("");

  auto* bench = app.add_subcommand("bench", "per-update timing, CSV output");
  bench->add_option("--mode", mode, "path|cycle|td");
  bench->add_option("--n", ns, "vertex count (repeatable)");
  bench->add_option("--k", k, "parameter k");
  bench->add_option("--ops", ops, "measured operations per size");
  bench->add_option("--seed", seed, "random seed");
  bench->add_option("--csv", csv_path, "write CSV here instead of stdout");

  auto* obst = app.add_subcommand("obstructions", "minimal treedepth obstructions");
  obst->add_option("--d", d, "treedepth bound");
  obst->add_option("--max-n", max_n, "largest vertex count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (replay->parsed()) return cmd_replay(mode, n, k, script_path);
    if (stress->parsed())
      return cmd_stress(mode, n, k, ops, seed, inject_at, repro_path);
    if (bench->parsed()) return cmd_bench(mode, ns, k, ops, seed, csv_path);
    if (obst->parsed()) return cmd_obstructions(d, max_n);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
