#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "dyntd/session.hpp"
#include "helpers.hpp"

using namespace dyntd;

TEST_CASE("replay prints query answers") {
  std::istringstream script(
      "# build a 3-path\n"
      "add 0 1\n"
      "add 1 2\n"
      "query\n");
  ReplayResult res = run_replay(Mode::kPath, 3, 3, script);
  CHECK(res.exit_code == 0);
  REQUIRE(res.output.size() == 1);
  CHECK(res.output[0] == "true");
}

TEST_CASE("replay warns on redundant edge ops and continues") {
  std::istringstream script(
      "add 0 1\n"
      "add 0 1\n"
      "del 1 2\n"
      "query\n");
  ReplayResult res = run_replay(Mode::kPath, 3, 2, script);
  CHECK(res.exit_code == 0);
  CHECK(res.warnings.size() == 2);
  REQUIRE(res.output.size() == 1);
  CHECK(res.output[0] == "true");
}

TEST_CASE("replay enforces expectations with line numbers") {
  std::istringstream script(
      "add 0 1\n"
      "query  # expect false\n");
  ReplayResult res = run_replay(Mode::kPath, 3, 2, script);
  CHECK(res.exit_code == 1);
  CHECK(res.error.find("line 2") != std::string::npos);
}

TEST_CASE("replay reports parse errors") {
  std::istringstream script("add 0\n");
  ReplayResult res = run_replay(Mode::kPath, 3, 2, script);
  CHECK(res.exit_code == 2);
  CHECK(res.error.find("line 1") != std::string::npos);

  std::istringstream bad_op("frobnicate 1 2\n");
  CHECK(run_replay(Mode::kPath, 3, 2, bad_op).exit_code == 2);

  std::istringstream bad_vertex("add 0 9\n");
  CHECK(run_replay(Mode::kPath, 3, 2, bad_vertex).exit_code == 2);
}

TEST_CASE("replay in td mode answers treedepth-bound queries") {
  std::istringstream script(
      "add 0 1\n"
      "add 1 2\n"
      "query  # expect true\n"
      "add 0 2\n"
      "query  # expect false\n"
      "del 0 2\n"
      "query  # expect true\n");
  ReplayResult res = run_replay(Mode::kTd, 3, 2, script);
  CHECK(res.exit_code == 0);
  REQUIRE(res.output.size() == 3);
  CHECK(res.output[1] == "false");
}

TEST_CASE("stress is deterministic and clean across modes") {
  for (Mode mode : {Mode::kPath, Mode::kCycle, Mode::kTd}) {
    StressOptions opt;
    opt.mode = mode;
    opt.n = 9;
    opt.k = 4;
    opt.ops = 300;
    opt.seed = 7;
    StressReport a = run_stress(opt);
    StressReport b = run_stress(opt);
    CHECK(a.mismatches == 0);
    CHECK(a.summary() == b.summary());
    CHECK(a.summary() == "ops=300 mismatches=0");
  }
}

TEST_CASE("injected mismatches produce a reproduction script") {
  StressOptions opt;
  opt.mode = Mode::kPath;
  opt.n = 8;
  opt.k = 3;
  opt.ops = 100;
  opt.seed = 11;
  opt.inject_mismatch_at = 40;
  StressReport rep = run_stress(opt);
  CHECK(rep.mismatches == 1);
  REQUIRE(!rep.repro.empty());

  // the reproduction script replays cleanly: the recorded oracle expectation
  // matches the detector on an uncorrupted run
  std::istringstream script(rep.repro);
  ReplayResult res = run_replay(Mode::kPath, 8, 3, script);
  CHECK(res.exit_code == 0);
}

TEST_CASE("bench emits the expected CSV header and rows") {
  BenchOptions opt;
  opt.mode = Mode::kPath;
  opt.ns = {60, 120};
  opt.k = 3;
  opt.ops = 60;
  opt.seed = 5;
  auto rows = run_bench(opt);
  REQUIRE(rows.size() == 2);
  std::string csv = bench_csv(rows);
  CHECK(csv.rfind("n,mode,median_update_ns,p99_update_ns\n", 0) == 0);
  CHECK(csv.find("60,path,") != std::string::npos);
  CHECK(csv.find("120,path,") != std::string::npos);
  for (const auto& row : rows) {
    CHECK(row.median_ns > 0);
    CHECK(row.p99_ns >= row.median_ns);
  }
}
