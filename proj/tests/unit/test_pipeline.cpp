#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "invgen/pipeline.hpp"

using namespace invgen;

namespace {

std::string bench(const char* name) { return read_file(std::string(BENCH_DIR "/") + name); }

SolverOptions opts() {
  SolverOptions o;
  o.path = resolve_solver_path();
  return o;
}

}  // namespace

TEST_CASE("status codes") {
  CHECK(exit_code(RunStatus::Solved) == 0);
  CHECK(exit_code(RunStatus::Infeasible) == 1);
  CHECK(exit_code(RunStatus::Unknown) == 2);
  CHECK(exit_code(RunStatus::InputError) == 3);
}

TEST_CASE("solving the doubling benchmark") {
  std::ostringstream log;
  RunResult r = solve_text(bench("trex1_vars.sl"), Config{}, &log);
  REQUIRE(r.status == RunStatus::Solved);
  CHECK(r.invariant_text.rfind("(define-fun inv-f ((x Int) (y Int)) Bool ", 0) == 0);
  CHECK(check_text(bench("trex1_vars.sl"), r.invariant_text, opts()).status == RunStatus::Solved);
  CHECK(r.seeds == std::vector<std::uint64_t>{1, 2});
  std::vector<std::string> phases;
  for (const auto& [name, ms] : r.timings) phases.push_back(name);
  CHECK(phases == std::vector<std::string>{"preprocess", "feasibility", "record", "infer", "verify"});
  CHECK(log.str().find("[record]") != std::string::npos);
}

TEST_CASE("every solved suite answer re-verifies") {
  for (const auto& entry : std::filesystem::directory_iterator(BENCH_DIR)) {
    std::string src = read_file(entry.path().string());
    RunResult r = solve_text(src, Config{});
    INFO(entry.path().filename().string(), ": ", r.reason);
    CHECK(r.status != RunStatus::Unknown);
    CHECK(r.status != RunStatus::InputError);
    if (r.status == RunStatus::Solved) CHECK(check_text(src, r.invariant_text, opts()).status == RunStatus::Solved);
    if (r.status == RunStatus::Infeasible) CHECK(r.witness.has_value());
  }
}

TEST_CASE("infeasible inputs") {
  RunResult a = solve_text(bench("infeasible_pre.sl"), Config{});
  CHECK(a.status == RunStatus::Infeasible);
  RunResult b = solve_text(bench("reachable_bad.sl"), Config{});
  CHECK(b.status == RunStatus::Infeasible);
  REQUIRE(b.witness);
  CHECK(std::get<Integer>(b.witness->at("x")) > 3);
}

TEST_CASE("input errors") {
  CHECK(solve_text("(set-logic LIA", Config{}).status == RunStatus::InputError);
  Config bad;
  bad.conflict_group_size = 0;
  CHECK(solve_text(bench("trex1_vars.sl"), bad).status == RunStatus::InputError);
  CHECK(check_text(bench("trex1_vars.sl"), "(>= x", opts()).status == RunStatus::InputError);
}

TEST_CASE("check outcomes") {
  auto good = check_text(bench("trex1_vars.sl"), "(define-fun inv-f ((x Int) (y Int)) Bool (>= x 1))", opts());
  CHECK(good.status == RunStatus::Solved);
  auto weak = check_text(bench("trex1_vars.sl"), "true", opts());
  CHECK(exit_code(weak.status) != 0);
  CHECK(weak.report.stronger_than_post.verdict == CheckResult::Verdict::Counterexample);
}

TEST_CASE("no tracked variables") {
  auto src =
      "(set-logic LIA)(synth-inv inv ((a Int)))(define-fun pre ((a Int)) Bool true)"
      "(define-fun trans ((a Int) (a! Int)) Bool true)(define-fun post ((a Int)) Bool true)"
      "(inv-constraint inv pre trans post)(check-synth)";
  RunResult r = solve_text(src, Config{});
  REQUIRE(r.status == RunStatus::Solved);
  CHECK(r.invariant_text == "(define-fun inv ((a Int)) Bool true)");
}

TEST_CASE("repeatable output") {
  Config c;
  c.seeds = {7, 7};
  RunResult a = solve_text(bench("lockstep_offset.sl"), c);
  RunResult b = solve_text(bench("lockstep_offset.sl"), c);
  CHECK(a.status == RunStatus::Solved);
  CHECK(a.invariant_text == b.invariant_text);
}
