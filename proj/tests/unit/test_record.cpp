#include <doctest.h>

#include <filesystem>

#include "invgen/pipeline.hpp"
#include "invgen/record.hpp"

using namespace invgen;

namespace {

SolverOptions opts(std::uint64_t seed = 1) {
  SolverOptions o;
  o.path = resolve_solver_path();
  o.seed = seed;
  return o;
}

State st(std::initializer_list<std::pair<const char*, long long>> kv) {
  State s;
  for (auto [k, v] : kv) s.set(k, Integer(v));
  return s;
}

long long iv(const State& s, const std::string& n) { return static_cast<long long>(std::get<Integer>(s.at(n))); }

const char* kGuarded =
    "(set-logic LIA)(synth-inv inv ((x Int) (y Int)))"
    "(define-fun pre ((x Int) (y Int)) Bool (= x 0))"
    "(define-fun trans ((x Int) (y Int) (x! Int) (y! Int)) Bool (and (< x 3) (= x! (+ x 1)) (= y! y)))"
    "(define-fun post ((x Int) (y Int)) Bool true)"
    "(inv-constraint inv pre trans post)(check-synth)";

}  // namespace

TEST_CASE("state sets keep first occurrences in order") {
  StateSet z;
  CHECK(z.insert(st({{"x", 1}})));
  CHECK(z.insert(st({{"x", 2}})));
  CHECK_FALSE(z.insert(st({{"x", 1}})));
  CHECK(z.size() == 2);
  CHECK(z[0] == st({{"x", 1}}));
}

TEST_CASE("merging parallel runs") {
  State a = st({{"x", 1}}), b = st({{"x", 2}}), c = st({{"x", 3}});
  std::vector<StateSet> runs{StateSet{a, b}, StateSet{b, c}};
  CHECK(merge_parallel(runs) == StateSet{a, b, c});
  std::vector<StateSet> runs2{StateSet{}, StateSet{a}};
  CHECK(merge_parallel(runs2) == StateSet{a});
}

TEST_CASE("deterministic walk") {
  Problem p = parse_problem(kGuarded);
  SolverSession s(opts());
  auto walk = record_states_from(p, st({{"x", 0}, {"y", 5}}), 10, s);
  // x = 3 fails the guard but is still reached at the loop head.
  REQUIRE(walk.size() == 4);
  CHECK(walk[3] == st({{"x", 3}, {"y", 5}}));
  CHECK(walk[0] == st({{"x", 0}, {"y", 5}}));
  CHECK(walk[1] == st({{"x", 1}, {"y", 5}}));
  CHECK(walk[2] == st({{"x", 2}, {"y", 5}}));
  // Walk length is bounded by k.
  CHECK(record_states_from(p, st({{"x", 0}, {"y", 5}}), 2, s).size() == 2);
  // No successor.
  CHECK(record_states_from(p, st({{"x", 7}, {"y", 0}}), 10, s).size() == 1);
}

TEST_CASE("doubling walk") {
  Problem p = parse_problem(read_file(BENCH_DIR "/trex1_vars.sl"));
  SolverSession s(opts());
  auto walk = record_states_from(p, st({{"x", 1}, {"y", 7}}), 3, s);
  REQUIRE(walk.size() >= 2);
  CHECK(iv(walk[1], "x") == 2);
  CHECK(replay_sound(p, walk));
}

TEST_CASE("record respects the budget and the precondition") {
  Problem p = parse_problem(read_file(BENCH_DIR "/trex1_vars.sl"));
  SolverSession s(opts());
  std::vector<std::vector<State>> runs;
  StateSet z = record(p, 4, s, Clock::time_point::max(), &runs);
  CHECK(z.size() <= 4);
  CHECK(z.size() >= 1);
  CHECK(iv(z[0], "x") == 1);
  for (const auto& r : runs) CHECK(replay_sound(p, r));

  SolverSession s1(opts());
  StateSet one = record(p, 1, s1);
  REQUIRE(one.size() == 1);
  CHECK(iv(one[0], "x") == 1);
}

TEST_CASE("unsatisfiable precondition yields nothing") {
  Problem p = parse_problem(
      "(set-logic LIA)(synth-inv inv ((x Int)))(define-fun pre ((x Int)) Bool (and (> x 0) (< x 0)))"
      "(define-fun trans ((x Int) (x! Int)) Bool true)(define-fun post ((x Int)) Bool true)"
      "(inv-constraint inv pre trans post)(check-synth)");
  SolverSession s(opts());
  CHECK(record(p, 10, s).empty());
}

TEST_CASE("fresh starts avoid seen precondition models") {
  // Five precondition models, no transitions.
  Problem p = parse_problem(
      "(set-logic LIA)(synth-inv inv ((x Int)))(define-fun pre ((x Int)) Bool (and (>= x 0) (< x 5)))"
      "(define-fun trans ((x Int) (x! Int)) Bool false)(define-fun post ((x Int)) Bool true)"
      "(inv-constraint inv pre trans post)(check-synth)");
  SolverSession s(opts());
  StateSet z = record(p, 100, s);
  CHECK(z.size() == 5);
}

TEST_CASE("parallel record is reproducible and replay-sound") {
  for (const auto& entry : std::filesystem::directory_iterator(BENCH_DIR)) {
    Problem p = parse_problem(read_file(entry.path().string()));
    std::vector<std::uint64_t> seeds{1, 2};
    auto a = record_parallel(p, 64, seeds, opts(), std::chrono::seconds(30));
    auto b = record_parallel(p, 64, seeds, opts(), std::chrono::seconds(30));
    INFO(entry.path().filename().string());
    CHECK(a.states == b.states);
    CHECK(a.states.size() <= 64);
    for (const auto& r : a.runs) CHECK(replay_sound(p, r));
  }
}

TEST_CASE("replay detects bogus walks") {
  Problem p = parse_problem(kGuarded);
  std::vector<State> bad{st({{"x", 0}, {"y", 1}}), st({{"x", 2}, {"y", 1}})};
  CHECK_FALSE(replay_sound(p, bad));
  std::vector<State> bad_head{st({{"x", 1}, {"y", 1}})};
  CHECK_FALSE(replay_sound(p, bad_head));
}
