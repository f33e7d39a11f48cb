#include <doctest.h>

#include "invgen/infer.hpp"
#include "invgen/pipeline.hpp"

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

Problem load(const char* name) { return parse_problem(read_file(std::string(BENCH_DIR "/") + name)); }

bool equivalent(SolverSession& s, const Term& a, const Term& b, std::span<const Variable> vars) {
  return s.check_valid(Term::app(Op::Eq, {a, b}), vars).valid();
}

}  // namespace

TEST_CASE("config defaults") {
  Config c;
  CHECK(c.num_states == 512);
  CHECK(c.conflict_group_size == 64);
  CHECK(c.num_steps_on_restart == 256);
  CHECK(c.record_instances == 2);
  CHECK(c.max_feature_size == 7);
  CHECK(c.effective_seeds() == std::vector<std::uint64_t>{1, 2});
  c.seeds = {7};
  CHECK(c.effective_seeds() == std::vector<std::uint64_t>{7, 8});
  c.num_states = 0;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("doubling example from its two recorded states") {
  Problem p = load("trex1_vars.sl");
  StateSet z{st({{"x", 1}, {"y", 7}}), st({{"x", 2}, {"y", -2}})};
  SolverSession s(opts());
  auto o = infer(p, z, Config{}, s);
  REQUIRE(o.solved());
  CHECK(equivalent(s, o.invariant, parse_term("(>= x 1)", p.inv_params), p.inv_params));
  CHECK(o.stats.rounds >= 2);
  CHECK(o.stats.counterexamples >= 1);
}

TEST_CASE("post true is immediately inductive") {
  Problem p = parse_problem(
      "(set-logic LIA)(synth-inv inv ((x Int)))(define-fun pre ((x Int)) Bool (= x 0))"
      "(define-fun trans ((x Int) (x! Int)) Bool (= x! (+ x 1)))(define-fun post ((x Int)) Bool true)"
      "(inv-constraint inv pre trans post)(check-synth)");
  SolverSession s(opts());
  auto o = infer(p, StateSet{st({{"x", 0}})}, Config{}, s);
  REQUIRE(o.solved());
  CHECK(o.invariant.is_true());
  CHECK(o.stats.rounds == 1);
}

TEST_CASE("restart from a precondition counterexample") {
  // Z misses x = 2, so the first strengthening may be too tight.
  Problem p = load("three_state.sl");
  SolverSession s(opts());
  auto o = infer(p, StateSet{st({{"x", 0}})}, Config{}, s);
  REQUIRE(o.solved());
  CHECK(s.check_valid(Term::implies(o.invariant, parse_term("(<= x 2)", p.inv_params)), p.inv_params).valid());
}

TEST_CASE("strengthening needed with an empty start") {
  Problem p = load("lockstep.sl");
  SolverSession s(opts());
  auto o = infer(p, StateSet{st({{"x", 0}, {"y", 0}})}, Config{}, s);
  REQUIRE(o.solved());
  SolverOptions fresh = opts();
  CHECK(check_invariant_text(p, print_term(o.invariant), fresh).overall);
}

TEST_CASE("feasibility") {
  SolverSession s(opts());
  SUBCASE("pre does not imply post") {
    Problem p = load("infeasible_pre.sl");
    auto f = check_feasible(p, {}, s);
    CHECK_FALSE(f.feasible);
    CHECK(f.channel == "pre");
    REQUIRE(f.witness);
    CHECK(std::get<Integer>(f.witness->at("x")) == 0);
  }
  SUBCASE("doubling is feasible") {
    Problem p = load("trex1_vars.sl");
    CHECK(check_feasible(p, StateSet{st({{"x", 1}, {"y", 7}})}, s).feasible);
  }
  SUBCASE("recorded state violates post") {
    Problem p = load("reachable_bad.sl");
    std::vector<State> walk;
    for (int i = 0; i <= 5; ++i) walk.push_back(st({{"x", i}}));
    REQUIRE(replay_sound(p, walk));
    StateSet z;
    for (auto& w : walk) z.insert(w);
    auto f = check_feasible(p, z, s);
    CHECK_FALSE(f.feasible);
    CHECK(f.channel == "recorded");
    CHECK(std::get<Integer>(f.witness->at("x")) == 4);
  }
}

TEST_CASE("infer finds reachable violations on its own") {
  // Z starts at the head only; the bad state is found by walking on.
  Problem p = load("reachable_bad.sl");
  SolverSession s(opts());
  auto o = infer(p, StateSet{st({{"x", 0}})}, Config{}, s);
  REQUIRE(o.infeasible());
  REQUIRE(o.witness);
  CHECK_FALSE(eval_bool(p.post.body, *o.witness));
}

TEST_CASE("restart limit") {
  Config c;
  c.max_restarts = 0;
  c.num_steps_on_restart = 1;
  // A single pre state and a post that forces strengthening: with no
  // restarts allowed the run cannot recover when the first guess is tight.
  Problem q = parse_problem(
      "(set-logic LIA)(synth-inv inv ((x Int)))(define-fun pre ((x Int)) Bool (and (>= x 0) (<= x 9)))"
      "(define-fun trans ((x Int) (x! Int)) Bool (and (< x 10) (= x! (+ x 1))))"
      "(define-fun post ((x Int)) Bool (=> (>= x 10) (= x 10)))"
      "(inv-constraint inv pre trans post)(check-synth)");
  SolverSession s(opts());
  auto o = infer(q, StateSet{st({{"x", 5}})}, c, s);
  CHECK(o.status != InferOutcome::Status::Infeasible);
  if (!o.solved()) CHECK(o.reason == "restart limit reached");
  CHECK(o.stats.restarts <= 1);
}

TEST_CASE("timeout") {
  Problem p = load("lockstep_offset.sl");
  SolverSession s(opts());
  auto o = infer(p, StateSet{st({{"x", 0}, {"y", 5}})}, Config{}, s, Clock::now());
  CHECK(o.status == InferOutcome::Status::Unknown);
  CHECK(o.reason == "timeout");
}
