#include <doctest.h>

#include "invgen/errors.hpp"
#include "invgen/pipeline.hpp"
#include "invgen/sygus.hpp"
#include "oracles.hpp"

using namespace invgen;

namespace {

const std::vector<Variable> kXY{{"x", Sort::Int}, {"y", Sort::Int}};

State st(std::initializer_list<std::pair<const char*, long long>> kv) {
  State s;
  for (auto [k, v] : kv) s.set(k, Integer(v));
  return s;
}

std::string problem_with(const std::string& trans_body) {
  return "(set-logic LIA)\n(synth-inv inv-f ((x Int)))\n(declare-primed-var x Int)\n"
         "(define-fun pre-f ((x Int)) Bool (= x 0))\n"
         "(define-fun trans-f ((x Int) (x! Int)) Bool " + trans_body + ")\n"
         "(define-fun post-f ((x Int)) Bool (>= x 0))\n"
         "(inv-constraint inv-f pre-f trans-f post-f)\n(check-synth)\n";
}

}  // namespace

TEST_CASE("parse the doubling benchmark") {
  Problem p = parse_problem(read_file(BENCH_DIR "/trex1_vars.sl"));
  CHECK(p.logic == "LIA");
  CHECK(p.inv_name == "inv-f");
  REQUIRE(p.inv_params == kXY);
  CHECK(p.pre.name == "pre-f");
  CHECK(p.trans.params.size() == 4);
  CHECK(p.trans.params[2].name == "x!");
  CHECK(print_term(p.post.body) == "(or (< x y) (>= x 1))");
}

TEST_CASE("minimal problem with true bodies") {
  Problem p = parse_problem(
      "(set-logic LIA)(synth-inv inv ((a Int)))(define-fun pre ((a Int)) Bool true)"
      "(define-fun trans ((a Int) (a! Int)) Bool true)(define-fun post ((a Int)) Bool true)"
      "(inv-constraint inv pre trans post)(check-synth)");
  CHECK(p.pre.body.is_true());
  CHECK(p.trans.body.is_true());
  CHECK(p.post.body.is_true());
}

TEST_CASE("input errors carry positions") {
  SUBCASE("nonlinear multiplication") {
    CHECK_THROWS_AS(parse_problem(problem_with("(= x! (* x x))")), ParseError);
  }
  SUBCASE("unknown function") {
    try {
      parse_problem(problem_with("(= x! (foo x))"));
      FAIL("expected an error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 5);
      CHECK(e.column() > 1);
    }
  }
  SUBCASE("ill-sorted") { CHECK_THROWS_AS(parse_problem(problem_with("(+ x! 1)")), ParseError); }
  SUBCASE("arity") { CHECK_THROWS_AS(parse_problem(problem_with("(not (= x! 1) true)")), ParseError); }
  SUBCASE("check-synth must come last") {
    auto src = problem_with("(= x! x)");
    src += "(set-logic LIA)\n";
    CHECK_THROWS_AS(parse_problem(src), ParseError);
  }
  SUBCASE("unbalanced parentheses") { CHECK_THROWS_AS(parse_problem("(set-logic LIA"), ParseError); }
  SUBCASE("let is rejected") {
    CHECK_THROWS_AS(parse_problem(problem_with("(let ((z x)) (= x! z))")), ParseError);
  }
  SUBCASE("recursive relation") {
    CHECK_THROWS_AS(parse_problem("(set-logic LIA)(synth-inv inv ((a Int)))"
                                  "(define-fun r ((a Int)) Bool (r a))"
                                  "(define-fun pre ((a Int)) Bool (r a))"
                                  "(define-fun trans ((a Int) (a! Int)) Bool true)"
                                  "(define-fun post ((a Int)) Bool true)"
                                  "(inv-constraint inv pre trans post)(check-synth)"),
                    ParseError);
  }
  SUBCASE("wrong transition signature") {
    CHECK_THROWS_AS(parse_problem("(set-logic LIA)(synth-inv inv ((a Int)))"
                                  "(define-fun pre ((a Int)) Bool true)"
                                  "(define-fun trans ((a! Int) (a Int)) Bool true)"
                                  "(define-fun post ((a Int)) Bool true)"
                                  "(inv-constraint inv pre trans post)(check-synth)"),
                    ParseError);
  }
  SUBCASE("unsupported sort") {
    CHECK_THROWS_AS(parse_problem("(set-logic LIA)(synth-inv inv ((a Real)))(check-synth)"), ParseError);
  }
}

TEST_CASE("printing") {
  CHECK(print_term(Term::var("x")) == "x");
  CHECK(print_term(Term::app(Op::Ge, {Term::var("x"), Term::integer(1)})) == "(>= x 1)");
  CHECK(print_term(Term::integer(-3)) == "(- 3)");
  CHECK(print_definition("inv-f", kXY, Term::app(Op::Ge, {Term::var("x"), Term::integer(1)})) ==
        "(define-fun inv-f ((x Int) (y Int)) Bool (>= x 1))");
}

TEST_CASE("random round trip") {
  std::vector<Variable> vars{{"x", Sort::Int}, {"y", Sort::Int}, {"b", Sort::Bool}, {"c!", Sort::Bool}};
  oracle::TermGen gen(42, vars);
  for (int i = 0; i < 200; ++i) {
    Term t = (i % 2) ? gen.bool_term(6) : gen.int_term(6);
    std::string text = print_term(t);
    Term back = parse_term(text, vars);
    INFO(text);
    CHECK(back == t);
  }
}

TEST_CASE("big literals survive printing") {
  Integer big = Integer(1) << 100;
  Term t = Term::app(Op::Eq, {Term::var("x"), Term::integer(-big)});
  CHECK(parse_term(print_term(t), kXY) == t);
}

TEST_CASE("evaluation") {
  CHECK(eval_bool(parse_term("(>= x 1)", kXY), st({{"x", 1}, {"y", 7}})));
  CHECK(std::get<Integer>(eval_term(parse_term("(ite (< x y) x y)", kXY), st({{"x", 2}, {"y", -2}}))) == -2);
  CHECK(euclid_div(-7, 2) == -4);
  CHECK(euclid_mod(-7, 2) == 1);
  CHECK(euclid_div(7, -2) == -3);
  CHECK(euclid_mod(7, -2) == 1);
  CHECK(euclid_div(-7, -2) == 4);
  CHECK(euclid_mod(-7, -2) == 1);
  CHECK_THROWS_AS(eval_term(parse_term("(div x y)", kXY), st({{"x", 1}, {"y", 0}})), EvalError);
  CHECK(eval_bool(parse_term("(< x y 10)", kXY), st({{"x", 1}, {"y", 7}})));
  CHECK_FALSE(eval_bool(parse_term("(< x y 5)", kXY), st({{"x", 1}, {"y", 7}})));
  CHECK(eval_bool(parse_term("(=> false false false)", kXY), st({{"x", 0}, {"y", 0}})));
}

TEST_CASE("relation calls evaluate like their inlined bodies") {
  Problem p = parse_problem(
      "(set-logic LIA)(synth-inv inv ((a Int) (b Int)))"
      "(define-fun lt ((u Int) (v Int)) Bool (< u v))"
      "(define-fun mix ((u Int) (v Int)) Bool (or (lt u v) (= (mod u 3) v)))"
      "(define-fun pre ((a Int) (b Int)) Bool (mix a b))"
      "(define-fun trans ((a Int) (b Int) (a! Int) (b! Int)) Bool (and (mix a! b) (lt b b!)))"
      "(define-fun post ((a Int) (b Int)) Bool (not (mix b a)))"
      "(inv-constraint inv pre trans post)(check-synth)");
  const RelationDef* defs[] = {&p.pre, &p.post};
  for (const auto* def : defs) {
    Term inlined = inline_calls(def->body, p.relations);
    CHECK_FALSE(print_term(inlined).find("mix") != std::string::npos);
    for (int a = -4; a <= 4; ++a)
      for (int b = -4; b <= 4; ++b) {
        State s = st({{"a", a}, {"b", b}});
        CHECK(eval_bool(def->body, s, p.relations) == eval_bool(inlined, s));
      }
  }
  Term trans = p.trans_inlined();
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b)
      for (int a2 = -4; a2 <= 4; a2 += 2)
        for (int b2 = -4; b2 <= 4; b2 += 2) {
          State s = st({{"a", a}, {"b", b}, {"a!", a2}, {"b!", b2}});
          CHECK(eval_bool(p.trans.body, s, p.relations) == eval_bool(trans, s));
        }
}

TEST_CASE("invariant text forms") {
  Problem p = parse_problem(read_file(BENCH_DIR "/trex1_vars.sl"));
  Term a = parse_invariant("(define-fun inv-f ((x Int) (y Int)) Bool (>= x 1))", p);
  Term b = parse_invariant("(>= x 1)", p);
  CHECK(a == b);
  CHECK_THROWS_AS(parse_invariant("(define-fun inv-f ((x Int)) Bool (>= x 1))", p), ParseError);
  CHECK_THROWS_AS(parse_invariant("(+ x 1)", p), ParseError);
}

TEST_CASE("quoted symbols") {
  std::vector<Variable> vars{{"a b", Sort::Int}};
  Term t = parse_term("(>= |a b| 0)", vars);
  CHECK(print_term(t) == "(>= |a b| 0)");
}
