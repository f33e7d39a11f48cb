#include <doctest.h>

#include "invgen/feature_synth.hpp"
#include "invgen/pipeline.hpp"
#include "oracles.hpp"

using namespace invgen;

namespace {

State st(std::initializer_list<std::pair<const char*, long long>> kv) {
  State s;
  for (auto [k, v] : kv) s.set(k, Integer(v));
  return s;
}

const std::vector<Variable> kXY{{"x", Sort::Int}, {"y", Sort::Int}};

Term T(const std::string& text) { return parse_term(text, kXY); }

ConflictGroup group(std::vector<State> pos, std::vector<State> neg, std::vector<Variable> vars = kXY) {
  return {std::move(pos), std::move(neg), std::move(vars)};
}

}  // namespace

TEST_CASE("separates the doubling example") {
  auto g = group({st({{"x", 1}, {"y", 7}})}, {st({{"x", 0}, {"y", 1}})});
  auto f = synthesize_feature(g, 7);
  REQUIRE(f);
  CHECK(f->size() == 3);
  CHECK(oracle::separates(*f, g.positives, g.negatives));
}

TEST_CASE("identical states are inseparable") {
  auto g = group({st({{"x", 0}})}, {st({{"x", 0}})}, {{"x", Sort::Int}});
  CHECK_FALSE(synthesize_feature(g, 7));
}

TEST_CASE("x above y") {
  auto g = group({st({{"x", 2}, {"y", 1}})}, {st({{"x", 1}, {"y", 2}})});
  auto f = synthesize_feature(g, 7);
  REQUIRE(f);
  CHECK(oracle::separates(*f, g.positives, g.negatives));
  oracle::Grammar grammar({"x", "y"}, {}, {0, 1, -1});
  CHECK(oracle::min_separator_size(grammar, g.positives, g.negatives, 7) == f->size());
}

TEST_CASE("boolean variables") {
  std::vector<Variable> vars{{"b", Sort::Bool}, {"x", Sort::Int}};
  State p1, n1;
  p1.set("b", false);
  p1.set("x", Integer(3));
  n1.set("b", true);
  n1.set("x", Integer(3));
  auto f = synthesize_feature(group({p1}, {n1}, vars), 7);
  REQUIRE(f);
  CHECK(print_term(*f) == "(not b)");
}

TEST_CASE("disequality") {
  auto g = group({st({{"x", 0}, {"y", 0}}), st({{"x", 2}, {"y", 0}})}, {st({{"x", 1}, {"y", 0}})});
  auto f = synthesize_feature(g, 7);
  REQUIRE(f);
  CHECK(oracle::separates(*f, g.positives, g.negatives));
}

TEST_CASE("problem constants join the pool") {
  Problem p = parse_problem(read_file(BENCH_DIR "/counter_100.sl"));
  auto pool = constant_pool(p);
  CHECK(pool.size() == 4);
  CHECK(pool[3] == 100);
  auto g = group({st({{"x", 100}})}, {st({{"x", 101}})}, {{"x", Sort::Int}});
  auto f = synthesize_feature(g, 3, pool);
  REQUIRE(f);
  CHECK(f->size() == 3);
}

TEST_CASE("exhausted bound") {
  // x = y + 3 needs constants outside {0, 1, -1} and more nodes than allowed.
  auto g = group({st({{"x", 3}, {"y", 0}}), st({{"x", 4}, {"y", 1}})},
                 {st({{"x", 2}, {"y", 0}}), st({{"x", 4}, {"y", 0}}), st({{"x", 5}, {"y", 1}})});
  CHECK_FALSE(synthesize_feature(g, 3));
  auto f = synthesize_feature(g, 9);
  REQUIRE(f);
  CHECK(oracle::separates(*f, g.positives, g.negatives));
}

TEST_CASE("values beyond 64 bits make a group unusable") {
  State big;
  big.set("x", Integer(1) << 80);
  auto g = group({big}, {st({{"x", 0}})}, {{"x", Sort::Int}});
  CHECK_FALSE(synthesize_feature(g, 7));
}

TEST_CASE("size-minimal on random groups") {
  oracle::TermGen gen(11, kXY);
  oracle::Grammar grammar({"x", "y"}, {}, {0, 1, -1});
  int separable = 0;
  while (separable < 30) {
    std::vector<State> pos, neg;
    std::set<State> seen;
    int n = static_cast<int>(gen.pick(2, 6));
    for (int i = 0; i < n; ++i) {
      State s = gen.state(-4, 4);
      if (!seen.insert(s).second) continue;
      (gen.coin() ? pos : neg).push_back(s);
    }
    if (pos.empty() || neg.empty()) continue;
    auto expected = oracle::min_separator_size(grammar, pos, neg, 7);
    auto f = synthesize_feature(group(pos, neg), 7);
    CHECK(f.has_value() == expected.has_value());
    if (!expected || !f) continue;
    ++separable;
    CHECK(oracle::separates(*f, pos, neg));
    CHECK(f->size() == *expected);
  }
}

TEST_CASE("pruning patterns") {
  CHECK(prune_redundant(T("(+ x (- y y))")));
  CHECK(prune_redundant(T("(- (+ x y) y)")));
  CHECK(prune_redundant(T("(+ (- x y) y)")));
  CHECK(prune_redundant(T("(* 1 x)")));
  CHECK(prune_redundant(T("(* x 1)")));
  CHECK(prune_redundant(T("(* 0 x)")));
  CHECK(prune_redundant(T("(+ x 0)")));
  CHECK(prune_redundant(T("(+ 0 x)")));
  CHECK(prune_redundant(T("(- x 0)")));
  CHECK(prune_redundant(T("(* (- 1) (* (- 1) x))")));
  CHECK(prune_redundant(T("(not (not (< x y)))")));
  CHECK(prune_redundant(T("(<= x x)")));
  CHECK(prune_redundant(T("(= (+ x 1) (+ x 1))")));

  CHECK_FALSE(prune_redundant(T("(+ x y)")));
  CHECK_FALSE(prune_redundant(T("(- 0 x)")));
  CHECK_FALSE(prune_redundant(T("(* (- 1) x)")));
  CHECK_FALSE(prune_redundant(T("(- x (- y x))")));
  CHECK_FALSE(prune_redundant(T("(<= x y)")));
}

TEST_CASE("pruned terms have smaller solver-equivalent forms") {
  oracle::TermGen gen(5, kXY);
  SolverOptions o;
  o.path = resolve_solver_path();
  SolverSession s(o);
  auto e = [&] { return gen.grammar_int(1 + 2 * static_cast<std::size_t>(gen.pick(0, 2))); };
  std::vector<std::function<Term()>> patterns{
      [&] { Term a = e(), x = e(); return Term::app(Op::Add, {a, Term::app(Op::Sub, {x, x})}); },
      [&] { Term a = e(), x = e(); return Term::app(Op::Sub, {Term::app(Op::Add, {a, x}), x}); },
      [&] { Term a = e(), x = e(); return Term::app(Op::Add, {Term::app(Op::Sub, {a, x}), x}); },
      [&] { return Term::app(Op::Mul, {Term::integer(1), e()}); },
      [&] { return Term::app(Op::Mul, {Term::integer(0), e()}); },
      [&] { return Term::app(Op::Add, {e(), Term::integer(0)}); },
      [&] { return Term::app(Op::Sub, {e(), Term::integer(0)}); },
      [&] {
        return Term::app(Op::Mul, {Term::integer(-1), Term::app(Op::Mul, {Term::integer(-1), e()})});
      },
      [&] { return Term::app(Op::Not, {Term::app(Op::Not, {Term::app(Op::Lt, {e(), e()})})}); },
      [&] {
        static constexpr Op cmps[] = {Op::Eq, Op::Le, Op::Ge, Op::Lt, Op::Gt};
        Term a = e();
        return Term::app(cmps[gen.pick(0, 4)], {a, a});
      },
  };
  for (std::size_t k = 0; k < patterns.size(); ++k) {
    for (int i = 0; i < 20; ++i) {
      Term t = patterns[k]();
      INFO(print_term(t));
      CHECK(prune_redundant(t));
      auto r = oracle::reduce(t);
      REQUIRE(r);
      CHECK(r->size() < t.size());
      CHECK(s.check_valid(Term::app(Op::Eq, {t, *r}), kXY).valid());
    }
  }
}
