#include "invgen/verify.hpp"

namespace invgen {

VerificationReport check_invariant(const Problem& p, const Term& inv, SolverSession& session) {
  const Term pre = p.pre_inlined();
  const Term trans = p.trans_inlined();
  const Term post = p.post_inlined();
  const Term body = inline_calls(inv, p.relations);
  const auto state_vars = p.inv_params;
  const auto pair_vars = p.transition_params();

  VerificationReport r;
  r.weaker_than_pre = session.check_valid(Term::implies(pre, body), state_vars);
  r.inductive = session.check_valid(
      Term::implies(Term::conj({body, trans}), prime_term(body, p.inv_params)), pair_vars);
  r.stronger_than_post = session.check_valid(Term::implies(body, post), state_vars);
  r.overall = r.weaker_than_pre.valid() && r.inductive.valid() && r.stronger_than_post.valid();
  return r;
}

VerificationReport check_invariant_text(const Problem& p, std::string_view inv_text, const SolverOptions& solver) {
  Term inv = parse_invariant(inv_text, p);
  SolverSession session(solver);
  return check_invariant(p, inv, session);
}

namespace {

std::string describe(const char* name, const CheckResult& c) {
  std::string line = std::string(name) + ": ";
  switch (c.verdict) {
    case CheckResult::Verdict::Valid:
      return line + "valid";
    case CheckResult::Verdict::Counterexample:
      return line + "counterexample " + state_to_string(*c.counterexample);
    case CheckResult::Verdict::Unknown:
      return line + "unknown (" + c.reason + ")";
  }
  return line;
}

}  // namespace

std::string format_report(const VerificationReport& r) {
  std::string out;
  out += describe("weaker_than_pre", r.weaker_than_pre) + "\n";
  out += describe("inductive", r.inductive) + "\n";
  out += describe("stronger_than_post", r.stronger_than_post) + "\n";
  out += std::string("overall: ") + (r.overall ? "valid" : "invalid") + "\n";
  return out;
}

}  // namespace invgen
