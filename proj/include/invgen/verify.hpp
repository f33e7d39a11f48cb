#pragma once

#include <string>
#include <string_view>

#include "invgen/solver.hpp"
#include "invgen/sygus.hpp"

namespace invgen {

struct VerificationReport {
  CheckResult weaker_than_pre;     // pre(s) => inv(s)
  CheckResult inductive;           // inv(s) /\ trans(s, t) => inv(t)
  CheckResult stronger_than_post;  // inv(s) => post(s)
  bool overall = false;

  bool any_unknown() const {
    return weaker_than_pre.unknown() || inductive.unknown() || stronger_than_post.unknown();
  }
};

/// Checks the three sufficiency conditions of `inv` for `p`, one validity
/// query each, with relation calls inlined. The inductive counterexample
/// binds both the state and its primed successor.
VerificationReport check_invariant(const Problem& p, const Term& inv, SolverSession& session);

/// Parses `inv_text` (a `define-fun` or a bare term) against `p` and checks
/// it in a session of its own.
VerificationReport check_invariant_text(const Problem& p, std::string_view inv_text, const SolverOptions& solver);

std::string format_report(const VerificationReport& r);

}  // namespace invgen
