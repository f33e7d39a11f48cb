#pragma once

#include <set>
#include <string>
#include <vector>

#include "invgen/sygus.hpp"

namespace invgen {

/// Formal parameters whose value can reach the truth value of pre, trans and
/// post through any chain of relation calls, and the tracked set derived
/// from them.
struct UsageAnalysis {
  std::set<std::string> pre_used;
  std::set<std::string> trans_used;  // may contain primed names
  std::set<std::string> post_used;
  /// pre_used ∪ {v | v or v! in trans_used} ∪ post_used
  std::set<std::string> used;
};

UsageAnalysis analyze_usage(const Problem& p);

/// For every relation, which argument positions are used by its body.
std::map<std::string, std::vector<bool>> used_argument_positions(const Problem& p);

/// Restricts the problem's signatures to the used variables. Dropped
/// variables are replaced by `0`/`false` where they still occur syntactically
/// (only as arguments in unused positions).
Problem simplify(const Problem& p, const UsageAnalysis& u);

}  // namespace invgen
