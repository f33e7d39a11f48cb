#pragma once

#include <optional>
#include <span>
#include <vector>

#include "invgen/sygus.hpp"

namespace invgen {

/// States that share a feature vector but carry opposite labels.
struct ConflictGroup {
  std::vector<State> positives;
  std::vector<State> negatives;
  std::vector<Variable> variables;
};

/// Default integer constants available to the synthesizer.
std::vector<Integer> base_constants();

/// {0, 1, -1} followed by every integer literal of pre, trans and post
/// (relation calls inlined), without duplicates.
std::vector<Integer> constant_pool(const Problem& p);

/// Syntactic redundancy filter applied before a candidate is evaluated.
/// Returns true when `t` should be discarded because a strictly smaller
/// equivalent term exists: additive-inverse cancellation (e + x - x), additive
/// identity (e + 0, e - 0), multiplication by 1 or 0, double negation, and
/// comparisons whose sides are identical.
bool prune_redundant(const Term& t);

struct SynthStats {
  std::size_t int_terms = 0;     // distinct integer behaviours kept
  std::size_t pruned = 0;        // candidates dropped syntactically
  std::size_t features_tried = 0;
};

/// Smallest boolean feature (node count at most `max_size`) of the grammar
///   feature ::= b | (not b) | (cmp e e) | (not (= e e))
///   e       ::= x | c | (+ e e) | (- e e) | (* c e)
///   cmp     ::= = | <= | >= | < | >
/// that is true on every positive and false on every negative of the group.
/// Integer variables, Bool variables and `constants` form the leaves.
/// Integer subterms that agree on all group states are merged, keeping the
/// first one enumerated. Returns nullopt when no such feature exists.
std::optional<Term> synthesize_feature(const ConflictGroup& g, std::size_t max_size,
                                       std::span<const Integer> constants, SynthStats* stats = nullptr);

inline std::optional<Term> synthesize_feature(const ConflictGroup& g, std::size_t max_size) {
  auto pool = base_constants();
  return synthesize_feature(g, max_size, pool);
}

}  // namespace invgen
