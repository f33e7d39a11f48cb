#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "invgen/errors.hpp"
#include "invgen/feature_synth.hpp"
#include "invgen/record.hpp"

namespace invgen {

/// Feature synthesis could not separate a conflict group.
class LearnerFailure : public Error {
 public:
  using Error::Error;
};

struct Literal {
  std::size_t feature;
  bool positive;

  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

struct CnfFormula {
  std::vector<Clause> clauses;
  /// Clause width bound at which the cover was found.
  std::size_t k = 0;
};

using FeatureRow = std::vector<bool>;

bool clause_holds(const Clause& c, const FeatureRow& row);
bool cnf_holds(const CnfFormula& f, const FeatureRow& row);

/// Greedy PAC-style k-CNF learner. Candidate clauses have at most k literals
/// over distinct features and are true on every positive row; a greedy cover
/// then picks clauses until every negative row falsifies one of them,
/// preferring the clause that falsifies the most still-uncovered negatives,
/// then fewer literals, then lexicographically smaller (feature, polarity)
/// sequences. When no cover exists at width k the width grows by one up to
/// the number of features. Rows must be conflict-free.
CnfFormula learn_cnf(std::span<const FeatureRow> positives, std::span<const FeatureRow> negatives,
                     std::size_t num_features, std::size_t k = 1);

Term cnf_to_term(const CnfFormula& f, std::span<const Term> features);

/// Labeled states and their feature matrix.
struct Dataset {
  std::vector<State> positives;
  std::vector<State> negatives;
  std::vector<Term> features;
  std::vector<FeatureRow> positive_rows;
  std::vector<FeatureRow> negative_rows;
  /// Number of (state, feature) evaluations that hit a division by zero and
  /// were treated as false.
  std::size_t undefined_evaluations = 0;

  /// Brings the matrix up to date with `features` (evaluates new columns only).
  void update(const Relations& rels = {});
};

/// Positive and negative states sharing a feature vector, grouped by vector
/// in order of first appearance. Each side keeps at most `cap` states,
/// earliest first.
std::vector<ConflictGroup> find_conflicts(const Dataset& d, std::span<const Variable> vars, std::size_t cap);

struct LearnerOptions {
  std::size_t conflict_group_size = 64;
  std::size_t max_feature_size = 7;
  /// Extra nodes allowed on the single retry after synthesis fails.
  std::size_t escalation = 2;
  std::vector<Integer> constants = base_constants();
};

struct LearnerStats {
  std::size_t synthesized = 0;
  std::size_t conflicts_resolved = 0;
  /// Features found only for a halved group.
  std::size_t split_groups = 0;
  std::size_t undefined_evaluations = 0;
};

/// Precondition inference from data: resolves conflicts by synthesizing new
/// features (appended to `features`, which persists across calls), then
/// learns a CNF over the features. A group no feature separates within the
/// size bound is halved on both sides until one does. The result is true on every positive and
/// false on every negative. Throws LearnerFailure when a conflict cannot be
/// resolved.
Term pie(const StateSet& positives, const StateSet& negatives, std::span<const Variable> vars,
         const LearnerOptions& options, std::vector<Term>& features, LearnerStats* stats = nullptr);

}  // namespace invgen
