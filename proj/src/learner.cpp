#include "invgen/learner.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace invgen {

bool clause_holds(const Clause& c, const FeatureRow& row) {
  return std::any_of(c.begin(), c.end(), [&](const Literal& l) { return row[l.feature] == l.positive; });
}

bool cnf_holds(const CnfFormula& f, const FeatureRow& row) {
  return std::all_of(f.clauses.begin(), f.clauses.end(), [&](const Clause& c) { return clause_holds(c, row); });
}

namespace {

// Past this many candidate clauses we stop widening and close the cover with
// one complete clause per remaining negative row.
constexpr std::size_t kMaxCandidates = 1u << 21;

std::size_t count_candidates(std::size_t n, std::size_t k) {
  std::size_t total = 0;
  std::size_t binom = 1;  // C(n, j)
  std::size_t pow2 = 1;
  for (std::size_t j = 1; j <= k && j <= n; ++j) {
    binom = binom * (n - j + 1) / j;
    pow2 *= 2;
    if (binom > kMaxCandidates || binom * pow2 > kMaxCandidates) return kMaxCandidates + 1;
    total += binom * pow2;
    if (total > kMaxCandidates) return total;
  }
  return total;
}

std::vector<FeatureRow> distinct(std::span<const FeatureRow> rows) {
  std::set<FeatureRow> seen;
  std::vector<FeatureRow> out;
  for (const auto& r : rows)
    if (seen.insert(r).second) out.push_back(r);
  return out;
}

/// Clauses of at most `k` literals true on all positives, in lexicographic
/// order of their (feature, polarity) sequences, positive polarity first.
void enumerate_clauses(std::size_t num_features, std::size_t k, const std::vector<FeatureRow>& positives,
                       std::vector<Clause>& out) {
  Clause current;
  // satisfied[i]: positive row i already satisfied by `current`.
  std::vector<std::vector<char>> satisfied_stack{std::vector<char>(positives.size(), 0)};
  auto rec = [&](auto&& self, std::size_t first) -> void {
    for (std::size_t f = first; f < num_features; ++f) {
      for (bool pol : {true, false}) {
        current.push_back({f, pol});
        const auto& prev = satisfied_stack.back();
        std::vector<char> sat(prev);
        bool all = true;
        for (std::size_t i = 0; i < positives.size(); ++i) {
          if (!sat[i] && positives[i][f] == pol) sat[i] = 1;
          all = all && sat[i];
        }
        if (all) out.push_back(current);
        if (current.size() < k) {
          satisfied_stack.push_back(std::move(sat));
          self(self, f + 1);
          satisfied_stack.pop_back();
        }
        current.pop_back();
      }
    }
  };
  rec(rec, 0);
}

Clause complete_clause(const FeatureRow& negative) {
  // The only row falsifying this clause is `negative` itself.
  Clause c;
  for (std::size_t f = 0; f < negative.size(); ++f) c.push_back({f, !negative[f]});
  return c;
}

bool lex_less(const Clause& a, const Clause& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const Literal& x, const Literal& y) {
    if (x.feature != y.feature) return x.feature < y.feature;
    return x.positive && !y.positive;
  });
}

}  // namespace

CnfFormula learn_cnf(std::span<const FeatureRow> positives_in, std::span<const FeatureRow> negatives_in,
                     std::size_t num_features, std::size_t k) {
  const auto positives = distinct(positives_in);
  const auto negatives = distinct(negatives_in);
  CnfFormula out;
  out.k = std::max<std::size_t>(k, 1);
  if (negatives.empty()) return out;
  for (const auto& n : negatives)
    if (std::find(positives.begin(), positives.end(), n) != positives.end())
      throw LearnerFailure("conflicting rows cannot be separated by a CNF");
  if (num_features == 0) throw LearnerFailure("no features to separate negatives");

  for (std::size_t width = out.k; width <= num_features; ++width) {
    if (count_candidates(num_features, width) > kMaxCandidates) break;
    std::vector<Clause> candidates;
    enumerate_clauses(num_features, width, positives, candidates);

    // falsified[c][j]: candidate c is false on negative j.
    std::vector<std::vector<char>> falsified(candidates.size(), std::vector<char>(negatives.size()));
    for (std::size_t c = 0; c < candidates.size(); ++c)
      for (std::size_t j = 0; j < negatives.size(); ++j) falsified[c][j] = !clause_holds(candidates[c], negatives[j]);

    std::vector<char> covered(negatives.size(), 0);
    std::size_t remaining = negatives.size();
    std::vector<Clause> chosen;
    while (remaining > 0) {
      std::size_t best = candidates.size();
      std::size_t best_gain = 0;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        std::size_t gain = 0;
        for (std::size_t j = 0; j < negatives.size(); ++j) gain += (!covered[j] && falsified[c][j]);
        if (gain == 0) continue;
        if (best == candidates.size() || gain > best_gain ||
            (gain == best_gain && candidates[c].size() < candidates[best].size()) ||
            (gain == best_gain && candidates[c].size() == candidates[best].size() &&
             lex_less(candidates[c], candidates[best]))) {
          best = c;
          best_gain = gain;
        }
      }
      if (best == candidates.size()) break;
      chosen.push_back(candidates[best]);
      for (std::size_t j = 0; j < negatives.size(); ++j)
        if (!covered[j] && falsified[best][j]) {
          covered[j] = 1;
          --remaining;
        }
    }
    if (remaining == 0) {
      out.clauses = std::move(chosen);
      out.k = width;
      return out;
    }
  }

  // Too many candidates to widen further: one complete clause per negative.
  out.k = num_features;
  for (const auto& n : negatives) out.clauses.push_back(complete_clause(n));
  return out;
}

Term cnf_to_term(const CnfFormula& f, std::span<const Term> features) {
  std::vector<Term> clauses;
  for (const auto& c : f.clauses) {
    std::vector<Term> lits;
    for (const auto& l : c) lits.push_back(l.positive ? features[l.feature] : Term::negate(features[l.feature]));
    clauses.push_back(Term::disj(std::move(lits)));
  }
  return Term::conj(std::move(clauses));
}

// ---------------------------------------------------------------------------

void Dataset::update(const Relations& rels) {
  auto extend = [&](const std::vector<State>& states, std::vector<FeatureRow>& rows) {
    rows.resize(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      auto& row = rows[i];
      for (std::size_t f = row.size(); f < features.size(); ++f) {
        bool value = false;
        try {
          value = eval_bool(features[f], states[i], rels);
        } catch (const EvalError&) {
          ++undefined_evaluations;
        }
        row.push_back(value);
      }
    }
  };
  extend(positives, positive_rows);
  extend(negatives, negative_rows);
}

std::vector<ConflictGroup> find_conflicts(const Dataset& d, std::span<const Variable> vars, std::size_t cap) {
  std::map<FeatureRow, std::size_t> index;
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> buckets;
  auto bucket_of = [&](const FeatureRow& row) -> std::size_t {
    auto [it, inserted] = index.emplace(row, buckets.size());
    if (inserted) buckets.emplace_back();
    return it->second;
  };
  for (std::size_t i = 0; i < d.positives.size(); ++i) buckets[bucket_of(d.positive_rows[i])].first.push_back(i);
  for (std::size_t i = 0; i < d.negatives.size(); ++i) buckets[bucket_of(d.negative_rows[i])].second.push_back(i);

  std::vector<ConflictGroup> groups;
  for (const auto& [pos, neg] : buckets) {
    if (pos.empty() || neg.empty()) continue;
    ConflictGroup g;
    g.variables.assign(vars.begin(), vars.end());
    for (std::size_t i = 0; i < pos.size() && i < cap; ++i) g.positives.push_back(d.positives[pos[i]]);
    for (std::size_t i = 0; i < neg.size() && i < cap; ++i) g.negatives.push_back(d.negatives[neg[i]]);
    groups.push_back(std::move(g));
  }
  return groups;
}

Term pie(const StateSet& positives, const StateSet& negatives, std::span<const Variable> vars,
         const LearnerOptions& options, std::vector<Term>& features, LearnerStats* stats) {
  if (negatives.empty()) return Term::boolean(true);
  if (positives.empty()) return Term::boolean(false);
  Dataset d;
  d.positives = positives.states();
  d.negatives = negatives.states();
  d.features = features;
  d.update();
  for (;;) {
    auto groups = find_conflicts(d, vars, options.conflict_group_size);
    if (groups.empty()) break;
    const auto& g = groups.front();
    const std::size_t wide = options.max_feature_size + options.escalation;
    auto f = synthesize_feature(g, options.max_feature_size, options.constants);
    if (!f) f = synthesize_feature(g, wide, options.constants);
    // Splitting off part of the group still removes conflicting pairs.
    ConflictGroup sub = g;
    while (!f && (sub.positives.size() > 1 || sub.negatives.size() > 1)) {
      sub.positives.resize((sub.positives.size() + 1) / 2);
      sub.negatives.resize((sub.negatives.size() + 1) / 2);
      f = synthesize_feature(sub, wide, options.constants);
      if (f && stats) ++stats->split_groups;
    }
    if (!f) throw LearnerFailure("no feature separates a conflict group of " + std::to_string(g.positives.size()) +
                                 " positive and " + std::to_string(g.negatives.size()) + " negative states");
    d.features.push_back(*f);
    features.push_back(*f);
    d.update();
    if (stats) {
      ++stats->synthesized;
      ++stats->conflicts_resolved;
    }
  }
  if (stats) stats->undefined_evaluations += d.undefined_evaluations;
  auto cnf = learn_cnf(d.positive_rows, d.negative_rows, d.features.size(), 1);
  return cnf_to_term(cnf, d.features);
}

}  // namespace invgen
