#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "invgen/solver.hpp"
#include "invgen/sygus.hpp"

namespace invgen {

using Clock = std::chrono::steady_clock;

/// Insertion-ordered set of distinct states.
class StateSet {
 public:
  StateSet() = default;
  StateSet(std::initializer_list<State> states) {
    for (const auto& s : states) insert(s);
  }

  /// Returns false when `s` is already present.
  bool insert(const State& s) {
    if (!index_.insert(s).second) return false;
    items_.push_back(s);
    return true;
  }
  bool contains(const State& s) const { return index_.count(s) != 0; }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const State& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::vector<State>& states() const { return items_; }

  friend bool operator==(const StateSet& a, const StateSet& b) { return a.items_ == b.items_; }

 private:
  std::vector<State> items_;
  std::unordered_set<State, StateHash> index_;
};

/// Walks the transition relation from `start`: returns `start` followed by
/// up to `k - 1` successors, one solver model per step (primed variables not
/// constrained by the transition are completed pseudo-randomly). Stops early
/// when no successor exists, when a state of the walk repeats, at the
/// deadline, or on a solver failure.
std::vector<State> record_states_from(const Problem& p, const State& start, std::size_t k, SolverSession& session,
                                      Clock::time_point deadline = Clock::time_point::max());

/// Samples at most `n` distinct loop-head states: repeatedly solves for a
/// precondition model unseen on the variables the precondition mentions, and
/// walks the transition relation from it. `runs`, when given, receives every
/// walk as produced (before deduplication).
StateSet record(const Problem& p, std::size_t n, SolverSession& session,
                Clock::time_point deadline = Clock::time_point::max(),
                std::vector<std::vector<State>>* runs = nullptr);

/// Concatenation in instance order with duplicates removed.
StateSet merge_parallel(std::span<const StateSet> runs);

struct ParallelRecordResult {
  StateSet states;
  std::vector<std::vector<State>> runs;
};

/// One `record` instance per seed, each with its own solver session and a
/// budget of `n / seeds.size()` states, run on separate threads and merged.
ParallelRecordResult record_parallel(const Problem& p, std::size_t n, std::span<const std::uint64_t> seeds,
                                     const SolverOptions& solver, std::chrono::milliseconds budget);

/// True when the walk's head satisfies pre and each adjacent pair satisfies
/// trans, checked by evaluation.
bool replay_sound(const Problem& p, std::span<const State> walk);

}  // namespace invgen
