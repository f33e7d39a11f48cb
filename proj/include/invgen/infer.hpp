#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "invgen/learner.hpp"
#include "invgen/record.hpp"
#include "invgen/solver.hpp"
#include "invgen/sygus.hpp"

namespace invgen {

struct Config {
  std::size_t num_states = 512;
  std::size_t conflict_group_size = 64;
  std::size_t num_steps_on_restart = 256;
  std::size_t record_instances = 2;
  /// Record seeds, one per instance. Missing entries continue upwards from
  /// the last one given (or from 1).
  std::vector<std::uint64_t> seeds;
  std::size_t max_feature_size = 7;
  std::string solver_path;
  std::chrono::milliseconds query_timeout{2000};
  std::chrono::milliseconds record_timeout{5000};
  std::chrono::milliseconds total_timeout{60000};
  std::size_t max_restarts = 50;

  /// Throws Error when a count is zero.
  void validate() const;
  std::vector<std::uint64_t> effective_seeds() const;
};

struct InferStats {
  std::size_t restarts = 0;
  std::size_t rounds = 0;            // accepted strengthenings, all epochs
  std::size_t counterexamples = 0;   // inductiveness failures
  std::size_t features = 0;
  std::size_t states = 0;            // final |Z|
  LearnerStats learner;
};

struct InferOutcome {
  enum class Status { Solved, Infeasible, Unknown };

  Status status = Status::Unknown;
  Term invariant;
  /// Reachable state violating post. When found through a transition it
  /// also binds the primed successor.
  std::optional<State> witness;
  std::string reason;
  InferStats stats;

  bool solved() const { return status == Status::Solved; }
  bool infeasible() const { return status == Status::Infeasible; }
};

struct Feasibility {
  bool feasible = true;
  std::optional<State> witness;
  /// "pre" when pre /\ not post is satisfiable, "recorded" for a recorded
  /// state violating post.
  std::string channel;
};

/// Infeasible when pre /\ not post has a model or a state of `z` falsifies
/// post. An unknown solver answer counts as feasible.
Feasibility check_feasible(const Problem& p, const StateSet& z, SolverSession& session);

/// The strengthening loop. Starts from I = post, learns preconditions that
/// make I inductive, conjoins them, and restarts with more states whenever
/// pre does not imply the strengthened I. A solved outcome has been checked
/// by `check_invariant` in a separate session.
InferOutcome infer(const Problem& p, StateSet z, const Config& config, SolverSession& session,
                   Clock::time_point deadline = Clock::time_point::max());

}  // namespace invgen
