#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "invgen/term.hpp"

namespace invgen {

struct SolverOptions {
  /// Executable speaking SMT-LIB 2 on stdin/stdout.
  std::string path;
  /// Extra command line arguments. When empty they are derived from the
  /// executable name (`-in -smt2` for z3, `--lang=smt2 --incremental` for cvc5).
  std::vector<std::string> args;
  std::chrono::milliseconds timeout{2000};
  /// Seed of the PRNG that completes partial models.
  std::uint64_t seed = 1;
  std::string logic = "LIA";
};

/// `flag` if non-empty, else `$SOLVER_PATH`, else `z3` from `$PATH`.
/// Throws Error when nothing usable is found.
std::string resolve_solver_path(const std::string& flag = {});

/// Inclusive range of pseudo-random integers used for model completion.
inline constexpr long long kRandomLow = -1024;
inline constexpr long long kRandomHigh = 1023;

enum class SatResult { Sat, Unsat, Unknown };

struct CheckResult {
  enum class Verdict { Valid, Counterexample, Unknown };

  Verdict verdict = Verdict::Unknown;
  /// Set iff verdict is Counterexample; binds every quantified variable.
  std::optional<State> counterexample;
  std::string reason;

  bool valid() const { return verdict == Verdict::Valid; }
  bool unknown() const { return verdict == Verdict::Unknown; }

  static CheckResult make_valid() { return {Verdict::Valid, std::nullopt, {}}; }
  static CheckResult make_counterexample(State s) { return {Verdict::Counterexample, std::move(s), {}}; }
  static CheckResult make_unknown(std::string why) { return {Verdict::Unknown, std::nullopt, std::move(why)}; }
};

/// One external solver subprocess with scoped, serialized queries.
///
/// Not thread-safe: confine a session to one task. Once the solver crashes,
/// times out or desynchronizes, the session is poisoned and every further
/// call throws SolverError.
class SolverSession {
 public:
  explicit SolverSession(SolverOptions options);
  ~SolverSession();

  SolverSession(const SolverSession&) = delete;
  SolverSession& operator=(const SolverSession&) = delete;

  void push();
  void pop();
  std::size_t depth() const { return scopes_.size(); }

  /// Declares `v` in the current scope unless a declaration is visible.
  void declare(const Variable& v);
  bool is_declared(const std::string& name) const { return declared_.count(name) != 0; }

  /// `t` must be free of relation calls.
  void assert_term(const Term& t);
  SatResult check_sat();
  std::map<std::string, Value> get_values(std::span<const Variable> vars);

  /// A satisfying assignment over `vars`, or nullopt if `constraint` is
  /// unsatisfiable. Variables of `vars` not occurring in the constraint get
  /// pseudo-random values. Undeclared free variables of the constraint must
  /// appear in `vars`. The returned model is re-checked by evaluation.
  /// Throws SolverUnknown on unknown/timeout.
  std::optional<State> get_model(const Term& constraint, std::span<const Variable> vars);

  /// Validity of `formula` universally quantified over `vars`, decided as
  /// unsatisfiability of its negation. Never throws SolverUnknown.
  CheckResult check_valid(const Term& formula, std::span<const Variable> vars);

  Value random_value(Sort s);

  bool poisoned() const { return poisoned_; }
  std::uint64_t num_checks() const { return num_checks_; }
  const SolverOptions& options() const { return options_; }

 private:
  class Process;

  std::string exchange(const std::string& command);
  void command(const std::string& command);
  [[noreturn]] void poison(const std::string& why);
  void ensure_live() const;

  SolverOptions options_;
  std::unique_ptr<Process> process_;
  std::vector<std::vector<std::string>> scopes_;
  std::map<std::string, Sort> declared_;
  std::mt19937_64 rng_;
  bool poisoned_ = false;
  std::uint64_t num_checks_ = 0;
};

}  // namespace invgen
