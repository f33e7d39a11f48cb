#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "invgen/infer.hpp"
#include "invgen/preprocess.hpp"
#include "invgen/verify.hpp"

namespace invgen {

enum class RunStatus { Solved, Infeasible, Unknown, InputError };

const char* run_status_name(RunStatus s);
int exit_code(RunStatus s);

struct RunResult {
  RunStatus status = RunStatus::Unknown;
  /// `define-fun` of the invariant over the original signature (solved only).
  std::string invariant_text;
  Term invariant;
  std::optional<State> witness;
  std::string reason;
  /// Wall time per phase in milliseconds, in execution order.
  std::vector<std::pair<std::string, long long>> timings;
  std::vector<std::uint64_t> seeds;
  UsageAnalysis usage;
  InferStats stats;
};

/// parse -> usage analysis -> record -> infer -> verification of the printed
/// answer against the original problem. One line per phase goes to `log`.
RunResult solve_text(std::string_view source, const Config& config, std::ostream* log = nullptr);
RunResult solve_problem(const Problem& problem, const Config& config, std::ostream* log = nullptr);

struct CheckRun {
  RunStatus status = RunStatus::Unknown;  // Solved means the invariant is valid
  VerificationReport report;
  std::string reason;
};

CheckRun check_text(std::string_view problem_source, std::string_view invariant_source,
                    const SolverOptions& solver);

std::string read_file(const std::string& path);

}  // namespace invgen
