#include "invgen/pipeline.hpp"

#include <fstream>
#include <sstream>

namespace invgen {

const char* run_status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Solved: return "solved";
    case RunStatus::Infeasible: return "infeasible";
    case RunStatus::Unknown: return "unknown";
    case RunStatus::InputError: return "input-error";
  }
  return "unknown";
}

int exit_code(RunStatus s) {
  switch (s) {
    case RunStatus::Solved: return 0;
    case RunStatus::Infeasible: return 1;
    case RunStatus::Unknown: return 2;
    case RunStatus::InputError: return 3;
  }
  return 2;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

class Phases {
 public:
  Phases(RunResult& r, std::ostream* log) : r_(r), log_(log), start_(Clock::now()) {}

  void done(const std::string& name, const std::string& detail = {}) {
    auto now = Clock::now();
    long long ms = std::chrono::duration_cast<std::chrono::milliseconds>(now - start_).count();
    r_.timings.emplace_back(name, ms);
    if (log_) {
      *log_ << "[" << name << "] " << ms << " ms";
      if (!detail.empty()) *log_ << " " << detail;
      *log_ << "\n";
    }
    start_ = now;
  }

 private:
  RunResult& r_;
  std::ostream* log_;
  Clock::time_point start_;
};

std::chrono::milliseconds remaining(Clock::time_point deadline) {
  auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  return std::max(left, std::chrono::milliseconds(0));
}

}  // namespace

RunResult solve_text(std::string_view source, const Config& config, std::ostream* log) {
  Problem problem;
  try {
    problem = parse_problem(source);
  } catch (const ParseError& e) {
    RunResult r;
    r.status = RunStatus::InputError;
    r.reason = e.what();
    return r;
  }
  return solve_problem(problem, config, log);
}

RunResult solve_problem(const Problem& original, const Config& config, std::ostream* log) {
  RunResult r;
  const auto deadline = Clock::now() + config.total_timeout;
  Phases phases(r, log);

  try {
    config.validate();
  } catch (const Error& e) {
    r.status = RunStatus::InputError;
    r.reason = e.what();
    return r;
  }
  r.seeds = config.effective_seeds();

  SolverOptions solver;
  try {
    solver.path = resolve_solver_path(config.solver_path);
  } catch (const Error& e) {
    r.status = RunStatus::Unknown;
    r.reason = e.what();
    return r;
  }
  solver.timeout = config.query_timeout;
  solver.logic = original.logic;
  solver.seed = r.seeds.front();

  r.usage = analyze_usage(original);
  const Problem p = simplify(original, r.usage);
  phases.done("preprocess", "vars=" + std::to_string(original.inv_params.size()) +
                                " used=" + std::to_string(p.inv_params.size()));

  auto finish_solved = [&](const Term& inv) {
    r.invariant = inv;
    r.invariant_text = print_definition(original.inv_name, original.inv_params, inv);
    SolverOptions fresh = solver;
    fresh.seed = 0;
    auto report = check_invariant_text(original, r.invariant_text, fresh);
    phases.done("verify", report.overall ? "valid" : "invalid");
    if (report.overall) {
      r.status = RunStatus::Solved;
    } else {
      r.status = RunStatus::Unknown;
      r.reason = "final verification failed:\n" + format_report(report);
      r.invariant_text.clear();
    }
  };

  try {
    SolverSession session(solver);
    auto feas = check_feasible(p, {}, session);
    phases.done("feasibility", feas.feasible ? "feasible" : "infeasible");
    if (!feas.feasible) {
      r.status = RunStatus::Infeasible;
      r.witness = feas.witness;
      r.reason = "pre does not imply post";
      return r;
    }

    if (p.inv_params.empty()) {
      // Nothing reaches the verdicts through the state: post itself is closed.
      finish_solved(p.post_inlined());
      return r;
    }

    auto budget = std::min(config.record_timeout, remaining(deadline));
    auto rec = record_parallel(p, config.num_states, r.seeds, solver, budget);
    phases.done("record", "|Z|=" + std::to_string(rec.states.size()) + " runs=" + std::to_string(rec.runs.size()));

    auto outcome = infer(p, rec.states, config, session, deadline);
    r.stats = outcome.stats;
    phases.done("infer", "|Z|=" + std::to_string(outcome.stats.states) +
                             " features=" + std::to_string(outcome.stats.features) +
                             " rounds=" + std::to_string(outcome.stats.rounds) +
                             " restarts=" + std::to_string(outcome.stats.restarts));
    switch (outcome.status) {
      case InferOutcome::Status::Solved:
        finish_solved(outcome.invariant);
        return r;
      case InferOutcome::Status::Infeasible:
        r.status = RunStatus::Infeasible;
        r.witness = outcome.witness;
        r.reason = outcome.reason;
        return r;
      case InferOutcome::Status::Unknown:
        r.status = RunStatus::Unknown;
        r.reason = Clock::now() >= deadline ? "timeout" : outcome.reason;
        return r;
    }
  } catch (const SolverError& e) {
    r.status = RunStatus::Unknown;
    r.reason = std::string("solver: ") + e.what();
  } catch (const SolverUnknown& e) {
    r.status = RunStatus::Unknown;
    r.reason = std::string("solver: ") + e.what();
  }
  return r;
}

CheckRun check_text(std::string_view problem_source, std::string_view invariant_source,
                    const SolverOptions& solver) {
  CheckRun out;
  Problem p;
  Term inv;
  try {
    p = parse_problem(problem_source);
    inv = parse_invariant(invariant_source, p);
  } catch (const ParseError& e) {
    out.status = RunStatus::InputError;
    out.reason = e.what();
    return out;
  }
  try {
    SolverSession session(solver);
    out.report = check_invariant(p, inv, session);
  } catch (const Error& e) {
    out.status = RunStatus::Unknown;
    out.reason = e.what();
    return out;
  }
  if (out.report.overall)
    out.status = RunStatus::Solved;
  else if (out.report.any_unknown())
    out.status = RunStatus::Unknown;
  else
    out.status = RunStatus::Infeasible;  // exit 1: the invariant is refuted
  return out;
}

}  // namespace invgen
