#include <CLI11.hpp>

#include <iostream>

#include "invgen/pipeline.hpp"

using namespace invgen;

namespace {

std::string join(const std::set<std::string>& names) {
  std::string out = "{";
  for (const auto& n : names) out += (out.size() > 1 ? "," : "") + n;
  return out + "}";
}

int run_solve(const std::string& file, const Config& config, bool verbose) {
  std::string source;
  try {
    source = read_file(file);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(RunStatus::InputError);
  }
  RunResult r = solve_text(source, config, &std::cerr);
  if (verbose && r.status != RunStatus::InputError) {
    std::cerr << "usage: pre=" << join(r.usage.pre_used) << " trans=" << join(r.usage.trans_used)
              << " post=" << join(r.usage.post_used) << " vars=" << join(r.usage.used) << "\n";
    std::cerr << "seeds:";
    for (auto s : r.seeds) std::cerr << " " << s;
    std::cerr << "\ncounterexamples=" << r.stats.counterexamples
              << " synthesized=" << r.stats.learner.synthesized
              << " undefined_evaluations=" << r.stats.learner.undefined_evaluations << "\n";
  }
  switch (r.status) {
    case RunStatus::Solved:
      std::cout << r.invariant_text << "\n";
      break;
    case RunStatus::Infeasible:
      std::cout << "infeasible\n";
      std::cerr << "witness: " << (r.witness ? state_to_string(*r.witness) : "none") << "\n";
      if (!r.reason.empty()) std::cerr << "reason: " << r.reason << "\n";
      break;
    case RunStatus::Unknown:
      std::cout << "unknown\n";
      std::cerr << "reason: " << r.reason << "\n";
      break;
    case RunStatus::InputError:
      std::cerr << "error: " << r.reason << "\n";
      break;
  }
  return exit_code(r.status);
}

int run_check(const std::string& file, const std::string& inv_file, const std::string& solver_path,
              double timeout_s) {
  std::string problem, invariant;
  try {
    problem = read_file(file);
    invariant = read_file(inv_file);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(RunStatus::InputError);
  }
  SolverOptions solver;
  try {
    solver.path = resolve_solver_path(solver_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(RunStatus::Unknown);
  }
  solver.timeout = std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000));
  CheckRun c = check_text(problem, invariant, solver);
  if (c.status == RunStatus::InputError) {
    std::cerr << "error: " << c.reason << "\n";
    return exit_code(c.status);
  }
  if (!c.reason.empty()) {
    std::cerr << "error: " << c.reason << "\n";
    return exit_code(c.status);
  }
  std::cout << format_report(c.report);
  return exit_code(c.status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loop invariant synthesis for SyGuS-INV problems"};
  app.require_subcommand(1);

  Config config;
  std::string file;
  std::string inv_file;
  double timeout_s = 60;
  double query_timeout_s = 2;
  bool verbose = false;

  auto* solve = app.add_subcommand("solve", "Synthesize an invariant");
  solve->add_option("file", file, "SyGuS-INV problem")->required();
  solve->add_option("--states", config.num_states, "States to record")->capture_default_str();
  solve->add_option("--steps-on-restart", config.num_steps_on_restart, "States recorded from a counterexample")
      ->capture_default_str();
  solve->add_option("--conflict-group-size", config.conflict_group_size, "States per side of a conflict group")
      ->capture_default_str();
  solve->add_option("--record-instances", config.record_instances, "Parallel record instances")
      ->capture_default_str();
  solve->add_option("--seed", config.seeds, "Record seed, one per instance (repeatable)");
  solve->add_option("--max-feature-size", config.max_feature_size, "Node bound for synthesized features")
      ->capture_default_str();
  solve->add_option("--solver-path", config.solver_path, "SMT solver executable (default $SOLVER_PATH, then z3)");
  solve->add_option("--timeout", timeout_s, "Total time limit in seconds")->capture_default_str();
  solve->add_option("--query-timeout", query_timeout_s, "Per-query solver limit in seconds")->capture_default_str();
  solve->add_flag("--verbose", verbose, "Extra diagnostics on stderr");

  std::string check_solver;
  auto* check = app.add_subcommand("check", "Check a candidate invariant");
  check->add_option("file", file, "SyGuS-INV problem")->required();
  check->add_option("invariant", inv_file, "define-fun or bare term")->required();
  check->add_option("--solver-path", check_solver, "SMT solver executable");
  check->add_option("--query-timeout", query_timeout_s, "Per-query solver limit in seconds")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : exit_code(RunStatus::InputError);
  }

  if (*solve) {
    config.total_timeout = std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000));
    config.query_timeout = std::chrono::milliseconds(static_cast<long long>(query_timeout_s * 1000));
    return run_solve(file, config, verbose);
  }
  return run_check(file, inv_file, check_solver, query_timeout_s);
}
