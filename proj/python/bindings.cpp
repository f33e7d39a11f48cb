#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "invgen/feature_synth.hpp"
#include "invgen/learner.hpp"
#include "invgen/pipeline.hpp"

namespace py = pybind11;
using namespace invgen;

namespace {

py::object to_py(const Value& v) {
  if (const auto* b = std::get_if<bool>(&v)) return py::bool_(*b);
  std::string digits = std::get<Integer>(v).str();
  return py::reinterpret_steal<py::object>(PyLong_FromString(digits.c_str(), nullptr, 10));
}

py::dict to_py(const State& s) {
  py::dict d;
  for (const auto& [name, value] : s.bindings) d[py::str(name)] = to_py(value);
  return d;
}

State from_py(const py::dict& d) {
  State s;
  for (const auto& [k, v] : d) {
    auto name = py::cast<std::string>(k);
    if (py::isinstance<py::bool_>(v))
      s.set(name, v.cast<bool>());
    else
      s.set(name, Integer(py::str(v).cast<std::string>()));
  }
  return s;
}

py::list names(const std::set<std::string>& s) {
  py::list out;
  for (const auto& n : s) out.append(n);
  return out;
}

py::dict check_result(const CheckResult& c) {
  py::dict d;
  switch (c.verdict) {
    case CheckResult::Verdict::Valid: d["verdict"] = "valid"; break;
    case CheckResult::Verdict::Counterexample: d["verdict"] = "counterexample"; break;
    case CheckResult::Verdict::Unknown: d["verdict"] = "unknown"; break;
  }
  d["counterexample"] = c.counterexample ? py::object(to_py(*c.counterexample)) : py::none();
  d["reason"] = c.reason;
  return d;
}

Problem parse_or_raise(const std::string& source) {
  try {
    return parse_problem(source);
  } catch (const ParseError& e) {
    throw py::value_error(e.what());
  }
}

py::dict solve(const std::string& source, std::size_t states, std::size_t steps_on_restart,
               std::size_t conflict_group_size, std::size_t record_instances, std::vector<std::uint64_t> seeds,
               std::size_t max_feature_size, std::string solver_path, double timeout) {
  Config c;
  c.num_states = states;
  c.num_steps_on_restart = steps_on_restart;
  c.conflict_group_size = conflict_group_size;
  c.record_instances = record_instances;
  c.seeds = std::move(seeds);
  c.max_feature_size = max_feature_size;
  c.solver_path = std::move(solver_path);
  c.total_timeout = std::chrono::milliseconds(static_cast<long long>(timeout * 1000));
  RunResult r;
  {
    py::gil_scoped_release release;
    r = solve_text(source, c);
  }
  py::dict d;
  d["status"] = run_status_name(r.status);
  d["exit_code"] = exit_code(r.status);
  d["invariant"] = r.status == RunStatus::Solved ? py::object(py::str(r.invariant_text)) : py::none();
  d["witness"] = r.witness ? py::object(to_py(*r.witness)) : py::none();
  d["reason"] = r.reason;
  py::dict timings;
  for (const auto& [phase, ms] : r.timings) timings[py::str(phase)] = ms;
  d["timings_ms"] = timings;
  d["seeds"] = r.seeds;
  return d;
}

py::dict check(const std::string& problem, const std::string& invariant, const std::string& solver_path) {
  SolverOptions o;
  o.path = resolve_solver_path(solver_path);
  CheckRun c;
  {
    py::gil_scoped_release release;
    c = check_text(problem, invariant, o);
  }
  if (c.status == RunStatus::InputError) throw py::value_error(c.reason);
  py::dict d;
  d["weaker_than_pre"] = check_result(c.report.weaker_than_pre);
  d["inductive"] = check_result(c.report.inductive);
  d["stronger_than_post"] = check_result(c.report.stronger_than_post);
  d["overall"] = c.report.overall;
  d["exit_code"] = exit_code(c.status);
  return d;
}

py::dict usage(const std::string& source) {
  auto u = analyze_usage(parse_or_raise(source));
  py::dict d;
  d["pre"] = names(u.pre_used);
  d["trans"] = names(u.trans_used);
  d["post"] = names(u.post_used);
  d["vars"] = names(u.used);
  return d;
}

py::dict problem_summary(const std::string& source) {
  Problem p = parse_or_raise(source);
  py::dict d;
  d["logic"] = p.logic;
  d["inv_name"] = p.inv_name;
  py::list params;
  for (const auto& v : p.inv_params) params.append(py::make_tuple(v.name, std::string(sort_name(v.sort))));
  d["params"] = params;
  d["pre"] = print_term(p.pre.body);
  d["trans"] = print_term(p.trans.body);
  d["post"] = print_term(p.post.body);
  return d;
}

std::optional<std::string> synthesize(const std::vector<py::dict>& positives, const std::vector<py::dict>& negatives,
                                      std::size_t max_size) {
  ConflictGroup g;
  for (const auto& s : positives) g.positives.push_back(from_py(s));
  for (const auto& s : negatives) g.negatives.push_back(from_py(s));
  if (!g.positives.empty()) {
    for (const auto& [name, value] : g.positives.front().bindings)
      g.variables.push_back({name, std::holds_alternative<bool>(value) ? Sort::Bool : Sort::Int});
  }
  auto f = synthesize_feature(g, max_size);
  if (!f) return std::nullopt;
  return print_term(*f);
}

std::vector<std::vector<std::pair<std::size_t, bool>>> learn(const std::vector<std::vector<bool>>& positives,
                                                              const std::vector<std::vector<bool>>& negatives,
                                                              std::size_t num_features, std::size_t k) {
  CnfFormula f;
  try {
    f = learn_cnf(positives, negatives, num_features, k);
  } catch (const LearnerFailure& e) {
    throw py::value_error(e.what());
  }
  std::vector<std::vector<std::pair<std::size_t, bool>>> out;
  for (const auto& c : f.clauses) {
    auto& clause = out.emplace_back();
    for (const auto& l : c) clause.emplace_back(l.feature, l.positive);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_invgen, m) {
  m.doc() = "Loop invariant synthesis for SyGuS-INV problems";

  m.def("solve", &solve, py::arg("source"), py::arg("states") = 512, py::arg("steps_on_restart") = 256,
        py::arg("conflict_group_size") = 64, py::arg("record_instances") = 2,
        py::arg("seeds") = std::vector<std::uint64_t>{}, py::arg("max_feature_size") = 7,
        py::arg("solver_path") = "", py::arg("timeout") = 60.0,
        "Run the full pipeline on SyGuS-INV source text.");
  m.def("check", &check, py::arg("problem"), py::arg("invariant"), py::arg("solver_path") = "",
        "Check the three sufficiency conditions of an invariant.");
  m.def("analyze_usage", &usage, py::arg("source"));
  m.def("parse_problem", &problem_summary, py::arg("source"));
  m.def("synthesize_feature", &synthesize, py::arg("positives"), py::arg("negatives"), py::arg("max_size") = 7);
  m.def("learn_cnf", &learn, py::arg("positives"), py::arg("negatives"), py::arg("num_features"),
        py::arg("k") = 1);
}
