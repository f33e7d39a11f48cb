#include "invgen/record.hpp"

#include <exception>
#include <thread>

#include "invgen/errors.hpp"

namespace invgen {

namespace {

std::vector<Variable> primed_vars(std::span<const Variable> vars) {
  std::vector<Variable> out;
  for (const auto& v : vars) out.push_back({primed(v.name), v.sort});
  return out;
}

State unprime(const State& s, std::span<const Variable> vars) {
  State out;
  for (const auto& v : vars) out.set(v.name, s.at(primed(v.name)));
  return out;
}

}  // namespace

std::vector<State> record_states_from(const Problem& p, const State& start, std::size_t k, SolverSession& session,
                                      Clock::time_point deadline) {
  std::vector<State> walk{start};
  if (k <= 1) return walk;
  const Term trans = p.trans_inlined();
  const auto next_vars = primed_vars(p.inv_params);
  std::unordered_set<State, StateHash> seen{start};
  State current = start;
  while (walk.size() < k && Clock::now() < deadline) {
    std::map<std::string, Term> fixed;
    for (const auto& v : p.inv_params) fixed.emplace(v.name, value_to_term(current.at(v.name)));
    std::optional<State> next;
    try {
      next = session.get_model(substitute(trans, fixed), next_vars);
    } catch (const Error&) {
      break;
    }
    if (!next) break;
    current = unprime(*next, p.inv_params);
    if (!seen.insert(current).second) break;
    walk.push_back(current);
  }
  return walk;
}

StateSet record(const Problem& p, std::size_t n, SolverSession& session, Clock::time_point deadline,
                std::vector<std::vector<State>>* runs) {
  StateSet collected;
  if (n == 0) return collected;
  const Term pre = p.pre_inlined();
  const auto pre_vars = free_vars(pre);
  std::vector<Variable> projection;
  for (const auto& v : p.inv_params)
    if (pre_vars.count(v.name)) projection.push_back(v);

  std::vector<Term> unseen;
  while (collected.size() < n && Clock::now() < deadline) {
    std::vector<Term> parts{pre};
    parts.insert(parts.end(), unseen.begin(), unseen.end());
    std::optional<State> start;
    try {
      start = session.get_model(Term::conj(parts), p.inv_params);
    } catch (const Error&) {
      break;
    }
    if (!start) break;
    auto walk = record_states_from(p, *start, n - collected.size(), session, deadline);
    for (const auto& s : walk) {
      if (collected.size() >= n) break;
      if (!collected.insert(s)) continue;
      // Exclude the state's projection from later starts.
      std::vector<Term> eqs;
      for (const auto& v : projection) eqs.push_back(Term::app(Op::Eq, {Term::var(v.name), value_to_term(s.at(v.name))}));
      unseen.push_back(Term::negate(Term::conj(std::move(eqs))));
    }
    if (runs) runs->push_back(std::move(walk));
  }
  return collected;
}

StateSet merge_parallel(std::span<const StateSet> runs) {
  StateSet out;
  for (const auto& run : runs)
    for (const auto& s : run) out.insert(s);
  return out;
}

ParallelRecordResult record_parallel(const Problem& p, std::size_t n, std::span<const std::uint64_t> seeds,
                                     const SolverOptions& solver, std::chrono::milliseconds budget) {
  const std::size_t instances = seeds.size();
  std::vector<StateSet> results(instances);
  std::vector<std::vector<std::vector<State>>> runs(instances);
  std::vector<std::exception_ptr> errors(instances);
  const auto deadline = Clock::now() + budget;
  const std::size_t share = instances ? std::max<std::size_t>(1, n / instances) : 0;
  {
    std::vector<std::jthread> workers;
    for (std::size_t i = 0; i < instances; ++i) {
      workers.emplace_back([&, i] {
        try {
          SolverOptions opts = solver;
          opts.seed = seeds[i];
          SolverSession session(opts);
          results[i] = record(p, share, session, deadline, &runs[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  ParallelRecordResult out;
  out.states = merge_parallel(results);
  for (auto& r : runs)
    for (auto& walk : r) out.runs.push_back(std::move(walk));
  return out;
}

bool replay_sound(const Problem& p, std::span<const State> walk) {
  if (walk.empty()) return true;
  if (!eval_bool(p.pre.body, walk.front(), p.relations)) return false;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    State pair = walk[i];
    for (const auto& v : p.inv_params) pair.set(primed(v.name), walk[i + 1].at(v.name));
    if (!eval_bool(p.trans.body, pair, p.relations)) return false;
  }
  return true;
}

}  // namespace invgen
