#include "invgen/infer.hpp"

#include "invgen/feature_synth.hpp"
#include "invgen/verify.hpp"

namespace invgen {

void Config::validate() const {
  auto positive = [](std::size_t v, const char* name) {
    if (v == 0) throw Error(std::string(name) + " must be at least 1");
  };
  positive(num_states, "num_states");
  positive(conflict_group_size, "conflict_group_size");
  positive(num_steps_on_restart, "num_steps_on_restart");
  positive(record_instances, "record_instances");
  positive(max_feature_size, "max_feature_size");
  if (seeds.size() > record_instances) throw Error("more seeds than record instances");
}

std::vector<std::uint64_t> Config::effective_seeds() const {
  std::vector<std::uint64_t> out(seeds);
  std::uint64_t next = out.empty() ? 1 : out.back() + 1;
  while (out.size() < record_instances) out.push_back(next++);
  return out;
}

namespace {

bool holds(const Term& t, const State& s, const Relations& rels) {
  try {
    return eval_bool(t, s, rels);
  } catch (const EvalError&) {
    // Division by zero has no fixed value; it cannot serve as evidence.
    return true;
  }
}

State successor_of(const State& pair, std::span<const Variable> vars) {
  State t;
  for (const auto& v : vars) t.set(v.name, pair.at(primed(v.name)));
  return t;
}

InferOutcome unknown(std::string why, const InferStats& stats) {
  InferOutcome o;
  o.status = InferOutcome::Status::Unknown;
  o.reason = std::move(why);
  o.stats = stats;
  return o;
}

}  // namespace

Feasibility check_feasible(const Problem& p, const StateSet& z, SolverSession& session) {
  Feasibility f;
  const Term post = p.post_inlined();
  for (const auto& s : z) {
    if (!holds(post, s, {})) {
      f.feasible = false;
      f.witness = s;
      f.channel = "recorded";
      return f;
    }
  }
  try {
    auto m = session.get_model(Term::conj({p.pre_inlined(), Term::negate(post)}), p.inv_params);
    if (m) {
      f.feasible = false;
      f.witness = std::move(m);
      f.channel = "pre";
    }
  } catch (const SolverUnknown&) {
  }
  return f;
}

InferOutcome infer(const Problem& p, StateSet z, const Config& config, SolverSession& session,
                   Clock::time_point deadline) {
  const auto& vars = p.inv_params;
  const auto pair_vars = p.transition_params();
  const Term pre = p.pre_inlined();
  const Term trans = p.trans_inlined();
  const Term post = p.post_inlined();

  LearnerOptions lopts;
  lopts.conflict_group_size = config.conflict_group_size;
  lopts.max_feature_size = config.max_feature_size;
  lopts.constants = constant_pool(p);

  InferStats stats;
  std::vector<Term> features;
  auto timed_out = [&] { return Clock::now() >= deadline; };

  try {
    for (;;) {  // one epoch per restart
      auto feas = check_feasible(p, z, session);
      if (!feas.feasible) {
        InferOutcome o;
        o.status = InferOutcome::Status::Infeasible;
        o.witness = feas.witness;
        o.reason = feas.channel == "pre" ? "pre does not imply post" : "a reachable state violates post";
        stats.states = z.size();
        stats.features = features.size();
        o.stats = stats;
        return o;
      }

      std::vector<Term> invariant{post};
      bool restart = false;
      for (;;) {  // strengthening rounds
        const Term current = Term::conj(invariant);
        const Term current_next = prime_term(current, vars);
        StateSet negatives;
        Term rho;
        for (;;) {
          if (timed_out()) return unknown("timeout", stats);
          rho = pie(z, negatives, vars, lopts, features, &stats.learner);
          auto c = session.check_valid(
              Term::implies(Term::conj({rho, current, trans}), current_next), pair_vars);
          if (c.unknown()) return unknown("solver: " + c.reason, stats);
          if (c.valid()) break;
          ++stats.counterexamples;
          State s = c.counterexample->project(vars);
          if (z.contains(s)) {
            // A reachable state leaves I: either post fails after one step or
            // an earlier precondition was too strong. Both are settled by
            // sampling onward from the successor and starting over.
            State t = successor_of(*c.counterexample, vars);
            for (auto& u : record_states_from(p, t, config.num_steps_on_restart, session, deadline)) z.insert(u);
            restart = true;
            break;
          }
          if (!negatives.insert(s)) return unknown("learner repeated a negative state", stats);
        }
        if (restart) break;

        invariant.push_back(rho);
        ++stats.rounds;
        const Term strengthened = Term::conj(invariant);
        auto c = session.check_valid(Term::implies(pre, strengthened), vars);
        if (c.unknown()) return unknown("solver: " + c.reason, stats);
        if (!c.valid()) {
          for (auto& u : record_states_from(p, *c.counterexample, config.num_steps_on_restart, session, deadline))
            z.insert(u);
          restart = true;
          break;
        }
        if (rho.is_bool_lit() && rho.bool_value()) {
          stats.states = z.size();
          stats.features = features.size();
          SolverOptions fresh = session.options();
          auto report = check_invariant_text(p, print_term(strengthened), fresh);
          if (!report.overall) return unknown("independent verification failed:\n" + format_report(report), stats);
          InferOutcome o;
          o.status = InferOutcome::Status::Solved;
          o.invariant = strengthened;
          o.stats = stats;
          return o;
        }
      }
      ++stats.restarts;
      if (stats.restarts > config.max_restarts) return unknown("restart limit reached", stats);
    }
  } catch (const LearnerFailure& e) {
    return unknown(std::string("learner: ") + e.what(), stats);
  } catch (const SolverError& e) {
    return unknown(std::string("solver: ") + e.what(), stats);
  } catch (const SolverUnknown& e) {
    return unknown(std::string("solver: ") + e.what(), stats);
  }
}

}  // namespace invgen
