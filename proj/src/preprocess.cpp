#include "invgen/preprocess.hpp"

namespace invgen {

namespace {

class UsageLabeler {
 public:
  explicit UsageLabeler(const Relations& rels) : rels_(rels) {}

  const std::vector<bool>& positions(const std::string& relation) {
    if (auto it = memo_.find(relation); it != memo_.end()) return it->second;
    const auto& def = rels_.at(relation);
    // The call graph is acyclic, so recursion here terminates.
    auto vars = used_vars(def.body);
    std::vector<bool> used(def.params.size());
    for (std::size_t i = 0; i < def.params.size(); ++i) used[i] = vars.count(def.params[i].name) != 0;
    return memo_.emplace(relation, std::move(used)).first->second;
  }

  std::set<std::string> used_vars(const Term& t) {
    std::set<std::string> out;
    collect(t, out);
    return out;
  }

  std::set<std::string> used_params(const RelationDef& def) {
    const auto& mask = positions(def.name);
    std::set<std::string> out;
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) out.insert(def.params[i].name);
    return out;
  }

  const std::map<std::string, std::vector<bool>>& memo() const { return memo_; }

 private:
  void collect(const Term& t, std::set<std::string>& out) {
    if (t.is_var()) {
      out.insert(t.name());
      return;
    }
    if (!t.is_app()) return;
    if (t.op() != Op::Call) {
      for (const auto& a : t.args()) collect(a, out);
      return;
    }
    const auto& mask = positions(t.name());
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) collect(t.arg(i), out);
  }

  const Relations& rels_;
  std::map<std::string, std::vector<bool>> memo_;
};

Term default_value(Sort s) { return s == Sort::Int ? Term::integer(0) : Term::boolean(false); }

}  // namespace

UsageAnalysis analyze_usage(const Problem& p) {
  UsageLabeler labeler(p.relations);
  UsageAnalysis u;
  u.pre_used = labeler.used_params(p.pre);
  u.trans_used = labeler.used_params(p.trans);
  u.post_used = labeler.used_params(p.post);
  u.used = u.pre_used;
  u.used.insert(u.post_used.begin(), u.post_used.end());
  for (const auto& v : p.inv_params)
    if (u.trans_used.count(v.name) || u.trans_used.count(primed(v.name))) u.used.insert(v.name);
  return u;
}

std::map<std::string, std::vector<bool>> used_argument_positions(const Problem& p) {
  UsageLabeler labeler(p.relations);
  for (const auto& [name, def] : p.relations) labeler.positions(name);
  return labeler.memo();
}

Problem simplify(const Problem& p, const UsageAnalysis& u) {
  Problem out = p;
  out.inv_params.clear();
  std::map<std::string, Term> dropped;
  for (const auto& v : p.inv_params) {
    if (u.used.count(v.name)) {
      out.inv_params.push_back(v);
    } else {
      dropped.emplace(v.name, default_value(v.sort));
      dropped.emplace(primed(v.name), default_value(v.sort));
    }
  }
  if (dropped.empty()) return out;

  out.pre.params = out.inv_params;
  out.post.params = out.inv_params;
  out.trans.params = out.transition_params();
  out.pre.body = substitute(p.pre.body, dropped);
  out.post.body = substitute(p.post.body, dropped);
  out.trans.body = substitute(p.trans.body, dropped);
  out.reindex();
  return out;
}

}  // namespace invgen
