#include "invgen/term.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>

namespace invgen {

namespace {

constexpr std::array<std::pair<Op, std::string_view>, 16> kSymbols{{
    {Op::Add, "+"},
    {Op::Sub, "-"},
    {Op::Mul, "*"},
    {Op::Div, "div"},
    {Op::Mod, "mod"},
    {Op::Abs, "abs"},
    {Op::Eq, "="},
    {Op::Lt, "<"},
    {Op::Le, "<="},
    {Op::Gt, ">"},
    {Op::Ge, ">="},
    {Op::And, "and"},
    {Op::Or, "or"},
    {Op::Not, "not"},
    {Op::Implies, "=>"},
    {Op::Ite, "ite"},
}};

inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

std::string_view sort_name(Sort s) { return s == Sort::Int ? "Int" : "Bool"; }

std::string_view op_symbol(Op op) {
  for (const auto& [o, sym] : kSymbols)
    if (o == op) return sym;
  return "<call>";
}

std::optional<Op> op_from_symbol(std::string_view symbol) {
  for (const auto& [o, sym] : kSymbols)
    if (sym == symbol) return o;
  return std::nullopt;
}

struct Term::Node {
  Kind kind;
  Op op = Op::Call;
  bool bool_value = false;
  Integer int_value;
  std::string name;
  std::vector<Term> args;
  std::size_t size = 1;
  std::size_t hash = 0;
};

Term::Term() : node_(boolean(true).node_) {}

Term Term::integer(Integer value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::IntLit;
  n->hash = std::hash<std::string>{}(value.str()) * 31 + 1;
  n->int_value = std::move(value);
  return Term(std::move(n));
}

Term Term::boolean(bool value) {
  static const std::shared_ptr<const Node> kTrue = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::BoolLit;
    n->bool_value = true;
    n->hash = 0x7777;
    return n;
  }();
  static const std::shared_ptr<const Node> kFalse = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::BoolLit;
    n->bool_value = false;
    n->hash = 0x5555;
    return n;
  }();
  return Term(value ? kTrue : kFalse);
}

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->hash = std::hash<std::string>{}(name) * 31 + 2;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::app(Op op, std::vector<Term> args) {
  if (op == Op::Sub && args.size() == 1 && args[0].is_int_lit())
    return integer(-args[0].int_value());
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->op = op;
  n->hash = static_cast<std::size_t>(op) * 131 + 3;
  for (const auto& a : args) {
    n->size += a.size();
    hash_combine(n->hash, a.hash());
  }
  n->args = std::move(args);
  return Term(std::move(n));
}

Term Term::call(std::string relation, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->op = Op::Call;
  n->hash = std::hash<std::string>{}(relation) * 131 + 4;
  for (const auto& a : args) {
    n->size += a.size();
    hash_combine(n->hash, a.hash());
  }
  n->name = std::move(relation);
  n->args = std::move(args);
  return Term(std::move(n));
}

Term Term::conj(std::vector<Term> parts) {
  std::vector<Term> kept;
  for (auto& p : parts) {
    if (p.is_true()) continue;
    if (p.is_false()) return boolean(false);
    if (p.is_app() && p.op() == Op::And) {
      for (const auto& a : p.args())
        if (std::find(kept.begin(), kept.end(), a) == kept.end()) kept.push_back(a);
      continue;
    }
    if (std::find(kept.begin(), kept.end(), p) == kept.end()) kept.push_back(std::move(p));
  }
  if (kept.empty()) return boolean(true);
  if (kept.size() == 1) return kept.front();
  return app(Op::And, std::move(kept));
}

Term Term::disj(std::vector<Term> parts) {
  std::vector<Term> kept;
  for (auto& p : parts) {
    if (p.is_false()) continue;
    if (p.is_true()) return boolean(true);
    if (std::find(kept.begin(), kept.end(), p) == kept.end()) kept.push_back(std::move(p));
  }
  if (kept.empty()) return boolean(false);
  if (kept.size() == 1) return kept.front();
  return app(Op::Or, std::move(kept));
}

Term Term::negate(Term t) {
  if (t.is_bool_lit()) return boolean(!t.bool_value());
  if (t.is_app() && t.op() == Op::Not) return t.arg(0);
  return app(Op::Not, {std::move(t)});
}

Term Term::implies(Term lhs, Term rhs) { return app(Op::Implies, {std::move(lhs), std::move(rhs)}); }

Term::Kind Term::kind() const { return node_->kind; }

const Integer& Term::int_value() const {
  if (node_->kind != Kind::IntLit) throw std::logic_error("Term::int_value on non-integer literal");
  return node_->int_value;
}

bool Term::bool_value() const {
  if (node_->kind != Kind::BoolLit) throw std::logic_error("Term::bool_value on non-boolean literal");
  return node_->bool_value;
}

const std::string& Term::name() const { return node_->name; }

Op Term::op() const { return node_->op; }

std::span<const Term> Term::args() const { return node_->args; }

std::size_t Term::size() const { return node_->size; }

std::size_t Term::hash() const { return node_->hash; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.size != y.size) return false;
  switch (x.kind) {
    case Term::Kind::IntLit:
      return x.int_value == y.int_value;
    case Term::Kind::BoolLit:
      return x.bool_value == y.bool_value;
    case Term::Kind::Var:
      return x.name == y.name;
    case Term::Kind::App:
      return x.op == y.op && x.name == y.name && x.args == y.args;
  }
  return false;
}

std::string value_to_string(const Value& v) {
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  const auto& i = std::get<Integer>(v);
  if (i < 0) return "(- " + Integer(-i).str() + ")";
  return i.str();
}

Term value_to_term(const Value& v) {
  if (const auto* b = std::get_if<bool>(&v)) return Term::boolean(*b);
  return Term::integer(std::get<Integer>(v));
}

State State::project(std::span<const Variable> vars) const {
  State out;
  for (const auto& v : vars) out.bindings.emplace(v.name, bindings.at(v.name));
  return out;
}

std::string state_to_string(const State& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : s.bindings) {
    if (!first) out += ", ";
    first = false;
    out += name;
    out += " -> ";
    if (const auto* b = std::get_if<bool>(&value))
      out += *b ? "true" : "false";
    else
      out += std::get<Integer>(value).str();
  }
  return out + "}";
}

std::size_t StateHash::operator()(const State& s) const {
  std::size_t h = 0;
  for (const auto& [name, value] : s.bindings) {
    hash_combine(h, std::hash<std::string>{}(name));
    if (const auto* b = std::get_if<bool>(&value))
      hash_combine(h, *b ? 1 : 2);
    else
      hash_combine(h, boost::multiprecision::hash_value(std::get<Integer>(value)));
  }
  return h;
}

namespace {

void free_vars_into(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out.insert(t.name());
      break;
    case Term::Kind::App:
      for (const auto& a : t.args()) free_vars_into(a, out);
      break;
    default:
      break;
  }
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  free_vars_into(t, out);
  return out;
}

bool contains_call(const Term& t) {
  if (!t.is_app()) return false;
  if (t.op() == Op::Call) return true;
  return std::any_of(t.args().begin(), t.args().end(), contains_call);
}

Term substitute(const Term& t, const std::map<std::string, Term>& repl) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = repl.find(t.name());
      return it == repl.end() ? t : it->second;
    }
    case Term::Kind::App: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      bool changed = false;
      for (const auto& a : t.args()) {
        args.push_back(substitute(a, repl));
        changed = changed || !(args.back() == a);
      }
      if (!changed) return t;
      return t.op() == Op::Call ? Term::call(t.name(), std::move(args))
                                : Term::app(t.op(), std::move(args));
    }
    default:
      return t;
  }
}

Term rename_vars(const Term& t, const std::map<std::string, std::string>& rename) {
  std::map<std::string, Term> repl;
  for (const auto& name : free_vars(t)) {
    auto it = rename.find(name);
    if (it != rename.end()) repl.emplace(name, Term::var(it->second));
  }
  return repl.empty() ? t : substitute(t, repl);
}

Term prime_term(const Term& t, std::span<const Variable> vars) {
  std::map<std::string, std::string> rename;
  for (const auto& v : vars) rename.emplace(v.name, primed(v.name));
  return rename_vars(t, rename);
}

void collect_constants(const Term& t, std::vector<Integer>& out) {
  if (t.is_int_lit()) {
    if (std::find(out.begin(), out.end(), t.int_value()) == out.end()) out.push_back(t.int_value());
  } else if (t.is_app()) {
    for (const auto& a : t.args()) collect_constants(a, out);
  }
}

}  // namespace invgen
