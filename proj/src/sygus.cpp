#include "invgen/sygus.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include "invgen/errors.hpp"

namespace invgen {

// ---------------------------------------------------------------------------
// S-expression reader

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip_space();
    while (pos_ < text_.size()) {
      out.push_back(read_one());
      skip_space();
    }
    return out;
  }

 private:
  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == ';') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read_one() {
    SExpr e;
    e.line = line_;
    e.column = col_;
    char c = peek();
    if (c == ')') throw ParseError("unexpected ')'", line_, col_);
    if (c == '(') {
      e.is_atom = false;
      advance();
      for (;;) {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unterminated list", e.line, e.column);
        if (peek() == ')') {
          advance();
          return e;
        }
        e.items.push_back(read_one());
      }
    }
    if (c == '|') {
      advance();
      while (pos_ < text_.size() && peek() != '|') {
        e.atom += peek();
        advance();
      }
      if (pos_ >= text_.size()) throw ParseError("unterminated quoted symbol", e.line, e.column);
      advance();
      return e;
    }
    if (c == '"') {
      e.atom += c;
      advance();
      for (;;) {
        if (pos_ >= text_.size()) throw ParseError("unterminated string", e.line, e.column);
        char d = peek();
        e.atom += d;
        advance();
        if (d == '"') {
          if (pos_ < text_.size() && peek() == '"') {  // "" escape
            advance();
            continue;
          }
          return e;
        }
      }
    }
    while (pos_ < text_.size()) {
      char d = peek();
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
      e.atom += d;
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool is_numeral(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' && s.size() > 1) ? 1 : 0;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

std::vector<SExpr> read_sexprs(std::string_view text) { return Reader(text).read_all(); }

// ---------------------------------------------------------------------------
// Sort checking

namespace {

/// Result sort of an application, or an error message.
std::variant<Sort, std::string> app_sort(Op op, const std::vector<Term>& args,
                                         const std::vector<Sort>& sorts) {
  auto all = [&](Sort s) { return std::all_of(sorts.begin(), sorts.end(), [s](Sort x) { return x == s; }); };
  auto arity = [&](std::size_t lo, std::size_t hi) -> std::optional<std::string> {
    if (args.size() < lo || args.size() > hi)
      return "wrong number of arguments to '" + std::string(op_symbol(op)) + "'";
    return std::nullopt;
  };
  constexpr std::size_t kMany = static_cast<std::size_t>(-1);
  const std::string sym(op_symbol(op));
  switch (op) {
    case Op::Add:
    case Op::Sub:
    case Op::Mul: {
      if (auto e = arity(op == Op::Sub ? 1 : 2, kMany)) return *e;
      if (!all(Sort::Int)) return "'" + sym + "' expects Int arguments";
      if (op == Op::Mul) {
        std::size_t non_literal = std::count_if(args.begin(), args.end(), [](const Term& a) { return !a.is_int_lit(); });
        if (non_literal > 1) return "non-linear multiplication is not allowed in LIA";
      }
      return Sort::Int;
    }
    case Op::Div:
    case Op::Mod:
      if (auto e = arity(2, 2)) return *e;
      if (!all(Sort::Int)) return "'" + sym + "' expects Int arguments";
      return Sort::Int;
    case Op::Abs:
      if (auto e = arity(1, 1)) return *e;
      if (!all(Sort::Int)) return "'abs' expects an Int argument";
      return Sort::Int;
    case Op::Eq:
      if (auto e = arity(2, kMany)) return *e;
      if (!all(sorts.front())) return "'=' expects arguments of one sort";
      return Sort::Bool;
    case Op::Lt:
    case Op::Le:
    case Op::Gt:
    case Op::Ge:
      if (auto e = arity(2, kMany)) return *e;
      if (!all(Sort::Int)) return "'" + sym + "' expects Int arguments";
      return Sort::Bool;
    case Op::And:
    case Op::Or:
      if (auto e = arity(1, kMany)) return *e;
      if (!all(Sort::Bool)) return "'" + sym + "' expects Bool arguments";
      return Sort::Bool;
    case Op::Implies:
      if (auto e = arity(2, kMany)) return *e;
      if (!all(Sort::Bool)) return "'=>' expects Bool arguments";
      return Sort::Bool;
    case Op::Not:
      if (auto e = arity(1, 1)) return *e;
      if (sorts[0] != Sort::Bool) return "'not' expects a Bool argument";
      return Sort::Bool;
    case Op::Ite:
      if (auto e = arity(3, 3)) return *e;
      if (sorts[0] != Sort::Bool) return "'ite' condition must be Bool";
      if (sorts[1] != sorts[2]) return "'ite' branches must have the same sort";
      return sorts[1];
    case Op::Call:
      break;
  }
  return std::string("unexpected operator");
}

std::variant<Sort, std::string> call_sort(const std::string& name, const std::vector<Sort>& sorts,
                                          const Relations& rels) {
  auto it = rels.find(name);
  if (it == rels.end()) return "unknown function '" + name + "'";
  const auto& def = it->second;
  if (def.params.size() != sorts.size()) return "wrong number of arguments to '" + name + "'";
  for (std::size_t i = 0; i < sorts.size(); ++i)
    if (def.params[i].sort != sorts[i])
      return "argument " + std::to_string(i + 1) + " of '" + name + "' has the wrong sort";
  return def.result;
}

}  // namespace

Sort sort_of(const Term& t, const std::map<std::string, Sort>& vars, const Relations& rels) {
  switch (t.kind()) {
    case Term::Kind::IntLit:
      return Sort::Int;
    case Term::Kind::BoolLit:
      return Sort::Bool;
    case Term::Kind::Var: {
      auto it = vars.find(t.name());
      if (it == vars.end()) throw SortError("unknown variable '" + t.name() + "'", 0, 0);
      return it->second;
    }
    case Term::Kind::App:
      break;
  }
  std::vector<Sort> sorts;
  for (const auto& a : t.args()) sorts.push_back(sort_of(a, vars, rels));
  auto r = t.op() == Op::Call ? call_sort(t.name(), sorts, rels)
                              : app_sort(t.op(), std::vector<Term>(t.args().begin(), t.args().end()), sorts);
  if (auto* msg = std::get_if<std::string>(&r)) throw SortError(*msg, 0, 0);
  return std::get<Sort>(r);
}

std::map<std::string, Sort> sort_env(std::span<const Variable> vars) {
  std::map<std::string, Sort> env;
  for (const auto& v : vars) env[v.name] = v.sort;
  return env;
}

// ---------------------------------------------------------------------------
// SExpr -> Term

namespace {

struct Typed {
  Term term;
  Sort sort;
};

class TermBuilder {
 public:
  TermBuilder(const std::map<std::string, Sort>& vars, const Relations& rels,
              std::string_view self = {})
      : vars_(vars), rels_(rels), self_(self) {}

  Typed build(const SExpr& e) const {
    if (e.is_atom) return atom(e);
    if (e.items.empty()) throw ParseError("empty application", e.line, e.column);
    const SExpr& head = e.items.front();
    if (!head.is_atom) throw ParseError("expected an operator symbol", head.line, head.column);
    if (head.atom == "let" || head.atom == "forall" || head.atom == "exists")
      throw ParseError("'" + head.atom + "' is not supported", head.line, head.column);
    if (head.atom == "_" || head.atom == "!")
      throw ParseError("indexed or annotated terms are not supported", head.line, head.column);

    std::vector<Term> args;
    std::vector<Sort> sorts;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      auto a = build(e.items[i]);
      args.push_back(a.term);
      sorts.push_back(a.sort);
    }

    if (auto op = op_from_symbol(head.atom)) {
      // Fold `(- n)` first so that `(* (- 2) x)` counts as linear.
      Term t = Term::app(*op, args);
      if (t.is_int_lit()) return {t, Sort::Int};
      auto r = app_sort(*op, args, sorts);
      if (auto* msg = std::get_if<std::string>(&r)) throw SortError(*msg, e.line, e.column);
      return {t, std::get<Sort>(r)};
    }
    if (!self_.empty() && head.atom == self_)
      throw SortError("recursive relation definition '" + head.atom + "'", head.line, head.column);
    if (!rels_.count(head.atom))
      throw ParseError("unknown function '" + head.atom + "'", head.line, head.column);
    auto r = call_sort(head.atom, sorts, rels_);
    if (auto* msg = std::get_if<std::string>(&r)) throw SortError(*msg, e.line, e.column);
    return {Term::call(head.atom, std::move(args)), std::get<Sort>(r)};
  }

 private:
  Typed atom(const SExpr& e) const {
    const std::string& a = e.atom;
    if (a == "true") return {Term::boolean(true), Sort::Bool};
    if (a == "false") return {Term::boolean(false), Sort::Bool};
    if (is_numeral(a)) return {Term::integer(Integer(a)), Sort::Int};
    if (!a.empty() && a.front() == '"') throw ParseError("string literals are not supported", e.line, e.column);
    if (auto it = vars_.find(a); it != vars_.end()) return {Term::var(a), it->second};
    if (!self_.empty() && a == self_)
      throw SortError("recursive relation definition '" + a + "'", e.line, e.column);
    if (auto it = rels_.find(a); it != rels_.end() && it->second.params.empty())
      return {Term::call(a, {}), it->second.result};
    throw SortError("unknown symbol '" + a + "'", e.line, e.column);
  }

  const std::map<std::string, Sort>& vars_;
  const Relations& rels_;
  std::string_view self_;
};

Sort parse_sort(const SExpr& e) {
  if (e.is("Int")) return Sort::Int;
  if (e.is("Bool")) return Sort::Bool;
  throw SortError("unsupported sort", e.line, e.column);
}

std::vector<Variable> parse_params(const SExpr& e) {
  if (e.is_atom) throw ParseError("expected a parameter list", e.line, e.column);
  std::vector<Variable> out;
  std::set<std::string> seen;
  for (const auto& p : e.items) {
    if (p.is_atom || p.items.size() != 2 || !p.items[0].is_atom)
      throw ParseError("expected (<name> <sort>)", p.line, p.column);
    const auto& name = p.items[0].atom;
    if (!seen.insert(name).second) throw ParseError("duplicate parameter '" + name + "'", p.line, p.column);
    out.push_back({name, parse_sort(p.items[1])});
  }
  return out;
}

}  // namespace

Term parse_term(std::string_view text, std::span<const Variable> vars, const Relations& rels) {
  auto exprs = read_sexprs(text);
  if (exprs.size() != 1) {
    int line = exprs.size() > 1 ? exprs[1].line : 1;
    int col = exprs.size() > 1 ? exprs[1].column : 1;
    throw ParseError("expected exactly one term", line, col);
  }
  auto env = sort_env(vars);
  return TermBuilder(env, rels).build(exprs.front()).term;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

bool is_simple_symbol(std::string_view s) {
  static constexpr std::string_view kExtra = "~!@$%^&*_-+=<>.?/";
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || kExtra.find(c) != std::string_view::npos;
  });
}

void print_symbol(std::string_view name, std::string& out) {
  if (is_simple_symbol(name)) {
    out += name;
  } else {
    out += '|';
    out += name;
    out += '|';
  }
}

void print_into(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::IntLit:
      if (t.int_value() < 0) {
        out += "(- ";
        out += Integer(-t.int_value()).str();
        out += ')';
      } else {
        out += t.int_value().str();
      }
      return;
    case Term::Kind::BoolLit:
      out += t.bool_value() ? "true" : "false";
      return;
    case Term::Kind::Var:
      print_symbol(t.name(), out);
      return;
    case Term::Kind::App:
      break;
  }
  if (t.op() == Op::Call && t.args().empty()) {
    print_symbol(t.name(), out);
    return;
  }
  out += '(';
  if (t.op() == Op::Call)
    print_symbol(t.name(), out);
  else
    out += op_symbol(t.op());
  for (const auto& a : t.args()) {
    out += ' ';
    print_into(a, out);
  }
  out += ')';
}

}  // namespace

std::string print_term(const Term& t) {
  std::string out;
  print_into(t, out);
  return out;
}

std::string print_params(std::span<const Variable> params) {
  std::string out = "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ' ';
    out += '(';
    print_symbol(params[i].name, out);
    out += ' ';
    out += sort_name(params[i].sort);
    out += ')';
  }
  return out + ")";
}

std::string print_definition(std::string_view name, std::span<const Variable> params, const Term& body) {
  return "(define-fun " + std::string(name) + " " + print_params(params) + " Bool " + print_term(body) + ")";
}

// ---------------------------------------------------------------------------
// Inlining

Term inline_calls(const Term& t, const Relations& rels) {
  if (!t.is_app()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(inline_calls(a, rels));
  if (t.op() != Op::Call) return Term::app(t.op(), std::move(args));
  auto it = rels.find(t.name());
  if (it == rels.end()) throw Error("cannot inline unknown relation '" + t.name() + "'");
  const auto& def = it->second;
  std::map<std::string, Term> repl;
  for (std::size_t i = 0; i < def.params.size(); ++i) repl.emplace(def.params[i].name, args[i]);
  return substitute(inline_calls(def.body, rels), repl);
}

// ---------------------------------------------------------------------------
// Problem

std::vector<Variable> Problem::transition_params() const {
  std::vector<Variable> out = inv_params;
  for (const auto& v : inv_params) out.push_back({primed(v.name), v.sort});
  return out;
}

void Problem::reindex() {
  relations.clear();
  for (const auto& r : aux) relations[r.name] = r;
  relations[pre.name] = pre;
  relations[trans.name] = trans;
  relations[post.name] = post;
}

namespace {

const SExpr& arg_at(const SExpr& cmd, std::size_t i, std::size_t expected) {
  if (cmd.items.size() != expected + 1)
    throw ParseError("'" + cmd.items.front().atom + "' expects " + std::to_string(expected) + " arguments",
                     cmd.line, cmd.column);
  return cmd.items[i + 1];
}

const std::string& symbol_at(const SExpr& cmd, std::size_t i, std::size_t expected) {
  const SExpr& e = arg_at(cmd, i, expected);
  if (!e.is_atom) throw ParseError("expected a symbol", e.line, e.column);
  return e.atom;
}

}  // namespace

Problem parse_problem(std::string_view source) {
  auto commands = read_sexprs(source);
  Problem p;
  bool have_logic = false;
  bool have_synth = false;
  bool have_check = false;
  std::optional<SExpr> constraint;
  std::vector<std::pair<Variable, SExpr>> primed_decls;
  Relations defined;
  std::vector<std::string> order;

  for (const auto& cmd : commands) {
    if (cmd.is_atom || cmd.items.empty() || !cmd.items.front().is_atom)
      throw ParseError("expected a command", cmd.line, cmd.column);
    if (have_check) throw ParseError("'check-synth' must be the last command", cmd.line, cmd.column);
    const std::string& name = cmd.items.front().atom;
    if (name == "set-logic") {
      const auto& logic = symbol_at(cmd, 0, 1);
      if (logic != "LIA") throw ParseError("unsupported logic '" + logic + "'", cmd.items[1].line, cmd.items[1].column);
      if (have_logic) throw ParseError("duplicate 'set-logic'", cmd.line, cmd.column);
      p.logic = logic;
      have_logic = true;
    } else if (name == "synth-inv") {
      if (have_synth) throw ParseError("duplicate 'synth-inv'", cmd.line, cmd.column);
      p.inv_name = symbol_at(cmd, 0, 2);
      p.inv_params = parse_params(cmd.items[2]);
      have_synth = true;
    } else if (name == "declare-primed-var") {
      const auto& v = symbol_at(cmd, 0, 2);
      primed_decls.push_back({{v, parse_sort(cmd.items[2])}, cmd});
    } else if (name == "define-fun") {
      const auto& fname = symbol_at(cmd, 0, 4);
      if (defined.count(fname) || fname == p.inv_name)
        throw ParseError("duplicate definition of '" + fname + "'", cmd.line, cmd.column);
      RelationDef def;
      def.name = fname;
      def.params = parse_params(cmd.items[2]);
      def.result = parse_sort(cmd.items[3]);
      auto env = sort_env(def.params);
      auto body = TermBuilder(env, defined, fname).build(cmd.items[4]);
      if (body.sort != def.result)
        throw SortError("body of '" + fname + "' does not have the declared sort", cmd.items[4].line,
                        cmd.items[4].column);
      def.body = body.term;
      defined[fname] = def;
      order.push_back(fname);
    } else if (name == "inv-constraint") {
      if (constraint) throw ParseError("duplicate 'inv-constraint'", cmd.line, cmd.column);
      arg_at(cmd, 0, 4);
      for (std::size_t i = 1; i <= 4; ++i)
        if (!cmd.items[i].is_atom) throw ParseError("expected a symbol", cmd.items[i].line, cmd.items[i].column);
      constraint = cmd;
    } else if (name == "check-synth") {
      arg_at(cmd, 0, 0);
      have_check = true;
    } else {
      throw ParseError("unknown command '" + name + "'", cmd.line, cmd.column);
    }
  }

  if (!have_synth) throw ParseError("missing 'synth-inv'", 1, 1);
  if (!constraint) throw ParseError("missing 'inv-constraint'", 1, 1);
  if (!have_check) throw ParseError("missing 'check-synth'", 1, 1);

  for (const auto& [v, cmd] : primed_decls) {
    auto it = std::find_if(p.inv_params.begin(), p.inv_params.end(),
                           [&](const Variable& x) { return x.name == v.name; });
    if (it == p.inv_params.end() || it->sort != v.sort)
      throw SortError("primed variable '" + v.name + "' does not match the invariant signature", cmd.line,
                      cmd.column);
  }

  const SExpr& c = *constraint;
  if (c.items[1].atom != p.inv_name)
    throw ParseError("'inv-constraint' refers to unknown invariant '" + c.items[1].atom + "'", c.items[1].line,
                     c.items[1].column);
  auto lookup = [&](const SExpr& e, const char* role) -> RelationDef {
    auto it = defined.find(e.atom);
    if (it == defined.end())
      throw ParseError(std::string("missing ") + role + " definition '" + e.atom + "'", e.line, e.column);
    if (it->second.result != Sort::Bool)
      throw SortError(std::string(role) + " relation must be Bool-valued", e.line, e.column);
    return it->second;
  };
  p.pre = lookup(c.items[2], "pre");
  p.trans = lookup(c.items[3], "trans");
  p.post = lookup(c.items[4], "post");

  if (p.pre.params != p.inv_params)
    throw SortError("pre relation parameters must match the invariant signature", c.items[2].line,
                    c.items[2].column);
  if (p.post.params != p.inv_params)
    throw SortError("post relation parameters must match the invariant signature", c.items[4].line,
                    c.items[4].column);
  if (p.trans.params != p.transition_params())
    throw SortError("trans relation parameters must be the invariant signature followed by its primed copy",
                    c.items[3].line, c.items[3].column);

  std::set<std::string> roles{p.pre.name, p.trans.name, p.post.name};
  for (const auto& n : order)
    if (!roles.count(n)) p.aux.push_back(defined.at(n));
  p.reindex();
  return p;
}

Term parse_invariant(std::string_view text, const Problem& p) {
  auto exprs = read_sexprs(text);
  if (exprs.size() != 1) throw ParseError("expected a single invariant definition or term", 1, 1);
  const SExpr& e = exprs.front();
  auto env = sort_env(p.inv_params);
  if (e.head_is("define-fun")) {
    if (e.items.size() != 5 || !e.items[1].is_atom)
      throw ParseError("malformed define-fun", e.line, e.column);
    if (e.items[1].atom != p.inv_name)
      throw ParseError("definition is for '" + e.items[1].atom + "', expected '" + p.inv_name + "'",
                       e.items[1].line, e.items[1].column);
    if (parse_params(e.items[2]) != p.inv_params)
      throw SortError("invariant parameters do not match the synth-inv signature", e.items[2].line,
                      e.items[2].column);
    if (!e.items[3].is("Bool")) throw SortError("invariant must be Bool-valued", e.items[3].line, e.items[3].column);
    auto body = TermBuilder(env, p.relations, p.inv_name).build(e.items[4]);
    return body.term;
  }
  auto body = TermBuilder(env, p.relations, p.inv_name).build(e);
  if (body.sort != Sort::Bool) throw SortError("invariant must be Bool-valued", e.line, e.column);
  return body.term;
}

// ---------------------------------------------------------------------------
// Evaluation

Integer euclid_mod(const Integer& a, const Integer& b) {
  if (b == 0) throw EvalError("modulo by zero");
  Integer m = b < 0 ? Integer(-b) : b;
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

Integer euclid_div(const Integer& a, const Integer& b) {
  if (b == 0) throw EvalError("division by zero");
  return (a - euclid_mod(a, b)) / b;
}

namespace {

const Integer& as_int(const Value& v) { return std::get<Integer>(v); }
bool as_bool(const Value& v) { return std::get<bool>(v); }

bool compare(Op op, const Integer& a, const Integer& b) {
  switch (op) {
    case Op::Lt: return a < b;
    case Op::Le: return a <= b;
    case Op::Gt: return a > b;
    case Op::Ge: return a >= b;
    default: return a == b;
  }
}

}  // namespace

Value eval_term(const Term& t, const State& s, const Relations& rels) {
  switch (t.kind()) {
    case Term::Kind::IntLit:
      return t.int_value();
    case Term::Kind::BoolLit:
      return t.bool_value();
    case Term::Kind::Var: {
      auto it = s.bindings.find(t.name());
      if (it == s.bindings.end()) throw EvalError("unbound variable '" + t.name() + "'");
      return it->second;
    }
    case Term::Kind::App:
      break;
  }
  const auto args = t.args();
  auto ev = [&](std::size_t i) { return eval_term(args[i], s, rels); };
  switch (t.op()) {
    case Op::Add: {
      Integer r = 0;
      for (std::size_t i = 0; i < args.size(); ++i) r += as_int(ev(i));
      return r;
    }
    case Op::Sub: {
      Integer r = as_int(ev(0));
      if (args.size() == 1) return Integer(-r);
      for (std::size_t i = 1; i < args.size(); ++i) r -= as_int(ev(i));
      return r;
    }
    case Op::Mul: {
      Integer r = 1;
      for (std::size_t i = 0; i < args.size(); ++i) r *= as_int(ev(i));
      return r;
    }
    case Op::Div:
      return euclid_div(as_int(ev(0)), as_int(ev(1)));
    case Op::Mod:
      return euclid_mod(as_int(ev(0)), as_int(ev(1)));
    case Op::Abs: {
      Integer r = as_int(ev(0));
      return r < 0 ? Integer(-r) : r;
    }
    case Op::Eq: {
      Value first = ev(0);
      for (std::size_t i = 1; i < args.size(); ++i)
        if (!(ev(i) == first)) return false;
      return true;
    }
    case Op::Lt:
    case Op::Le:
    case Op::Gt:
    case Op::Ge: {
      Integer prev = as_int(ev(0));
      bool ok = true;
      for (std::size_t i = 1; i < args.size() && ok; ++i) {
        Integer cur = as_int(ev(i));
        ok = compare(t.op(), prev, cur);
        prev = std::move(cur);
      }
      return ok;
    }
    case Op::And:
      for (std::size_t i = 0; i < args.size(); ++i)
        if (!as_bool(ev(i))) return false;
      return true;
    case Op::Or:
      for (std::size_t i = 0; i < args.size(); ++i)
        if (as_bool(ev(i))) return true;
      return false;
    case Op::Not:
      return !as_bool(ev(0));
    case Op::Implies: {
      // Right-associative: (=> a b c) = (=> a (=> b c)).
      for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (!as_bool(ev(i))) return true;
      return as_bool(ev(args.size() - 1));
    }
    case Op::Ite:
      return as_bool(ev(0)) ? ev(1) : ev(2);
    case Op::Call: {
      auto it = rels.find(t.name());
      if (it == rels.end()) throw EvalError("unknown relation '" + t.name() + "'");
      State frame;
      for (std::size_t i = 0; i < args.size(); ++i) frame.bindings.emplace(it->second.params[i].name, ev(i));
      return eval_term(it->second.body, frame, rels);
    }
  }
  throw EvalError("unsupported operator");
}

bool eval_bool(const Term& t, const State& s, const Relations& rels) {
  return std::get<bool>(eval_term(t, s, rels));
}

}  // namespace invgen
