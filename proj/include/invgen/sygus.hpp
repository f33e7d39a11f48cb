#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "invgen/term.hpp"

namespace invgen {

/// Raw S-expression with the source position of its first character.
struct SExpr {
  bool is_atom = true;
  std::string atom;
  std::vector<SExpr> items;
  int line = 1;
  int column = 1;

  bool is(std::string_view symbol) const { return is_atom && atom == symbol; }
  /// True when this is a list whose head atom is `symbol`.
  bool head_is(std::string_view symbol) const {
    return !is_atom && !items.empty() && items.front().is(symbol);
  }
};

/// Reads every top-level S-expression of `text`. `;` starts a line comment.
std::vector<SExpr> read_sexprs(std::string_view text);

struct RelationDef {
  std::string name;
  std::vector<Variable> params;
  Sort result = Sort::Bool;
  Term body;
};

/// Relation table keyed by name.
using Relations = std::map<std::string, RelationDef>;

/// Replaces every relation invocation by the callee's body under parameter
/// substitution, recursively.
Term inline_calls(const Term& t, const Relations& rels);

/// Sort of a term under the given variable and relation environment.
/// Throws SortError (position 0:0) on ill-sorted terms.
Sort sort_of(const Term& t, const std::map<std::string, Sort>& vars, const Relations& rels = {});

std::map<std::string, Sort> sort_env(std::span<const Variable> vars);

/// Parses one term in SMT-LIB concrete syntax and sort-checks it.
Term parse_term(std::string_view text, std::span<const Variable> vars, const Relations& rels = {});

/// SMT-LIB 2 concrete syntax; `parse_term(print_term(t)) == t`.
std::string print_term(const Term& t);

std::string print_params(std::span<const Variable> params);

/// `(define-fun <name> (<params>) Bool <body>)` on one line.
std::string print_definition(std::string_view name, std::span<const Variable> params, const Term& body);

/// A parsed SyGuS-INV instance.
struct Problem {
  std::string logic = "LIA";
  std::string inv_name;
  std::vector<Variable> inv_params;
  RelationDef pre;
  RelationDef trans;
  RelationDef post;
  /// Auxiliary relations in definition order.
  std::vector<RelationDef> aux;
  /// Every defined relation (aux, pre, trans, post) by name.
  Relations relations;

  /// inv_params followed by their primed copies.
  std::vector<Variable> transition_params() const;

  Term pre_inlined() const { return inline_calls(pre.body, relations); }
  Term trans_inlined() const { return inline_calls(trans.body, relations); }
  Term post_inlined() const { return inline_calls(post.body, relations); }

  /// Rebuilds `relations` from aux/pre/trans/post.
  void reindex();
};

Problem parse_problem(std::string_view source);

/// Parses an invariant given either as a full `define-fun` for the problem's
/// invariant symbol or as a bare boolean term over its parameters.
Term parse_invariant(std::string_view text, const Problem& p);

/// Evaluates `t` under `s` with SMT-LIB integer semantics (Euclidean
/// div/mod). Relation calls are evaluated through `rels`.
/// Throws EvalError on division by zero or unbound variables.
Value eval_term(const Term& t, const State& s, const Relations& rels = {});

bool eval_bool(const Term& t, const State& s, const Relations& rels = {});

/// Euclidean quotient and remainder as defined by SMT-LIB Ints.
Integer euclid_div(const Integer& a, const Integer& b);
Integer euclid_mod(const Integer& a, const Integer& b);

}  // namespace invgen
