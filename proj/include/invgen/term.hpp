#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace invgen {

using Integer = boost::multiprecision::cpp_int;

enum class Sort : std::uint8_t { Int, Bool };

std::string_view sort_name(Sort s);

struct Variable {
  std::string name;
  Sort sort;

  friend bool operator==(const Variable&, const Variable&) = default;
};

/// Name of the post-transition copy of a state variable.
inline std::string primed(std::string_view name) { return std::string(name) + "!"; }

/// Operators of the LIA fragment plus relation invocation.
enum class Op : std::uint8_t {
  Add,
  Sub,
  Mul,
  Div,
  Mod,
  Abs,
  Eq,
  Lt,
  Le,
  Gt,
  Ge,
  And,
  Or,
  Not,
  Implies,
  Ite,
  Call,
};

std::string_view op_symbol(Op op);
std::optional<Op> op_from_symbol(std::string_view symbol);

/// Immutable, structurally compared S-expression AST node handle.
///
/// Copies share the underlying node. Construction goes through the static
/// factories; `app` folds unary minus of a literal into a negative literal so
/// that printing and re-parsing is the identity.
class Term {
 public:
  enum class Kind : std::uint8_t { IntLit, BoolLit, Var, App };

  Term();  // boolean literal `true`

  static Term integer(Integer value);
  static Term integer(long long value) { return integer(Integer(value)); }
  static Term boolean(bool value);
  static Term var(std::string name);
  static Term app(Op op, std::vector<Term> args);
  static Term call(std::string relation, std::vector<Term> args);

  // Shorthands used all over the engine.
  static Term conj(std::vector<Term> parts);
  static Term disj(std::vector<Term> parts);
  static Term negate(Term t);
  static Term implies(Term lhs, Term rhs);

  Kind kind() const;
  bool is_int_lit() const { return kind() == Kind::IntLit; }
  bool is_bool_lit() const { return kind() == Kind::BoolLit; }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_app() const { return kind() == Kind::App; }
  bool is_true() const { return is_bool_lit() && bool_value(); }
  bool is_false() const { return is_bool_lit() && !bool_value(); }

  const Integer& int_value() const;
  bool bool_value() const;
  /// Variable name, or relation name for `Op::Call`.
  const std::string& name() const;
  Op op() const;
  std::span<const Term> args() const;
  const Term& arg(std::size_t i) const { return args()[i]; }

  /// Node count.
  std::size_t size() const;
  std::size_t hash() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

using Value = std::variant<Integer, bool>;

std::string value_to_string(const Value& v);
Term value_to_term(const Value& v);

/// A total assignment from tracked variable names to concrete values.
struct State {
  std::map<std::string, Value> bindings;

  State() = default;
  explicit State(std::map<std::string, Value> b) : bindings(std::move(b)) {}

  const Value& at(const std::string& name) const { return bindings.at(name); }
  bool contains(const std::string& name) const { return bindings.count(name) != 0; }
  void set(const std::string& name, Value v) { bindings[name] = std::move(v); }
  std::size_t size() const { return bindings.size(); }

  /// Restriction to the given names (all of which must be bound).
  State project(std::span<const Variable> vars) const;

  friend bool operator==(const State&, const State&) = default;
  friend bool operator<(const State& a, const State& b) { return a.bindings < b.bindings; }
};

std::string state_to_string(const State& s);

struct StateHash {
  std::size_t operator()(const State& s) const;
};

std::set<std::string> free_vars(const Term& t);
bool contains_call(const Term& t);

/// Capture-free replacement of variables by terms (there are no binders).
Term substitute(const Term& t, const std::map<std::string, Term>& repl);

/// Renames every variable occurrence through `rename`; unknown names are kept.
Term rename_vars(const Term& t, const std::map<std::string, std::string>& rename);

/// Replaces each variable of `vars` by its primed copy.
Term prime_term(const Term& t, std::span<const Variable> vars);

/// Collects every integer literal (by value, deduplicated, in first-seen order).
void collect_constants(const Term& t, std::vector<Integer>& out);

}  // namespace invgen

template <>
struct std::hash<invgen::Term> {
  std::size_t operator()(const invgen::Term& t) const { return t.hash(); }
};
