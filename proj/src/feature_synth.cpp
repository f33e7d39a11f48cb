#include "invgen/feature_synth.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <unordered_set>

namespace invgen {

std::vector<Integer> base_constants() { return {Integer(0), Integer(1), Integer(-1)}; }

std::vector<Integer> constant_pool(const Problem& p) {
  std::vector<Integer> pool = base_constants();
  collect_constants(p.pre_inlined(), pool);
  collect_constants(p.trans_inlined(), pool);
  collect_constants(p.post_inlined(), pool);
  return pool;
}

// ---------------------------------------------------------------------------
// Syntactic pruning

namespace {

bool is_lit(const Term& t, long long v) { return t.is_int_lit() && t.int_value() == v; }

void signed_atoms(const Term& t, bool positive, std::vector<std::pair<Term, bool>>& out) {
  if (t.is_app() && t.op() == Op::Add) {
    for (const auto& a : t.args()) signed_atoms(a, positive, out);
  } else if (t.is_app() && t.op() == Op::Sub) {
    if (t.args().size() == 1) {
      signed_atoms(t.arg(0), !positive, out);
      return;
    }
    signed_atoms(t.arg(0), positive, out);
    for (std::size_t i = 1; i < t.args().size(); ++i) signed_atoms(t.arg(i), !positive, out);
  } else {
    out.emplace_back(t, positive);
  }
}

bool has_cancellation(const Term& t) {
  std::vector<std::pair<Term, bool>> atoms;
  signed_atoms(t, true, atoms);
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size(); ++j)
      if (atoms[i].second != atoms[j].second && atoms[i].first == atoms[j].first) return true;
  return false;
}

}  // namespace

bool prune_redundant(const Term& t) {
  if (!t.is_app()) return false;
  const auto args = t.args();
  switch (t.op()) {
    case Op::Add:
      if (std::any_of(args.begin(), args.end(), [](const Term& a) { return is_lit(a, 0); })) return true;
      return has_cancellation(t);
    case Op::Sub:
      if (args.size() > 1 && std::any_of(args.begin() + 1, args.end(), [](const Term& a) { return is_lit(a, 0); }))
        return true;
      return has_cancellation(t);
    case Op::Mul:
      if (std::any_of(args.begin(), args.end(), [](const Term& a) { return is_lit(a, 0) || is_lit(a, 1); }))
        return true;
      // (* -1 (* -1 e))
      if (args.size() == 2 && is_lit(args[0], -1) && args[1].is_app() && args[1].op() == Op::Mul &&
          args[1].args().size() == 2 && is_lit(args[1].arg(0), -1))
        return true;
      return false;
    case Op::Not:
      return args[0].is_app() && args[0].op() == Op::Not;
    case Op::Eq:
    case Op::Le:
    case Op::Ge:
    case Op::Lt:
    case Op::Gt:
      return std::all_of(args.begin() + 1, args.end(), [&](const Term& a) { return a == args[0]; });
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

using Vec = std::vector<std::int64_t>;

struct VecHash {
  std::size_t operator()(const Vec& v) const {
    std::size_t h = v.size();
    for (auto x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct IntEntry {
  Term term;
  Vec values;
  bool constant;
};

std::optional<std::int64_t> to_i64(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    return std::nullopt;
  return static_cast<std::int64_t>(v);
}

constexpr std::array<Op, 5> kComparisons{Op::Eq, Op::Le, Op::Ge, Op::Lt, Op::Gt};

inline bool compare(Op op, std::int64_t a, std::int64_t b) {
  switch (op) {
    case Op::Eq: return a == b;
    case Op::Le: return a <= b;
    case Op::Ge: return a >= b;
    case Op::Lt: return a < b;
    default: return a > b;
  }
}

class Enumerator {
 public:
  Enumerator(const ConflictGroup& g, std::span<const Integer> constants, SynthStats* stats)
      : num_pos_(g.positives.size()), stats_(stats) {
    std::vector<const State*> states;
    for (const auto& s : g.positives) states.push_back(&s);
    for (const auto& s : g.negatives) states.push_back(&s);
    n_ = states.size();

    banks_.resize(2);
    for (const auto& v : g.variables) {
      if (v.sort == Sort::Bool) {
        std::vector<bool> vals;
        for (const auto* s : states) vals.push_back(std::get<bool>(s->at(v.name)));
        bool_vars_.emplace_back(Term::var(v.name), std::move(vals));
        continue;
      }
      Vec vals;
      for (const auto* s : states) {
        auto x = to_i64(std::get<Integer>(s->at(v.name)));
        if (!x) {
          usable_ = false;
          return;
        }
        vals.push_back(*x);
      }
      add(1, Term::var(v.name), std::move(vals), false);
    }
    for (const auto& c : constants) {
      auto x = to_i64(c);
      if (!x) continue;
      Term t = Term::integer(c);
      constants_.push_back({t, *x});
      add(1, t, Vec(n_, *x), true);
    }
  }

  std::optional<Term> run(std::size_t max_size) {
    if (!usable_ || num_pos_ == 0 || num_pos_ == n_) return std::nullopt;
    for (std::size_t size = 1; size <= max_size; ++size) {
      if (auto f = features_of_size(size)) return f;
    }
    return std::nullopt;
  }

 private:
  bool separates(const std::vector<bool>& truth) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (truth[i] != (i < num_pos_)) return false;
    return true;
  }

  void add(std::size_t size, Term t, Vec values, bool constant) {
    if (!seen_.insert(values).second) return;
    if (banks_.size() <= size) banks_.resize(size + 1);
    banks_[size].push_back({std::move(t), std::move(values), constant});
    if (stats_) ++stats_->int_terms;
  }

  /// Fills integer bank `size` (odd sizes only; every operator is binary).
  void grow_to(std::size_t size) {
    while (grown_ < size) {
      ++grown_;
      if (grown_ < 3) continue;
      build_bank(grown_);
    }
  }

  void build_bank(std::size_t size) {
    if (banks_.size() <= size) banks_.resize(size + 1);
    // (+ a b): commutative, so only a before-or-equal b in enumeration order.
    for (std::size_t sa = 1; sa + 1 < size; ++sa) {
      std::size_t sb = size - 1 - sa;
      if (sb < sa) break;
      const auto& bank_a = banks_[sa];
      const auto& bank_b = banks_[sb];
      for (std::size_t i = 0; i < bank_a.size(); ++i)
        for (std::size_t j = (sa == sb ? i : 0); j < bank_b.size(); ++j)
          combine(size, Op::Add, bank_a[i], bank_b[j]);
    }
    for (std::size_t sa = 1; sa + 1 < size; ++sa) {
      std::size_t sb = size - 1 - sa;
      const auto& bank_a = banks_[sa];
      const auto& bank_b = banks_[sb];
      for (const auto& a : bank_a)
        for (const auto& b : bank_b) combine(size, Op::Sub, a, b);
    }
    if (size >= 3) {
      const auto& bank_e = banks_[size - 2];
      for (const auto& [c, cv] : constants_)
        for (const auto& e : bank_e) {
          Term t = Term::app(Op::Mul, {c, e.term});
          if (prune_redundant(t)) {
            if (stats_) ++stats_->pruned;
            continue;
          }
          Vec vals(n_);
          bool ok = true;
          for (std::size_t i = 0; i < n_ && ok; ++i) ok = !__builtin_mul_overflow(cv, e.values[i], &vals[i]);
          if (ok) add(size, std::move(t), std::move(vals), e.constant);
        }
    }
  }

  void combine(std::size_t size, Op op, const IntEntry& a, const IntEntry& b) {
    Term t = Term::app(op, {a.term, b.term});
    if (prune_redundant(t)) {
      if (stats_) ++stats_->pruned;
      return;
    }
    Vec vals(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      bool overflow = op == Op::Add ? __builtin_add_overflow(a.values[i], b.values[i], &vals[i])
                                    : __builtin_sub_overflow(a.values[i], b.values[i], &vals[i]);
      if (overflow) return;
    }
    add(size, std::move(t), std::move(vals), a.constant && b.constant);
  }

  std::optional<Term> features_of_size(std::size_t size) {
    std::vector<bool> truth(n_);
    if (size == 1) {
      for (const auto& [t, vals] : bool_vars_) {
        count();
        if (separates(vals)) return t;
      }
      return std::nullopt;
    }
    if (size == 2) {
      for (const auto& [t, vals] : bool_vars_) {
        count();
        for (std::size_t i = 0; i < n_; ++i) truth[i] = !vals[i];
        if (separates(truth)) return Term::negate(t);
      }
      return std::nullopt;
    }
    grow_to(size - 2);
    for (Op op : kComparisons) {
      if (auto f = comparisons(op, size - 1, false)) return f;
    }
    if (size >= 4) {
      if (auto f = comparisons(Op::Eq, size - 2, true)) return f;
    }
    return std::nullopt;
  }

  /// Comparisons whose two sides have `operand_size` nodes in total.
  std::optional<Term> comparisons(Op op, std::size_t operand_size, bool negated) {
    for (std::size_t sa = 1; sa < operand_size; ++sa) {
      std::size_t sb = operand_size - sa;
      if (sa >= banks_.size() || sb >= banks_.size()) continue;
      for (const auto& a : banks_[sa]) {
        for (const auto& b : banks_[sb]) {
          if (a.constant && b.constant) continue;
          if (a.term == b.term) continue;
          count();
          bool ok = true;
          for (std::size_t i = 0; i < n_ && ok; ++i)
            ok = (compare(op, a.values[i], b.values[i]) != negated) == (i < num_pos_);
          if (!ok) continue;
          Term cmp = Term::app(op, {a.term, b.term});
          return negated ? Term::app(Op::Not, {cmp}) : cmp;
        }
      }
    }
    return std::nullopt;
  }

  void count() {
    if (stats_) ++stats_->features_tried;
  }

  std::size_t n_ = 0;
  std::size_t num_pos_;
  SynthStats* stats_;
  bool usable_ = true;
  std::size_t grown_ = 1;
  std::vector<std::vector<IntEntry>> banks_;
  std::unordered_set<Vec, VecHash> seen_;
  std::vector<std::pair<Term, std::int64_t>> constants_;
  std::vector<std::pair<Term, std::vector<bool>>> bool_vars_;
};

}  // namespace

std::optional<Term> synthesize_feature(const ConflictGroup& g, std::size_t max_size,
                                       std::span<const Integer> constants, SynthStats* stats) {
  if (g.positives.empty() || g.negatives.empty()) return std::nullopt;
  Enumerator e(g, constants, stats);
  return e.run(max_size);
}

}  // namespace invgen
