#pragma once

// Terms and formulas of the epsilon calculus over the signature {0, +1, d, =}.
//
// Binders (epsilon terms and quantifiers) are nameless: a bound variable is
// a de Bruijn index counting enclosing binders, innermost first. Every
// binder and bound occurrence keeps a name hint used only for printing, so
// structural equality of the nameless form is alpha-equivalence.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace epsilon {

class Term;
class Formula;

namespace detail {
struct TermNode;
struct FormulaNode;
}  // namespace detail

enum class TermKind { Zero, Succ, Pred, Free, Bound, Epsilon };

enum class FormulaKind { Eq, Var, Not, Implies, And, Or, Forall, Exists };

// Immutable, cheaply copyable handle to a term node.
class Term {
 public:
  Term() = default;

  static Term zero();
  static Term succ(Term t);
  static Term pred(Term t);
  static Term free(std::string name);
  static Term bound(std::size_t index, std::string hint = "x");
  static Term epsilon(std::string hint, Formula body);
  static Term numeral(std::uint64_t n);

  TermKind kind() const;
  // Argument of Succ and Pred.
  const Term& arg() const;
  // Free-variable name, or the name hint of Bound and Epsilon.
  const std::string& name() const;
  // de Bruijn index of Bound.
  std::size_t index() const;
  // Body of Epsilon; index 0 in the body is the bound variable.
  const Formula& body() const;

  bool is(TermKind k) const { return kind() == k; }
  bool same_node(const Term& other) const { return node_ == other.node_; }
  explicit operator bool() const { return node_ != nullptr; }

 private:
  explicit Term(std::shared_ptr<const detail::TermNode> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const detail::TermNode> node_;
};

// Immutable, cheaply copyable handle to a formula node.
class Formula {
 public:
  Formula() = default;

  static Formula eq(Term lhs, Term rhs);
  static Formula neq(Term lhs, Term rhs);
  static Formula var(std::string name, std::vector<Term> args = {});
  static Formula negation(Formula f);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula forall(std::string hint, Formula body);
  static Formula exists(std::string hint, Formula body);

  FormulaKind kind() const;
  // Eq: the two sides. Var: the arguments.
  const std::vector<Term>& terms() const;
  const Term& lhs_term() const { return terms()[0]; }
  const Term& rhs_term() const { return terms()[1]; }
  // Formula-variable name, or the name hint of a quantifier.
  const std::string& name() const;
  // Not: operand. Binary connectives: left operand.
  const Formula& left() const;
  const Formula& right() const;
  const Formula& operand() const { return left(); }
  // Quantifier body; index 0 in the body is the bound variable.
  const Formula& body() const { return left(); }

  bool is(FormulaKind k) const { return kind() == k; }
  bool is_binary() const {
    auto k = kind();
    return k == FormulaKind::Implies || k == FormulaKind::And ||
           k == FormulaKind::Or;
  }
  bool is_quantifier() const {
    return kind() == FormulaKind::Forall || kind() == FormulaKind::Exists;
  }
  bool same_node(const Formula& other) const { return node_ == other.node_; }
  explicit operator bool() const { return node_ != nullptr; }

 private:
  explicit Formula(std::shared_ptr<const detail::FormulaNode> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const detail::FormulaNode> node_;
};

namespace detail {

struct TermNode {
  TermKind kind;
  std::string name;
  std::size_t index = 0;
  Term arg;
  Formula body;
};

struct FormulaNode {
  FormulaKind kind;
  std::string name;
  std::vector<Term> terms;
  Formula left;
  Formula right;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Construction and access.

inline Term Term::zero() {
  static const Term z(std::make_shared<const detail::TermNode>(
      detail::TermNode{TermKind::Zero, {}, 0, {}, {}}));
  return z;
}
inline Term Term::succ(Term t) {
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{TermKind::Succ, {}, 0, std::move(t), {}}));
}
inline Term Term::pred(Term t) {
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{TermKind::Pred, {}, 0, std::move(t), {}}));
}
inline Term Term::free(std::string name) {
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{TermKind::Free, std::move(name), 0, {}, {}}));
}
inline Term Term::bound(std::size_t index, std::string hint) {
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{TermKind::Bound, std::move(hint), index, {}, {}}));
}
inline Term Term::epsilon(std::string hint, Formula body) {
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{TermKind::Epsilon, std::move(hint), 0, {}, std::move(body)}));
}
inline Term Term::numeral(std::uint64_t n) {
  Term t = zero();
  for (std::uint64_t i = 0; i < n; ++i) t = succ(t);
  return t;
}

inline TermKind Term::kind() const { return node_->kind; }
inline const Term& Term::arg() const { return node_->arg; }
inline const std::string& Term::name() const { return node_->name; }
inline std::size_t Term::index() const { return node_->index; }
inline const Formula& Term::body() const { return node_->body; }

inline Formula Formula::eq(Term lhs, Term rhs) {
  return Formula(std::make_shared<const detail::FormulaNode>(detail::FormulaNode{
      FormulaKind::Eq, {}, {std::move(lhs), std::move(rhs)}, {}, {}}));
}
inline Formula Formula::neq(Term lhs, Term rhs) {
  return negation(eq(std::move(lhs), std::move(rhs)));
}
inline Formula Formula::var(std::string name, std::vector<Term> args) {
  return Formula(std::make_shared<const detail::FormulaNode>(detail::FormulaNode{
      FormulaKind::Var, std::move(name), std::move(args), {}, {}}));
}
inline Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const detail::FormulaNode>(
      detail::FormulaNode{FormulaKind::Not, {}, {}, std::move(f), {}}));
}
inline Formula Formula::implies(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const detail::FormulaNode>(detail::FormulaNode{
      FormulaKind::Implies, {}, {}, std::move(lhs), std::move(rhs)}));
}
inline Formula Formula::conj(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const detail::FormulaNode>(detail::FormulaNode{
      FormulaKind::And, {}, {}, std::move(lhs), std::move(rhs)}));
}
inline Formula Formula::disj(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const detail::FormulaNode>(detail::FormulaNode{
      FormulaKind::Or, {}, {}, std::move(lhs), std::move(rhs)}));
}
inline Formula Formula::forall(std::string hint, Formula body) {
  return Formula(std::make_shared<const detail::FormulaNode>(detail::FormulaNode{
      FormulaKind::Forall, std::move(hint), {}, std::move(body), {}}));
}
inline Formula Formula::exists(std::string hint, Formula body) {
  return Formula(std::make_shared<const detail::FormulaNode>(detail::FormulaNode{
      FormulaKind::Exists, std::move(hint), {}, std::move(body), {}}));
}

inline FormulaKind Formula::kind() const { return node_->kind; }
inline const std::vector<Term>& Formula::terms() const { return node_->terms; }
inline const std::string& Formula::name() const { return node_->name; }
inline const Formula& Formula::left() const { return node_->left; }
inline const Formula& Formula::right() const { return node_->right; }

// ---------------------------------------------------------------------------
// Generic bottom-up rebuilding.
//
// A rewriter supplies `term(t, depth)` and `formula(f, depth)`, each returning
// a replacement or nullopt to descend structurally. `depth` counts binders
// passed since the root. Unchanged subtrees keep their nodes.

struct NoRewrite {
  std::optional<Term> term(const Term&, std::size_t) { return std::nullopt; }
  std::optional<Formula> formula(const Formula&, std::size_t) {
    return std::nullopt;
  }
};

template <class Rewriter>
Formula rewrite(const Formula& f, Rewriter& rw, std::size_t depth = 0);

template <class Rewriter>
Term rewrite(const Term& t, Rewriter& rw, std::size_t depth = 0) {
  if (auto r = rw.term(t, depth)) return *r;
  switch (t.kind()) {
    case TermKind::Succ:
    case TermKind::Pred: {
      Term a = rewrite(t.arg(), rw, depth);
      if (a.same_node(t.arg())) return t;
      return t.is(TermKind::Succ) ? Term::succ(a) : Term::pred(a);
    }
    case TermKind::Epsilon: {
      Formula b = rewrite(t.body(), rw, depth + 1);
      if (b.same_node(t.body())) return t;
      return Term::epsilon(t.name(), b);
    }
    default:
      return t;
  }
}

template <class Rewriter>
Formula rewrite(const Formula& f, Rewriter& rw, std::size_t depth) {
  if (auto r = rw.formula(f, depth)) return *r;
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::Var: {
      std::vector<Term> ts;
      ts.reserve(f.terms().size());
      bool changed = false;
      for (const Term& t : f.terms()) {
        ts.push_back(rewrite(t, rw, depth));
        changed = changed || !ts.back().same_node(t);
      }
      if (!changed) return f;
      if (f.is(FormulaKind::Eq)) return Formula::eq(ts[0], ts[1]);
      return Formula::var(f.name(), std::move(ts));
    }
    case FormulaKind::Not: {
      Formula a = rewrite(f.operand(), rw, depth);
      return a.same_node(f.operand()) ? f : Formula::negation(a);
    }
    case FormulaKind::Implies:
    case FormulaKind::And:
    case FormulaKind::Or: {
      Formula a = rewrite(f.left(), rw, depth);
      Formula b = rewrite(f.right(), rw, depth);
      if (a.same_node(f.left()) && b.same_node(f.right())) return f;
      if (f.is(FormulaKind::Implies)) return Formula::implies(a, b);
      if (f.is(FormulaKind::And)) return Formula::conj(a, b);
      return Formula::disj(a, b);
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      Formula b = rewrite(f.body(), rw, depth + 1);
      if (b.same_node(f.body())) return f;
      return f.is(FormulaKind::Forall) ? Formula::forall(f.name(), b)
                                       : Formula::exists(f.name(), b);
    }
  }
  return f;
}

// Pre-order visit of every term and formula node. The visitor returns false
// to skip the children of a node.
template <class TermVisit, class FormulaVisit>
void visit(const Formula& f, TermVisit&& on_term, FormulaVisit&& on_formula,
           std::size_t depth = 0);

template <class TermVisit, class FormulaVisit>
void visit(const Term& t, TermVisit&& on_term, FormulaVisit&& on_formula,
           std::size_t depth = 0) {
  if (!on_term(t, depth)) return;
  if (t.is(TermKind::Succ) || t.is(TermKind::Pred)) {
    visit(t.arg(), on_term, on_formula, depth);
  } else if (t.is(TermKind::Epsilon)) {
    visit(t.body(), on_term, on_formula, depth + 1);
  }
}

template <class TermVisit, class FormulaVisit>
void visit(const Formula& f, TermVisit&& on_term, FormulaVisit&& on_formula,
           std::size_t depth) {
  if (!on_formula(f, depth)) return;
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::Var:
      for (const Term& t : f.terms()) visit(t, on_term, on_formula, depth);
      break;
    case FormulaKind::Not:
      visit(f.operand(), on_term, on_formula, depth);
      break;
    case FormulaKind::Implies:
    case FormulaKind::And:
    case FormulaKind::Or:
      visit(f.left(), on_term, on_formula, depth);
      visit(f.right(), on_term, on_formula, depth);
      break;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      visit(f.body(), on_term, on_formula, depth + 1);
      break;
  }
}

// ---------------------------------------------------------------------------
// Alpha-equivalence: structural equality ignoring name hints.

bool alpha_eq(const Formula& f, const Formula& g);

inline bool alpha_eq(const Term& s, const Term& t) {
  if (s.same_node(t)) return true;
  if (s.kind() != t.kind()) return false;
  switch (s.kind()) {
    case TermKind::Zero:
      return true;
    case TermKind::Succ:
    case TermKind::Pred:
      return alpha_eq(s.arg(), t.arg());
    case TermKind::Free:
      return s.name() == t.name();
    case TermKind::Bound:
      return s.index() == t.index();
    case TermKind::Epsilon:
      return alpha_eq(s.body(), t.body());
  }
  return false;
}

inline bool alpha_eq(const Formula& f, const Formula& g) {
  if (f.same_node(g)) return true;
  if (f.kind() != g.kind()) return false;
  switch (f.kind()) {
    case FormulaKind::Var:
      if (f.name() != g.name()) return false;
      [[fallthrough]];
    case FormulaKind::Eq: {
      if (f.terms().size() != g.terms().size()) return false;
      for (std::size_t i = 0; i < f.terms().size(); ++i) {
        if (!alpha_eq(f.terms()[i], g.terms()[i])) return false;
      }
      return true;
    }
    case FormulaKind::Not:
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return alpha_eq(f.left(), g.left());
    case FormulaKind::Implies:
    case FormulaKind::And:
    case FormulaKind::Or:
      return alpha_eq(f.left(), g.left()) && alpha_eq(f.right(), g.right());
  }
  return false;
}

// ---------------------------------------------------------------------------
// Canonical nameless keys; equal keys iff alpha-equivalent.

namespace detail {

inline void append_key(const Formula& f, std::string& out);

inline void append_key(const Term& t, std::string& out) {
  switch (t.kind()) {
    case TermKind::Zero:
      out += '0';
      break;
    case TermKind::Succ:
      out += 'S';
      append_key(t.arg(), out);
      break;
    case TermKind::Pred:
      out += 'P';
      append_key(t.arg(), out);
      break;
    case TermKind::Free:
      out += 'v';
      out += t.name();
      out += ';';
      break;
    case TermKind::Bound:
      out += '#';
      out += std::to_string(t.index());
      out += ';';
      break;
    case TermKind::Epsilon:
      out += 'e';
      append_key(t.body(), out);
      break;
  }
}

inline void append_key(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      out += '=';
      append_key(f.lhs_term(), out);
      append_key(f.rhs_term(), out);
      break;
    case FormulaKind::Var:
      out += 'A';
      out += f.name();
      out += '/';
      out += std::to_string(f.terms().size());
      out += ';';
      for (const Term& t : f.terms()) append_key(t, out);
      break;
    case FormulaKind::Not:
      out += '~';
      append_key(f.operand(), out);
      break;
    case FormulaKind::Implies:
      out += '>';
      append_key(f.left(), out);
      append_key(f.right(), out);
      break;
    case FormulaKind::And:
      out += '&';
      append_key(f.left(), out);
      append_key(f.right(), out);
      break;
    case FormulaKind::Or:
      out += '|';
      append_key(f.left(), out);
      append_key(f.right(), out);
      break;
    case FormulaKind::Forall:
      out += 'U';
      append_key(f.body(), out);
      break;
    case FormulaKind::Exists:
      out += 'E';
      append_key(f.body(), out);
      break;
  }
}

}  // namespace detail

inline std::string canonical_key(const Formula& f) {
  std::string out;
  detail::append_key(f, out);
  return out;
}

inline std::string canonical_key(const Term& t) {
  std::string out;
  detail::append_key(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Numerals.

inline std::optional<std::uint64_t> numeral_value(const Term& t) {
  std::uint64_t n = 0;
  const Term* cur = &t;
  while (cur->is(TermKind::Succ)) {
    ++n;
    cur = &cur->arg();
  }
  if (!cur->is(TermKind::Zero)) return std::nullopt;
  return n;
}

// ---------------------------------------------------------------------------
// de Bruijn machinery.

namespace detail {

struct Shifter : NoRewrite {
  std::ptrdiff_t delta;
  std::size_t cutoff;
  std::optional<Term> term(const Term& t, std::size_t depth) {
    if (t.is(TermKind::Bound) && t.index() >= cutoff + depth) {
      return Term::bound(static_cast<std::size_t>(
                             static_cast<std::ptrdiff_t>(t.index()) + delta),
                         t.name());
    }
    return std::nullopt;
  }
};

struct TopSubstituter : NoRewrite {
  Term value;
  std::optional<Term> term(const Term& t, std::size_t depth);
};

}  // namespace detail

// Adds `delta` to every bound index that escapes `cutoff` enclosing binders.
inline Term shift(const Term& t, std::ptrdiff_t delta, std::size_t cutoff = 0) {
  if (delta == 0) return t;
  detail::Shifter s{{}, delta, cutoff};
  return rewrite(t, s);
}

inline Formula shift(const Formula& f, std::ptrdiff_t delta,
                     std::size_t cutoff = 0) {
  if (delta == 0) return f;
  detail::Shifter s{{}, delta, cutoff};
  return rewrite(f, s);
}

inline std::optional<Term> detail::TopSubstituter::term(const Term& t,
                                                         std::size_t depth) {
  if (!t.is(TermKind::Bound)) return std::nullopt;
  if (t.index() == depth) return shift(value, static_cast<std::ptrdiff_t>(depth));
  if (t.index() > depth) return Term::bound(t.index() - 1, t.name());
  return t;
}

// Given the body of a binder, substitutes `value` for the bound variable.
// `value` lives in the context outside the binder.
inline Formula instantiate(const Formula& body, const Term& value) {
  detail::TopSubstituter s{{}, value};
  return rewrite(body, s);
}

// Bound indices that escape the given term or formula, relative to its root.
inline std::set<std::size_t> dangling_indices(const Formula& f) {
  std::set<std::size_t> out;
  visit(
      f,
      [&](const Term& t, std::size_t depth) {
        if (t.is(TermKind::Bound) && t.index() >= depth) {
          out.insert(t.index() - depth);
        }
        return true;
      },
      [](const Formula&, std::size_t) { return true; });
  return out;
}

inline std::set<std::size_t> dangling_indices(const Term& t) {
  std::set<std::size_t> out;
  visit(
      t,
      [&](const Term& u, std::size_t depth) {
        if (u.is(TermKind::Bound) && u.index() >= depth) {
          out.insert(u.index() - depth);
        }
        return true;
      },
      [](const Formula&, std::size_t) { return true; });
  return out;
}

// True when no bound variable escapes.
inline bool is_closed(const Term& t) { return dangling_indices(t).empty(); }
inline bool is_closed(const Formula& f) { return dangling_indices(f).empty(); }

// ---------------------------------------------------------------------------
// Structural queries.

inline bool is_epsilon_free(const Formula& f) {
  bool found = false;
  visit(
      f,
      [&](const Term& t, std::size_t) {
        if (t.is(TermKind::Epsilon)) found = true;
        return !found;
      },
      [&](const Formula&, std::size_t) { return !found; });
  return !found;
}

inline bool is_epsilon_free(const Term& t) {
  bool found = false;
  visit(
      t,
      [&](const Term& u, std::size_t) {
        if (u.is(TermKind::Epsilon)) found = true;
        return !found;
      },
      [&](const Formula&, std::size_t) { return !found; });
  return !found;
}

inline bool is_quantifier_free(const Formula& f) {
  bool found = false;
  visit(
      f, [&](const Term&, std::size_t) { return !found; },
      [&](const Formula& g, std::size_t) {
        if (g.is_quantifier()) found = true;
        return !found;
      });
  return !found;
}

// No free variable, formula variable, quantifier or epsilon term.
inline bool is_variable_free(const Formula& f) {
  bool ok = true;
  visit(
      f,
      [&](const Term& t, std::size_t) {
        if (t.is(TermKind::Free) || t.is(TermKind::Epsilon)) ok = false;
        return ok;
      },
      [&](const Formula& g, std::size_t) {
        if (g.is(FormulaKind::Var) || g.is_quantifier()) ok = false;
        return ok;
      });
  return ok;
}

inline bool is_variable_free(const Term& t) {
  bool ok = true;
  visit(
      t,
      [&](const Term& u, std::size_t) {
        if (u.is(TermKind::Free) || u.is(TermKind::Epsilon) ||
            u.is(TermKind::Bound)) {
          ok = false;
        }
        return ok;
      },
      [&](const Formula&, std::size_t) { return ok; });
  return ok;
}

// Free individual variables in first-occurrence order.
template <class Node>
std::vector<std::string> free_variables(const Node& n) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  visit(
      n,
      [&](const Term& t, std::size_t) {
        if (t.is(TermKind::Free) && seen.insert(t.name()).second) {
          out.push_back(t.name());
        }
        return true;
      },
      [](const Formula&, std::size_t) { return true; });
  return out;
}

// Formula-variable names in first-occurrence order.
template <class Node>
std::vector<std::string> formula_variables(const Node& n) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  visit(
      n, [](const Term&, std::size_t) { return true; },
      [&](const Formula& g, std::size_t) {
        if (g.is(FormulaKind::Var) && seen.insert(g.name()).second) {
          out.push_back(g.name());
        }
        return true;
      });
  return out;
}

namespace detail {

template <class Node>
std::vector<Term> collect_epsilons(const Node& n, bool closed_only) {
  std::vector<Term> out;
  std::set<std::string> seen;
  visit(
      n,
      [&](const Term& t, std::size_t) {
        if (t.is(TermKind::Epsilon) && (!closed_only || is_closed(t)) &&
            seen.insert(canonical_key(t)).second) {
          out.push_back(t);
        }
        return true;
      },
      [](const Formula&, std::size_t) { return true; });
  return out;
}

}  // namespace detail

// Every epsilon subterm, deduplicated up to alpha_eq, in pre-order.
inline std::vector<Term> epsilon_subterms(const Formula& f) {
  return detail::collect_epsilons(f, false);
}

// Epsilon subterms that do not mention any enclosing binder, i.e. the ones
// that can be replaced on their own.
template <class Node>
std::vector<Term> closed_epsilon_subterms(const Node& n) {
  return detail::collect_epsilons(n, true);
}

// Whether the closed term `target` occurs in `n`.
template <class Node>
bool contains_term(const Node& n, const Term& target) {
  bool found = false;
  visit(
      n,
      [&](const Term& t, std::size_t) {
        if (!found && alpha_eq(t, target)) found = true;
        return !found;
      },
      [&](const Formula&, std::size_t) { return !found; });
  return found;
}

// Whether the closed term `target` occurs in `t` at a position other than
// the root.
inline bool properly_contains(const Term& t, const Term& target) {
  if (t.is(TermKind::Succ) || t.is(TermKind::Pred)) {
    return contains_term(t.arg(), target);
  }
  if (t.is(TermKind::Epsilon)) return contains_term(t.body(), target);
  return false;
}

namespace detail {

struct TermReplacer : NoRewrite {
  Term target;
  Term replacement;
  std::string target_key;
  std::optional<Term> term(const Term& t, std::size_t) {
    if (t.kind() == target.kind() && canonical_key(t) == target_key) {
      return replacement;
    }
    return std::nullopt;
  }
};

}  // namespace detail

// Replaces every occurrence of the closed term `target` by the closed term
// `replacement`.
inline Formula replace_term(const Formula& f, const Term& target,
                            const Term& replacement) {
  detail::TermReplacer r{{}, target, replacement, canonical_key(target)};
  return rewrite(f, r);
}

inline Term replace_term(const Term& t, const Term& target,
                         const Term& replacement) {
  detail::TermReplacer r{{}, target, replacement, canonical_key(target)};
  return rewrite(t, r);
}

inline std::size_t node_count(const Formula& f) {
  std::size_t n = 0;
  visit(
      f,
      [&](const Term&, std::size_t) {
        ++n;
        return true;
      },
      [&](const Formula&, std::size_t) {
        ++n;
        return true;
      });
  return n;
}

}  // namespace epsilon
