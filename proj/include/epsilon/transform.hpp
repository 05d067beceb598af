#pragma once

// Structural proof transformations: resolution into proof threads,
// elimination of substitution steps, grounding and numeral reduction.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "epsilon/errors.hpp"
#include "epsilon/kernel.hpp"
#include "epsilon/proof.hpp"
#include "epsilon/substitution.hpp"
#include "epsilon/syntax.hpp"

namespace epsilon {

// A proof in tree form. Premises are ordered as in the justification: the
// minor premise of MP comes first, its major premise second. Line numbers
// stored in `justification` are not meaningful inside a tree.
struct ThreadNode {
  Formula formula;
  Justification justification;
  std::vector<ThreadNode> premises;

  bool is_leaf() const { return premises.empty(); }
};

struct ThreadProof {
  ThreadNode root;

  const Formula& end_formula() const { return root.formula; }
};

inline std::size_t node_count(const ThreadNode& n) {
  std::size_t count = 1;
  for (const auto& p : n.premises) count += node_count(p);
  return count;
}

inline std::size_t node_count(const ThreadProof& t) { return node_count(t.root); }

inline void for_each_node(const ThreadNode& n, const std::function<void(const ThreadNode&)>& fn) {
  for (const auto& p : n.premises) for_each_node(p, fn);
  fn(n);
}

// Axiom leaves that no longer belong to their class are relabelled with a
// class they do belong to; the label is kept when none fits.
inline void relabel_axiom_leaves(ThreadNode& n) {
  for (auto& p : n.premises) relabel_axiom_leaves(p);
  Rule rule = n.justification.rule;
  if (!is_axiom(rule) || check_axiom(n.formula, rule)) return;
  for (Rule candidate : {Rule::Id1, Rule::AxSucc, Rule::AxPred, Rule::Taut, Rule::Id2, Rule::Crit}) {
    if (check_axiom(n.formula, candidate)) {
      n.justification = Justification::axiom(candidate);
      return;
    }
  }
}

// Duplicates shared subproofs so that every line feeds at most one
// inference. Lines that do not contribute to the last line are dropped.
inline ThreadProof resolve_threads(const ProofScript& p) {
  std::vector<std::optional<ThreadNode>> built(p.lines.size());
  std::function<const ThreadNode&(std::size_t)> build = [&](std::size_t i) -> const ThreadNode& {
    if (!built[i]) {
      const ProofLine& line = p.lines[i];
      ThreadNode node{line.formula, line.justification, {}};
      for (std::size_t cited : line.justification.premises()) {
        node.premises.push_back(build(p.index_of(cited)));
      }
      built[i] = std::move(node);
    }
    return *built[i];
  };
  return ThreadProof{build(p.lines.size() - 1)};
}

// Post-order listing of a tree, numbered from 1.
inline ProofScript linearize(const ThreadProof& t) {
  ScriptBuilder out;
  std::function<std::size_t(const ThreadNode&)> emit = [&](const ThreadNode& n) {
    std::vector<std::size_t> refs;
    for (const auto& p : n.premises) refs.push_back(emit(p));
    Justification j = n.justification;
    switch (j.rule) {
      case Rule::Subst:
      case Rule::Rep:
        j.premise = refs.at(0);
        break;
      case Rule::MP:
        j.premise = refs.at(0);
        j.major = refs.at(1);
        break;
      default:
        break;
    }
    return out.add(n.formula, std::move(j));
  };
  emit(t.root);
  return out.take();
}

// Follows each thread from the end formula upwards and pushes every
// substitution onto the formulas above it, composing with earlier
// substitutions and rewriting MP premises, until it reaches the axioms.
// Substitution and repetition steps disappear; the end formula is kept
// exactly.
inline ThreadProof eliminate_free_variable_substs(const ThreadProof& t) {
  std::function<ThreadNode(const ThreadNode&, const Substitution&)> push =
      [&](const ThreadNode& n, const Substitution& s) -> ThreadNode {
    Formula here = apply_subst(n.formula, s);
    switch (n.justification.rule) {
      case Rule::Subst: {
        ThreadNode r = push(n.premises.at(0), compose(n.justification.subst, s));
        r.formula = here;
        return r;
      }
      case Rule::Rep: {
        ThreadNode r = push(n.premises.at(0), s);
        r.formula = here;
        return r;
      }
      case Rule::MP:
        return ThreadNode{here, n.justification,
                          {push(n.premises.at(0), s), push(n.premises.at(1), s)}};
      default:
        return ThreadNode{here, n.justification, {}};
    }
  };
  return ThreadProof{push(t.root, Substitution{})};
}

class ResidualEpsilon : public Error {
 public:
  explicit ResidualEpsilon(const std::string& formula)
      : Error("epsilon term remains in " + formula) {}
};

namespace detail {

struct Grounder : NoRewrite {
  std::optional<Term> term(const Term& t, std::size_t) {
    if (t.is(TermKind::Free)) return Term::zero();
    return std::nullopt;
  }
  std::optional<Formula> formula(const Formula& f, std::size_t) {
    if (f.is(FormulaKind::Var)) return Formula::eq(Term::zero(), Term::zero());
    return std::nullopt;
  }
};

inline ThreadNode map_formulas(const ThreadNode& n, const std::function<Formula(const Formula&)>& fn) {
  ThreadNode out{fn(n.formula), n.justification, {}};
  out.premises.reserve(n.premises.size());
  for (const auto& p : n.premises) out.premises.push_back(map_formulas(p, fn));
  return out;
}

}  // namespace detail

// Free individual variables become 0 and formula variables become 0 = 0,
// their arguments dropped.
inline Formula ground_formula(const Formula& f) {
  detail::Grounder g;
  return rewrite(f, g);
}

// Grounding without the epsilon restriction, for callers that deal with
// epsilon terms themselves.
inline ThreadProof ground_allowing_epsilon(const ThreadProof& t) {
  ThreadProof out{detail::map_formulas(t.root, ground_formula)};
  relabel_axiom_leaves(out.root);
  return out;
}

inline ThreadProof ground_residual_variables(const ThreadProof& t) {
  for_each_node(t.root, [](const ThreadNode& n) {
    if (n.justification.rule == Rule::Subst) {
      throw Error("grounding requires a proof without substitution steps");
    }
    if (!is_epsilon_free(n.formula)) throw ResidualEpsilon(print_formula(n.formula));
  });
  return ground_allowing_epsilon(t);
}

// ---------------------------------------------------------------------------
// Numeral reduction: d(0) => 0 and d(t+1) => t, anywhere in a term.

inline Term reduce_numerals(const Term& t);

namespace detail {

struct NumeralReducer : NoRewrite {
  std::optional<Term> term(const Term& t, std::size_t) { return reduce_numerals(t); }
};

}  // namespace detail

// Innermost normalisation: arguments first, then the root redex.
inline Term reduce_numerals(const Term& t) {
  switch (t.kind()) {
    case TermKind::Succ: {
      Term a = reduce_numerals(t.arg());
      return a.same_node(t.arg()) ? t : Term::succ(a);
    }
    case TermKind::Pred: {
      Term a = reduce_numerals(t.arg());
      if (a.is(TermKind::Zero)) return a;
      if (a.is(TermKind::Succ)) return a.arg();
      return a.same_node(t.arg()) ? t : Term::pred(a);
    }
    case TermKind::Epsilon: {
      detail::NumeralReducer r;
      Formula b = rewrite(t.body(), r);
      return b.same_node(t.body()) ? t : Term::epsilon(t.name(), b);
    }
    default:
      return t;
  }
}

inline Formula reduce_numerals(const Formula& f) {
  detail::NumeralReducer r;
  return rewrite(f, r);
}

// Reduces every formula; an instance of x = d(x+1) becomes n = n and is
// relabelled as id1, for example.
inline ThreadProof reduce_numerals(const ThreadProof& t) {
  ThreadNode root = detail::map_formulas(
      t.root, [](const Formula& f) { return reduce_numerals(f); });
  relabel_axiom_leaves(root);
  return ThreadProof{std::move(root)};
}

}  // namespace epsilon
