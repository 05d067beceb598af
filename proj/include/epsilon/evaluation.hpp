#pragma once

// Finitary truth: n = m is true when both sides reduce to the same numeral,
// extended to the connectives classically.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epsilon/errors.hpp"
#include "epsilon/script_io.hpp"
#include "epsilon/substitution.hpp"
#include "epsilon/syntax.hpp"
#include "epsilon/transform.hpp"

namespace epsilon {

class NotClosed : public Error {
 public:
  explicit NotClosed(const std::string& what) : Error("not closed: " + what) {}
};

class NonNumeralTerm : public Error {
 public:
  explicit NonNumeralTerm(const std::string& term)
      : Error("term does not reduce to a numeral: " + term) {}
};

inline std::uint64_t eval_term(const Term& t) {
  if (!is_variable_free(t)) throw NotClosed(print_term(t));
  Term r = reduce_numerals(t);
  auto v = numeral_value(r);
  if (!v) throw NonNumeralTerm(print_term(t));
  return *v;
}

inline bool eval_closed(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      return eval_term(f.lhs_term()) == eval_term(f.rhs_term());
    case FormulaKind::Not:
      return !eval_closed(f.operand());
    case FormulaKind::Implies:
      return !eval_closed(f.left()) || eval_closed(f.right());
    case FormulaKind::And:
      return eval_closed(f.left()) && eval_closed(f.right());
    case FormulaKind::Or:
      return eval_closed(f.left()) || eval_closed(f.right());
    default:
      throw NotClosed(print_formula(f));
  }
}

struct VerifiabilityResult {
  bool verified = true;
  std::size_t instances = 0;
  // First falsifying instance, variable name to value.
  std::map<std::string, std::uint64_t> counterexample;
};

// Evaluates every instance with numerals 0..bound for the free variables,
// in lexicographic order of the values.
inline VerifiabilityResult verify_instances(const Formula& axiom, std::uint64_t bound) {
  if (!is_quantifier_free(axiom) || !is_epsilon_free(axiom)) {
    throw NotClosed("verifiability needs a quantifier- and epsilon-free formula");
  }
  std::vector<std::string> vars = free_variables(axiom);
  std::vector<std::uint64_t> values(vars.size(), 0);
  VerifiabilityResult r;
  while (true) {
    Substitution s;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      s.individuals[vars[i]] = Term::numeral(values[i]);
    }
    ++r.instances;
    if (!eval_closed(apply_subst(axiom, s))) {
      r.verified = false;
      for (std::size_t i = 0; i < vars.size(); ++i) r.counterexample[vars[i]] = values[i];
      return r;
    }
    std::size_t i = vars.size();
    while (i > 0 && values[i - 1] == bound) values[--i] = 0;
    if (i == 0) return r;
    ++values[i - 1];
  }
}

inline bool check_verifiable(const Formula& axiom, std::uint64_t bound) {
  return verify_instances(axiom, bound).verified;
}

}  // namespace epsilon
