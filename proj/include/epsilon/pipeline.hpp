#pragma once

// The consistency pipeline: eliminate critical formulas, resolve into
// threads, push substitutions to the axioms, ground, reduce numerals and
// evaluate. Conservativity runs the same pipeline on numeral instances.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "epsilon/elimination.hpp"
#include "epsilon/errors.hpp"
#include "epsilon/evaluation.hpp"
#include "epsilon/kernel.hpp"
#include "epsilon/proof.hpp"
#include "epsilon/script_io.hpp"
#include "epsilon/syntax.hpp"
#include "epsilon/transform.hpp"

namespace epsilon {

class InvalidProof : public Error {
 public:
  explicit InvalidProof(CheckReport report)
      : Error("proof does not check:\n" + format_report(report)), report_(std::move(report)) {}

  const CheckReport& report() const { return report_; }

 private:
  CheckReport report_;
};

class RefutedLeaf : public Error {
 public:
  RefutedLeaf(std::size_t line, const std::string& formula)
      : Error("axiom at line " + std::to_string(line) + " evaluates false: " + formula),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class WrongArity : public Error {
 public:
  explicit WrongArity(std::size_t found)
      : Error("end formula must have exactly one free variable, found " + std::to_string(found)) {}
};

struct LeafEvaluation {
  std::size_t line = 0;
  bool value = false;
};

struct TruthCertificate {
  ProofScript proof;  // variable-free, listed from its thread tree
  std::vector<LeafEvaluation> leaves;
  bool end_truth = false;
};

inline std::string format_certificate(const TruthCertificate& c) {
  std::string out = print_proof(c.proof);
  for (const auto& l : c.leaves) {
    out += "leaf " + std::to_string(l.line) + ": " + (l.value ? "true" : "false") + "\n";
  }
  out += std::string("end: ") + (c.end_truth ? "true" : "false") + "\n";
  return out;
}

namespace detail {

inline bool has_rule(const ProofScript& p, Rule r) {
  for (const auto& l : p.lines) {
    if (l.justification.rule == r) return true;
  }
  return false;
}

inline ProofScript translate_all_quantifiers(const ProofScript& p) {
  bool any = false;
  for (const auto& l : p.lines) any = any || !is_quantifier_free(l.formula);
  if (!any) return p;
  ProofScript out = p;
  for (auto& l : out.lines) {
    l.formula = translate_quantifiers(l.formula);
    for (auto& [name, schema] : l.justification.subst.formulas) {
      schema.body = translate_quantifiers(schema.body);
    }
  }
  return out;
}

}  // namespace detail

// Removes critical formulas (or, without any, residual epsilon terms) and
// returns the variable-free tree the evaluation runs on.
inline ThreadProof consistency_tree(const ProofScript& p) {
  ProofScript q = p;
  if (detail::has_rule(q, Rule::Crit)) {
    q = eliminate_all_critical(q);
  } else {
    q = erase_epsilon_terms(q);
  }
  ThreadProof t = resolve_threads(q);
  t = eliminate_free_variable_substs(t);
  t = ground_residual_variables(t);
  return reduce_numerals(t);
}

inline TruthCertificate consistency_pipeline(const ProofScript& input) {
  CheckReport report = check_proof(input);
  if (!report.valid()) throw InvalidProof(std::move(report));
  if (!is_variable_free(input.end_formula())) {
    throw NotClosed("end formula " + print_formula(input.end_formula()));
  }

  // Quantified subformulas only occur as propositional atoms here; as
  // epsilon terms they are erased with the rest.
  ProofScript p = detail::translate_all_quantifiers(input);

  TruthCertificate c;
  c.proof = linearize(consistency_tree(p));
  for (const auto& line : c.proof.lines) {
    if (!is_axiom(line.justification.rule)) continue;
    bool value = eval_closed(line.formula);
    if (!value) throw RefutedLeaf(line.number, print_formula(line.formula));
    c.leaves.push_back({line.number, value});
  }
  c.end_truth = eval_closed(c.proof.end_formula());
  return c;
}

// Instantiates the single free variable of the end formula with the numeral
// z by a final substitution step, then runs the consistency pipeline.
inline TruthCertificate conservativity_extract(const ProofScript& p, std::uint64_t z) {
  CheckReport report = check_proof(p);
  if (!report.valid()) throw InvalidProof(std::move(report));
  const Formula& end = p.end_formula();
  std::vector<std::string> vars = free_variables(end);
  if (vars.size() != 1) throw WrongArity(vars.size());
  if (!is_quantifier_free(end)) throw NotClosed("end formula has quantifiers");

  Substitution s;
  s.individuals[vars.front()] = Term::numeral(z);
  ProofScript extended = p;
  std::size_t number = p.lines.back().number + 1;
  extended.lines.push_back(
      {number, apply_subst(end, s), Justification::substitution(p.lines.back().number, s)});
  return consistency_pipeline(extended);
}

}  // namespace epsilon
