#pragma once

// Elimination of critical formulas in the simplest case (epsilon-free
// matrices, no identity axioms), detection of the configurations that block
// it, and the translation of quantifiers into epsilon terms.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "epsilon/errors.hpp"
#include "epsilon/kernel.hpp"
#include "epsilon/proof.hpp"
#include "epsilon/script_io.hpp"
#include "epsilon/substitution.hpp"
#include "epsilon/syntax.hpp"
#include "epsilon/transform.hpp"

namespace epsilon {

// ---------------------------------------------------------------------------
// Quantifiers as epsilon terms:
//   ex x. A(x)   becomes  A(eps x. A(x))
//   all x. A(x)  becomes  A(eps x. ~A(x))

namespace detail {

struct QuantifierTranslator : NoRewrite {
  std::optional<Formula> formula(const Formula& f, std::size_t depth) {
    if (!f.is_quantifier()) return std::nullopt;
    Formula body = rewrite(f.body(), *this, depth + 1);
    Formula chosen = f.is(FormulaKind::Exists) ? body : Formula::negation(body);
    return instantiate(body, Term::epsilon(f.name(), chosen));
  }
};

}  // namespace detail

// Innermost quantifiers are translated first.
inline Formula translate_quantifiers(const Formula& f) {
  detail::QuantifierTranslator t;
  return rewrite(f, t);
}

// ---------------------------------------------------------------------------
// Applicability.

enum class BlockerKind {
  NestedMatrixEpsilon,
  EqualityAxiomG,
  RenewedEpsilon,
  IdentityAxiomUsed,
  WitnessContainsTarget,
};

inline const char* blocker_name(BlockerKind k) {
  switch (k) {
    case BlockerKind::NestedMatrixEpsilon: return "NestedMatrixEpsilon";
    case BlockerKind::EqualityAxiomG: return "EqualityAxiomG";
    case BlockerKind::RenewedEpsilon: return "RenewedEpsilon";
    case BlockerKind::IdentityAxiomUsed: return "IdentityAxiomUsed";
    case BlockerKind::WitnessContainsTarget: return "WitnessContainsTarget";
  }
  return "?";
}

struct BlockerFinding {
  BlockerKind kind;
  std::size_t line = 0;
  std::string detail;
};

struct AnsatzReport {
  bool applicable = true;
  std::vector<BlockerFinding> blockers;
  std::vector<CriticalFamily> families;

  bool has(BlockerKind k) const {
    for (const auto& b : blockers) {
      if (b.kind == k) return true;
    }
    return false;
  }
};

// `applicable`, or one blocker line per finding: kind, line number, detail.
inline std::string format_ansatz_report(const AnsatzReport& r) {
  if (r.applicable) return "applicable\n";
  std::string out;
  for (const auto& b : r.blockers) {
    out += std::string("blocker: ") + blocker_name(b.kind) + " line " +
           std::to_string(b.line) + " — " + b.detail + "\n";
  }
  return out;
}

class NotApplicable : public Error {
 public:
  NotApplicable(AnsatzReport report, const std::string& why)
      : Error("critical-formula elimination not applicable: " + why),
        report_(std::move(report)) {}

  const AnsatzReport& report() const { return report_; }

 private:
  AnsatzReport report_;
};

// s = t -> eps x. A(x, s) = eps x. A(x, t): the identity axiom applied
// inside an epsilon term.
inline bool is_equality_axiom_g(const Formula& f) {
  if (!f.is(FormulaKind::Implies) || !f.left().is(FormulaKind::Eq) ||
      !f.right().is(FormulaKind::Eq)) {
    return false;
  }
  const Term& a = f.right().lhs_term();
  const Term& b = f.right().rhs_term();
  if (!a.is(TermKind::Epsilon) || !b.is(TermKind::Epsilon) || alpha_eq(a, b)) return false;
  detail::ReplacementMatcher m(f.left().lhs_term(), f.left().rhs_term());
  return m.formulas(a.body(), b.body(), true) && m.replaced_inside_epsilon();
}

inline AnsatzReport check_ansatz_applicable(const ProofScript& p) {
  AnsatzReport r;
  r.families = find_critical_families(p);

  auto add = [&](BlockerKind k, std::size_t line, std::string detail) {
    for (const auto& b : r.blockers) {
      if (b.kind == k && b.line == line) return;
    }
    r.blockers.push_back({k, line, std::move(detail)});
  };
  auto family_of = [&](const Term& e) -> const CriticalFamily* {
    for (const auto& f : r.families) {
      if (alpha_eq(f.epsilon, e)) return &f;
    }
    return nullptr;
  };

  for (const ProofLine& line : p.lines) {
    const Rule rule = line.justification.rule;
    if (rule == Rule::Id1) {
      add(BlockerKind::IdentityAxiomUsed, line.number, "identity axiom t = t");
    } else if (rule == Rule::Id2) {
      auto m = match_identity_axiom(line.formula);
      if (m && m->replaced_inside_epsilon) {
        add(BlockerKind::EqualityAxiomG, line.number,
            "identity axiom replaces " + print_term(m->lhs) + " inside an epsilon term");
      } else {
        add(BlockerKind::IdentityAxiomUsed, line.number,
            "identity axiom a = b -> (A(a) -> A(b))");
      }
    }
    if (rule != Rule::Id2 && is_equality_axiom_g(line.formula)) {
      add(BlockerKind::EqualityAxiomG, line.number,
          "equation between epsilon terms obtained from equal arguments");
    }
    if (rule != Rule::Crit) continue;

    CriticalFamily const* fam = nullptr;
    Term witness;
    for (const auto& f : r.families) {
      for (const auto& inst : f.instances) {
        if (inst.line == line.number) {
          fam = &f;
          witness = inst.witness;
        }
      }
    }
    for (const Term& u : epsilon_subterms(fam->matrix)) {
      if (!is_closed(u)) {
        add(BlockerKind::NestedMatrixEpsilon, line.number,
            "matrix of " + print_term(fam->epsilon) + " contains an epsilon term depending on its variable");
      } else if (family_of(u) == nullptr) {
        add(BlockerKind::NestedMatrixEpsilon, line.number,
            "matrix of " + print_term(fam->epsilon) + " contains " + print_term(u));
      }
    }
    for (const auto& other : r.families) {
      if (&other == fam) continue;
      if (contains_term(line.formula, other.epsilon)) {
        add(BlockerKind::RenewedEpsilon, line.number,
            "eliminating " + print_term(other.epsilon) +
                " rewrites this critical formula into one for a new epsilon term");
      }
    }
    if (contains_term(witness, fam->epsilon)) {
      add(BlockerKind::WitnessContainsTarget, line.number,
          "witness " + print_term(witness) + " contains " + print_term(fam->epsilon));
    }
  }
  r.applicable = r.blockers.empty();
  return r;
}

// ---------------------------------------------------------------------------
// Elimination of one critical family.

namespace detail {

// Appends lines, reusing an earlier line whenever one already proves the
// same formula up to alpha_eq.
class SharingBuilder {
 public:
  std::size_t add(const Formula& f, Justification j) {
    std::string key = canonical_key(f);
    auto it = known_.find(key);
    if (it != known_.end()) return it->second;
    std::size_t n = builder_.add(f, std::move(j));
    known_.emplace(std::move(key), n);
    return n;
  }
  // Always appends, so the line can close the proof.
  std::size_t append(const Formula& f, Justification j) { return builder_.add(f, std::move(j)); }
  std::size_t size() const { return builder_.size(); }
  ProofScript take() { return builder_.take(); }

 private:
  ScriptBuilder builder_;
  std::unordered_map<std::string, std::size_t> known_;
};

inline Substitution replace_in_substitution(const Substitution& s, const Term& target,
                                            const Term& replacement) {
  Substitution out = s;
  for (auto& [name, t] : out.individuals) t = replace_term(t, target, replacement);
  for (auto& [name, schema] : out.formulas) {
    schema.body = replace_term(schema.body, target, replacement);
  }
  return out;
}

struct AnsatzContext {
  const ProofScript* proof;
  const CriticalFamily* family;
  Term witness;      // t1
  Formula guard;     // A(t1)
  Formula consequent;  // A(eps x. A(x))

  bool is_family_line(const ProofLine& l) const {
    if (l.justification.rule != Rule::Crit) return false;
    for (const auto& inst : family->instances) {
      if (inst.line == l.number) return true;
    }
    return false;
  }

  bool is_first_instance(const ProofLine& l) const {
    for (const auto& inst : family->instances) {
      if (inst.line == l.number) return alpha_eq(inst.witness, witness);
    }
    return false;
  }
};

// Rebuilds every line F of the proof as `guard -> rho(F)`, where rho
// replaces the family's epsilon term by t1 when `substitute` is set.
// Returns the line proving the guarded end formula.
inline std::size_t guarded_copy(const AnsatzContext& cx, const Formula& guard,
                                bool substitute, SharingBuilder& out) {
  const ProofScript& p = *cx.proof;
  auto rho = [&](const Formula& f) {
    return substitute ? replace_term(f, cx.family->epsilon, cx.witness) : f;
  };
  auto guarded = [&](const Formula& f) { return Formula::implies(guard, f); };
  const auto taut = Justification::axiom(Rule::Taut);

  std::vector<std::size_t> at(p.lines.size());
  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    const ProofLine& line = p.lines[i];
    const Justification& j = line.justification;
    const Formula body = rho(line.formula);
    const Formula target = guarded(body);
    auto ref = [&](std::size_t number) { return at[p.index_of(number)]; };

    if (substitute && cx.is_family_line(line)) {
      // A(t1) -> (A(ti) -> A(t1))
      at[i] = out.add(target, taut);
    } else if (!substitute && cx.is_first_instance(line)) {
      // From A(t1) -> (~A(t1) -> A(e)) and its permutation.
      Formula swapped = Formula::implies(cx.guard, Formula::implies(guard, cx.consequent));
      std::size_t a = out.add(swapped, taut);
      std::size_t b = out.add(Formula::implies(swapped, target), taut);
      at[i] = out.add(target, Justification::modus_ponens(a, b));
    } else if (is_axiom(j.rule)) {
      std::size_t a = out.add(body, Justification::axiom(j.rule));
      std::size_t b = out.add(Formula::implies(body, target), taut);
      at[i] = out.add(target, Justification::modus_ponens(a, b));
    } else if (j.rule == Rule::Rep) {
      at[i] = out.add(target, Justification::repetition(ref(j.premise)));
    } else if (j.rule == Rule::Subst) {
      Substitution s = substitute
          ? replace_in_substitution(j.subst, cx.family->epsilon, cx.witness)
          : j.subst;
      at[i] = out.add(target, Justification::substitution(ref(j.premise), std::move(s)));
    } else {
      // guard -> S and guard -> (S -> T) give guard -> T.
      const Formula minor = rho(p.find(j.premise)->formula);
      Formula distribute = Formula::implies(
          guarded(Formula::implies(minor, body)),
          Formula::implies(guarded(minor), target));
      std::size_t d = out.add(distribute, taut);
      std::size_t x = out.add(Formula::implies(guarded(minor), target),
                              Justification::modus_ponens(ref(j.major), d));
      at[i] = out.add(target, Justification::modus_ponens(ref(j.premise), x));
    }
  }
  return at.back();
}

}  // namespace detail

// Whether every substitution step survives both guarded copies: it must
// leave the guard A(t1) alone and commute with replacing the epsilon term
// by t1.
inline bool substitutions_commute(const ProofScript& p, const CriticalFamily& fam) {
  const Term& t1 = fam.instances.front().witness;
  const Formula guard = instantiate(fam.matrix, t1);
  for (const ProofLine& line : p.lines) {
    const Justification& j = line.justification;
    if (j.rule != Rule::Subst) continue;
    if (!alpha_eq(apply_subst(guard, j.subst), guard)) return false;
    const Formula& premise = p.find(j.premise)->formula;
    Substitution replaced = detail::replace_in_substitution(j.subst, fam.epsilon, t1);
    if (!alpha_eq(replace_term(apply_subst(premise, j.subst), fam.epsilon, t1),
                  apply_subst(replace_term(premise, fam.epsilon, t1), replaced))) {
      return false;
    }
  }
  return true;
}

// Removes the first witness t1 of `fam`: a copy of the proof under the
// guard ~A(t1), a copy under A(t1) with the epsilon term replaced by t1, and
// a case distinction on A(t1). The end formula is kept exactly.
inline ProofScript eliminate_critical_family(const ProofScript& p, const CriticalFamily& fam) {
  AnsatzReport report = check_ansatz_applicable(p);
  if (!report.applicable) throw NotApplicable(report, "blockers present");
  if (!is_epsilon_free(p.end_formula())) {
    throw NotApplicable(report, "end formula contains an epsilon term");
  }
  if (fam.instances.empty()) throw NotApplicable(report, "family has no critical formulas");
  if (!substitutions_commute(p, fam)) {
    throw NotApplicable(report, "a substitution step interferes with the guard or the epsilon term");
  }

  detail::AnsatzContext cx{&p, &fam, fam.instances.front().witness,
                           instantiate(fam.matrix, fam.instances.front().witness),
                           instantiate(fam.matrix, fam.epsilon)};
  const Formula negative = Formula::negation(cx.guard);
  const Formula& end = p.end_formula();

  detail::SharingBuilder out;
  std::size_t without = detail::guarded_copy(cx, negative, false, out);
  std::size_t with = detail::guarded_copy(cx, cx.guard, true, out);

  // (~A(t1) -> E) -> ((A(t1) -> E) -> E)
  Formula second = Formula::implies(Formula::implies(cx.guard, end), end);
  std::size_t cases = out.add(
      Formula::implies(Formula::implies(negative, end), second), Justification::axiom(Rule::Taut));
  std::size_t step = out.add(second, Justification::modus_ponens(without, cases));
  out.append(end, Justification::modus_ponens(with, step));
  return out.take();
}

// ---------------------------------------------------------------------------
// Elimination of all critical formulas.

struct EliminationRound {
  Term epsilon;
  Term witness;
  std::size_t critical_before = 0;
  std::size_t critical_after = 0;
  std::size_t lines_after = 0;
};

struct EliminationResult {
  ProofScript proof;
  std::vector<EliminationRound> rounds;
  // Substitution steps had to be pushed to the axioms first.
  bool normalized = false;
};

inline std::size_t count_critical_lines(const ProofScript& p) {
  std::size_t n = 0;
  for (const auto& l : p.lines) n += l.justification.rule == Rule::Crit;
  return n;
}

// Merges lines proving alpha-equivalent formulas into their first
// occurrence. The last line is kept.
inline ProofScript share_duplicate_lines(const ProofScript& p) {
  detail::SharingBuilder out;
  std::vector<std::size_t> at(p.lines.size());
  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    Justification j = p.lines[i].justification;
    if (!is_axiom(j.rule)) j.premise = at[p.index_of(j.premise)];
    if (j.rule == Rule::MP) j.major = at[p.index_of(j.major)];
    if (i + 1 == p.lines.size()) {
      at[i] = out.append(p.lines[i].formula, j);
    } else {
      at[i] = out.add(p.lines[i].formula, j);
    }
  }
  return out.take();
}

// Pushes all substitution steps to the axioms.
inline ProofScript normalize_substitutions(const ProofScript& p) {
  return share_duplicate_lines(linearize(eliminate_free_variable_substs(resolve_threads(p))));
}

namespace detail {

struct EpsilonEraser : NoRewrite {
  std::optional<Term> term(const Term& t, std::size_t) {
    if (t.is(TermKind::Epsilon)) return Term::zero();
    return std::nullopt;
  }
};

}  // namespace detail

// Replaces every epsilon term by 0, including inside substitution steps.
inline ProofScript erase_epsilon_terms(const ProofScript& p) {
  ProofScript out = p;
  detail::EpsilonEraser eraser;
  for (auto& line : out.lines) {
    line.formula = rewrite(line.formula, eraser);
    for (auto& [name, t] : line.justification.subst.individuals) t = rewrite(t, eraser);
    for (auto& [name, schema] : line.justification.subst.formulas) {
      schema.body = rewrite(schema.body, eraser);
    }
  }
  return out;
}

inline EliminationResult eliminate_all_critical_traced(const ProofScript& input) {
  EliminationResult result;
  ProofScript p = input;
  AnsatzReport report = check_ansatz_applicable(p);
  if (!report.applicable) throw NotApplicable(report, "blockers present");
  if (!is_epsilon_free(p.end_formula())) {
    throw NotApplicable(report, "end formula contains an epsilon term");
  }

  while (true) {
    auto families = find_critical_families(p);
    if (families.empty()) break;
    const CriticalFamily& fam = families.front();
    if (!substitutions_commute(p, fam)) {
      if (result.normalized) throw std::logic_error("substitution steps survived normalisation");
      p = normalize_substitutions(p);
      result.normalized = true;
      AnsatzReport again = check_ansatz_applicable(p);
      if (!again.applicable) throw NotApplicable(again, "blockers present after pushing substitutions");
      continue;
    }
    std::size_t before = count_critical_lines(p);
    p = eliminate_critical_family(p, fam);
    std::size_t after = count_critical_lines(p);
    if (after >= before) throw std::logic_error("critical-formula elimination made no progress");
    result.rounds.push_back({fam.epsilon, fam.instances.front().witness, before, after, p.size()});
  }
  result.proof = erase_epsilon_terms(p);
  return result;
}

inline ProofScript eliminate_all_critical(const ProofScript& p) {
  return eliminate_all_critical_traced(p).proof;
}

}  // namespace epsilon
