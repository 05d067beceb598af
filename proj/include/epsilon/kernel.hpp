#pragma once

// Proof checking for the epsilon calculus over 0, +1 and d.
//
// Axiom classes:
//   taut     substitution instance of a propositional tautology
//   id1      t = t
//   id2      s = t -> (F(s) -> F(t)), F(t) replacing some occurrences of s
//   ax-succ  0 != t+1
//   ax-pred  t = d(t+1)
//   crit     A(t) -> A(eps x. A(x))
// Rules: substitution, modus ponens, repetition.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "epsilon/errors.hpp"
#include "epsilon/proof.hpp"
#include "epsilon/script_io.hpp"
#include "epsilon/substitution.hpp"
#include "epsilon/syntax.hpp"
#include "epsilon/tautology.hpp"

namespace epsilon {

// ---------------------------------------------------------------------------
// Identity axiom instances.

struct IdentityMatch {
  Term lhs;
  Term rhs;
  // Some occurrence of lhs was replaced inside the body of an epsilon term.
  bool replaced_inside_epsilon = false;
};

namespace detail {

class ReplacementMatcher {
 public:
  ReplacementMatcher(const Term& from, const Term& to) : from_(from), to_(to) {}

  bool formulas(const Formula& a, const Formula& b, bool in_eps) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case FormulaKind::Var:
        if (a.name() != b.name()) return false;
        [[fallthrough]];
      case FormulaKind::Eq:
        if (a.terms().size() != b.terms().size()) return false;
        for (std::size_t i = 0; i < a.terms().size(); ++i) {
          if (!terms(a.terms()[i], b.terms()[i], in_eps)) return false;
        }
        return true;
      case FormulaKind::Not:
      case FormulaKind::Forall:
      case FormulaKind::Exists:
        return formulas(a.left(), b.left(), in_eps);
      default:
        return formulas(a.left(), b.left(), in_eps) &&
               formulas(a.right(), b.right(), in_eps);
    }
  }

  bool terms(const Term& a, const Term& b, bool in_eps) {
    if (alpha_eq(a, b)) return true;
    if (alpha_eq(a, from_) && alpha_eq(b, to_)) {
      replaced_inside_epsilon_ = replaced_inside_epsilon_ || in_eps;
      return true;
    }
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case TermKind::Succ:
      case TermKind::Pred:
        return terms(a.arg(), b.arg(), in_eps);
      case TermKind::Epsilon:
        return formulas(a.body(), b.body(), true);
      default:
        return false;
    }
  }

  bool replaced_inside_epsilon() const { return replaced_inside_epsilon_; }

 private:
  Term from_;
  Term to_;
  bool replaced_inside_epsilon_ = false;
};

}  // namespace detail

inline std::optional<IdentityMatch> match_identity_axiom(const Formula& f) {
  if (!f.is(FormulaKind::Implies) || !f.left().is(FormulaKind::Eq) ||
      !f.right().is(FormulaKind::Implies)) {
    return std::nullopt;
  }
  const Term& s = f.left().lhs_term();
  const Term& t = f.left().rhs_term();
  detail::ReplacementMatcher m(s, t);
  if (!m.formulas(f.right().left(), f.right().right(), false)) return std::nullopt;
  return IdentityMatch{s, t, m.replaced_inside_epsilon()};
}

// ---------------------------------------------------------------------------
// Critical formulas.

// A reading of `A(t) -> A(e)` with e = eps x. A(x); the matrix is e.body().
struct CriticalDecomposition {
  Term epsilon;
  Term witness;
};

namespace detail {

// Matches a matrix against an instance. The parameter is the bound index
// equal to the current depth.
class WitnessMatcher {
 public:
  bool formulas(const Formula& p, const Formula& f, std::size_t depth) {
    if (p.kind() != f.kind()) return false;
    switch (p.kind()) {
      case FormulaKind::Var:
        if (p.name() != f.name()) return false;
        [[fallthrough]];
      case FormulaKind::Eq:
        if (p.terms().size() != f.terms().size()) return false;
        for (std::size_t i = 0; i < p.terms().size(); ++i) {
          if (!terms(p.terms()[i], f.terms()[i], depth)) return false;
        }
        return true;
      case FormulaKind::Not:
        return formulas(p.operand(), f.operand(), depth);
      case FormulaKind::Forall:
      case FormulaKind::Exists:
        return formulas(p.body(), f.body(), depth + 1);
      default:
        return formulas(p.left(), f.left(), depth) &&
               formulas(p.right(), f.right(), depth);
    }
  }

  bool terms(const Term& p, const Term& t, std::size_t depth) {
    if (p.is(TermKind::Bound) && p.index() == depth) {
      if (!is_closed(t)) return false;
      if (witness) return alpha_eq(*witness, t);
      witness = t;
      return true;
    }
    if (p.kind() != t.kind()) return false;
    switch (p.kind()) {
      case TermKind::Zero:
        return true;
      case TermKind::Succ:
      case TermKind::Pred:
        return terms(p.arg(), t.arg(), depth);
      case TermKind::Free:
        return p.name() == t.name();
      case TermKind::Bound:
        return p.index() == t.index();
      case TermKind::Epsilon:
        return formulas(p.body(), t.body(), depth + 1);
    }
    return false;
  }

  std::optional<Term> witness;
};

}  // namespace detail

// Every reading of `f` as a critical formula, up to alpha_eq. A matrix that
// ignores its parameter admits any witness; 0 is recorded.
inline std::vector<CriticalDecomposition> critical_decompositions(const Formula& f) {
  std::vector<CriticalDecomposition> out;
  if (!f.is(FormulaKind::Implies)) return out;
  for (const Term& e : closed_epsilon_subterms(f.right())) {
    if (!alpha_eq(instantiate(e.body(), e), f.right())) continue;
    detail::WitnessMatcher m;
    if (!m.formulas(e.body(), f.left(), 0)) continue;
    Term w = m.witness.value_or(Term::zero());
    bool duplicate = false;
    for (const auto& d : out) {
      duplicate = duplicate || (alpha_eq(d.epsilon, e) && alpha_eq(d.witness, w));
    }
    if (!duplicate) out.push_back({e, w});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Axioms.

// Why `f` is not an instance of axiom class `rule`, or nullopt when it is.
inline std::optional<std::string> axiom_failure(const Formula& f, Rule rule) {
  auto not_instance = [&] {
    return std::optional<std::string>("not an instance of " + std::string(rule_name(rule)));
  };
  switch (rule) {
    case Rule::Taut:
      switch (check_tautology(f)) {
        case TautologyVerdict::Tautology:
          return std::nullopt;
        case TautologyVerdict::AtomLimit:
          return "AtomLimit: more than " + std::to_string(kTautologyAtomLimit) +
                 " propositional atoms";
        case TautologyVerdict::NotTautology:
          return not_instance();
      }
      break;
    case Rule::Id1:
      if (f.is(FormulaKind::Eq) && alpha_eq(f.lhs_term(), f.rhs_term())) return std::nullopt;
      return not_instance();
    case Rule::Id2:
      if (match_identity_axiom(f)) return std::nullopt;
      return not_instance();
    case Rule::AxSucc:
      if (f.is(FormulaKind::Not) && f.operand().is(FormulaKind::Eq) &&
          f.operand().lhs_term().is(TermKind::Zero) &&
          f.operand().rhs_term().is(TermKind::Succ)) {
        return std::nullopt;
      }
      return not_instance();
    case Rule::AxPred:
      if (f.is(FormulaKind::Eq) && f.rhs_term().is(TermKind::Pred) &&
          f.rhs_term().arg().is(TermKind::Succ) &&
          alpha_eq(f.lhs_term(), f.rhs_term().arg().arg())) {
        return std::nullopt;
      }
      return not_instance();
    case Rule::Crit:
      if (!critical_decompositions(f).empty()) return std::nullopt;
      return not_instance();
    default:
      return std::string(rule_name(rule)) + " is not an axiom class";
  }
  return not_instance();
}

inline bool check_axiom(const Formula& f, Rule rule) { return !axiom_failure(f, rule); }

inline bool check_axiom(const Formula& f, const Justification& j) {
  return check_axiom(f, j.rule);
}

// ---------------------------------------------------------------------------
// Proof checking.

struct LineVerdict {
  std::size_t line = 0;
  std::optional<std::string> failure;

  bool ok() const { return !failure; }
};

struct CheckReport {
  std::vector<LineVerdict> lines;

  bool valid() const {
    for (const auto& l : lines) {
      if (!l.ok()) return false;
    }
    return !lines.empty();
  }

  std::vector<LineVerdict> failures() const {
    std::vector<LineVerdict> out;
    for (const auto& l : lines) {
      if (!l.ok()) out.push_back(l);
    }
    return out;
  }
};

// One `line <n>: ok` or `line <n>: FAIL <reason>` per line.
inline std::string format_report(const CheckReport& r) {
  std::string out;
  for (const auto& l : r.lines) {
    out += "line " + std::to_string(l.line) + ": " +
           (l.ok() ? std::string("ok") : "FAIL " + *l.failure) + "\n";
  }
  return out;
}

// Why line `i` of `p` fails, or nullopt when it checks.
inline std::optional<std::string> line_failure(const ProofScript& p, std::size_t i) {
  const ProofLine& line = p.lines[i];
  const Justification& j = line.justification;
  for (std::size_t cited : j.premises()) {
    if (cited >= line.number || p.find(cited) == nullptr) {
      return "premise " + std::to_string(cited) + " does not precede this line";
    }
  }
  switch (j.rule) {
    case Rule::Subst: {
      Formula expected;
      try {
        validate(j.subst);
        expected = apply_subst(p.find(j.premise)->formula, j.subst);
      } catch (const Error& e) {
        return std::string("bad substitution: ") + e.what();
      }
      if (!alpha_eq(expected, line.formula)) {
        return "substitution into line " + std::to_string(j.premise) + " yields " +
               print_formula(expected);
      }
      return std::nullopt;
    }
    case Rule::MP: {
      const Formula& minor = p.find(j.premise)->formula;
      const Formula& major = p.find(j.major)->formula;
      if (!major.is(FormulaKind::Implies)) {
        return "major premise " + std::to_string(j.major) + " is not an implication";
      }
      if (!alpha_eq(major.left(), minor)) {
        return "antecedent of line " + std::to_string(j.major) + " is not line " +
               std::to_string(j.premise);
      }
      if (!alpha_eq(major.right(), line.formula)) {
        return "consequent of line " + std::to_string(j.major) + " is not this line";
      }
      return std::nullopt;
    }
    case Rule::Rep:
      if (!alpha_eq(p.find(j.premise)->formula, line.formula)) {
        return "differs from line " + std::to_string(j.premise);
      }
      return std::nullopt;
    default:
      return axiom_failure(line.formula, j.rule);
  }
}

inline CheckReport check_proof(const ProofScript& p) {
  CheckReport r;
  r.lines.reserve(p.lines.size());
  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    std::optional<std::string> failure;
    if (i > 0 && p.lines[i].number <= p.lines[i - 1].number) {
      failure = "line numbers are not increasing";
    } else {
      failure = line_failure(p, i);
    }
    r.lines.push_back({p.lines[i].number, std::move(failure)});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Critical families.

struct CriticalInstance {
  std::size_t line = 0;
  Term witness;
};

// All critical formulas of one epsilon term. The matrix is the body of the
// epsilon term; its parameter is bound index 0.
struct CriticalFamily {
  Term epsilon;
  Formula matrix;
  std::vector<CriticalInstance> instances;

  Formula instance_formula(const Term& witness) const {
    return Formula::implies(instantiate(matrix, witness), instantiate(matrix, epsilon));
  }
};

class AmbiguousMatrix : public Error {
 public:
  AmbiguousMatrix(std::size_t line, std::vector<CriticalDecomposition> readings)
      : Error(describe(line, readings)), line_(line), readings_(std::move(readings)) {}

  std::size_t line() const { return line_; }
  const std::vector<CriticalDecomposition>& readings() const { return readings_; }

 private:
  static std::string describe(std::size_t line,
                              const std::vector<CriticalDecomposition>& readings) {
    std::string out = "line " + std::to_string(line) +
                      " has several critical-formula readings:";
    for (const auto& r : readings) {
      out += " [" + print_term(r.epsilon) + " with witness " + print_term(r.witness) + "]";
    }
    return out;
  }

  std::size_t line_;
  std::vector<CriticalDecomposition> readings_;
};

// Groups the crit lines of `p` by epsilon term, in order of first occurrence.
inline std::vector<CriticalFamily> find_critical_families(const ProofScript& p) {
  std::vector<CriticalFamily> families;
  for (const ProofLine& line : p.lines) {
    if (line.justification.rule != Rule::Crit) continue;
    auto readings = critical_decompositions(line.formula);
    if (readings.empty()) {
      throw Error("line " + std::to_string(line.number) + " is not a critical formula");
    }
    if (readings.size() > 1) throw AmbiguousMatrix(line.number, std::move(readings));
    const auto& d = readings.front();
    CriticalFamily* fam = nullptr;
    for (auto& f : families) {
      if (alpha_eq(f.epsilon, d.epsilon)) fam = &f;
    }
    if (fam == nullptr) {
      families.push_back({d.epsilon, d.epsilon.body(), {}});
      fam = &families.back();
    }
    fam->instances.push_back({line.number, d.witness});
  }
  return families;
}

}  // namespace epsilon
