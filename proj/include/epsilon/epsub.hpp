#pragma once

// The epsilon-substitution iteration for a single family of critical
// formulas with an epsilon-free matrix: every epsilon term starts at 0, and a
// false critical formula A(n) -> A(v) supplies the better value n.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
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

class NotSimpleCase : public Error {
 public:
  explicit NotSimpleCase(const std::string& reason)
      : Error("not a simple epsilon-substitution case: " + reason), reason_(reason) {}

  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
};

// Epsilon terms (up to alpha_eq) mapped to numerals.
class EpsAssignment {
 public:
  void set(const Term& epsilon, std::uint64_t value) {
    for (auto& [e, v] : entries_) {
      if (alpha_eq(e, epsilon)) {
        v = value;
        return;
      }
    }
    entries_.emplace_back(epsilon, value);
  }

  std::optional<std::uint64_t> get(const Term& epsilon) const {
    for (const auto& [e, v] : entries_) {
      if (alpha_eq(e, epsilon)) return v;
    }
    return std::nullopt;
  }

  const std::vector<std::pair<Term, std::uint64_t>>& entries() const { return entries_; }

  // Assigned terms become their numerals, every other epsilon term 0.
  Formula apply(const Formula& f) const {
    Formula out = f;
    for (const auto& [e, v] : entries_) out = replace_term(out, e, Term::numeral(v));
    detail::EpsilonEraser eraser;
    return rewrite(out, eraser);
  }

  Term apply(const Term& t) const {
    Term out = t;
    for (const auto& [e, v] : entries_) out = replace_term(out, e, Term::numeral(v));
    detail::EpsilonEraser eraser;
    return rewrite(out, eraser);
  }

 private:
  std::vector<std::pair<Term, std::uint64_t>> entries_;
};

struct EpsubRound {
  std::size_t number = 0;
  std::uint64_t value = 0;
  std::vector<bool> instances;  // in family order
};

struct EpsubResult {
  EpsAssignment assignment;
  std::vector<EpsubRound> rounds;
  ProofScript grounded;  // the proof the assignment refers to
  CriticalFamily family;
};

// `round k: eps := <numeral>; instance i: <true|false>...`, one line per round.
inline std::string format_transcript(const EpsubResult& r) {
  std::string out;
  for (const auto& round : r.rounds) {
    out += "round " + std::to_string(round.number) +
           ": eps := " + print_term(Term::numeral(round.value));
    for (std::size_t i = 0; i < round.instances.size(); ++i) {
      out += "; instance " + std::to_string(i + 1) + ": " +
             (round.instances[i] ? "true" : "false");
    }
    out += "\n";
  }
  for (const auto& [e, v] : r.assignment.entries()) {
    out += "assignment: " + print_term(e) + " := " + print_term(Term::numeral(v)) + "\n";
  }
  return out;
}

namespace detail {

inline bool needs_grounding(const ProofScript& p) {
  for (const auto& l : p.lines) {
    const Rule r = l.justification.rule;
    if (r == Rule::Subst || r == Rule::Rep) return true;
    if (!free_variables(l.formula).empty() || !formula_variables(l.formula).empty()) return true;
  }
  return false;
}

}  // namespace detail

// Pushes substitutions to the axioms and replaces free variables by 0,
// leaving epsilon terms in place.
inline ProofScript ground_for_epsub(const ProofScript& p) {
  if (!detail::needs_grounding(p)) return p;
  return linearize(ground_allowing_epsilon(eliminate_free_variable_substs(resolve_threads(p))));
}

inline EpsubResult epsub_solve(const ProofScript& input) {
  EpsubResult r;
  auto given = find_critical_families(input);
  if (given.size() != 1) {
    throw NotSimpleCase(std::to_string(given.size()) + " critical families, expected one");
  }
  r.grounded = ground_for_epsub(input);
  auto families = find_critical_families(r.grounded);
  if (families.size() > 1) {
    throw NotSimpleCase(std::to_string(families.size()) + " critical families after grounding");
  }
  if (families.empty()) {
    // Grounding made the matrix vacuous; nothing is left to assign.
    r.family = given.front();
    r.family.instances.clear();
    r.rounds.push_back({1, 0, {}});
    return r;
  }
  r.family = families.front();
  const CriticalFamily& fam = r.family;
  if (!is_epsilon_free(fam.matrix)) throw NotSimpleCase("the matrix contains an epsilon term");
  if (!is_variable_free(instantiate(fam.matrix, Term::zero()))) {
    throw NotSimpleCase("the matrix is not variable-free after grounding");
  }
  for (const auto& inst : fam.instances) {
    if (contains_term(inst.witness, fam.epsilon)) {
      throw NotSimpleCase("witness " + print_term(inst.witness) + " contains the epsilon term");
    }
  }

  auto run_round = [&](std::uint64_t value) {
    r.assignment.set(fam.epsilon, value);
    EpsubRound round{r.rounds.size() + 1, value, {}};
    for (const auto& inst : fam.instances) {
      round.instances.push_back(eval_closed(r.assignment.apply(fam.instance_formula(inst.witness))));
    }
    r.rounds.push_back(std::move(round));
    for (bool b : r.rounds.back().instances) {
      if (!b) return false;
    }
    return true;
  };

  if (run_round(0)) return r;

  // A false instance A(t) -> A(0) has A(t) true; take the least such t.
  std::optional<std::uint64_t> best;
  const auto& first = r.rounds.front();
  for (std::size_t i = 0; i < fam.instances.size(); ++i) {
    if (first.instances[i]) continue;
    std::uint64_t n = eval_term(r.assignment.apply(fam.instances[i].witness));
    if (!best || n < *best) best = n;
  }
  if (!run_round(*best)) throw std::logic_error("epsilon substitution did not settle in two rounds");
  return r;
}

// The grounded proof with the assignment applied and numerals reduced.
inline ProofScript apply_assignment(const ProofScript& grounded, const EpsAssignment& a) {
  ProofScript out = grounded;
  for (auto& line : out.lines) line.formula = reduce_numerals(a.apply(line.formula));
  return out;
}

}  // namespace epsilon
