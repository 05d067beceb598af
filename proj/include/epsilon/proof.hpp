#pragma once

// Proof scripts: numbered lines, each a formula with its justification.

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "epsilon/errors.hpp"
#include "epsilon/substitution.hpp"
#include "epsilon/syntax.hpp"

namespace epsilon {

enum class Rule { Taut, Id1, Id2, AxSucc, AxPred, Crit, Subst, MP, Rep };

inline bool is_axiom(Rule r) {
  return r != Rule::Subst && r != Rule::MP && r != Rule::Rep;
}

inline std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::Taut: return "taut";
    case Rule::Id1: return "id1";
    case Rule::Id2: return "id2";
    case Rule::AxSucc: return "ax-succ";
    case Rule::AxPred: return "ax-pred";
    case Rule::Crit: return "crit";
    case Rule::Subst: return "subst";
    case Rule::MP: return "mp";
    case Rule::Rep: return "rep";
  }
  return "?";
}

// `premise` is the cited line for Subst and Rep, and the minor premise for
// MP; `major` is the MP premise of the form (minor -> conclusion).
struct Justification {
  Rule rule = Rule::Taut;
  std::size_t premise = 0;
  std::size_t major = 0;
  Substitution subst;

  static Justification axiom(Rule r) { return {r, 0, 0, {}}; }
  static Justification substitution(std::size_t line, Substitution s) {
    return {Rule::Subst, line, 0, std::move(s)};
  }
  static Justification modus_ponens(std::size_t minor, std::size_t major) {
    return {Rule::MP, minor, major, {}};
  }
  static Justification repetition(std::size_t line) {
    return {Rule::Rep, line, 0, {}};
  }

  std::vector<std::size_t> premises() const {
    switch (rule) {
      case Rule::Subst:
      case Rule::Rep:
        return {premise};
      case Rule::MP:
        return {premise, major};
      default:
        return {};
    }
  }
};

struct ProofLine {
  std::size_t number = 0;
  Formula formula;
  Justification justification;
};

struct ProofScript {
  std::vector<ProofLine> lines;

  bool empty() const { return lines.empty(); }
  std::size_t size() const { return lines.size(); }
  const Formula& end_formula() const { return lines.back().formula; }

  // Position of the line with the given number, or size() when absent.
  std::size_t index_of(std::size_t number) const {
    auto it = std::lower_bound(
        lines.begin(), lines.end(), number,
        [](const ProofLine& l, std::size_t n) { return l.number < n; });
    if (it == lines.end() || it->number != number) return lines.size();
    return static_cast<std::size_t>(it - lines.begin());
  }

  const ProofLine* find(std::size_t number) const {
    std::size_t i = index_of(number);
    return i == lines.size() ? nullptr : &lines[i];
  }
};

// Appends lines numbered 1, 2, ...; returns the new line's number.
class ScriptBuilder {
 public:
  std::size_t add(Formula f, Justification j) {
    std::size_t n = script_.lines.size() + 1;
    script_.lines.push_back({n, std::move(f), std::move(j)});
    return n;
  }
  const Formula& formula(std::size_t number) const {
    return script_.lines[number - 1].formula;
  }
  std::size_t size() const { return script_.lines.size(); }
  ProofScript take() { return std::move(script_); }

 private:
  ProofScript script_;
};

}  // namespace epsilon
