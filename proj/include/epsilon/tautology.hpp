#pragma once

// Tautology checking on the propositional skeleton of a formula: equations,
// formula variables and quantified formulas are atoms (identified up to
// alpha_eq), and the connectives are evaluated on all assignments at once
// with bit-parallel truth tables.

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "epsilon/syntax.hpp"

namespace epsilon {

inline constexpr std::size_t kTautologyAtomLimit = 16;

enum class TautologyVerdict { Tautology, NotTautology, AtomLimit };

inline bool is_propositional_connective(const Formula& f) {
  return f.is(FormulaKind::Not) || f.is_binary();
}

// Maximal non-propositional subformulas, deduplicated, left to right.
inline std::vector<Formula> propositional_atoms(const Formula& f) {
  std::vector<Formula> atoms;
  std::unordered_map<std::string, std::size_t> seen;
  std::vector<const Formula*> stack{&f};
  // Explicit stack, right operand pushed first to keep left-to-right order.
  while (!stack.empty()) {
    const Formula& g = *stack.back();
    stack.pop_back();
    if (g.is(FormulaKind::Not)) {
      stack.push_back(&g.operand());
    } else if (g.is_binary()) {
      stack.push_back(&g.right());
      stack.push_back(&g.left());
    } else if (seen.emplace(canonical_key(g), atoms.size()).second) {
      atoms.push_back(g);
    }
  }
  return atoms;
}

namespace detail {

class TruthTable {
 public:
  using Row = std::vector<std::uint64_t>;

  TruthTable(const Formula& f, std::size_t atom_limit) {
    std::vector<Formula> atoms = propositional_atoms(f);
    if (atoms.size() > atom_limit) {
      over_limit_ = true;
      return;
    }
    for (std::size_t i = 0; i < atoms.size(); ++i) index_[canonical_key(atoms[i])] = i;
    atom_count_ = atoms.size();
    std::size_t rows = std::size_t{1} << atom_count_;
    words_ = rows < 64 ? 1 : rows / 64;
    mask_ = rows < 64 ? ((std::uint64_t{1} << rows) - 1) : ~std::uint64_t{0};
    result_ = eval(f);
  }

  bool over_limit() const { return over_limit_; }

  bool all_true() const {
    for (std::size_t w = 0; w < words_; ++w) {
      if ((result_[w] & mask_) != mask_) return false;
    }
    return true;
  }

 private:
  Row atom_row(std::size_t i) const {
    static constexpr std::uint64_t kPatterns[6] = {
        0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
        0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
    Row row(words_);
    for (std::size_t w = 0; w < words_; ++w) {
      if (i < 6) {
        row[w] = kPatterns[i];
      } else {
        row[w] = ((w >> (i - 6)) & 1) ? ~std::uint64_t{0} : 0;
      }
    }
    return row;
  }

  Row eval(const Formula& f) const {
    switch (f.kind()) {
      case FormulaKind::Not: {
        Row r = eval(f.operand());
        for (auto& w : r) w = ~w;
        return r;
      }
      case FormulaKind::Implies:
      case FormulaKind::And:
      case FormulaKind::Or: {
        Row a = eval(f.left());
        Row b = eval(f.right());
        for (std::size_t w = 0; w < words_; ++w) {
          if (f.is(FormulaKind::Implies)) {
            a[w] = ~a[w] | b[w];
          } else if (f.is(FormulaKind::And)) {
            a[w] &= b[w];
          } else {
            a[w] |= b[w];
          }
        }
        return a;
      }
      default:
        return atom_row(index_.at(canonical_key(f)));
    }
  }

  bool over_limit_ = false;
  std::size_t atom_count_ = 0;
  std::size_t words_ = 1;
  std::uint64_t mask_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
  Row result_;
};

}  // namespace detail

inline TautologyVerdict check_tautology(const Formula& f,
                                        std::size_t atom_limit = kTautologyAtomLimit) {
  detail::TruthTable table(f, atom_limit);
  if (table.over_limit()) return TautologyVerdict::AtomLimit;
  return table.all_true() ? TautologyVerdict::Tautology
                          : TautologyVerdict::NotTautology;
}

}  // namespace epsilon
