#pragma once

// Random terms and formulas in de Bruijn form, for property tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "epsilon/syntax.hpp"

namespace testing_support {

struct GenOptions {
  int max_depth = 4;
  bool epsilon = true;
  bool quantifiers = true;
  bool formula_vars = true;
  bool free_vars = true;
  bool connectives = true;
  // Free-variable names; x and y collide with the binder hints on purpose.
  std::vector<std::string> free_names{"a", "b", "x", "y"};
  std::vector<std::string> binder_hints{"x", "y", "z"};
};

class Generator {
 public:
  explicit Generator(std::uint64_t seed, GenOptions opts = {}) : rng_(seed), opts_(std::move(opts)) {}

  GenOptions& options() { return opts_; }

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  epsilon::Term term(int depth, std::size_t binders) {
    using epsilon::Term;
    std::vector<int> choices{0};
    if (opts_.free_vars) choices.push_back(1);
    if (binders > 0) choices.insert(choices.end(), {2, 2});
    if (depth > 0) {
      choices.insert(choices.end(), {3, 3, 4, 4});
      if (opts_.epsilon) choices.push_back(5);
    }
    switch (choices[pick(choices.size())]) {
      case 0: return Term::zero();
      case 1: return Term::free(opts_.free_names[pick(opts_.free_names.size())]);
      case 2: {
        std::size_t i = pick(binders);
        return Term::bound(i, hint());
      }
      case 3: return Term::succ(term(depth - 1, binders));
      case 4: return Term::pred(term(depth - 1, binders));
      default: return Term::epsilon(hint(), formula(depth - 1, binders + 1));
    }
  }

  epsilon::Formula formula(int depth, std::size_t binders) {
    using epsilon::Formula;
    std::vector<int> choices{0, 0};
    if (opts_.formula_vars) choices.push_back(1);
    if (depth > 0) {
      if (opts_.connectives) choices.insert(choices.end(), {2, 3, 3, 4, 5});
      if (opts_.quantifiers) choices.insert(choices.end(), {6, 7});
    }
    int d = depth > 0 ? depth - 1 : 0;
    switch (choices[pick(choices.size())]) {
      case 0: return Formula::eq(term(d, binders), term(d, binders));
      case 1: {
        static const char* names[] = {"A", "B"};
        std::size_t arity = pick(3);
        std::vector<epsilon::Term> args;
        for (std::size_t i = 0; i < arity; ++i) args.push_back(term(d, binders));
        // Arity is a function of the name so substitutions stay well-formed.
        std::string name = std::string(names[pick(2)]) + (arity == 0 ? "" : std::to_string(arity));
        if (arity == 0) name = "C";
        return Formula::var(name, std::move(args));
      }
      case 2: return Formula::negation(formula(d, binders));
      case 3: return Formula::implies(formula(d, binders), formula(d, binders));
      case 4: return Formula::conj(formula(d, binders), formula(d, binders));
      case 5: return Formula::disj(formula(d, binders), formula(d, binders));
      case 6: return Formula::forall(hint(), formula(d, binders + 1));
      default: return Formula::exists(hint(), formula(d, binders + 1));
    }
  }

  epsilon::Formula formula() { return formula(opts_.max_depth, 0); }
  epsilon::Term term() { return term(opts_.max_depth, 0); }

 private:
  std::string hint() { return opts_.binder_hints[pick(opts_.binder_hints.size())]; }

  std::mt19937_64 rng_;
  GenOptions opts_;
};

}  // namespace testing_support
