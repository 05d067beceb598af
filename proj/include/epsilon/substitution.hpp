#pragma once

// Simultaneous substitution for free individual variables and formula
// variables. Bound variables are de Bruijn indices, so replacement is
// capture-free by construction.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "epsilon/errors.hpp"
#include "epsilon/syntax.hpp"

namespace epsilon {

// Replacement for a formula variable: the parameters occur in `body` as free
// individual variables and are bound to the arguments of each occurrence.
struct Schema {
  std::vector<std::string> params;
  Formula body;
};

struct Substitution {
  std::map<std::string, Term> individuals;
  std::map<std::string, Schema> formulas;

  bool empty() const { return individuals.empty() && formulas.empty(); }
};

namespace detail {

struct ParamBinder : NoRewrite {
  const std::map<std::string, Term>* values;
  std::optional<Term> term(const Term& t, std::size_t depth) {
    if (!t.is(TermKind::Free)) return std::nullopt;
    auto it = values->find(t.name());
    if (it == values->end()) return std::nullopt;
    return shift(it->second, static_cast<std::ptrdiff_t>(depth));
  }
};

struct SubstApplier {
  const Substitution* s;

  std::optional<Term> term(const Term& t, std::size_t) {
    if (!t.is(TermKind::Free)) return std::nullopt;
    auto it = s->individuals.find(t.name());
    if (it == s->individuals.end()) return std::nullopt;
    return it->second;
  }

  std::optional<Formula> formula(const Formula& f, std::size_t depth) {
    if (!f.is(FormulaKind::Var)) return std::nullopt;
    auto it = s->formulas.find(f.name());
    if (it == s->formulas.end()) return std::nullopt;
    const Schema& schema = it->second;
    if (schema.params.size() != f.terms().size()) {
      throw ArityMismatch(f.name(), schema.params.size(), f.terms().size());
    }
    std::map<std::string, Term> values;
    for (std::size_t i = 0; i < f.terms().size(); ++i) {
      values[schema.params[i]] = rewrite(f.terms()[i], *this, depth);
    }
    ParamBinder binder{{}, &values};
    return rewrite(schema.body, binder);
  }
};

}  // namespace detail

// Throws Error when a replacement term mentions an unbound index or a schema
// repeats a parameter name.
inline void validate(const Substitution& s) {
  for (const auto& [name, t] : s.individuals) {
    if (!is_closed(t)) {
      throw Error("replacement for " + name + " has a dangling bound variable");
    }
  }
  for (const auto& [name, schema] : s.formulas) {
    std::set<std::string> seen(schema.params.begin(), schema.params.end());
    if (seen.size() != schema.params.size()) {
      throw Error("schema for " + name + " repeats a parameter");
    }
    if (!is_closed(schema.body)) {
      throw Error("schema for " + name + " has a dangling bound variable");
    }
  }
}

inline Formula apply_subst(const Formula& f, const Substitution& s) {
  if (s.empty()) return f;
  detail::SubstApplier a{&s};
  return rewrite(f, a);
}

inline Term apply_subst(const Term& t, const Substitution& s) {
  if (s.empty()) return t;
  detail::SubstApplier a{&s};
  return rewrite(t, a);
}

// The substitution equivalent to applying `first`, then `then`.
inline Substitution compose(const Substitution& first,
                            const Substitution& then) {
  Substitution out;
  for (const auto& [name, t] : first.individuals) {
    out.individuals[name] = apply_subst(t, then);
  }
  for (const auto& [name, t] : then.individuals) {
    out.individuals.emplace(name, t);
  }

  // Parameters are renamed apart from every name in play so that `then`
  // cannot touch them.
  std::set<std::string> used;
  auto note = [&](const auto& node) {
    for (auto& v : free_variables(node)) used.insert(v);
  };
  for (const auto* s : {&first, &then}) {
    for (const auto& [name, t] : s->individuals) {
      used.insert(name);
      note(t);
    }
    for (const auto& [name, schema] : s->formulas) {
      used.insert(schema.params.begin(), schema.params.end());
      note(schema.body);
    }
  }
  std::size_t counter = 0;
  auto fresh = [&] {
    std::string name;
    do {
      name = "p" + std::to_string(++counter);
    } while (used.count(name) != 0);
    used.insert(name);
    return name;
  };

  for (const auto& [name, schema] : first.formulas) {
    Schema renamed;
    std::map<std::string, Term> rename;
    for (const auto& p : schema.params) {
      renamed.params.push_back(fresh());
      rename[p] = Term::free(renamed.params.back());
    }
    detail::ParamBinder binder{{}, &rename};
    renamed.body = apply_subst(rewrite(schema.body, binder), then);
    out.formulas[name] = std::move(renamed);
  }
  for (const auto& [name, schema] : then.formulas) {
    out.formulas.emplace(name, schema);
  }
  return out;
}

}  // namespace epsilon
