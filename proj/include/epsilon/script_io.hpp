#pragma once

// ASCII surface syntax for formulas and proof scripts.
//
//   term     0 | t+1 | s(t) | d(t) | a | eps x. F | (t)
//   atom     t = t | t != t | A | A(t, ..., t)
//   formula  ~F | F & F | F | F | F -> F | all x. F | ex x. F | (F)
//
// Precedence from tightest: ~, &, |, ->. `->` associates to the right, `&`
// and `|` to the left. The body of a binder extends as far right as
// possible. Lowercase identifiers are individual variables (bound when an
// enclosing binder has that name), capitalised ones are formula variables.
//
// A proof script has one line per step:
//
//   <n>. <formula> ; <justification>
//
// where the justification is one of taut, id1, id2, ax-succ, ax-pred, crit,
// `subst m {a := t, A(p, q) := F}`, `mp m k` (k proves m -> this line) or
// `rep m`. Blank lines and lines starting with '#' are ignored.

#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "epsilon/errors.hpp"
#include "epsilon/proof.hpp"
#include "epsilon/substitution.hpp"
#include "epsilon/syntax.hpp"

namespace epsilon {

namespace detail {

enum class Tok {
  End, Lower, Upper, Number, LParen, RParen, Comma, Dot, Equals, NotEquals,
  Tilde, Arrow, Amp, Bar, Plus, Semicolon, LBrace, RBrace, Assign
};

inline const char* describe(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::Lower: return "variable";
    case Tok::Upper: return "formula variable";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Equals: return "'='";
    case Tok::NotEquals: return "'!='";
    case Tok::Tilde: return "'~'";
    case Tok::Arrow: return "'->'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Plus: return "'+'";
    case Tok::Semicolon: return "';'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Assign: return "':='";
  }
  return "token";
}

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

inline std::vector<Token> lex(std::string_view text, std::size_t line = 1,
                              std::size_t column = 1) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto at = [&](std::size_t k) { return k < text.size() ? text[k] : '\0'; };
  while (true) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
    SourceSpan span{line, column, 0};
    if (i >= text.size()) {
      out.push_back({Tok::End, "", span});
      return out;
    }
    char c = text[i];
    std::size_t start = i;
    Tok kind;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      ++i;
      while (true) {
        char d = at(i);
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_') {
          ++i;
        } else if (d == '-' && std::isalpha(static_cast<unsigned char>(at(i + 1)))) {
          i += 2;  // rule names such as ax-succ
        } else {
          break;
        }
      }
      kind = std::isupper(static_cast<unsigned char>(c)) ? Tok::Upper : Tok::Lower;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (std::isdigit(static_cast<unsigned char>(at(i)))) ++i;
      kind = Tok::Number;
    } else {
      i += 1;
      switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case ',': kind = Tok::Comma; break;
        case '.': kind = Tok::Dot; break;
        case '=': kind = Tok::Equals; break;
        case '~': kind = Tok::Tilde; break;
        case '&': kind = Tok::Amp; break;
        case '|': kind = Tok::Bar; break;
        case '+': kind = Tok::Plus; break;
        case ';': kind = Tok::Semicolon; break;
        case '{': kind = Tok::LBrace; break;
        case '}': kind = Tok::RBrace; break;
        case '!':
          if (at(i) != '=') throw ParseError("unexpected character '!'", span, {"'!='"});
          ++i;
          kind = Tok::NotEquals;
          break;
        case '-':
          if (at(i) != '>') throw ParseError("unexpected character '-'", span, {"'->'"});
          ++i;
          kind = Tok::Arrow;
          break;
        case ':':
          if (at(i) != '=') throw ParseError("unexpected character ':'", span, {"':='"});
          ++i;
          kind = Tok::Assign;
          break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", span);
      }
    }
    span.length = i - start;
    column += i - start;
    out.push_back({kind, std::string(text.substr(start, i - start)), span});
  }
}

inline bool is_keyword(std::string_view s) {
  return s == "eps" || s == "all" || s == "ex";
}

// Recursive-descent parser with backtracking for the one ambiguous spot:
// an opening parenthesis may start a term or a formula. Failures record the
// furthest token reached so the reported error points at the real problem.
class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  template <class Fn>
  auto run(Fn&& fn) {
    try {
      return fn(*this);
    } catch (const Backtrack&) {
      const Token& t = toks_[fail_pos_];
      std::vector<std::string> expected(fail_expected_.begin(), fail_expected_.end());
      std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
      throw ParseError("unexpected " + got, t.span, std::move(expected));
    }
  }

  Formula formula() { return implication(); }

  Term term() {
    Term t = term_primary();
    while (peek().kind == Tok::Plus) {
      next();
      const Token& one = peek();
      if (one.kind != Tok::Number || one.text != "1") fail({"'1'"});
      next();
      t = Term::succ(t);
    }
    return t;
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  const Token& expect(Tok kind) {
    if (peek().kind != kind) fail({describe(kind)});
    return next();
  }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  bool accept_word(std::string_view word) {
    if (peek().kind != Tok::Lower || peek().text != word) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(std::initializer_list<std::string> expected) {
    if (pos_ > fail_pos_) {
      fail_pos_ = pos_;
      fail_expected_.clear();
    }
    if (pos_ == fail_pos_) fail_expected_.insert(expected.begin(), expected.end());
    throw Backtrack{};
  }

 private:
  struct Backtrack {};

  Formula implication() {
    Formula lhs = disjunction();
    if (accept(Tok::Arrow)) return Formula::implies(lhs, implication());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::Bar)) f = Formula::disj(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(Tok::Amp)) f = Formula::conj(f, unary());
    return f;
  }

  Formula unary() {
    if (accept(Tok::Tilde)) return Formula::negation(unary());
    return primary();
  }

  std::string binder_name() {
    const Token& t = peek();
    if (t.kind != Tok::Lower || is_keyword(t.text)) fail({"variable"});
    next();
    return t.text;
  }

  template <class Body>
  auto under_binder(const std::string& name, Body&& body) {
    scope_.push_back(name);
    struct Pop {
      std::vector<std::string>& s;
      std::size_t n;
      ~Pop() { s.resize(n); }
    } pop{scope_, scope_.size() - 1};
    return body();
  }

  Formula primary() {
    const Token& t = peek();
    if (t.kind == Tok::Lower && (t.text == "all" || t.text == "ex")) {
      bool universal = t.text == "all";
      next();
      std::string name = binder_name();
      expect(Tok::Dot);
      Formula body = under_binder(name, [&] { return formula(); });
      return universal ? Formula::forall(name, body) : Formula::exists(name, body);
    }
    if (t.kind == Tok::Upper) {
      std::string name = t.text;
      next();
      std::vector<Term> args;
      if (accept(Tok::LParen)) {
        args.push_back(term());
        while (accept(Tok::Comma)) args.push_back(term());
        expect(Tok::RParen);
      }
      return Formula::var(name, std::move(args));
    }
    if (t.kind == Tok::LParen) {
      std::size_t saved = pos_;
      std::size_t depth = scope_.size();
      try {
        return atom();
      } catch (const Backtrack&) {
        pos_ = saved;
        scope_.resize(depth);
      }
      next();
      Formula inner = formula();
      expect(Tok::RParen);
      return inner;
    }
    return atom();
  }

  Formula atom() {
    Term lhs = term();
    if (accept(Tok::Equals)) return Formula::eq(lhs, term());
    if (accept(Tok::NotEquals)) return Formula::neq(lhs, term());
    fail({"'='", "'!='", "'+'"});
  }

  Term term_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        if (t.text != "0") fail({"term"});
        next();
        return Term::zero();
      case Tok::LParen: {
        next();
        Term inner = term();
        expect(Tok::RParen);
        return inner;
      }
      case Tok::Lower: {
        if (t.text == "eps") {
          next();
          std::string name = binder_name();
          expect(Tok::Dot);
          Formula body = under_binder(name, [&] { return formula(); });
          return Term::epsilon(name, body);
        }
        if (is_keyword(t.text)) fail({"term"});
        if ((t.text == "s" || t.text == "d") && toks_[pos_ + 1].kind == Tok::LParen) {
          bool succ = t.text == "s";
          next();
          next();
          Term inner = term();
          expect(Tok::RParen);
          return succ ? Term::succ(inner) : Term::pred(inner);
        }
        next();
        for (std::size_t i = scope_.size(); i-- > 0;) {
          if (scope_[i] == t.text) return Term::bound(scope_.size() - 1 - i, t.text);
        }
        return Term::free(t.text);
      }
      default:
        fail({"term"});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
  std::size_t fail_pos_ = 0;
  std::set<std::string> fail_expected_;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text) {
  detail::Parser p(detail::lex(text));
  return p.run([](detail::Parser& p) {
    Formula f = p.formula();
    p.expect(detail::Tok::End);
    return f;
  });
}

inline Term parse_term(std::string_view text) {
  detail::Parser p(detail::lex(text));
  return p.run([](detail::Parser& p) {
    Term t = p.term();
    p.expect(detail::Tok::End);
    return t;
  });
}

namespace detail {

inline std::size_t parse_line_ref(Parser& p) {
  const Token& t = p.expect(Tok::Number);
  return static_cast<std::size_t>(std::stoull(t.text));
}

inline Substitution parse_substitution_body(Parser& p) {
  Substitution s;
  p.expect(Tok::LBrace);
  if (p.accept(Tok::RBrace)) return s;
  do {
    const Token& head = p.peek();
    if (head.kind == Tok::Lower && !is_keyword(head.text)) {
      p.next();
      p.expect(Tok::Assign);
      s.individuals[head.text] = p.term();
    } else if (head.kind == Tok::Upper) {
      p.next();
      Schema schema;
      if (p.accept(Tok::LParen)) {
        do {
          const Token& param = p.peek();
          if (param.kind != Tok::Lower || is_keyword(param.text)) p.fail({"variable"});
          p.next();
          schema.params.push_back(param.text);
        } while (p.accept(Tok::Comma));
        p.expect(Tok::RParen);
      }
      p.expect(Tok::Assign);
      schema.body = p.formula();
      s.formulas[head.text] = std::move(schema);
    } else {
      p.fail({"variable", "formula variable"});
    }
  } while (p.accept(Tok::Comma));
  p.expect(Tok::RBrace);
  return s;
}

struct CitedLine {
  std::size_t number;
  SourceSpan span;
};

inline Justification parse_justification(Parser& p, std::vector<CitedLine>& cited) {
  auto cite = [&] {
    SourceSpan span = p.peek().span;
    std::size_t n = parse_line_ref(p);
    cited.push_back({n, span});
    return n;
  };
  for (Rule r : {Rule::Taut, Rule::Id1, Rule::Id2, Rule::AxSucc, Rule::AxPred, Rule::Crit}) {
    if (p.accept_word(rule_name(r))) return Justification::axiom(r);
  }
  if (p.accept_word("subst")) {
    std::size_t m = cite();
    return Justification::substitution(m, parse_substitution_body(p));
  }
  if (p.accept_word("mp")) {
    std::size_t m = cite();
    p.accept(Tok::Comma);
    std::size_t k = cite();
    return Justification::modus_ponens(m, k);
  }
  if (p.accept_word("rep")) return Justification::repetition(cite());
  p.fail({"taut", "id1", "id2", "ax-succ", "ax-pred", "crit", "subst", "mp", "rep"});
}

}  // namespace detail

inline ProofScript parse_proof(std::string_view text) {
  ProofScript script;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::size_t first = raw.find_first_not_of(" \t");
    if (first == std::string_view::npos || raw[first] == '#') continue;

    detail::Parser p(detail::lex(raw, line_no));
    std::vector<detail::CitedLine> cited;
    SourceSpan number_span{};
    ProofLine line = p.run([&](detail::Parser& p) {
      ProofLine l;
      number_span = p.peek().span;
      l.number = detail::parse_line_ref(p);
      p.expect(detail::Tok::Dot);
      l.formula = p.formula();
      p.expect(detail::Tok::Semicolon);
      l.justification = detail::parse_justification(p, cited);
      p.expect(detail::Tok::End);
      return l;
    });
    if (line.number == 0 ||
        (!script.lines.empty() && line.number <= script.lines.back().number)) {
      throw ParseError("line numbers must be positive and strictly increasing",
                       number_span);
    }
    for (const auto& c : cited) {
      if (c.number >= line.number || script.find(c.number) == nullptr) {
        throw DanglingReference(c.number, c.span);
      }
    }
    script.lines.push_back(std::move(line));
  }
  if (script.lines.empty()) {
    throw ParseError("empty proof script", SourceSpan{1, 1, 0}, {"proof line"});
  }
  return script;
}

// ---------------------------------------------------------------------------
// Printing.

namespace detail {

class Printer {
 public:
  std::string formula(const Formula& f) {
    out_.clear();
    print(f, 0, true);
    return out_;
  }
  std::string term(const Term& t) {
    out_.clear();
    print(t, true);
    return out_;
  }

 private:
  enum Prec { kBinder = 0, kImplies = 1, kOr = 2, kAnd = 3, kNot = 4 };

  // A binder body extends to the right, so a binder is bare only where
  // nothing can follow it (`tail_open`).
  void print(const Formula& f, int min_prec, bool tail_open) {
    switch (f.kind()) {
      case FormulaKind::Eq:
        print_eq(f, " = ", tail_open);
        return;
      case FormulaKind::Var:
        out_ += f.name();
        if (!f.terms().empty()) {
          out_ += '(';
          for (std::size_t i = 0; i < f.terms().size(); ++i) {
            if (i > 0) out_ += ", ";
            print(f.terms()[i], true);
          }
          out_ += ')';
        }
        return;
      case FormulaKind::Not:
        if (f.operand().is(FormulaKind::Eq)) {
          print_eq(f.operand(), " != ", tail_open);
        } else {
          out_ += '~';
          print(f.operand(), kNot, tail_open);
        }
        return;
      case FormulaKind::Implies:
      case FormulaKind::And:
      case FormulaKind::Or: {
        int prec = f.is(FormulaKind::Implies) ? kImplies : f.is(FormulaKind::Or) ? kOr : kAnd;
        bool parens = prec < min_prec;
        if (parens) out_ += '(';
        bool tail = parens || tail_open;
        const char* op = f.is(FormulaKind::Implies) ? " -> " : f.is(FormulaKind::Or) ? " | " : " & ";
        if (f.is(FormulaKind::Implies)) {
          print(f.left(), prec + 1, false);
          out_ += op;
          print(f.right(), prec, tail);
        } else {
          print(f.left(), prec, false);
          out_ += op;
          print(f.right(), prec + 1, tail);
        }
        if (parens) out_ += ')';
        return;
      }
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        bool parens = !tail_open;
        if (parens) out_ += '(';
        out_ += f.is(FormulaKind::Forall) ? "all " : "ex ";
        print_binder(f.name(), f.body());
        if (parens) out_ += ')';
        return;
      }
    }
  }

  void print_eq(const Formula& eq, const char* op, bool tail_open) {
    print(eq.lhs_term(), true);
    out_ += op;
    print(eq.rhs_term(), tail_open);
  }

  void print(const Term& t, bool tail_safe) {
    switch (t.kind()) {
      case TermKind::Zero:
        out_ += '0';
        return;
      case TermKind::Succ:
        print(t.arg(), false);
        out_ += "+1";
        return;
      case TermKind::Pred:
        out_ += "d(";
        print(t.arg(), true);
        out_ += ')';
        return;
      case TermKind::Free:
        out_ += t.name();
        return;
      case TermKind::Bound:
        if (t.index() < scope_.size()) {
          out_ += scope_[scope_.size() - 1 - t.index()];
        } else {
          out_ += t.name();
        }
        return;
      case TermKind::Epsilon:
        if (!tail_safe) out_ += '(';
        out_ += "eps ";
        print_binder(t.name(), t.body());
        if (!tail_safe) out_ += ')';
        return;
    }
  }

  void print_binder(const std::string& hint, const Formula& body) {
    std::set<std::string> avoid;
    for (auto& v : free_variables(body)) avoid.insert(v);
    for (std::size_t i : dangling_indices(body)) {
      if (i >= 1 && i - 1 < scope_.size()) avoid.insert(scope_[scope_.size() - i]);
    }
    std::string base = valid_hint(hint) ? hint : "x";
    std::string name = base;
    for (std::size_t k = 1; avoid.count(name) != 0; ++k) name = base + std::to_string(k);
    out_ += name;
    out_ += ". ";
    scope_.push_back(name);
    print(body, kBinder, true);
    scope_.pop_back();
  }

  static bool valid_hint(const std::string& h) {
    if (h.empty() || is_keyword(h) || !std::islower(static_cast<unsigned char>(h[0]))) {
      return false;
    }
    for (char c : h) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return true;
  }

  std::string out_;
  std::vector<std::string> scope_;
};

}  // namespace detail

inline std::string print_formula(const Formula& f) {
  return detail::Printer().formula(f);
}

inline std::string print_term(const Term& t) { return detail::Printer().term(t); }

inline std::string print_substitution(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, t] : s.individuals) {
    if (!first) out += ", ";
    first = false;
    out += name + " := " + print_term(t);
  }
  for (const auto& [name, schema] : s.formulas) {
    if (!first) out += ", ";
    first = false;
    out += name;
    if (!schema.params.empty()) {
      out += '(';
      for (std::size_t i = 0; i < schema.params.size(); ++i) {
        if (i > 0) out += ", ";
        out += schema.params[i];
      }
      out += ')';
    }
    out += " := " + print_formula(schema.body);
  }
  return out + "}";
}

inline std::string print_justification(const Justification& j) {
  std::string out(rule_name(j.rule));
  switch (j.rule) {
    case Rule::Subst:
      out += " " + std::to_string(j.premise) + " " + print_substitution(j.subst);
      break;
    case Rule::MP:
      out += " " + std::to_string(j.premise) + " " + std::to_string(j.major);
      break;
    case Rule::Rep:
      out += " " + std::to_string(j.premise);
      break;
    default:
      break;
  }
  return out;
}

inline std::string print_proof(const ProofScript& p) {
  std::string out;
  for (const ProofLine& l : p.lines) {
    out += std::to_string(l.number) + ". " + print_formula(l.formula) + " ; " +
           print_justification(l.justification) + "\n";
  }
  return out;
}

}  // namespace epsilon
