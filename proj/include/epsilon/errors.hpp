#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace epsilon {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Position in a source text. Line and column are 1-based.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t length = 0;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, SourceSpan span,
             std::vector<std::string> expected = {})
      : Error(format(message, span, expected)),
        span_(span),
        expected_(std::move(expected)) {}

  const SourceSpan& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string format(const std::string& message, const SourceSpan& span,
                            const std::vector<std::string>& expected) {
    std::string out = std::to_string(span.line) + ":" +
                      std::to_string(span.column) + ": " + message;
    if (!expected.empty()) {
      out += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
        out += expected[i];
      }
      out += ")";
    }
    return out;
  }

  SourceSpan span_;
  std::vector<std::string> expected_;
};

// A justification cites a line that is missing or does not precede it.
class DanglingReference : public ParseError {
 public:
  DanglingReference(std::size_t cited, SourceSpan span)
      : ParseError("reference to line " + std::to_string(cited) +
                       " which does not precede this line",
                   span),
        cited_(cited) {}

  std::size_t cited_line() const { return cited_; }

 private:
  std::size_t cited_;
};

class ArityMismatch : public Error {
 public:
  ArityMismatch(const std::string& name, std::size_t expected,
                std::size_t found)
      : Error("formula variable " + name + " expects " +
              std::to_string(expected) + " argument(s), found " +
              std::to_string(found)) {}
};

}  // namespace epsilon
