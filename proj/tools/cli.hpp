#pragma once

// Command-line driver. Exit codes: 0 success, 1 check or transformation
// failure, 2 parse or usage error.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "epsilon/epsilon.hpp"

namespace epsilon::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
}

// Parses and checks a script; transformations only run on valid input.
inline ProofScript load_valid(const std::string& path, std::istream& in) {
  ProofScript p = parse_proof(read_input(path, in));
  CheckReport report = check_proof(p);
  if (!report.valid()) throw InvalidProof(std::move(report));
  return p;
}

inline Formula load_formula(const std::string& path, std::istream& in) {
  return parse_formula(read_input(path, in));
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err,
               std::istream& in) {
  CLI::App app{"Proof kernel and transformations for the epsilon calculus", "epsilon"};
  app.require_subcommand(1);

  std::string file;
  std::uint64_t numeral = 0;
  std::uint64_t bound = 0;
  std::function<int()> action;

  auto with_file = [&](const char* name, const char* help, const char* what,
                       std::function<int()> body) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, what)->required();
    sub->callback([&action, body] { action = body; });
    return sub;
  };

  with_file("check", "check every line of a proof script", "proof script or -", [&] {
    CheckReport r = check_proof(parse_proof(detail::read_input(file, in)));
    out << format_report(r);
    return r.valid() ? kOk : kFailure;
  });
  with_file("threads", "resolve a proof into proof threads", "proof script or -", [&] {
    out << print_proof(linearize(resolve_threads(detail::load_valid(file, in))));
    return kOk;
  });
  with_file("elimvars", "push substitution steps to the axioms", "proof script or -", [&] {
    ThreadProof t = resolve_threads(detail::load_valid(file, in));
    out << print_proof(linearize(eliminate_free_variable_substs(t)));
    return kOk;
  });
  with_file("ground", "replace residual free variables by 0", "proof script or -", [&] {
    ThreadProof t = resolve_threads(detail::load_valid(file, in));
    out << print_proof(linearize(ground_residual_variables(t)));
    return kOk;
  });
  with_file("reduce", "reduce numerals in every line", "proof script or -", [&] {
    // Reduction does not commute with substitution steps, so those go first.
    ThreadProof t = eliminate_free_variable_substs(resolve_threads(detail::load_valid(file, in)));
    ProofScript reduced = linearize(reduce_numerals(t));
    // A reduced witness need not instantiate the reduced matrix.
    CheckReport r = check_proof(reduced);
    if (!r.valid()) {
      out << format_report(r);
      err << "error: reduction breaks a critical formula; run eliminate-eps first\n";
      return kFailure;
    }
    out << print_proof(reduced);
    return kOk;
  });
  with_file("ansatz", "report what blocks critical-formula elimination", "proof script or -", [&] {
    AnsatzReport r = check_ansatz_applicable(detail::load_valid(file, in));
    out << format_ansatz_report(r);
    return r.applicable ? kOk : kFailure;
  });
  with_file("eliminate-eps", "eliminate all critical formulas", "proof script or -", [&] {
    ProofScript p = detail::load_valid(file, in);
    try {
      out << print_proof(eliminate_all_critical(p));
    } catch (const NotApplicable& e) {
      out << format_ansatz_report(e.report());
      err << e.what() << "\n";
      return kFailure;
    }
    return kOk;
  });
  with_file("epsub", "run the epsilon-substitution iteration", "proof script or -", [&] {
    out << format_transcript(epsub_solve(detail::load_valid(file, in)));
    return kOk;
  });
  with_file("eval", "evaluate a variable-free formula", "formula file or -", [&] {
    out << (eval_closed(detail::load_formula(file, in)) ? "true" : "false") << "\n";
    return kOk;
  });
  with_file("pipeline", "run the consistency pipeline", "proof script or -", [&] {
    TruthCertificate c = consistency_pipeline(parse_proof(detail::read_input(file, in)));
    out << format_certificate(c);
    return c.end_truth ? kOk : kFailure;
  });
  CLI::App* conserve =
      with_file("conserve", "certify a numeral instance of a free-variable theorem",
                "proof script or -", [&] {
                  TruthCertificate c =
                      conservativity_extract(parse_proof(detail::read_input(file, in)), numeral);
                  out << format_certificate(c);
                  return c.end_truth ? kOk : kFailure;
                });
  conserve->add_option("--numeral", numeral, "value substituted for the free variable")->required();
  CLI::App* verify =
      with_file("verify-axiom", "evaluate all numeral instances up to a bound",
                "formula file or -", [&] {
                  VerifiabilityResult r = verify_instances(detail::load_formula(file, in), bound);
                  if (r.verified) {
                    out << "verified: " << r.instances << " instances\n";
                    return kOk;
                  }
                  out << "refuted:";
                  for (const auto& [name, value] : r.counterexample) out << " " << name << " = " << value;
                  out << "\n";
                  return kFailure;
                });
  verify->add_option("--bound", bound, "largest numeral value substituted")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    return action();
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidProof& e) {
    out << format_report(e.report());
    return kFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace epsilon::cli
