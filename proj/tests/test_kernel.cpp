#include <gtest/gtest.h>

#include "epsilon/epsilon.hpp"
#include "support/corpus.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace epsilon;

namespace {

Formula F(const char* text) { return parse_formula(text); }
Term T(const char* text) { return parse_term(text); }

ProofScript P(const char* text) { return parse_proof(text); }

}  // namespace

TEST(Tautology, Basics) {
  EXPECT_EQ(check_tautology(F("0=0 -> 0=0")), TautologyVerdict::Tautology);
  EXPECT_EQ(check_tautology(F("A | ~A")), TautologyVerdict::Tautology);
  EXPECT_EQ(check_tautology(F("A -> B")), TautologyVerdict::NotTautology);
  // Atoms are identified up to alpha_eq.
  EXPECT_EQ(check_tautology(F("(ex x. x = a) -> ex y. y = a")), TautologyVerdict::Tautology);
  // 0 = 0 is an atom like any other.
  EXPECT_EQ(check_tautology(F("0 = 0")), TautologyVerdict::NotTautology);
}

TEST(Tautology, AtomLimit) {
  std::string text = "A0";
  for (int i = 1; i < 17; ++i) text = "A" + std::to_string(i) + " -> " + text;
  EXPECT_EQ(check_tautology(parse_formula(text)), TautologyVerdict::AtomLimit);
  auto reason = axiom_failure(parse_formula(text + " -> A0"), Rule::Taut);
  ASSERT_TRUE(reason.has_value());
  EXPECT_NE(reason->find("AtomLimit"), std::string::npos);
  std::string sixteen = "A0";
  for (int i = 1; i < 16; ++i) sixteen = "A" + std::to_string(i) + " -> " + sixteen;
  EXPECT_EQ(check_tautology(parse_formula("A0 -> " + sixteen)), TautologyVerdict::Tautology);
}

TEST(Tautology, AgreesWithTruthTableOracle) {
  testing_support::GenOptions opts;
  opts.max_depth = 5;
  opts.quantifiers = false;
  opts.epsilon = false;
  opts.free_names = {"a"};
  testing_support::Generator gen(31, opts);
  int tautologies = 0;
  int checked = 0;
  // Up to four atoms: C, A1(0), a = 0, ... drawn from a small pool.
  std::vector<Formula> atoms{F("C"), F("a = 0"), F("A1(a)"), F("0 = a+1")};
  std::function<Formula(int)> build = [&](int d) -> Formula {
    if (d == 0 || gen.coin(0.25)) return atoms[gen.pick(atoms.size())];
    switch (gen.pick(4)) {
      case 0: return Formula::negation(build(d - 1));
      case 1: return Formula::implies(build(d - 1), build(d - 1));
      case 2: return Formula::conj(build(d - 1), build(d - 1));
      default: return Formula::disj(build(d - 1), build(d - 1));
    }
  };
  for (int i = 0; i < 5000; ++i) {
    Formula f = build(5);
    bool expected = oracle::is_tautology(f);
    EXPECT_EQ(check_tautology(f) == TautologyVerdict::Tautology, expected) << print_formula(f);
    tautologies += expected;
    ++checked;
  }
  EXPECT_GT(tautologies, 100);  // the sample is not degenerate
  EXPECT_EQ(checked, 5000);
}

TEST(CheckAxiom, Classes) {
  EXPECT_TRUE(check_axiom(F("0 != 0+1"), Rule::AxSucc));
  EXPECT_TRUE(check_axiom(F("0 != d(a)+1"), Rule::AxSucc));
  EXPECT_FALSE(check_axiom(F("0+1 != 0"), Rule::AxSucc));
  EXPECT_TRUE(check_axiom(F("0 = d(0+1)"), Rule::AxPred));
  EXPECT_FALSE(check_axiom(F("0 = d(0+1+1)"), Rule::AxPred));
  EXPECT_TRUE(check_axiom(F("0=0 -> 0=0"), Rule::Taut));
  EXPECT_TRUE(check_axiom(F("(eps x. x = a) = (eps y. y = a)"), Rule::Id1));
  EXPECT_FALSE(check_axiom(F("a = b"), Rule::Id1));
  EXPECT_TRUE(check_axiom(F("a = b -> (A(a, a) -> A(b, a))"), Rule::Id2));
  EXPECT_TRUE(check_axiom(F("a = b -> (A(a) -> A(a))"), Rule::Id2));
  EXPECT_FALSE(check_axiom(F("a = b -> (A(a) -> A(c))"), Rule::Id2));
  EXPECT_FALSE(check_axiom(F("a = b -> (A(b) -> A(a))"), Rule::Id2));
}

TEST(CheckAxiom, Critical) {
  EXPECT_TRUE(check_axiom(F("0 = 0 -> (eps x. x = 0) = 0"), Rule::Crit));
  EXPECT_TRUE(check_axiom(F("A(a) -> A(eps x. A(x))"), Rule::Crit));
  EXPECT_TRUE(check_axiom(F("B(0+1, c) -> B(eps y. B(y, c), c)"), Rule::Crit));
  EXPECT_FALSE(check_axiom(F("A(a) -> A(eps x. B(x))"), Rule::Crit));
  EXPECT_FALSE(check_axiom(F("A(a) -> B(eps x. A(x))"), Rule::Crit));
  // A vacuous matrix never reproduces its own epsilon term.
  EXPECT_TRUE(critical_decompositions(F("A -> A(eps x. A)")).empty());
  EXPECT_TRUE(critical_decompositions(F("(eps x. 0 = 0) = 0 -> (eps x. 0 = 0) = 0")).empty());
  EXPECT_TRUE(oracle::critical_readings(F("(eps x. 0 = 0) = 0 -> (eps x. 0 = 0) = 0")).empty());
}

TEST(CheckAxiom, CriticalReadingsAgreeWithEnumeration) {
  testing_support::GenOptions opts;
  opts.max_depth = 3;
  opts.quantifiers = false;
  testing_support::Generator gen(41, opts);
  int positives = 0;
  for (int i = 0; i < 3000; ++i) {
    // Build candidates that are often critical: take a matrix and plug.
    Formula matrix = gen.formula(2, 1);
    Term e = Term::epsilon("x", matrix);
    Term w = gen.term(2, 0);
    Formula f = gen.coin(0.8) ? Formula::implies(instantiate(matrix, w), instantiate(matrix, e))
                              : Formula::implies(gen.formula(2, 0), gen.formula(2, 0));
    auto readings = oracle::critical_readings(f);
    auto got = critical_decompositions(f);
    ASSERT_EQ(got.size(), readings.size()) << print_formula(f);
    for (const auto& d : got) {
      bool found = false;
      for (const auto& r : readings) {
        if (!oracle::same(r.epsilon, d.epsilon)) continue;
        found = true;
        bool witness_ok = false;
        for (const auto& cand : r.witnesses) witness_ok = witness_ok || oracle::same(cand, d.witness);
        EXPECT_TRUE(witness_ok) << print_formula(f);
      }
      EXPECT_TRUE(found) << print_formula(f);
    }
    EXPECT_EQ(check_axiom(f, Rule::Crit), !readings.empty());
    positives += !readings.empty();
  }
  EXPECT_GT(positives, 1000);
}

TEST(CheckProof, OneLineAxiomProofs) {
  for (const char* line : {"1. 0 != a+1 ; ax-succ", "1. a = d(a+1) ; ax-pred", "1. a = a ; id1",
                           "1. a = b -> (A(a) -> A(b)) ; id2", "1. A -> A ; taut",
                           "1. A(a) -> A(eps x. A(x)) ; crit"}) {
    EXPECT_TRUE(check_proof(P(line)).valid()) << line;
  }
}

TEST(CheckProof, ReportsFailuresPerLine) {
  ProofScript p = P(
      "1. 0 = 0 -> 0 = 0 ; taut\n"
      "2. 0 = 0 ; taut\n"
      "3. 0 != 0+1 ; ax-succ\n"
      "4. 0 = 0 ; mp 3 3\n"
      "5. 0 = 0 -> 0 = 0 ; subst 1 {a := 0}\n"
      "6. 0 = 0+1 ; rep 2\n");
  CheckReport r = check_proof(p);
  EXPECT_FALSE(r.valid());
  std::string text = format_report(r);
  EXPECT_NE(text.find("line 1: ok"), std::string::npos);
  EXPECT_NE(text.find("line 2: FAIL"), std::string::npos);
  EXPECT_NE(text.find("line 3: ok"), std::string::npos);
  EXPECT_NE(text.find("line 4: FAIL"), std::string::npos);
  EXPECT_NE(text.find("line 5: ok"), std::string::npos);
  EXPECT_NE(text.find("line 6: FAIL"), std::string::npos);
  EXPECT_EQ(r.failures().size(), 3u);
}

TEST(CheckProof, MajorPremiseMustBeAnImplication) {
  ProofScript p = P("1. 0 != 0+1 ; ax-succ\n2. 0 != 0+1 & 0 != 0+1 ; mp 1 1\n");
  CheckReport r = check_proof(p);
  ASSERT_EQ(r.failures().size(), 1u);
  EXPECT_EQ(r.failures()[0].line, 2u);
}

TEST(CheckProof, CorpusIsValid) {
  for (const auto& entry : testing_support::load_all_corpora()) {
    CheckReport r = check_proof(entry.proof);
    EXPECT_TRUE(r.valid()) << entry.name << "\n" << format_report(r);
  }
}

TEST(CheckProof, ValidityInvariantUnderBinderRenaming) {
  // Printing picks binder names afresh; re-parsed scripts check the same.
  for (const auto& entry : testing_support::load_all_corpora()) {
    ProofScript renamed = entry.proof;
    for (auto& line : renamed.lines) {
      line.formula = parse_formula(print_formula(line.formula));
    }
    EXPECT_EQ(check_proof(renamed).valid(), check_proof(entry.proof).valid()) << entry.name;
  }
  ProofScript a = P("1. A(a) -> A(eps x. A(x)) ; crit\n2. A(a) -> A(eps y. A(y)) ; rep 1\n");
  EXPECT_TRUE(check_proof(a).valid());
}

TEST(CriticalFamilies, Grouping) {
  EXPECT_TRUE(find_critical_families(P("1. 0 = 0 -> 0 = 0 ; taut\n")).empty());
  ProofScript p = P(
      "1. A(a) -> A(eps x. A(x)) ; crit\n"
      "2. B(0) -> B(eps x. B(x)) ; crit\n"
      "3. A(0+1) -> A(eps y. A(y)) ; crit\n");
  auto fams = find_critical_families(p);
  ASSERT_EQ(fams.size(), 2u);
  EXPECT_TRUE(alpha_eq(fams[0].epsilon, T("eps x. A(x)")));
  ASSERT_EQ(fams[0].instances.size(), 2u);
  EXPECT_EQ(fams[0].instances[0].line, 1u);
  EXPECT_TRUE(alpha_eq(fams[0].instances[0].witness, T("a")));
  EXPECT_TRUE(alpha_eq(fams[0].instances[1].witness, T("0+1")));
  EXPECT_TRUE(alpha_eq(fams[1].epsilon, T("eps x. B(x)")));
  EXPECT_TRUE(alpha_eq(fams[0].instance_formula(T("a")), p.lines[0].formula));
}

TEST(CriticalFamilies, PartitionCritLinesOfTheCorpus) {
  for (const auto& entry : testing_support::load_all_corpora()) {
    std::vector<std::size_t> crit_lines;
    for (const auto& l : entry.proof.lines) {
      if (l.justification.rule == Rule::Crit) crit_lines.push_back(l.number);
    }
    std::vector<std::size_t> covered;
    for (const auto& fam : find_critical_families(entry.proof)) {
      for (const auto& inst : fam.instances) {
        covered.push_back(inst.line);
        EXPECT_TRUE(alpha_eq(fam.instance_formula(inst.witness), entry.proof.find(inst.line)->formula));
      }
    }
    std::sort(covered.begin(), covered.end());
    EXPECT_EQ(covered, crit_lines) << entry.name;
  }
}
