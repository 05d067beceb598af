#include <gtest/gtest.h>

#include "epsilon/epsilon.hpp"
#include "support/corpus.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace epsilon;

namespace {

Formula F(const char* text) { return parse_formula(text); }
ProofScript P(const char* text) { return parse_proof(text); }

std::size_t size(const Term& t) {
  switch (t.kind()) {
    case TermKind::Succ:
    case TermKind::Pred: return 1 + size(t.arg());
    default: return 1;
  }
}

std::size_t size(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Eq: return 1 + size(f.lhs_term()) + size(f.rhs_term());
    case FormulaKind::Not: return 1 + size(f.operand());
    case FormulaKind::Implies:
    case FormulaKind::And:
    case FormulaKind::Or: return 1 + size(f.left()) + size(f.right());
    default: return 1;
  }
}

bool one_free_variable(const ProofScript& p) {
  const Formula& end = p.end_formula();
  return free_variables(end).size() == 1 && formula_variables(end).empty() && is_quantifier_free(end);
}

// Every inference of a listed certificate proof preserves truth.
void expect_truth_preserved(const ProofScript& p, const std::string& name) {
  std::map<std::size_t, bool> value;
  for (const auto& line : p.lines) {
    bool v = eval_closed(line.formula);
    value[line.number] = v;
    const Justification& j = line.justification;
    if (is_axiom(j.rule)) continue;
    bool premises = value.at(j.premise) && (j.rule != Rule::MP || value.at(j.major));
    if (premises) {
      EXPECT_TRUE(v) << name << " line " << line.number;
    }
  }
}

}  // namespace

TEST(EvalClosed, Examples) {
  EXPECT_TRUE(eval_closed(F("0+1 = 0+1")));
  EXPECT_FALSE(eval_closed(F("0 != 0")));
  EXPECT_TRUE(eval_closed(F("d(0+1) = 0")));
  EXPECT_TRUE(eval_closed(F("d(0) = 0")));
  EXPECT_TRUE(eval_closed(F("0 = 0+1 -> 0 = 0+1+1")));
  EXPECT_FALSE(eval_closed(F("0 = 0 & 0 = 0+1")));
  EXPECT_TRUE(eval_closed(F("0 = 0+1 | d(d(0+1+1)) = 0")));
}

TEST(EvalClosed, RejectsOpenInput) {
  EXPECT_THROW(eval_closed(F("a = 0")), NotClosed);
  EXPECT_THROW(eval_closed(F("A")), NotClosed);
  EXPECT_THROW(eval_closed(F("ex x. x = 0")), NotClosed);
  EXPECT_THROW(eval_closed(F("(eps x. x = 0) = 0")), NotClosed);
  EXPECT_THROW(eval_term(parse_term("d(a)")), NotClosed);
}

TEST(EvalClosed, AgreesWithSemanticOracle) {
  testing_support::GenOptions opts;
  opts.max_depth = 4;
  opts.epsilon = false;
  opts.quantifiers = false;
  opts.formula_vars = false;
  opts.free_vars = false;
  testing_support::Generator gen(12, opts);
  oracle::Tarski model(0);
  int compared = 0;
  int truths = 0;
  while (compared < 5000) {
    Formula f = gen.formula();
    if (size(f) > 12) continue;
    bool want = model(f);
    ASSERT_EQ(eval_closed(f), want) << print_formula(f);
    truths += want;
    ++compared;
  }
  EXPECT_GT(truths, 500);
  EXPECT_LT(truths, 4500);
}

TEST(CheckVerifiable, Examples) {
  VerifiabilityResult succ = verify_instances(F("0 != a+1"), 5);
  EXPECT_TRUE(succ.verified);
  EXPECT_EQ(succ.instances, 6u);
  EXPECT_TRUE(check_verifiable(F("a = d(a+1)"), 5));
  VerifiabilityResult bad = verify_instances(F("a = a+1"), 0);
  EXPECT_FALSE(bad.verified);
  EXPECT_EQ(bad.counterexample.at("a"), 0u);
  // Two variables, bound 3: all 16 instances hold.
  EXPECT_EQ(verify_instances(F("a = b -> a+1 = b+1"), 3).instances, 16u);
  // d(0) = 0 refutes the converse at the first instance.
  VerifiabilityResult le = verify_instances(F("d(a) = b -> a = b+1"), 3);
  EXPECT_FALSE(le.verified);
  EXPECT_EQ(le.counterexample, (std::map<std::string, std::uint64_t>{{"a", 0}, {"b", 0}}));
  EXPECT_THROW(check_verifiable(F("ex x. x = a"), 2), NotClosed);
}

TEST(Pipeline, PredecessorInstance) {
  ProofScript p = P("1. a = d(a+1) ; ax-pred\n2. 0 = d(0+1) ; subst 1 {a := 0}\n");
  TruthCertificate c = consistency_pipeline(p);
  EXPECT_TRUE(c.end_truth);
  ASSERT_EQ(c.leaves.size(), 1u);
  EXPECT_TRUE(c.leaves[0].value);
  // Hand evaluation: d(0+1) reduces to 0.
  EXPECT_EQ(print_formula(c.proof.end_formula()), "0 = 0");
  // The reduced leaf has the shape n = n and is listed as an identity axiom.
  EXPECT_EQ(format_certificate(c), "1. 0 = 0 ; id1\nleaf 1: true\nend: true\n");
}

TEST(Pipeline, CriticalFormulaIsEliminatedFirst) {
  auto text = testing_support::read_file(testing_support::golden_dir() / "pred.proof");
  ProofScript p = parse_proof(text);
  ASSERT_EQ(count_critical_lines(p), 1u);
  TruthCertificate c = consistency_pipeline(p);
  EXPECT_TRUE(c.end_truth);
  for (const auto& l : c.leaves) EXPECT_TRUE(l.value);
  EXPECT_EQ(count_critical_lines(c.proof), 0u);
}

TEST(Pipeline, NoCertificateForZeroNotZero) {
  for (const char* text : {"1. 0 != 0 ; ax-succ\n", "1. 0 != 0 ; taut\n", "1. 0 = 0 -> 0 != 0 ; taut\n",
                           "1. 0 != a+1 ; ax-succ\n2. 0 != 0 ; subst 1 {a := d(0)}\n",
                           "1. A(a) -> A(eps x. A(x)) ; crit\n2. 0 != 0 ; subst 1 {A(p) := 0 != 0}\n"}) {
    EXPECT_THROW(consistency_pipeline(P(text)), InvalidProof) << text;
  }
  // Corpus proofs with their end line forged to 0 != 0.
  for (const auto& entry : testing_support::load_all_corpora()) {
    ProofScript forged = entry.proof;
    forged.lines.back().formula = F("0 != 0");
    EXPECT_THROW(consistency_pipeline(forged), InvalidProof) << entry.name;
  }
}

TEST(Pipeline, RequiresVariableFreeEnd) {
  EXPECT_THROW(consistency_pipeline(P("1. 0 != a+1 ; ax-succ\n")), NotClosed);
}

TEST(Pipeline, BaseCorpusCertificates) {
  auto corpus = testing_support::load_corpus("base");
  ASSERT_GE(corpus.size(), 50u);
  for (const auto& entry : corpus) {
    ASSERT_TRUE(is_variable_free(entry.proof.end_formula())) << entry.name;
    TruthCertificate c = consistency_pipeline(entry.proof);
    EXPECT_TRUE(c.end_truth) << entry.name;
    EXPECT_FALSE(c.leaves.empty());
    for (const auto& l : c.leaves) EXPECT_TRUE(l.value) << entry.name;
    EXPECT_EQ(c.end_truth, eval_closed(c.proof.end_formula()));
    for (const auto& line : c.proof.lines) EXPECT_TRUE(is_variable_free(line.formula)) << entry.name;
    expect_truth_preserved(c.proof, entry.name);
  }
}

TEST(Pipeline, EpsilonCorporaCertificates) {
  for (const char* dir : {"ansatz", "epsub"}) {
    for (const auto& entry : testing_support::load_corpus(dir)) {
      if (entry.name.find("reject") != std::string::npos) continue;
      TruthCertificate c = consistency_pipeline(entry.proof);
      EXPECT_TRUE(c.end_truth) << entry.name;
      expect_truth_preserved(c.proof, entry.name);
    }
  }
}

TEST(Conservativity, Examples) {
  ProofScript pred = P("1. a = d(a+1) ; ax-pred\n");
  TruthCertificate three = conservativity_extract(pred, 3);
  EXPECT_TRUE(three.end_truth);
  EXPECT_EQ(print_formula(three.proof.end_formula()), "0+1+1+1 = 0+1+1+1");
  EXPECT_TRUE(conservativity_extract(pred, 0).end_truth);
  EXPECT_TRUE(conservativity_extract(P("1. 0 != a+1 ; ax-succ\n"), 4).end_truth);
  EXPECT_THROW(conservativity_extract(P("1. a = b -> b = a -> a = b ; taut\n"), 1), WrongArity);
  EXPECT_THROW(conservativity_extract(P("1. 0 != 0+1 ; ax-succ\n"), 1), WrongArity);
}

TEST(Conservativity, EveryOneVariableCorpusProof) {
  std::size_t checked = 0;
  for (const auto& entry : testing_support::load_all_corpora()) {
    if (!one_free_variable(entry.proof)) continue;
    for (std::uint64_t z = 0; z <= 10; ++z) {
      TruthCertificate c = conservativity_extract(entry.proof, z);
      EXPECT_TRUE(c.end_truth) << entry.name << " z=" << z;
      for (const auto& l : c.leaves) EXPECT_TRUE(l.value) << entry.name << " z=" << z;
    }
    ++checked;
  }
  EXPECT_GE(checked, 10u);
}
