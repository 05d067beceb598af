#include <gtest/gtest.h>

#include "cli.hpp"
#include "epsilon/epsilon.hpp"
#include "support/corpus.hpp"
#include "support/golden.hpp"

using namespace epsilon;

namespace {

using testing_support::golden_cases;
using testing_support::tests_dir;
using Outcome = testing_support::CliOutcome;

Outcome run(std::vector<std::string> args, const std::string& input = "") {
  return testing_support::run_cli(std::move(args), input);
}

std::string path(const char* relative) { return (tests_dir() / relative).string(); }

}  // namespace

TEST(Cli, GoldenOutputsAreByteStable) {
  auto cases = golden_cases();
  ASSERT_GE(cases.size(), 12u);
  for (const auto& c : cases) {
    Outcome first = run(c.args);
    Outcome second = run(c.args);
    EXPECT_EQ(first.code, c.code) << c.name << "\n" << first.err;
    EXPECT_EQ(first.out, second.out) << c.name;
    EXPECT_EQ(first.code, second.code) << c.name;
    EXPECT_EQ(first.out, c.expected()) << c.name;
  }
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"check"}).code, cli::kUsage);
  EXPECT_EQ(run({"check", "/nonexistent/file.proof"}).code, cli::kUsage);
  EXPECT_EQ(run({"conserve", path("corpus/open/axpred.proof")}).code, cli::kUsage);
  EXPECT_EQ(run({"verify-axiom", path("golden/pred.formula"), "--bound", "x"}).code, cli::kUsage);
  Outcome parse = run({"check", "-"}, "1. 0 = ; taut\n");
  EXPECT_EQ(parse.code, cli::kUsage);
  EXPECT_FALSE(parse.err.empty());
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
}

TEST(Cli, FailuresReportAndExitOne) {
  Outcome bad = run({"check", "-"}, "1. 0 = 0 ; ax-succ\n");
  EXPECT_EQ(bad.code, cli::kFailure);
  EXPECT_EQ(bad.out.rfind("line 1: FAIL", 0), 0u) << bad.out;
  // Transformations refuse invalid input and print the report.
  Outcome threads = run({"threads", "-"}, "1. 0 = 0 ; ax-succ\n");
  EXPECT_EQ(threads.code, cli::kFailure);
  EXPECT_NE(threads.out.find("FAIL"), std::string::npos);
  Outcome blocked = run({"eliminate-eps", path("corpus/blockers/IdentityAxiomUsed_id2.proof")});
  EXPECT_EQ(blocked.code, cli::kFailure);
  EXPECT_EQ(blocked.out.rfind("blocker: IdentityAxiomUsed", 0), 0u);
  EXPECT_EQ(run({"epsub", path("corpus/epsub/reject_two_families.proof")}).code, cli::kFailure);
  EXPECT_EQ(run({"eval", "-"}, "a = 0").code, cli::kFailure);
  EXPECT_EQ(run({"eval", "-"}, "0 != 0").out, "false\n");
  EXPECT_EQ(run({"pipeline", "-"}, "1. 0 != a+1 ; ax-succ\n").code, cli::kFailure);
}

TEST(Cli, ExitCodesOverTheCorpus) {
  for (const auto& entry : testing_support::load_all_corpora()) {
    std::string file = entry.path.string();
    EXPECT_EQ(run({"check", file}).code, cli::kOk) << entry.name;
    bool applicable = check_ansatz_applicable(entry.proof).applicable;
    EXPECT_EQ(run({"ansatz", file}).code, applicable ? cli::kOk : cli::kFailure) << entry.name;
    EXPECT_EQ(run({"threads", file}).code, cli::kOk) << entry.name;
    EXPECT_EQ(run({"elimvars", file}).code, cli::kOk) << entry.name;
    // Reduction can only break critical formulas.
    int reduce = run({"reduce", file}).code;
    if (count_critical_lines(entry.proof) == 0) {
      EXPECT_EQ(reduce, cli::kOk) << entry.name;
    } else {
      EXPECT_NE(reduce, cli::kUsage) << entry.name;
    }
  }
}

TEST(Cli, TransformedScriptsRecheck) {
  for (const auto& entry : testing_support::load_all_corpora()) {
    std::string file = entry.path.string();
    for (const char* cmd : {"threads", "elimvars", "reduce", "eliminate-eps"}) {
      Outcome o = run({cmd, file});
      if (o.code != cli::kOk) continue;  // eliminate-eps on blocked input
      ProofScript p = parse_proof(o.out);
      EXPECT_TRUE(check_proof(p).valid()) << cmd << " " << entry.name;
      Outcome again = run({"check", "-"}, o.out);
      EXPECT_EQ(again.code, cli::kOk) << cmd << " " << entry.name;
    }
  }
}

TEST(Cli, ReduceRefusesToBreakCriticalFormulas) {
  Outcome o = run({"reduce", path("corpus/epsub/pred_one.proof")});
  EXPECT_EQ(o.code, cli::kFailure);
  EXPECT_NE(o.out.find("FAIL"), std::string::npos);
  EXPECT_NE(o.err.find("eliminate-eps"), std::string::npos);
}

TEST(Cli, PipesComposeIntoThePipeline) {
  // threads | elimvars - | ground - | reduce - is the pipeline's final proof.
  for (const char* dir : {"base"}) {
    for (const auto& entry : testing_support::load_corpus(dir)) {
      Outcome threads = run({"threads", entry.path.string()});
      ASSERT_EQ(threads.code, cli::kOk);
      Outcome elim = run({"elimvars", "-"}, threads.out);
      ASSERT_EQ(elim.code, cli::kOk) << entry.name;
      Outcome ground = run({"ground", "-"}, elim.out);
      ASSERT_EQ(ground.code, cli::kOk) << entry.name << ground.err;
      Outcome reduce = run({"reduce", "-"}, ground.out);
      ASSERT_EQ(reduce.code, cli::kOk) << entry.name;
      TruthCertificate c = consistency_pipeline(entry.proof);
      EXPECT_EQ(reduce.out, print_proof(c.proof)) << entry.name;
      Outcome pipeline = run({"pipeline", entry.path.string()});
      EXPECT_EQ(pipeline.out.rfind(reduce.out, 0), 0u) << entry.name;
    }
  }
}
