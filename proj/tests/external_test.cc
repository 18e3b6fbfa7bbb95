#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "dmulti/external.h"
#include "dmulti/problems.h"
#include "dmulti/solver.h"

namespace dmulti {
namespace {

std::string Stub(const std::string& name) {
  return std::string(DMULTI_STUB_DIR) + "/" + name;
}

std::string PythonStub(const std::string& name) {
  return std::string(DMULTI_PYTHON) + " " + Stub(name);
}

ProblemSpec OneByThree() { return ProblemSpec::Make(1, 2, 1, {0}, {1}); }

TEST(ExternalBlackbox, RejectsBadConstruction) {
  EXPECT_THROW(ExternalBlackbox("   ", OneByThree()), ConfigError);
  EXPECT_THROW(ExternalBlackbox(Stub("echo_stub.sh"), OneByThree(), 0.0),
               ConfigError);
}

TEST(ExternalBlackbox, ParsesOutputLine) {
  ExternalBlackbox bb(Stub("echo_stub.sh"), OneByThree());
  const Evaluation e = bb.Evaluate(Vector{0.5});
  EXPECT_FALSE(e.hidden_failure());
  EXPECT_EQ(e.f, (Vector{1.0, 2.0}));
  EXPECT_EQ(e.c, (Vector{-1.0}));
  EXPECT_TRUE(e.feasible());
}

TEST(ExternalBlackbox, PassesExtraArgumentsBeforeTheFile) {
  ExternalBlackbox bb(Stub("args_stub.sh") + " 7.5", ProblemSpec::Make(1, 2, 0));
  const Evaluation e = bb.Evaluate(Vector{0.25});
  ASSERT_FALSE(e.hidden_failure());
  EXPECT_EQ(e.f, (Vector{0.25, 7.5}));
}

TEST(ExternalBlackbox, FailuresBecomeHiddenFailures) {
  for (const char* stub : {"exit1_stub.sh", "nan_stub.sh", "garbage_stub.sh"}) {
    SCOPED_TRACE(stub);
    ExternalBlackbox bb(Stub(stub), OneByThree());
    const Evaluation e = bb.Evaluate(Vector{0.5});
    EXPECT_TRUE(e.hidden_failure());
    EXPECT_EQ(e.h, kInf);
    EXPECT_EQ(e.f, (Vector{kInf, kInf}));
  }
  // Wrong count: the echo stub prints 3 numbers, this spec expects 4.
  ExternalBlackbox wrong(Stub("echo_stub.sh"), ProblemSpec::Make(1, 2, 2, {0}, {1}));
  EXPECT_TRUE(wrong.Evaluate(Vector{0.5}).hidden_failure());
}

TEST(ExternalBlackbox, TimeoutKillsTheProgram) {
  ExternalBlackbox bb(Stub("sleep_stub.sh"), OneByThree(), 0.3);
  const auto start = std::chrono::steady_clock::now();
  const Evaluation e = bb.Evaluate(Vector{0.5});
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_TRUE(e.hidden_failure());
  EXPECT_LT(seconds, 5.0);
}

TEST(ExternalBlackbox, MissingProgramIsAnIoError) {
  ExternalBlackbox bb("/nonexistent/dmulti-blackbox", OneByThree());
  EXPECT_THROW(bb.Evaluate(Vector{0.5}), BlackboxIoError);
}

TEST(ExternalBlackbox, MatchesBuiltinBnh) {
  const BuiltinProblem& p = FindProblem("bnh");
  ExternalBlackbox bb(PythonStub("bnh_stub.py"), p.spec);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u0(0, 5), u1(0, 3);
  for (int k = 0; k < 20; ++k) {
    const Vector x{u0(rng), u1(rng)};
    const Evaluation ext = bb.Evaluate(x);
    Vector f, c;
    EvaluateBuiltin(p, x, f, c);
    ASSERT_FALSE(ext.hidden_failure());
    for (std::size_t i = 0; i < f.size(); ++i) {
      EXPECT_NEAR(ext.f[i], f[i], 1e-15 * std::max(1.0, std::abs(f[i])));
    }
    for (std::size_t j = 0; j < c.size(); ++j) {
      EXPECT_NEAR(ext.c[j], c[j], 1e-15 * std::max(1.0, std::abs(c[j])));
    }
  }
}

TEST(ExternalBlackbox, SolverSurvivesFlakyProgram) {
  const BuiltinProblem& p = FindProblem("bnh");
  ExternalBlackbox bb(PythonStub("flaky_bnh_stub.py"), p.spec, 0.5);
  SolverConfig cfg;
  cfg.budget = 80;
  cfg.rng_seed = 1;
  const RunResult r = RunPb(bb, cfg, {{1.0, 1.0}});
  EXPECT_EQ(r.eval_count, 80u);
  std::size_t failures = 0;
  for (const auto& rec : r.history) failures += rec.eval.hidden_failure();
  EXPECT_GT(failures, 0u);
  EXPECT_FALSE(r.pareto_approx.empty());
  for (const auto& e : r.pareto_approx) EXPECT_FALSE(e.hidden_failure());
}

}  // namespace
}  // namespace dmulti
