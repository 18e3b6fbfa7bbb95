#include <gtest/gtest.h>

#include <cmath>

#include "dmulti/indicators.h"
#include "dmulti/problems.h"

namespace dmulti {
namespace {

void Eval(const std::string& name, const Vector& x, Vector& f, Vector& c) {
  EvaluateBuiltin(FindProblem(name), x, f, c);
}

TEST(Problems, RegistryOrder) {
  EXPECT_EQ(ProblemNames(), (std::vector<std::string>{"bnh", "srn", "tnk", "osy",
                                                      "constr", "c2dtlz2"}));
  try {
    FindProblem("zdt1");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("bnh"), std::string::npos);
  }
}

TEST(Problems, KnownValues) {
  Vector f, c;
  Eval("bnh", {0, 0}, f, c);
  EXPECT_EQ(f, (Vector{0, 50}));
  EXPECT_DOUBLE_EQ(c[0], 0.0);
  EXPECT_LT(c[1], 0.0);

  Eval("tnk", {1, 1}, f, c);
  EXPECT_EQ(f, (Vector{1, 1}));
  EXPECT_NEAR(c[0], -0.9, 1e-12);
  EXPECT_NEAR(c[1], 0.0, 1e-12);

  Eval("srn", {0, 0}, f, c);
  EXPECT_EQ(f, (Vector{7, -1}));
  EXPECT_EQ(c, (Vector{-225, 10}));

  Eval("constr", {0.5, 1}, f, c);
  EXPECT_DOUBLE_EQ(f[0], 0.5);
  EXPECT_DOUBLE_EQ(f[1], 4.0);
  EXPECT_DOUBLE_EQ(c[0], 6 - 1 - 4.5);
  EXPECT_DOUBLE_EQ(c[1], 1 + 1 - 4.5);

  // On the unit sphere with x_M at 0.5 the objectives lie on f1^2 + f2^2 +
  // f3^2 = 1.
  Eval("c2dtlz2", {0.3, 0.7, 0.5, 0.5, 0.5, 0.5, 0.5}, f, c);
  EXPECT_NEAR(f[0] * f[0] + f[1] * f[1] + f[2] * f[2], 1.0, 1e-12);
}

TEST(Problems, OutOfBoundsIsAContractViolation) {
  Vector f, c;
  EXPECT_THROW(Eval("bnh", {-1, 0}, f, c), ContractViolation);
}

TEST(Problems, StartingPoints) {
  for (const BuiltinProblem& p : BuiltinProblems()) {
    SCOPED_TRACE(p.name);
    auto bb = MakeBlackbox(p);
    const Evaluation feas = bb->Evaluate(p.feasible_start);
    const Evaluation infeas = bb->Evaluate(p.infeasible_start);
    EXPECT_TRUE(feas.feasible());
    EXPECT_TRUE(infeas.infeasible());
    EXPECT_EQ(feas.f.size(), static_cast<std::size_t>(p.spec.m));
    EXPECT_EQ(feas.c.size(), static_cast<std::size_t>(p.spec.j_count));
  }
}

TEST(Problems, FixturesAreNondominatedAndFeasible) {
  for (const BuiltinProblem& p : BuiltinProblems()) {
    SCOPED_TRACE(p.name);
    const FrontApprox front = ReadFrontFile(FixturePath(DMULTI_FRONTS_DIR, p.name));
    EXPECT_EQ(front.m, static_cast<std::size_t>(p.spec.m));
    ASSERT_GE(front.points.size(), 10u);
    const FrontApprox again = FrontApprox::Filtered(front.m, front.points);
    EXPECT_EQ(again.points.size(), front.points.size());
  }
}

TEST(ReferenceFront, BnhGrid) {
  const BuiltinProblem& p = FindProblem("bnh");
  ReferenceFrontOptions opts;
  opts.grid_per_dim = 200;
  const FrontApprox front = ReferenceFront(p.spec, p.evaluator, opts);
  EXPECT_GE(front.points.size(), 100u);
  const ReferenceData ref = ReferenceData::FromFront(front);
  EXPECT_NEAR(ref.ideal[0], 0.0, 1e-12);
  EXPECT_NEAR(ref.ideal[1], 4.0, 0.1);
  EXPECT_NEAR(ref.nadir[0], 136.0, 1.0);
  EXPECT_NEAR(ref.nadir[1], 50.0, 1e-12);
}

TEST(ReferenceFront, SampledIsDeterministic) {
  const BuiltinProblem& p = FindProblem("osy");
  ReferenceFrontOptions opts;
  opts.samples = 20000;
  opts.seed = 4;
  const FrontApprox a = ReferenceFront(p.spec, p.evaluator, opts);
  const FrontApprox b = ReferenceFront(p.spec, p.evaluator, opts);
  EXPECT_EQ(a.points, b.points);
  EXPECT_FALSE(a.empty());
}

TEST(ReferenceFront, NoFeasiblePointIsAnError) {
  const ProblemSpec spec = ProblemSpec::Make(1, 1, 1, {0}, {1});
  auto never = [](std::span<const double> x, Vector& f, Vector& c) {
    f = {x[0]};
    c = {1.0};
  };
  ReferenceFrontOptions opts;
  opts.grid_per_dim = 10;
  EXPECT_THROW(ReferenceFront(spec, never, opts), ConfigError);
}

}  // namespace
}  // namespace dmulti
