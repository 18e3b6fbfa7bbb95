#include <gtest/gtest.h>

#include <random>
#include <fstream>
#include <sstream>

#include "dmulti/indicators.h"
#include "test_util.h"

namespace dmulti {
namespace {

using testing::Feasible;

TEST(Hypervolume, SmallExamples) {
  EXPECT_DOUBLE_EQ(Hypervolume({{0, 0}}, Vector{1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(Hypervolume({{0, 0.5}, {0.5, 0}}, Vector{1, 1}), 0.75);
  EXPECT_DOUBLE_EQ(Hypervolume({{1, 0}}, Vector{1, 1}), 0.0);
  EXPECT_DOUBLE_EQ(Hypervolume({}, Vector{1, 1}), 0.0);
  EXPECT_DOUBLE_EQ(Hypervolume({{0.25}}, Vector{1}), 0.75);
  EXPECT_DOUBLE_EQ(Hypervolume({{0, 0, 0}}, Vector{1, 2, 3}), 6.0);
  EXPECT_DOUBLE_EQ(Hypervolume({{0, 0, 0, 0}}, Vector{1, 2, 3, 4}), 24.0);
}

TEST(Hypervolume, ThreeObjectiveUnion) {
  // Three boxes of volume 2, pairwise overlaps of 1, common overlap of 1.
  const std::vector<Vector> pts = {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  EXPECT_DOUBLE_EQ(Hypervolume(pts, Vector{2, 2, 2}), 4.0);
}

TEST(Hypervolume, DominatedAndDuplicatePointsDoNotCount) {
  const std::vector<Vector> a = {{0, 0.5}, {0.5, 0}};
  std::vector<Vector> b = a;
  b.push_back({0.7, 0.7});
  b.push_back({0, 0.5});
  EXPECT_DOUBLE_EQ(Hypervolume(a, Vector{1, 1}), Hypervolume(b, Vector{1, 1}));
}

TEST(Hypervolume, RejectsTooManyObjectives) {
  EXPECT_THROW(Hypervolume({{0, 0, 0, 0, 0}}, Vector(5, 1.0)), ContractViolation);
}

TEST(Hypervolume, MonotoneUnderInsertion) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (std::size_t m = 2; m <= 4; ++m) {
    std::vector<Vector> pts;
    double last = 0.0;
    for (int k = 0; k < 40; ++k) {
      Vector p(m);
      for (auto& v : p) v = u(rng);
      pts.push_back(p);
      const double hv = Hypervolume(pts, Vector(m, 1.0));
      EXPECT_GE(hv, last - 1e-15);
      last = hv;
    }
  }
}

TEST(TransformT, Example) {
  const Vector t = TransformT(Vector{1, 7}, Vector{0, 5}, Vector{2, 5});
  EXPECT_DOUBLE_EQ(t[0], 0.5);
  EXPECT_DOUBLE_EQ(t[1], 2.0);
}

TEST(TransformT, PreservesDominance) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-5, 5);
  const Vector ideal{-1, 2, 0};
  const Vector nadir{3, 2.5, 10};
  for (int k = 0; k < 500; ++k) {
    Vector a(3), b(3);
    for (auto& v : a) v = u(rng);
    for (auto& v : b) v = u(rng);
    EXPECT_EQ(ParetoDominates(a, b),
              ParetoDominates(TransformT(a, ideal, nadir), TransformT(b, ideal, nadir)));
  }
}

TEST(FrontApprox, FilteredKeepsFirstDuplicateInOrder) {
  const FrontApprox f = FrontApprox::Filtered(
      2, {{3, 1}, {1, 3}, {2, 2}, {1, 3}, {2, 3}, {0.5, 5}});
  EXPECT_EQ(f.points, (std::vector<Vector>{{3, 1}, {1, 3}, {2, 2}, {0.5, 5}}));
  const FrontApprox g =
      FrontApprox::Filtered(3, {{1, 1, 1}, {0, 2, 2}, {1, 1, 2}, {0, 2, 2}});
  EXPECT_EQ(g.points, (std::vector<Vector>{{1, 1, 1}, {0, 2, 2}}));
}

TEST(FrontApprox, FromEvaluationsSkipsInfeasible) {
  std::vector<Evaluation> evals = {Feasible({1, 2}), testing::Infeasible({0, 0}, 1.0),
                                   Feasible({2, 1}), Feasible({2, 2})};
  const FrontApprox f = FrontApprox::FromEvaluations(2, evals);
  EXPECT_EQ(f.points, (std::vector<Vector>{{1, 2}, {2, 1}}));
}

// Ideal (0, 0), nadir (1, 1); only the knee counts, reference HV 0.25.
ReferenceData KneeReference() {
  return ReferenceData::FromFront(
      FrontApprox::Filtered(2, {{0, 1}, {0.5, 0.5}, {1, 0}}));
}

TEST(NormalizedHypervolume, Examples) {
  const ReferenceData ref = KneeReference();
  EXPECT_EQ(ref.ideal, (Vector{0, 0}));
  EXPECT_EQ(ref.nadir, (Vector{1, 1}));
  EXPECT_DOUBLE_EQ(NormalizedHypervolume({{0.5, 0.5}}, ref), 1.0);
  EXPECT_DOUBLE_EQ(NormalizedHypervolume({{0.75, 0.5}, {0, 1}}, ref), 0.5);
  EXPECT_DOUBLE_EQ(NormalizedHypervolume({}, ref), 0.0);
  // Reference HV is 0 for a front on the nadir hull only.
  const ReferenceData flat =
      ReferenceData::FromFront(FrontApprox::Filtered(2, {{0, 0}}));
  EXPECT_THROW(NormalizedHypervolume({{0, 0}}, flat), ConfigError);
  EXPECT_THROW(ReferenceData::FromFront(FrontApprox{2, {}}), ConfigError);
}

TEST(ConvergenceTest, Threshold) {
  const ReferenceData ref = KneeReference();
  EXPECT_TRUE(ConvergenceTest({{0.5, 0.5}}, ref, 1e-2));
  EXPECT_FALSE(ConvergenceTest({{0.6, 0.6}}, ref, 1e-2));
  EXPECT_TRUE(ConvergenceTest({{0.6, 0.6}}, ref, 0.9));
}

std::vector<HistoryRecord> History(const std::vector<Evaluation>& evals) {
  std::vector<HistoryRecord> out;
  for (std::size_t i = 0; i < evals.size(); ++i) {
    HistoryRecord r;
    r.eval_index = i + 1;
    r.eval = evals[i];
    out.push_back(r);
  }
  return out;
}

TEST(SolvedAt, FirstPassingPrefix) {
  const ReferenceData ref = KneeReference();
  const auto history =
      History({testing::Infeasible({0, 0}, 2.0), Feasible({0.9, 0.9}),
               Feasible({0.5, 0.5}), Feasible({0, 1}), Feasible({1, 0})});
  EXPECT_EQ(SolvedAt(history, ref, 0.97), std::optional<std::size_t>(2));
  EXPECT_EQ(SolvedAt(history, ref, 0.5), std::optional<std::size_t>(3));
  EXPECT_EQ(SolvedAt(History({Feasible({0.9, 0.9})}), ref, 0.1), std::nullopt);
}

TEST(DataProfile, Example) {
  // Two problems with n = 1: solved at 2 and at 5 evaluations.
  const std::vector<ProfileRecord> records = {{2, 1}, {5, 1}, {std::nullopt, 1}};
  const auto rows = DataProfile(records, 4);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].k, 1u);
  EXPECT_DOUBLE_EQ(rows[0].fraction, 1.0 / 3);
  EXPECT_DOUBLE_EQ(rows[1].fraction, 1.0 / 3);
  EXPECT_DOUBLE_EQ(rows[2].fraction, 2.0 / 3);
  EXPECT_DOUBLE_EQ(rows[3].fraction, 2.0 / 3);
  EXPECT_TRUE(DataProfile({}, 3).size() == 3);
}

TEST(ConvergenceProfile, MonotoneAndEndsAtFinal) {
  const ReferenceData ref = KneeReference();
  const auto history =
      History({Feasible({0.9, 0.9}), Feasible({2, 2}), Feasible({0.6, 0.6}),
               Feasible({0.5, 0.5}), Feasible({1, 0})});
  const auto rows = ConvergenceProfile(history, ref, 2);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].evals, 2u);
  EXPECT_EQ(rows[1].evals, 4u);
  EXPECT_EQ(rows[2].evals, 5u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GE(rows[i].normalized_hv, rows[i - 1].normalized_hv);
  }
  EXPECT_DOUBLE_EQ(rows.back().normalized_hv, 1.0);
}

TEST(FrontIo, RoundTrip) {
  testing::TempDir dir("front");
  const FrontApprox f{2, {{0.1, 1e-20}, {3, -2}}};
  {
    std::ofstream out(dir.path() / "f.csv");
    WriteFront(out, f);
  }
  const FrontApprox g = ReadFrontFile((dir.path() / "f.csv").string());
  EXPECT_EQ(g.m, 2u);
  EXPECT_EQ(g.points, f.points);
  std::ostringstream out;
  WriteDataProfile(out, {{1, 0.5}});
  EXPECT_EQ(out.str(), "k,fraction\n1,0.5\n");
}

}  // namespace
}  // namespace dmulti
