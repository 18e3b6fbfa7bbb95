#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "dmulti/core.h"
#include "dmulti/indicators.h"
#include "dmulti/problems.h"
#include "dmulti/solver.h"

namespace dmulti {
namespace {

// Points on the positive part of the unit sphere, so none dominates another.
std::vector<Vector> SphereFront(std::size_t m, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Vector> pts(n, Vector(m));
  for (Vector& p : pts) {
    double norm = 0.0;
    for (double& v : p) {
      v = std::abs(g(rng));
      norm += v * v;
    }
    for (double& v : p) v /= std::sqrt(norm);
  }
  return pts;
}

void BM_Hypervolume(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const std::vector<Vector> pts = SphereFront(m, n, 1);
  const Vector ref(m, 1.1);
  for (auto _ : state) benchmark::DoNotOptimize(Hypervolume(pts, ref));
}
BENCHMARK(BM_Hypervolume)
    ->ArgsProduct({{2}, {100, 1000, 10000}})
    ->ArgsProduct({{3}, {100, 1000, 5000}})
    ->ArgsProduct({{4}, {50, 200, 500}});

void BM_ParetoFilter(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Evaluation> pts(n);
  for (Evaluation& e : pts) {
    e.f.resize(m);
    for (double& v : e.f) v = u(rng);
    e.x = e.f;
    e.h = 0.0;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(ParetoFilter(pts, Relation::kFeasible));
  }
}
BENCHMARK(BM_ParetoFilter)->ArgsProduct({{2, 3}, {100, 1000, 5000}});

void BM_FilteredFront(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Vector> pts = SphereFront(2, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(FrontApprox::Filtered(2, pts));
}
BENCHMARK(BM_FilteredFront)->Arg(1000)->Arg(100000);

void BM_SolvePb(benchmark::State& state) {
  const BuiltinProblem& p = FindProblem("bnh");
  SolverConfig cfg;
  cfg.budget = static_cast<std::size_t>(state.range(0));
  cfg.rng_seed = 1;
  for (auto _ : state) {
    auto bb = MakeBlackbox(p);
    benchmark::DoNotOptimize(RunPb(*bb, cfg, {p.infeasible_start}));
  }
}
BENCHMARK(BM_SolvePb)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace dmulti

BENCHMARK_MAIN();
