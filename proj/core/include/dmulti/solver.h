// DMulti-MADS run modes: extreme barrier (EB), two-phase extreme barrier
// (TEB), progressive barrier (PB) and penalty.

#ifndef DMULTI_SOLVER_H_
#define DMULTI_SOLVER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dmulti/barrier.h"
#include "dmulti/blackbox.h"
#include "dmulti/core.h"
#include "dmulti/mesh.h"

namespace dmulti {

enum class Variant { kEb, kTeb, kPb, kPenalty };

const char* ToString(Variant variant);
// Accepts "eb", "teb", "pb", "penalty" (case-insensitive).
Variant ParseVariant(const std::string& name);

struct SolverConfig {
  Variant variant = Variant::kPb;
  std::size_t budget = 1000;
  double tau = 0.5;
  int w_plus = 1;
  double rho = 0.1;
  double delta0 = 1.0;
  double mesh_tol = 1e-9;
  double eps_penalty = 1e-3;
  std::uint64_t rng_seed = 0;
  bool opportunistic = true;
  bool speculative = true;

  // Throws ConfigError.
  void Validate() const;
};

enum class StopReason { kBudget, kMeshTol };
const char* ToString(StopReason reason);

// What happened in the iteration an evaluation belongs to. Starting points
// are logged as kStart.
enum class HistoryKind { kStart, kDominating, kImproving, kUnsuccessful };
const char* ToString(HistoryKind kind);

struct HistoryRecord {
  std::size_t eval_index = 0;  // 1-based
  std::size_t iteration = 0;   // 0 for starting points
  HistoryKind kind = HistoryKind::kStart;
  Evaluation eval;
};

struct RunResult {
  std::vector<Evaluation> pareto_approx;
  std::vector<Evaluation> infeasible_front;
  std::vector<HistoryRecord> history;
  std::size_t eval_count = 0;
  StopReason stop_reason = StopReason::kBudget;
  // h_max after every PB iteration.
  std::vector<double> h_max_trace;
  // Evaluations spent before the first feasible point (TEB and Penalty).
  std::size_t phase1_evals = 0;
};

// One evaluated trial as the observer sees it: the algorithm-facing
// evaluation plus the mesh that generated it.
struct TrialRecord {
  Evaluation eval;
  MeshState mesh;
  double assigned_delta = 0.0;
};

struct IterationReport {
  std::size_t iteration = 0;
  IterationKind kind = IterationKind::kUnsuccessful;
  double h_max_before = kInf;
  const BarrierState* state = nullptr;
  std::span<const TrialRecord> trials;
  std::optional<IncumbentEntry> feasible_center;
  std::optional<IncumbentEntry> infeasible_center;
  bool primary_is_infeasible = false;
};

using IterationObserver = std::function<void(const IterationReport&)>;

// Per-variable step scale: (upper - lower) / 10 for finite bounds, else 1.
Vector StepScale(const ProblemSpec& spec);

// Z_i = f_i + (1 / eps) * sum_j max(0, c_j).
Vector PenaltyObjectives(std::span<const double> f, std::span<const double> c,
                         double eps);

// Candidate one speculative step further along a successful direction:
// x + 2 * delta * scale (.) d, using the mesh that produced the success.
Vector SpeculativeSearch(const Evaluation& last_success,
                         const Direction& direction, const MeshState& mesh);

RunResult RunPb(Blackbox& problem, const SolverConfig& config,
                const std::vector<Vector>& starts,
                const IterationObserver& observer = {});
RunResult RunEb(Blackbox& problem, const SolverConfig& config,
                const std::vector<Vector>& starts,
                const IterationObserver& observer = {});
RunResult RunTeb(Blackbox& problem, const SolverConfig& config,
                 const std::vector<Vector>& starts,
                 const IterationObserver& observer = {});
RunResult RunPenalty(Blackbox& problem, const SolverConfig& config,
                     const std::vector<Vector>& starts,
                     const IterationObserver& observer = {});

// Dispatches on config.variant.
RunResult Run(Blackbox& problem, const SolverConfig& config,
              const std::vector<Vector>& starts,
              const IterationObserver& observer = {});

}  // namespace dmulti

#endif  // DMULTI_SOLVER_H_
