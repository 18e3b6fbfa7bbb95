// Progressive barrier bookkeeping: iteration classification, frame size of
// new trial points, threshold update and iterate list refresh.

#ifndef DMULTI_BARRIER_H_
#define DMULTI_BARRIER_H_

#include <optional>
#include <span>
#include <vector>

#include "dmulti/core.h"
#include "dmulti/selection.h"

namespace dmulti {

enum class IterationKind { kDominating, kImproving, kUnsuccessful };

const char* ToString(IterationKind kind);

struct BarrierState {
  double h_max = kInf;
  IterateList feasible{ListKind::kFeasible, {}};
  IterateList infeasible{ListKind::kInfeasible, {}};
  // Every infeasible point not dominated under the infeasible order, with
  // the frame size it was given when generated. `infeasible` is the subset
  // with h <= h_max that is nondominated on f alone.
  std::vector<IncumbentEntry> archive;
};

IterationKind ClassifyIteration(std::span<const Evaluation> trials,
                                const std::optional<IncumbentEntry>& feasible_center,
                                const std::optional<IncumbentEntry>& infeasible_center);

// Frame size for a trial generated from a center of size delta_frame:
// delta_frame / tau when the trial dominates a member of F (or I), or
// extends the componentwise minimum over F (or over I, for h <= max_I h);
// delta_frame otherwise.
double AssignTrialFrameSize(const Evaluation& trial,
                            std::span<const Evaluation> feasible_now,
                            std::span<const Evaluation> infeasible_now,
                            double delta_frame, double tau);

// New threshold given the candidate points (the infeasible archive after
// this iteration's evaluations), the infeasible incumbents at the start of
// the iteration and the infeasible center.
double UpdateHMax(std::span<const Evaluation> candidates,
                  std::span<const Evaluation> infeasible_incumbents,
                  const Evaluation& infeasible_center, IterationKind outcome);

// Merges new points into the lists. Feasible points are filtered on f.
// Infeasible points with finite h join the archive under the infeasible
// order; the infeasible list is rebuilt from the archive under the current
// h_max. Surviving entries keep their frame size.
BarrierState RefreshLists(BarrierState state,
                          const std::vector<IncumbentEntry>& new_points);

// Rebuilds state.infeasible from state.archive and state.h_max.
void RebuildInfeasibleList(BarrierState& state);

}  // namespace dmulti

#endif  // DMULTI_BARRIER_H_
