#include "dmulti/barrier.h"

#include <algorithm>
#include <numeric>

namespace dmulti {

const char* ToString(IterationKind kind) {
  switch (kind) {
    case IterationKind::kDominating:
      return "dominating";
    case IterationKind::kImproving:
      return "improving";
    case IterationKind::kUnsuccessful:
      return "unsuccessful";
  }
  return "unknown";
}

IterationKind ClassifyIteration(
    std::span<const Evaluation> trials,
    const std::optional<IncumbentEntry>& feasible_center,
    const std::optional<IncumbentEntry>& infeasible_center) {
  for (const Evaluation& t : trials) {
    if (t.feasible() && feasible_center &&
        FeasibleOrder(t, feasible_center->eval)) {
      return IterationKind::kDominating;
    }
    if (t.infeasible() && infeasible_center &&
        InfeasibleOrder(t, infeasible_center->eval)) {
      return IterationKind::kDominating;
    }
  }
  if (!infeasible_center) return IterationKind::kUnsuccessful;
  const Evaluation& center = infeasible_center->eval;
  for (const Evaluation& t : trials) {
    if (!t.infeasible() || !(t.h < center.h)) continue;
    for (std::size_t i = 0; i < t.f.size(); ++i) {
      if (center.f[i] < t.f[i]) return IterationKind::kImproving;
    }
  }
  return IterationKind::kUnsuccessful;
}

namespace {

// f <= bound componentwise with one strict inequality.
bool ExtendsMinimum(const Vector& f, const Vector& bound) {
  return ParetoDominates(f, bound);
}

Vector ComponentwiseMin(std::span<const Evaluation> points, std::size_t m) {
  Vector lo(m, kInf);
  for (const Evaluation& e : points) {
    for (std::size_t i = 0; i < m; ++i) lo[i] = std::min(lo[i], e.f[i]);
  }
  return lo;
}

}  // namespace

double AssignTrialFrameSize(const Evaluation& trial,
                            std::span<const Evaluation> feasible_now,
                            std::span<const Evaluation> infeasible_now,
                            double delta_frame, double tau) {
  const double enlarged = delta_frame / tau;
  const std::size_t m = trial.f.size();
  if (trial.feasible()) {
    for (const Evaluation& x : feasible_now) {
      if (FeasibleOrder(trial, x)) return enlarged;
    }
    if (ExtendsMinimum(trial.f, ComponentwiseMin(feasible_now, m))) {
      return enlarged;
    }
    return delta_frame;
  }
  if (trial.infeasible()) {
    for (const Evaluation& x : infeasible_now) {
      if (InfeasibleOrder(trial, x)) return enlarged;
    }
    if (!infeasible_now.empty()) {
      double h_top = 0.0;
      for (const Evaluation& x : infeasible_now) h_top = std::max(h_top, x.h);
      if (trial.h <= h_top &&
          ExtendsMinimum(trial.f, ComponentwiseMin(infeasible_now, m))) {
        return enlarged;
      }
    }
  }
  return delta_frame;
}

double UpdateHMax(std::span<const Evaluation> candidates,
                  std::span<const Evaluation> infeasible_incumbents,
                  const Evaluation& infeasible_center, IterationKind outcome) {
  const double h_center = infeasible_center.h;
  if (outcome == IterationKind::kImproving) {
    double best = -kInf;
    for (const Evaluation& e : candidates) {
      if (e.infeasible() && e.h < h_center) best = std::max(best, e.h);
    }
    if (best == -kInf) {
      throw ContractViolation(
          "improving iteration without a point below the infeasible center");
    }
    return best;
  }
  double h_top = h_center;
  for (const Evaluation& e : infeasible_incumbents) h_top = std::max(h_top, e.h);
  if (h_center == h_top) return h_center;
  double best = -kInf;
  for (const Evaluation& e : candidates) {
    if (e.infeasible() && e.h >= h_center && e.h < h_top) {
      best = std::max(best, e.h);
    }
  }
  // Empty window: keep the center's violation.
  return best == -kInf ? h_center : best;
}

void RebuildInfeasibleList(BarrierState& state) {
  // h_max never increases, so points above it can never come back.
  std::erase_if(state.archive, [&](const IncumbentEntry& e) {
    return e.eval.h > state.h_max;
  });
  const auto& archive = state.archive;
  std::vector<std::size_t> order(archive.size());
  std::iota(order.begin(), order.end(), 0);
  // Any dominator of a point sorts lexicographically before it, so one sweep
  // against the kept points suffices.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return archive[a].eval.f < archive[b].eval.f;
  });
  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    const Vector& f = archive[idx].eval.f;
    bool dominated = false;
    for (std::size_t k : kept) {
      if (WeaklyDominates(archive[k].eval.f, f)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(idx);
  }
  std::sort(kept.begin(), kept.end());
  state.infeasible.entries.clear();
  for (std::size_t k : kept) state.infeasible.entries.push_back(archive[k]);
}

BarrierState RefreshLists(BarrierState state,
                          const std::vector<IncumbentEntry>& new_points) {
  auto feasible_order = [](const IncumbentEntry& a, const IncumbentEntry& b) {
    return FeasibleOrder(a.eval, b.eval);
  };
  auto same_f = [](const IncumbentEntry& a, const IncumbentEntry& b) {
    return SameObjectives(a.eval, b.eval);
  };
  auto infeasible_order = [](const IncumbentEntry& a, const IncumbentEntry& b) {
    return InfeasibleOrder(a.eval, b.eval);
  };
  auto same_fh = [](const IncumbentEntry& a, const IncumbentEntry& b) {
    return SameObjectivesAndH(a.eval, b.eval);
  };
  for (const IncumbentEntry& p : new_points) {
    if (p.eval.feasible()) {
      InsertNondominated(state.feasible.entries, p, feasible_order, same_f);
    } else if (p.eval.infeasible()) {
      InsertNondominated(state.archive, p, infeasible_order, same_fh);
    }
  }
  RebuildInfeasibleList(state);
  return state;
}

}  // namespace dmulti
