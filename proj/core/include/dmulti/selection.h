// Frame center selection over the feasible and infeasible iterate lists.
//
// Every argmax below breaks ties by the earliest position in the list, so
// selection is a deterministic function of list insertion order.

#ifndef DMULTI_SELECTION_H_
#define DMULTI_SELECTION_H_

#include <optional>
#include <span>
#include <vector>

#include "dmulti/core.h"

namespace dmulti {

enum class ListKind { kFeasible, kInfeasible };

struct IterateList {
  ListKind kind = ListKind::kFeasible;
  std::vector<IncumbentEntry> entries;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
  // Index of the entry whose point equals x, if any.
  std::optional<std::size_t> Find(std::span<const double> x) const;
  std::vector<Evaluation> Evaluations() const;
};

struct FrameCenterChoice {
  IncumbentEntry primary;
  std::optional<IncumbentEntry> secondary;
  bool primary_is_infeasible = false;
};

double DeltaMax(const IterateList& list);

// Spacing of each value inside the sorted sequence, normalized by the range.
// Endpoints get twice the gap to their neighbour. Output is aligned with the
// input order (sorting is internal and stable). A zero range yields zeros.
// Requires at least 3 values.
std::vector<double> GammaSpacing(std::span<const double> values);

// max_i gamma_i per entry, gamma computed over the whole list per objective.
std::vector<double> MaxGamma(const IterateList& list);

IncumbentEntry SelectFeasibleCenter(const IterateList& feasible, double tau,
                                    int w_plus);

IncumbentEntry SelectInfeasibleCenterNoFeasible(const IterateList& infeasible);

double PsiValue(const IterateList& feasible, std::span<const double> f_x);

IncumbentEntry SelectInfeasibleCenterWithFeasible(
    const IterateList& infeasible, const IterateList& feasible);

double XiValue(const IterateList& feasible);

FrameCenterChoice OrderFrameCenters(const IncumbentEntry& feasible_center,
                                    const IncumbentEntry& infeasible_center,
                                    const IterateList& feasible, double rho);

}  // namespace dmulti

#endif  // DMULTI_SELECTION_H_
