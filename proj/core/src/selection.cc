#include "dmulti/selection.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dmulti {

std::optional<std::size_t> IterateList::Find(std::span<const double> x) const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Vector& y = entries[i].eval.x;
    if (std::equal(y.begin(), y.end(), x.begin(), x.end())) return i;
  }
  return std::nullopt;
}

std::vector<Evaluation> IterateList::Evaluations() const {
  std::vector<Evaluation> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.eval);
  return out;
}

double DeltaMax(const IterateList& list) {
  if (list.empty()) throw ContractViolation("DeltaMax of an empty list");
  double best = list.entries.front().delta_frame;
  for (const auto& e : list.entries) best = std::max(best, e.delta_frame);
  return best;
}

std::vector<double> GammaSpacing(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 3) throw ContractViolation("GammaSpacing needs at least 3 values");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> gamma(n, 0.0);
  const double range = values[order.back()] - values[order.front()];
  if (!(range > 0.0) || !std::isfinite(range)) return gamma;
  auto at = [&](std::size_t rank) { return values[order[rank]]; };
  gamma[order[0]] = 2.0 * (at(1) - at(0)) / range;
  gamma[order[n - 1]] = 2.0 * (at(n - 1) - at(n - 2)) / range;
  for (std::size_t l = 1; l + 1 < n; ++l) {
    gamma[order[l]] = (at(l + 1) - at(l - 1)) / range;
  }
  return gamma;
}

std::vector<double> MaxGamma(const IterateList& list) {
  const std::size_t n = list.size();
  std::vector<double> best(n, 0.0);
  if (n < 3) return best;
  const std::size_t m = list.entries.front().eval.f.size();
  Vector column(n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = 0; l < n; ++l) column[l] = list.entries[l].eval.f[i];
    const std::vector<double> gamma = GammaSpacing(column);
    for (std::size_t l = 0; l < n; ++l) best[l] = std::max(best[l], gamma[l]);
  }
  return best;
}

namespace {

double MaxObjective(const Evaluation& e) {
  return *std::max_element(e.f.begin(), e.f.end());
}

// First index in `eligible` maximizing score.
std::size_t ArgMax(const std::vector<std::size_t>& eligible,
                   const std::vector<double>& score) {
  std::size_t best = eligible.front();
  for (std::size_t idx : eligible) {
    if (score[idx] > score[best]) best = idx;
  }
  return best;
}

std::vector<double> MaxObjectives(const IterateList& list) {
  std::vector<double> out;
  for (const auto& e : list.entries) out.push_back(MaxObjective(e.eval));
  return out;
}

}  // namespace

IncumbentEntry SelectFeasibleCenter(const IterateList& feasible, double tau,
                                    int w_plus) {
  if (feasible.empty()) {
    throw ContractViolation("SelectFeasibleCenter on an empty list");
  }
  const double delta_max = DeltaMax(feasible);
  const double lower = std::pow(tau, w_plus) * delta_max;
  std::vector<std::size_t> eligible;
  for (std::size_t l = 0; l < feasible.size(); ++l) {
    const double delta = feasible.entries[l].delta_frame;
    if (delta >= lower && delta <= delta_max) eligible.push_back(l);
  }
  const std::vector<double> score =
      feasible.size() <= 2 ? MaxObjectives(feasible) : MaxGamma(feasible);
  return feasible.entries[ArgMax(eligible, score)];
}

IncumbentEntry SelectInfeasibleCenterNoFeasible(const IterateList& infeasible) {
  if (infeasible.empty()) {
    throw ContractViolation("SelectInfeasibleCenterNoFeasible on empty list");
  }
  const auto& entries = infeasible.entries;
  std::size_t h_min = 0;
  for (std::size_t l = 1; l < entries.size(); ++l) {
    if (entries[l].eval.h < entries[h_min].eval.h) h_min = l;
  }
  const double delta_h_min = entries[h_min].delta_frame;
  std::vector<std::size_t> select;
  for (std::size_t l = 0; l < entries.size(); ++l) {
    if (entries[l].delta_frame >= delta_h_min) select.push_back(l);
  }
  if (select.size() == 1) return entries[select.front()];
  if (select.size() == 2 && entries.size() == 2) {
    return entries[ArgMax(select, MaxObjectives(infeasible))];
  }
  return entries[ArgMax(select, MaxGamma(infeasible))];
}

double PsiValue(const IterateList& feasible, std::span<const double> f_x) {
  if (feasible.empty()) throw ContractViolation("PsiValue on an empty list");
  bool weakly_dominated = false;
  for (const auto& e : feasible.entries) {
    if (WeaklyDominates(e.eval.f, f_x)) {
      weakly_dominated = true;
      break;
    }
  }
  double best = kInf;
  for (const auto& e : feasible.entries) {
    double sum = 0.0;
    for (std::size_t i = 0; i < f_x.size(); ++i) {
      const double gap = weakly_dominated ? f_x[i] - e.eval.f[i]
                                          : e.eval.f[i] - f_x[i];
      sum += std::max(gap, 0.0);
    }
    best = std::min(best, sum);
  }
  return weakly_dominated ? -best : best;
}

IncumbentEntry SelectInfeasibleCenterWithFeasible(
    const IterateList& infeasible, const IterateList& feasible) {
  if (infeasible.empty() || feasible.empty()) {
    throw ContractViolation("psi selection needs both lists nonempty");
  }
  std::size_t best = 0;
  double best_psi = PsiValue(feasible, infeasible.entries[0].eval.f);
  for (std::size_t l = 1; l < infeasible.size(); ++l) {
    const double psi = PsiValue(feasible, infeasible.entries[l].eval.f);
    if (psi > best_psi) {
      best_psi = psi;
      best = l;
    }
  }
  return infeasible.entries[best];
}

double XiValue(const IterateList& feasible) {
  if (feasible.empty()) throw ContractViolation("XiValue on an empty list");
  const std::size_t m = feasible.entries.front().eval.f.size();
  double xi = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double hi = -kInf;
    double lo = kInf;
    for (const auto& e : feasible.entries) {
      hi = std::max(hi, e.eval.f[i]);
      lo = std::min(lo, e.eval.f[i]);
    }
    xi += hi != lo ? std::abs(hi - lo) : std::abs(hi);
  }
  return xi;
}

FrameCenterChoice OrderFrameCenters(const IncumbentEntry& feasible_center,
                                    const IncumbentEntry& infeasible_center,
                                    const IterateList& feasible, double rho) {
  const double psi = PsiValue(feasible, infeasible_center.eval.f);
  FrameCenterChoice choice;
  if (psi - rho * XiValue(feasible) > 0.0) {
    choice.primary = infeasible_center;
    choice.secondary = feasible_center;
    choice.primary_is_infeasible = true;
  } else {
    choice.primary = feasible_center;
    choice.secondary = infeasible_center;
  }
  return choice;
}

}  // namespace dmulti
