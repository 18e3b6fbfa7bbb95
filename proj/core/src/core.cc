#include "dmulti/core.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dmulti {

ProblemSpec ProblemSpec::Make(int n, int m, int j_count, Vector lower,
                              Vector upper) {
  ProblemSpec spec;
  spec.n = n;
  spec.m = m;
  spec.j_count = j_count;
  spec.lower = lower.empty() ? Vector(std::max(n, 0), -kInf) : std::move(lower);
  spec.upper = upper.empty() ? Vector(std::max(n, 0), kInf) : std::move(upper);
  spec.Validate();
  return spec;
}

void ProblemSpec::Validate() const {
  if (n < 1) throw ConfigError("problem dimension n must be >= 1");
  if (m < 1) throw ConfigError("number of objectives m must be >= 1");
  if (j_count < 0) throw ConfigError("constraint count must be >= 0");
  if (lower.size() != static_cast<std::size_t>(n) ||
      upper.size() != static_cast<std::size_t>(n)) {
    throw ConfigError("bound vectors must have length n");
  }
  for (int i = 0; i < n; ++i) {
    if (std::isnan(lower[i]) || std::isnan(upper[i]) || lower[i] > upper[i]) {
      throw ConfigError("invalid bounds at coordinate " + std::to_string(i));
    }
  }
}

bool ProblemSpec::InBounds(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(n)) return false;
  for (int i = 0; i < n; ++i) {
    if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
  }
  return true;
}

double ComputeH(std::span<const double> c, bool within_bounds) {
  if (!within_bounds) return kInf;
  double h = 0.0;
  for (double cj : c) {
    if (cj == kInf || std::isnan(cj)) return kInf;
    if (cj > 0.0) h += cj * cj;
  }
  return h;
}

namespace {

void CoerceNaN(Vector& v) {
  for (double& value : v) {
    if (std::isnan(value)) value = kInf;
  }
}

}  // namespace

Evaluation MakeEvaluation(const ProblemSpec& spec, Vector x, Vector f,
                          Vector c) {
  if (f.size() != static_cast<std::size_t>(spec.m) ||
      c.size() != static_cast<std::size_t>(spec.j_count)) {
    return MakeHiddenFailure(spec, std::move(x));
  }
  Evaluation e;
  CoerceNaN(f);
  CoerceNaN(c);
  e.h = ComputeH(c, spec.InBounds(x));
  e.x = std::move(x);
  e.f = std::move(f);
  e.c = std::move(c);
  e.status = EvalStatus::kOk;
  return e;
}

Evaluation MakeHiddenFailure(const ProblemSpec& spec, Vector x) {
  Evaluation e;
  e.x = std::move(x);
  e.f.assign(spec.m, kInf);
  e.c.assign(spec.j_count, kInf);
  e.h = kInf;
  e.status = EvalStatus::kHiddenFailure;
  return e;
}

bool WeaklyDominates(std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] <= b[i])) return false;
  }
  return true;
}

bool ParetoDominates(std::span<const double> a, std::span<const double> b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] <= b[i])) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

bool FeasibleOrder(const Evaluation& a, const Evaluation& b) {
  return ParetoDominates(a.f, b.f);
}

bool InfeasibleOrder(const Evaluation& a, const Evaluation& b) {
  if (!(a.h <= b.h)) return false;
  if (!WeaklyDominates(a.f, b.f)) return false;
  return a.h < b.h || ParetoDominates(a.f, b.f);
}

bool DominatesFeasible(const Evaluation& a, const Evaluation& b) {
  if (!a.feasible() || !b.feasible()) {
    throw ContractViolation("DominatesFeasible requires two feasible points");
  }
  return FeasibleOrder(a, b);
}

bool DominatesInfeasible(const Evaluation& a, const Evaluation& b) {
  if (!a.infeasible() || !b.infeasible()) {
    throw ContractViolation(
        "DominatesInfeasible requires two points with 0 < h < inf");
  }
  return InfeasibleOrder(a, b);
}

bool SameObjectives(const Evaluation& a, const Evaluation& b) {
  return a.f == b.f;
}

bool SameObjectivesAndH(const Evaluation& a, const Evaluation& b) {
  return a.f == b.f && a.h == b.h;
}

std::vector<std::size_t> ParetoFilterIndices(
    std::size_t count,
    const std::function<bool(std::size_t, std::size_t)>& dominates,
    const std::function<bool(std::size_t, std::size_t)>& same) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < count; ++i) {
    bool discard = false;
    for (std::size_t j = 0; j < count && !discard; ++j) {
      if (j == i) continue;
      if (dominates(j, i)) discard = true;
      if (j < i && same(j, i)) discard = true;
    }
    if (!discard) kept.push_back(i);
  }
  return kept;
}

std::vector<Evaluation> ParetoFilter(const std::vector<Evaluation>& points,
                                     Relation relation) {
  const bool infeasible = relation == Relation::kInfeasible;
  auto dominates = [&](std::size_t a, std::size_t b) {
    return infeasible ? InfeasibleOrder(points[a], points[b])
                      : FeasibleOrder(points[a], points[b]);
  };
  auto same = [&](std::size_t a, std::size_t b) {
    return infeasible ? SameObjectivesAndH(points[a], points[b])
                      : SameObjectives(points[a], points[b]);
  };
  std::vector<Evaluation> out;
  for (std::size_t i : ParetoFilterIndices(points.size(), dominates, same)) {
    out.push_back(points[i]);
  }
  return out;
}

std::string ToString(const Vector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << ')';
  return os.str();
}

}  // namespace dmulti
