// Domain types, constraint violation, dominance relations and nondominated
// filtering shared by every other module.

#ifndef DMULTI_CORE_H_
#define DMULTI_CORE_H_

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dmulti {

using Vector = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Raised for invalid user input: bad configuration, bad problem definition,
// unusable starting points. The CLI maps it to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an operation is called outside its documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ProblemSpec {
  int n = 1;
  int m = 1;
  int j_count = 0;
  Vector lower;
  Vector upper;

  // Builds a spec with unbounded box when lower/upper are empty.
  static ProblemSpec Make(int n, int m, int j_count, Vector lower = {},
                          Vector upper = {});

  // Throws ConfigError when an invariant fails.
  void Validate() const;
  bool InBounds(std::span<const double> x) const;
};

enum class EvalStatus { kOk, kHiddenFailure };

// One blackbox evaluation. Invariants:
//   h == 0 exactly when x is in bounds and every c_j <= 0;
//   kHiddenFailure implies h == +inf and every f_i == +inf.
struct Evaluation {
  Vector x;
  Vector f;
  Vector c;
  double h = kInf;
  EvalStatus status = EvalStatus::kOk;

  bool feasible() const { return h == 0.0; }
  // 0 < h < +inf.
  bool infeasible() const { return h > 0.0 && h < kInf; }
  bool hidden_failure() const { return status == EvalStatus::kHiddenFailure; }
};

struct IncumbentEntry {
  Evaluation eval;
  double delta_frame = 1.0;
};

// Sum of squared positive parts of c, or +inf off the bound box or when any
// c_j is +inf.
double ComputeH(std::span<const double> c, bool within_bounds);

// Assembles an Evaluation from raw blackbox outputs. NaN entries are coerced
// to +inf before h is computed.
Evaluation MakeEvaluation(const ProblemSpec& spec, Vector x, Vector f,
                          Vector c);

// A hidden-failure record for x: f = +inf, c = +inf, h = +inf.
Evaluation MakeHiddenFailure(const ProblemSpec& spec, Vector x);

// Componentwise a <= b with at least one strict inequality.
bool ParetoDominates(std::span<const double> a, std::span<const double> b);

// a <= b componentwise.
bool WeaklyDominates(std::span<const double> a, std::span<const double> b);

// Both feasible; Pareto dominance on f. Throws ContractViolation otherwise.
bool DominatesFeasible(const Evaluation& a, const Evaluation& b);

// Both with 0 < h < +inf; f(a) <= f(b) and h(a) <= h(b), one strict.
// Throws ContractViolation otherwise.
bool DominatesInfeasible(const Evaluation& a, const Evaluation& b);

enum class Relation { kFeasible, kInfeasible };

// Maximal mutually nondominated subset, output in insertion order. Among
// points with identical objective values (and identical h for kInfeasible)
// only the first inserted survives.
std::vector<Evaluation> ParetoFilter(const std::vector<Evaluation>& points,
                                     Relation relation);

// Same filter over arbitrary items. `dominates(a, b)` must be a strict
// partial order and `same(a, b)` the equivalence on compared values.
// Returns kept indices in increasing order.
std::vector<std::size_t> ParetoFilterIndices(
    std::size_t count,
    const std::function<bool(std::size_t, std::size_t)>& dominates,
    const std::function<bool(std::size_t, std::size_t)>& same);

// Inserts `item` into a mutually nondominated `list`, keeping it mutually
// nondominated. Returns false (list untouched) when an existing entry
// dominates or equals the item. Equivalent to re-filtering list + item.
template <typename T, typename Dominates, typename Same>
bool InsertNondominated(std::vector<T>& list, T item, Dominates dominates,
                        Same same) {
  for (const T& existing : list) {
    if (same(existing, item) || dominates(existing, item)) return false;
  }
  std::erase_if(list, [&](const T& existing) {
    return dominates(item, existing);
  });
  list.push_back(std::move(item));
  return true;
}

// Value equality used by the filters.
bool SameObjectives(const Evaluation& a, const Evaluation& b);
bool SameObjectivesAndH(const Evaluation& a, const Evaluation& b);

// Dominance predicates for the two relations without precondition checks;
// used by list maintenance where the preconditions hold by construction.
bool FeasibleOrder(const Evaluation& a, const Evaluation& b);
bool InfeasibleOrder(const Evaluation& a, const Evaluation& b);

std::string ToString(const Vector& v);

}  // namespace dmulti

#endif  // DMULTI_CORE_H_
