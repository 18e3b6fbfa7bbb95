// Hypervolume, the normalizing transform T, the hypervolume convergence
// test and data/convergence profiles.

#ifndef DMULTI_INDICATORS_H_
#define DMULTI_INDICATORS_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "dmulti/core.h"
#include "dmulti/solver.h"

namespace dmulti {

struct FrontApprox {
  std::size_t m = 0;
  std::vector<Vector> points;

  // Nondominated subset of `objectives` (first duplicate kept).
  static FrontApprox Filtered(std::size_t m, const std::vector<Vector>& objectives);
  // Nondominated objective vectors of the feasible evaluations.
  static FrontApprox FromEvaluations(std::size_t m,
                                     std::span<const Evaluation> evals);
  bool empty() const { return points.empty(); }
};

struct ReferenceData {
  FrontApprox front;
  Vector ideal;
  Vector nadir;

  // Ideal and nadir are the componentwise min and max over the front.
  // Throws ConfigError for an empty front.
  static ReferenceData FromFront(FrontApprox front);
};

// Volume dominated by the points strictly below `ref` in every component.
// Supports m <= 4; throws ContractViolation above.
double Hypervolume(const std::vector<Vector>& points, std::span<const double> ref);

// (y - ideal) / (nadir - ideal) per component; a component with
// nadir == ideal is only translated.
Vector TransformT(std::span<const double> y, std::span<const double> ideal,
                  std::span<const double> nadir);

// HV(T(front), T(nadir)) / HV(T(ref.front), T(nadir)). Throws ConfigError
// when the reference hypervolume is zero.
double NormalizedHypervolume(const std::vector<Vector>& front,
                             const ReferenceData& ref);

bool ConvergenceTest(const std::vector<Vector>& front, const ReferenceData& ref,
                     double eps_tau);

// First evaluation count e such that the feasible front of the first e
// history records passes the convergence test, if any.
std::optional<std::size_t> SolvedAt(const std::vector<HistoryRecord>& history,
                                    const ReferenceData& ref,
                                    double eps_tau);

struct ProfileRecord {
  std::optional<std::size_t> solved_at;
  int n = 1;  // problem dimension
};

struct DataProfilePoint {
  std::size_t k = 0;
  double fraction = 0.0;
};

// Fraction of records solved within k * (n + 1) evaluations, k = 1..k_max.
std::vector<DataProfilePoint> DataProfile(const std::vector<ProfileRecord>& records,
                                          std::size_t k_max);

struct ConvergencePoint {
  std::size_t evals = 0;
  double normalized_hv = 0.0;
};

// Normalized HV of the feasible front of the first e evaluations, for e a
// multiple of stride and for the final evaluation. Values clipped to [0, 1].
std::vector<ConvergencePoint> ConvergenceProfile(
    const std::vector<HistoryRecord>& history, const ReferenceData& ref,
    std::size_t stride);

void WriteDataProfile(std::ostream& out, const std::vector<DataProfilePoint>& rows);
void WriteConvergenceProfile(std::ostream& out,
                             const std::vector<ConvergencePoint>& rows);
// Header f_1..f_m, one row per point.
void WriteFront(std::ostream& out, const FrontApprox& front);
FrontApprox ReadFrontFile(const std::string& path);

}  // namespace dmulti

#endif  // DMULTI_INDICATORS_H_
