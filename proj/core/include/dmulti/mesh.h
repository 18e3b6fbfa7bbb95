// Frame and mesh size bookkeeping and poll direction generation.
//
// Frame size Delta and mesh size delta are scalars expressed in scaled
// units; coordinate i of a step is delta * scale[i] * d[i] for an integer
// direction d. The direction basis is fixed to D = [I -I], so any integer
// vector is a nonnegative integer combination of D's columns.

#ifndef DMULTI_MESH_H_
#define DMULTI_MESH_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dmulti/core.h"

namespace dmulti {

using Direction = std::vector<std::int64_t>;

struct MeshState {
  double delta_frame = 1.0;
  double delta_mesh = 1.0;
  double tau = 0.5;
  double delta0 = 1.0;
  Vector anchor;
  // Per-coordinate step multiplier; empty means all ones.
  Vector scale;

  static MeshState At(const Vector& anchor, double delta_frame,
                      const Vector& scale = {}, double tau = 0.5,
                      double delta0 = 1.0);
  // Point anchor + delta_mesh * scale (.) d.
  Vector PointAlong(const Direction& d, double multiplier = 1.0) const;
};

// min(Delta, Delta^2). Throws ContractViolation for Delta <= 0.
double MeshSizeOf(double delta_frame);

struct PollDirectionSet {
  std::vector<Direction> directions;
  std::size_t count() const { return directions.size(); }
};

enum class PollCount { kPrimary, kSecondary };

// Integer poll directions from a seeded Householder basis. kPrimary returns
// n+1 directions that positively span R^n; kSecondary returns {d, -d}.
// Every direction satisfies ||delta_mesh * d||_inf <= delta_frame.
PollDirectionSet GeneratePollDirections(int n, double delta_frame,
                                        double delta_mesh,
                                        std::uint64_t rng_seed,
                                        PollCount count);

// True iff (x - anchor) is an integer multiple of delta_mesh * scale in
// every coordinate, up to 1e-10 * max(1, ||x||_inf).
bool OnMesh(std::span<const double> x, std::span<const double> anchor,
            double delta_mesh, std::span<const double> scale = {});

// True iff every vector in `probe` has a positive inner product with some
// direction. Used to check positive spanning.
bool CoversDirections(const std::vector<Direction>& directions,
                      const std::vector<Vector>& probe);

}  // namespace dmulti

#endif  // DMULTI_MESH_H_
