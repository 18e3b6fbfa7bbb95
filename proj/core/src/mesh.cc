#include "dmulti/mesh.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace dmulti {

MeshState MeshState::At(const Vector& anchor, double delta_frame,
                        const Vector& scale, double tau, double delta0) {
  MeshState mesh;
  mesh.delta_frame = delta_frame;
  mesh.delta_mesh = MeshSizeOf(delta_frame);
  mesh.tau = tau;
  mesh.delta0 = delta0;
  mesh.anchor = anchor;
  mesh.scale = scale;
  return mesh;
}

Vector MeshState::PointAlong(const Direction& d, double multiplier) const {
  Vector p = anchor;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double s = scale.empty() ? 1.0 : scale[i];
    p[i] += multiplier * delta_mesh * s * static_cast<double>(d[i]);
  }
  return p;
}

double MeshSizeOf(double delta_frame) {
  if (!(delta_frame > 0.0)) {
    throw ContractViolation("frame size must be positive");
  }
  return std::min(delta_frame, delta_frame * delta_frame);
}

namespace {

constexpr int kMaxAttempts = 64;

// Solves a * y = b in place by Gaussian elimination with partial pivoting.
// Returns false for a numerically singular matrix.
bool Solve(std::vector<Vector> a, Vector b, Vector& y) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-9) return false;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) a[r][k] -= factor * a[col][k];
      b[r] -= factor * b[col];
    }
  }
  y.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double sum = b[i];
    for (std::size_t k = i + 1; k < n; ++k) sum -= a[i][k] * y[k];
    y[i] = sum / a[i][i];
  }
  return true;
}

// Rounds ratio * v / ||v||_inf toward zero; a zero result is replaced by the
// sign of the largest entry.
Direction ScaleToFrame(const Vector& v, double ratio) {
  double vmax = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > vmax) {
      vmax = std::abs(v[i]);
      arg = i;
    }
  }
  Direction d(v.size(), 0);
  if (vmax == 0.0) return d;
  bool all_zero = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    d[i] = static_cast<std::int64_t>(std::trunc(ratio * v[i] / vmax));
    if (d[i] != 0) all_zero = false;
  }
  if (all_zero) d[arg] = v[arg] > 0 ? 1 : -1;
  return d;
}

// Checks that basis is nonsingular and that -extra = sum mu_j basis_j with
// every mu_j > 0, i.e. basis + {extra} positively spans.
bool PositivelySpans(const std::vector<Direction>& basis,
                     const Direction& extra) {
  const std::size_t n = extra.size();
  std::vector<Vector> a(n, Vector(n));
  Vector rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = static_cast<double>(basis[j][i]);
    }
    rhs[i] = -static_cast<double>(extra[i]);
  }
  Vector mu;
  if (!Solve(a, rhs, mu)) return false;
  return std::all_of(mu.begin(), mu.end(), [](double v) { return v > 1e-9; });
}

std::vector<Direction> HouseholderDirections(int n, double ratio,
                                             std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Vector v(n);
    double norm2 = 0.0;
    for (double& vi : v) {
      vi = normal(rng);
      norm2 += vi * vi;
    }
    if (norm2 == 0.0) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& vi : v) vi *= inv;

    std::vector<Direction> dirs;
    dirs.reserve(n + 1);
    for (int j = 0; j < n; ++j) {
      Vector column(n);
      for (int i = 0; i < n; ++i) {
        column[i] = (i == j ? 1.0 : 0.0) - 2.0 * v[i] * v[j];
      }
      dirs.push_back(ScaleToFrame(column, ratio));
    }
    Vector negative_sum(n, 0.0);
    for (const Direction& d : dirs) {
      for (int i = 0; i < n; ++i) negative_sum[i] -= static_cast<double>(d[i]);
    }
    double sum_max = 0.0;
    for (double s : negative_sum) sum_max = std::max(sum_max, std::abs(s));
    Direction closing = ScaleToFrame(negative_sum, std::min(ratio, sum_max));
    if (PositivelySpans(dirs, closing)) {
      dirs.push_back(std::move(closing));
      return dirs;
    }
  }
  // Coordinate fallback: signed scaled identity plus the negative sum.
  const auto k = std::max<std::int64_t>(1, static_cast<std::int64_t>(ratio));
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<Direction> dirs;
  Direction closing(n, 0);
  for (int j = 0; j < n; ++j) {
    Direction d(n, 0);
    d[j] = coin(rng) ? k : -k;
    closing[j] = -d[j];
    dirs.push_back(std::move(d));
  }
  dirs.push_back(std::move(closing));
  return dirs;
}

}  // namespace

PollDirectionSet GeneratePollDirections(int n, double delta_frame,
                                        double delta_mesh,
                                        std::uint64_t rng_seed,
                                        PollCount count) {
  if (n < 1) throw ContractViolation("poll directions need n >= 1");
  if (!(delta_mesh > 0.0) || delta_mesh > delta_frame) {
    throw ContractViolation("poll directions need 0 < delta <= Delta");
  }
  const double ratio = delta_frame / delta_mesh;
  std::mt19937_64 rng(rng_seed);
  std::vector<Direction> dirs = HouseholderDirections(n, ratio, rng);
  PollDirectionSet set;
  if (count == PollCount::kPrimary) {
    set.directions = std::move(dirs);
  } else {
    Direction negated = dirs.front();
    for (auto& di : negated) di = -di;
    set.directions = {dirs.front(), std::move(negated)};
  }
  return set;
}

bool OnMesh(std::span<const double> x, std::span<const double> anchor,
            double delta_mesh, std::span<const double> scale) {
  if (!(delta_mesh > 0.0)) throw ContractViolation("mesh size must be > 0");
  if (x.size() != anchor.size()) return false;
  double xmax = 1.0;
  for (double xi : x) xmax = std::max(xmax, std::abs(xi));
  const double tol = 1e-10 * xmax;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double step = delta_mesh * (scale.empty() ? 1.0 : scale[i]);
    const double diff = x[i] - anchor[i];
    const double z = std::round(diff / step);
    if (std::abs(diff - z * step) > tol) return false;
  }
  return true;
}

bool CoversDirections(const std::vector<Direction>& directions,
                      const std::vector<Vector>& probe) {
  for (const Vector& u : probe) {
    bool covered = false;
    for (const Direction& d : directions) {
      double dot = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * static_cast<double>(d[i]);
      }
      if (dot > 0.0) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

}  // namespace dmulti
