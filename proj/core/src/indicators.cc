#include "dmulti/indicators.h"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <numeric>
#include <ostream>

#include "dmulti/csv.h"

namespace dmulti {

FrontApprox FrontApprox::Filtered(std::size_t m,
                                  const std::vector<Vector>& objectives) {
  std::vector<std::size_t> order(objectives.size());
  std::iota(order.begin(), order.end(), 0);
  // A dominator sorts lexicographically before what it dominates, and the
  // stable sort keeps the first of equal vectors in front.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return objectives[a] < objectives[b];
  });
  std::vector<std::size_t> kept;
  double lowest_second = kInf;
  for (std::size_t idx : order) {
    const Vector& y = objectives[idx];
    if (m == 2) {
      // Every earlier point has a smaller or equal first objective.
      if (y[1] < lowest_second) {
        lowest_second = y[1];
        kept.push_back(idx);
      }
      continue;
    }
    bool dominated = false;
    for (std::size_t k : kept) {
      if (WeaklyDominates(objectives[k], y)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(idx);
  }
  std::sort(kept.begin(), kept.end());
  FrontApprox front;
  front.m = m;
  for (std::size_t k : kept) front.points.push_back(objectives[k]);
  return front;
}

FrontApprox FrontApprox::FromEvaluations(std::size_t m,
                                         std::span<const Evaluation> evals) {
  std::vector<Vector> objectives;
  for (const Evaluation& e : evals) {
    if (e.feasible()) objectives.push_back(e.f);
  }
  return Filtered(m, objectives);
}

ReferenceData ReferenceData::FromFront(FrontApprox front) {
  if (front.empty()) throw ConfigError("reference front is empty");
  ReferenceData ref;
  ref.ideal.assign(front.m, kInf);
  ref.nadir.assign(front.m, -kInf);
  for (const Vector& y : front.points) {
    for (std::size_t i = 0; i < front.m; ++i) {
      ref.ideal[i] = std::min(ref.ideal[i], y[i]);
      ref.nadir[i] = std::max(ref.nadir[i], y[i]);
    }
  }
  ref.front = std::move(front);
  return ref;
}

namespace {

double Hv2(std::vector<Vector> pts, double rx, double ry) {
  std::sort(pts.begin(), pts.end());
  double volume = 0.0;
  double ceiling = ry;
  for (const Vector& p : pts) {
    if (p[1] >= ceiling) continue;
    volume += (rx - p[0]) * (ceiling - p[1]);
    ceiling = p[1];
  }
  return volume;
}

// Two-dimensional nondominated staircase with its dominated area, updated
// point by point.
class Staircase {
 public:
  Staircase(double rx, double ry) : rx_(rx), ry_(ry) {}

  void Insert(double px, double py) {
    // Predecessor: largest x <= px.
    auto next = steps_.upper_bound(px);
    double bound = ry_;
    if (next != steps_.begin()) {
      bound = std::prev(next)->second;
      if (bound <= py) return;
    }
    double x = px;
    while (next != steps_.end() && next->second >= py) {
      area_ += (next->first - x) * (bound - py);
      x = next->first;
      bound = next->second;
      next = steps_.erase(next);
    }
    const double stop = next == steps_.end() ? rx_ : next->first;
    area_ += (stop - x) * (bound - py);
    steps_[px] = py;
  }

  double area() const { return area_; }

 private:
  double rx_;
  double ry_;
  double area_ = 0.0;
  std::map<double, double> steps_;
};

double Hv3(std::vector<Vector> pts, std::span<const double> ref) {
  std::sort(pts.begin(), pts.end(),
            [](const Vector& a, const Vector& b) { return a[2] < b[2]; });
  Staircase stairs(ref[0], ref[1]);
  double volume = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    stairs.Insert(pts[i][0], pts[i][1]);
    const double top = i + 1 < pts.size() ? pts[i + 1][2] : ref[2];
    volume += stairs.area() * (top - pts[i][2]);
  }
  return volume;
}

double Hv4(std::vector<Vector> pts, std::span<const double> ref) {
  std::sort(pts.begin(), pts.end(),
            [](const Vector& a, const Vector& b) { return a[3] < b[3]; });
  double volume = 0.0;
  std::vector<Vector> prefix;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    prefix.push_back({pts[i][0], pts[i][1], pts[i][2]});
    const double top = i + 1 < pts.size() ? pts[i + 1][3] : ref[3];
    if (top > pts[i][3]) volume += Hv3(prefix, ref) * (top - pts[i][3]);
  }
  return volume;
}

}  // namespace

double Hypervolume(const std::vector<Vector>& points,
                   std::span<const double> ref) {
  const std::size_t m = ref.size();
  if (m < 1 || m > 4) {
    throw ContractViolation("hypervolume supports 1 to 4 objectives");
  }
  std::vector<Vector> kept;
  for (const Vector& y : points) {
    if (y.size() != m) throw ContractViolation("hypervolume: dimension mismatch");
    bool below = true;
    for (std::size_t i = 0; i < m; ++i) below = below && y[i] < ref[i];
    if (below) kept.push_back(y);
  }
  if (kept.empty()) return 0.0;
  switch (m) {
    case 1: {
      double lo = kInf;
      for (const Vector& y : kept) lo = std::min(lo, y[0]);
      return ref[0] - lo;
    }
    case 2:
      return Hv2(std::move(kept), ref[0], ref[1]);
    case 3:
      return Hv3(std::move(kept), ref);
    default:
      return Hv4(std::move(kept), ref);
  }
}

Vector TransformT(std::span<const double> y, std::span<const double> ideal,
                  std::span<const double> nadir) {
  Vector out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double width = nadir[i] - ideal[i];
    out[i] = width != 0.0 ? (y[i] - ideal[i]) / width : y[i] - ideal[i];
  }
  return out;
}

namespace {

double TransformedHv(const std::vector<Vector>& front, const ReferenceData& ref) {
  std::vector<Vector> mapped;
  mapped.reserve(front.size());
  for (const Vector& y : front) {
    mapped.push_back(TransformT(y, ref.ideal, ref.nadir));
  }
  return Hypervolume(mapped, TransformT(ref.nadir, ref.ideal, ref.nadir));
}

}  // namespace

double NormalizedHypervolume(const std::vector<Vector>& front,
                             const ReferenceData& ref) {
  const double denom = TransformedHv(ref.front.points, ref);
  if (!(denom > 0.0)) {
    throw ConfigError("reference front has zero hypervolume");
  }
  return TransformedHv(front, ref) / denom;
}

bool ConvergenceTest(const std::vector<Vector>& front, const ReferenceData& ref,
                     double eps_tau) {
  return NormalizedHypervolume(front, ref) >= 1.0 - eps_tau;
}

namespace {

std::vector<Vector> PrefixFront(const std::vector<HistoryRecord>& history,
                                std::size_t count) {
  std::vector<Vector> front;
  for (std::size_t i = 0; i < count; ++i) {
    const Evaluation& e = history[i].eval;
    if (!e.feasible()) continue;
    InsertNondominated(front, e.f, ParetoDominates,
                       [](const Vector& a, const Vector& b) { return a == b; });
  }
  return front;
}

}  // namespace

std::optional<std::size_t> SolvedAt(const std::vector<HistoryRecord>& history,
                                    const ReferenceData& ref,
                                    double eps_tau) {
  auto passes = [&](std::size_t count) {
    return ConvergenceTest(PrefixFront(history, count), ref, eps_tau);
  };
  if (history.empty() || !passes(history.size())) return std::nullopt;
  // Prefix hypervolume never decreases, so the test is monotone in e.
  std::size_t lo = 1;
  std::size_t hi = history.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (passes(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::vector<DataProfilePoint> DataProfile(const std::vector<ProfileRecord>& records,
                                          std::size_t k_max) {
  std::vector<DataProfilePoint> rows;
  for (std::size_t k = 1; k <= k_max; ++k) {
    std::size_t solved = 0;
    for (const ProfileRecord& r : records) {
      const std::size_t group = static_cast<std::size_t>(r.n) + 1;
      if (r.solved_at && *r.solved_at <= k * group) ++solved;
    }
    const double fraction =
        records.empty() ? 0.0
                        : static_cast<double>(solved) /
                              static_cast<double>(records.size());
    rows.push_back({k, fraction});
  }
  return rows;
}

std::vector<ConvergencePoint> ConvergenceProfile(
    const std::vector<HistoryRecord>& history, const ReferenceData& ref,
    std::size_t stride) {
  if (stride < 1) throw ContractViolation("stride must be >= 1");
  std::vector<ConvergencePoint> rows;
  std::vector<Vector> front;
  bool changed = true;
  double value = 0.0;
  for (std::size_t i = 0; i < history.size(); ++i) {
    const Evaluation& e = history[i].eval;
    if (e.feasible()) {
      changed |= InsertNondominated(
          front, e.f, ParetoDominates,
          [](const Vector& a, const Vector& b) { return a == b; });
    }
    const std::size_t count = i + 1;
    if (count % stride != 0 && count != history.size()) continue;
    if (changed) {
      value = std::clamp(NormalizedHypervolume(front, ref), 0.0, 1.0);
      changed = false;
    }
    rows.push_back({count, value});
  }
  return rows;
}

void WriteDataProfile(std::ostream& out,
                      const std::vector<DataProfilePoint>& rows) {
  out << "k,fraction\n";
  for (const DataProfilePoint& r : rows) {
    out << r.k << ',' << FormatNumber(r.fraction) << '\n';
  }
}

void WriteConvergenceProfile(std::ostream& out,
                             const std::vector<ConvergencePoint>& rows) {
  out << "evals,normalized_hv\n";
  for (const ConvergencePoint& r : rows) {
    out << r.evals << ',' << FormatNumber(r.normalized_hv) << '\n';
  }
}

void WriteFront(std::ostream& out, const FrontApprox& front) {
  WriteCsv(out, NumberedColumns("f", front.m), front.points);
}

FrontApprox ReadFrontFile(const std::string& path) {
  std::vector<std::string> header;
  FrontApprox front;
  front.points = ReadCsvFile(path, &header);
  front.m = header.size();
  return front;
}

}  // namespace dmulti
