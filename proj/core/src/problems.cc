#include "dmulti/problems.h"

#include <cmath>
#include <numbers>
#include <random>

namespace dmulti {

namespace {

using std::numbers::pi;

void Bnh(std::span<const double> x, Vector& f, Vector& c) {
  f = {4 * x[0] * x[0] + 4 * x[1] * x[1],
       (x[0] - 5) * (x[0] - 5) + (x[1] - 5) * (x[1] - 5)};
  c = {(x[0] - 5) * (x[0] - 5) + x[1] * x[1] - 25,
       7.7 - (x[0] - 8) * (x[0] - 8) - (x[1] + 3) * (x[1] + 3)};
}

void Srn(std::span<const double> x, Vector& f, Vector& c) {
  f = {2 + (x[0] - 2) * (x[0] - 2) + (x[1] - 1) * (x[1] - 1),
       9 * x[0] - (x[1] - 1) * (x[1] - 1)};
  c = {x[0] * x[0] + x[1] * x[1] - 225, x[0] - 3 * x[1] + 10};
}

void Tnk(std::span<const double> x, Vector& f, Vector& c) {
  f = {x[0], x[1]};
  c = {-x[0] * x[0] - x[1] * x[1] + 1 +
           0.1 * std::cos(16 * std::atan2(x[0], x[1])),
       (x[0] - 0.5) * (x[0] - 0.5) + (x[1] - 0.5) * (x[1] - 0.5) - 0.5};
}

double Sq(double v) { return v * v; }

void Osy(std::span<const double> x, Vector& f, Vector& c) {
  f = {-(25 * Sq(x[0] - 2) + Sq(x[1] - 2) + Sq(x[2] - 1) + Sq(x[3] - 4) +
         Sq(x[4] - 1)),
       0.0};
  for (double xi : x) f[1] += xi * xi;
  // Stated as g >= 0 in the literature; stored as c = -g.
  c = {-(x[0] + x[1] - 2),
       -(6 - x[0] - x[1]),
       -(2 - x[1] + x[0]),
       -(2 - x[0] + 3 * x[1]),
       -(4 - Sq(x[2] - 3) - x[3]),
       -(Sq(x[4] - 3) + x[5] - 4)};
}

void Constr(std::span<const double> x, Vector& f, Vector& c) {
  f = {x[0], (1 + x[1]) / x[0]};
  c = {6 - x[1] - 9 * x[0], 1 + x[1] - 9 * x[0]};
}

void C2Dtlz2(std::span<const double> x, Vector& f, Vector& c) {
  constexpr double r = 0.4;
  double g = 0.0;
  for (std::size_t i = 2; i < x.size(); ++i) g += Sq(x[i] - 0.5);
  const double a = x[0] * pi / 2;
  const double b = x[1] * pi / 2;
  f = {(1 + g) * std::cos(a) * std::cos(b), (1 + g) * std::cos(a) * std::sin(b),
       (1 + g) * std::sin(a)};
  double near_corner = kInf;
  for (std::size_t i = 0; i < 3; ++i) {
    double v = Sq(f[i] - 1) - r * r;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j != i) v += f[j] * f[j];
    }
    near_corner = std::min(near_corner, v);
  }
  double near_center = -r * r;
  for (double fi : f) near_center += Sq(fi - 1 / std::sqrt(3.0));
  c = {std::min(near_corner, near_center)};
}

std::vector<BuiltinProblem> MakeRegistry() {
  std::vector<BuiltinProblem> r;
  r.push_back({"bnh", ProblemSpec::Make(2, 2, 2, {0, 0}, {5, 3}), Bnh,
               {2.5, 1.5}, {0, 3}});
  r.push_back({"srn", ProblemSpec::Make(2, 2, 2, {-20, -20}, {20, 20}), Srn,
               {0, 5}, {0, 0}});
  r.push_back({"tnk", ProblemSpec::Make(2, 2, 2, {0, 0}, {pi, pi}), Tnk,
               {0.9, 0.9}, {0.5, 0.5}});
  r.push_back({"osy",
               ProblemSpec::Make(6, 2, 6, {0, 0, 1, 0, 1, 0},
                                 {10, 10, 5, 6, 5, 10}),
               Osy,
               {3, 1.5, 3, 1, 1, 5},
               {5, 5, 3, 3, 3, 5}});
  r.push_back({"constr", ProblemSpec::Make(2, 2, 2, {0.1, 0}, {1, 5}), Constr,
               {0.8, 2}, {0.2, 4}});
  r.push_back({"c2dtlz2", ProblemSpec::Make(7, 3, 1, Vector(7, 0.0), Vector(7, 1.0)),
               C2Dtlz2,
               {0, 0, 0.5, 0.5, 0.5, 0.5, 0.5},
               {0.25, 0.25, 0.8, 0.8, 0.8, 0.8, 0.8}});
  return r;
}

}  // namespace

const std::vector<BuiltinProblem>& BuiltinProblems() {
  static const std::vector<BuiltinProblem> registry = MakeRegistry();
  return registry;
}

std::vector<std::string> ProblemNames() {
  std::vector<std::string> names;
  for (const BuiltinProblem& p : BuiltinProblems()) names.push_back(p.name);
  return names;
}

const BuiltinProblem& FindProblem(const std::string& name) {
  for (const BuiltinProblem& p : BuiltinProblems()) {
    if (p.name == name) return p;
  }
  std::string known;
  for (const std::string& n : ProblemNames()) known += (known.empty() ? "" : ", ") + n;
  throw ConfigError("unknown problem '" + name + "'; builtin problems: " + known);
}

void EvaluateBuiltin(const BuiltinProblem& problem, std::span<const double> x,
                     Vector& f, Vector& c) {
  if (!problem.spec.InBounds(x)) {
    throw ContractViolation("point outside the bounds of " + problem.name);
  }
  problem.evaluator(x, f, c);
}

std::unique_ptr<Blackbox> MakeBlackbox(const BuiltinProblem& problem) {
  return std::make_unique<FunctionBlackbox>(problem.spec, problem.evaluator);
}

FrontApprox ReferenceFront(const ProblemSpec& spec,
                           const FunctionBlackbox::Fn& evaluator,
                           const ReferenceFrontOptions& options) {
  const std::size_t n = static_cast<std::size_t>(spec.n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(spec.lower[i]) || !std::isfinite(spec.upper[i])) {
      throw ConfigError("reference front needs finite bounds");
    }
  }
  std::vector<Vector> feasible;
  Vector x(n);
  Vector f;
  Vector c;
  auto visit = [&]() {
    evaluator(x, f, c);
    const Evaluation e = MakeEvaluation(spec, x, f, c);
    if (e.feasible()) feasible.push_back(e.f);
  };
  if (n <= 3) {
    const std::size_t g = std::max<std::size_t>(options.grid_per_dim, 2);
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(idx[i]) / static_cast<double>(g - 1);
        x[i] = idx[i] + 1 == g ? spec.upper[i]
                               : spec.lower[i] + t * (spec.upper[i] - spec.lower[i]);
      }
      visit();
      std::size_t d = 0;
      while (d < n && ++idx[d] == g) idx[d++] = 0;
      if (d == n) break;
    }
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t s = 0; s < options.samples; ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = spec.lower[i] + unit(rng) * (spec.upper[i] - spec.lower[i]);
      }
      visit();
    }
  }
  if (feasible.empty()) throw ConfigError("no feasible point was sampled");
  return FrontApprox::Filtered(static_cast<std::size_t>(spec.m), feasible);
}

std::string FixturePath(const std::string& fronts_dir, const std::string& name) {
  return fronts_dir + "/" + name + ".csv";
}

}  // namespace dmulti
