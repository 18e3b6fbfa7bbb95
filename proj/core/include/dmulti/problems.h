// Builtin analytic test problems and their reference fronts.

#ifndef DMULTI_PROBLEMS_H_
#define DMULTI_PROBLEMS_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dmulti/blackbox.h"
#include "dmulti/core.h"
#include "dmulti/indicators.h"

namespace dmulti {

struct BuiltinProblem {
  std::string name;
  ProblemSpec spec;
  FunctionBlackbox::Fn evaluator;
  Vector feasible_start;
  Vector infeasible_start;
};

// bnh, srn, tnk, osy, constr, c2dtlz2 in that order.
const std::vector<BuiltinProblem>& BuiltinProblems();
std::vector<std::string> ProblemNames();
// Throws ConfigError listing the registry when the name is unknown.
const BuiltinProblem& FindProblem(const std::string& name);

// Throws ContractViolation when x is outside the bounds.
void EvaluateBuiltin(const BuiltinProblem& problem, std::span<const double> x,
                     Vector& f, Vector& c);

std::unique_ptr<Blackbox> MakeBlackbox(const BuiltinProblem& problem);

struct ReferenceFrontOptions {
  std::size_t grid_per_dim = 1000;  // used when n <= 3
  std::size_t samples = 1000000;    // uniform samples otherwise
  std::uint64_t seed = 0;
};

// Feasible nondominated objective vectors over a grid or a seeded uniform
// sample of the box. Throws ConfigError when no sampled point is feasible.
FrontApprox ReferenceFront(const ProblemSpec& spec,
                           const FunctionBlackbox::Fn& evaluator,
                           const ReferenceFrontOptions& options = {});

// Path of the committed fixture for a builtin problem.
std::string FixturePath(const std::string& fronts_dir, const std::string& name);

}  // namespace dmulti

#endif  // DMULTI_PROBLEMS_H_
