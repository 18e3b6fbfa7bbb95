#include "dmulti/solver.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "dmulti/cache.h"
#include "dmulti/selection.h"

namespace dmulti {

const char* ToString(Variant variant) {
  switch (variant) {
    case Variant::kEb:
      return "eb";
    case Variant::kTeb:
      return "teb";
    case Variant::kPb:
      return "pb";
    case Variant::kPenalty:
      return "penalty";
  }
  return "unknown";
}

Variant ParseVariant(const std::string& name) {
  std::string lower;
  for (char ch : name) lower.push_back(static_cast<char>(std::tolower(ch)));
  if (lower == "eb") return Variant::kEb;
  if (lower == "teb") return Variant::kTeb;
  if (lower == "pb") return Variant::kPb;
  if (lower == "penalty") return Variant::kPenalty;
  throw ConfigError("unknown variant '" + name +
                    "' (expected eb, teb, pb or penalty)");
}

const char* ToString(StopReason reason) {
  return reason == StopReason::kBudget ? "budget" : "mesh_tol";
}

const char* ToString(HistoryKind kind) {
  switch (kind) {
    case HistoryKind::kStart:
      return "start";
    case HistoryKind::kDominating:
      return "dominating";
    case HistoryKind::kImproving:
      return "improving";
    case HistoryKind::kUnsuccessful:
      return "unsuccessful";
  }
  return "unknown";
}

void SolverConfig::Validate() const {
  if (budget < 1) throw ConfigError("budget must be >= 1");
  if (!(tau > 0.0 && tau < 1.0)) throw ConfigError("tau must lie in (0, 1)");
  if (w_plus < 0) throw ConfigError("w_plus must be >= 0");
  if (!(rho > 0.0)) throw ConfigError("rho must be > 0");
  if (!(delta0 > 0.0) || !std::isfinite(delta0)) {
    throw ConfigError("delta0 must be a positive finite number");
  }
  if (!(mesh_tol > 0.0)) throw ConfigError("mesh_tol must be > 0");
  if (!(eps_penalty > 0.0)) throw ConfigError("eps_penalty must be > 0");
}

Vector StepScale(const ProblemSpec& spec) {
  Vector scale(spec.n, 1.0);
  for (int i = 0; i < spec.n; ++i) {
    const double width = spec.upper[i] - spec.lower[i];
    if (std::isfinite(width) && width > 0.0) scale[i] = width / 10.0;
  }
  return scale;
}

Vector PenaltyObjectives(std::span<const double> f, std::span<const double> c,
                         double eps) {
  double violation = 0.0;
  for (double cj : c) violation += std::max(0.0, cj);
  Vector z(f.begin(), f.end());
  for (double& zi : z) zi += violation / eps;
  return z;
}

Vector SpeculativeSearch(const Evaluation& last_success,
                         const Direction& direction, const MeshState& mesh) {
  MeshState from = mesh;
  from.anchor = last_success.x;
  return from.PointAlong(direction, 2.0);
}

namespace {

std::uint64_t Mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t PollSeed(std::uint64_t seed, std::size_t iteration, int role) {
  return Mix(Mix(Mix(seed) ^ iteration) ^ static_cast<std::uint64_t>(role));
}

// How raw blackbox outputs are presented to the algorithm.
struct View {
  enum class Mode { kProgressive, kExtreme, kViolation };
  Mode mode = Mode::kProgressive;
  bool penalty = false;
  double eps = 1e-3;

  // Objectives/violation after the optional penalty transform.
  Evaluation Base(const Evaluation& raw) const {
    if (!penalty) return raw;
    Evaluation e;
    e.x = raw.x;
    e.status = raw.status;
    if (raw.hidden_failure()) {
      e.f.assign(raw.f.size(), kInf);
      e.h = kInf;
    } else {
      e.f = PenaltyObjectives(raw.f, raw.c, eps);
      e.h = 0.0;
    }
    return e;
  }

  Evaluation Apply(const Evaluation& raw) const {
    Evaluation e = Base(raw);
    if (mode == Mode::kViolation) {
      const double h = e.h;
      e.f = {h};
      e.c.clear();
      e.h = h < kInf ? 0.0 : kInf;
    }
    return e;
  }

  // Whether the algorithm-facing evaluation may enter an iterate list.
  bool Admits(const Evaluation& e) const {
    if (e.feasible()) return true;
    return mode == Mode::kProgressive && e.infeasible();
  }
};

struct SuccessStep {
  Direction direction;
  MeshState mesh;
};

// State shared by the phases of one run: evaluation budget, cache, history.
struct RunContext {
  RunContext(Blackbox& bb, const SolverConfig& cfg)
      : blackbox(bb), config(cfg), spec(bb.spec()), scale(StepScale(spec)) {}

  Blackbox& blackbox;
  const SolverConfig& config;
  const ProblemSpec& spec;
  Vector scale;
  Cache cache;
  std::vector<HistoryRecord> history;
  std::size_t iteration = 0;

  bool BudgetLeft() const { return history.size() < config.budget; }

  // Raw evaluation of a new in-bounds point, or nullopt when the point is
  // out of bounds, already evaluated, or the budget is spent.
  std::optional<Evaluation> Evaluate(const Vector& x, HistoryKind kind) {
    if (!spec.InBounds(x) || cache.Contains(x) || !BudgetLeft()) {
      return std::nullopt;
    }
    Evaluation raw = blackbox.Evaluate(x);
    raw.x = x;
    if (raw.hidden_failure()) raw = MakeHiddenFailure(spec, x);
    HistoryRecord record;
    record.eval_index = history.size() + 1;
    record.iteration = iteration;
    record.kind = kind;
    record.eval = raw;
    cache.Insert(raw);
    history.push_back(std::move(record));
    return raw;
  }
};

class Engine {
 public:
  Engine(RunContext& ctx, View view, const IterationObserver& observer)
      : ctx_(ctx), view_(view), observer_(observer) {}

  void Seed(const std::vector<IncumbentEntry>& entries) {
    std::vector<IncumbentEntry> admitted;
    for (const IncumbentEntry& e : entries) {
      assigned_delta_[e.eval.x] = e.delta_frame;
      if (view_.Admits(e.eval)) admitted.push_back(e);
    }
    state_ = RefreshLists(std::move(state_), admitted);
  }

  // Runs iterations until the budget or mesh tolerance stops the run, or
  // `done` returns true after an iteration.
  std::optional<StopReason> Loop(const std::function<bool()>& done) {
    while (true) {
      if (!ctx_.BudgetLeft()) return StopReason::kBudget;
      if (!Iterate()) return StopReason::kMeshTol;
      if (done && done()) return std::nullopt;
    }
  }

  const BarrierState& state() const { return state_; }
  const std::vector<double>& h_max_trace() const { return h_max_trace_; }
  double AssignedDelta(const Vector& x, double fallback) const {
    auto it = assigned_delta_.find(x);
    return it == assigned_delta_.end() ? fallback : it->second;
  }
  const View& view() const { return view_; }

 private:
  struct Center {
    IncumbentEntry entry;
    MeshState mesh;
  };

  bool DominatesCenter(const Evaluation& t,
                       const std::optional<IncumbentEntry>& fc,
                       const std::optional<IncumbentEntry>& ic) const {
    if (t.feasible() && fc && FeasibleOrder(t, fc->eval)) return true;
    if (t.infeasible() && ic && InfeasibleOrder(t, ic->eval)) return true;
    return false;
  }

  bool MeshConverged(const Center& c) const {
    const double smallest =
        *std::min_element(ctx_.scale.begin(), ctx_.scale.end());
    return c.mesh.delta_mesh * smallest < ctx_.config.mesh_tol;
  }

  void Shrink(const Vector& x, double tau) {
    if (auto idx = state_.feasible.Find(x)) {
      state_.feasible.entries[*idx].delta_frame *= tau;
    }
    for (IncumbentEntry& e : state_.archive) {
      if (e.eval.x == x) e.delta_frame *= tau;
    }
    if (auto idx = state_.infeasible.Find(x)) {
      state_.infeasible.entries[*idx].delta_frame *= tau;
    }
  }

  // Returns false when every active frame center is below mesh tolerance.
  bool Iterate() {
    const SolverConfig& cfg = ctx_.config;
    const std::size_t it = ++ctx_.iteration;

    std::optional<IncumbentEntry> fc;
    std::optional<IncumbentEntry> ic;
    if (!state_.feasible.empty()) {
      fc = SelectFeasibleCenter(state_.feasible, cfg.tau, cfg.w_plus);
    }
    if (view_.mode == View::Mode::kProgressive && !state_.infeasible.empty()) {
      ic = fc ? SelectInfeasibleCenterWithFeasible(state_.infeasible,
                                                   state_.feasible)
              : SelectInfeasibleCenterNoFeasible(state_.infeasible);
    }
    std::vector<Center> centers;
    bool primary_is_infeasible = false;
    auto make_center = [&](const IncumbentEntry& e) {
      return Center{e, MeshState::At(e.eval.x, e.delta_frame, ctx_.scale,
                                     cfg.tau, cfg.delta0)};
    };
    if (fc && ic) {
      FrameCenterChoice choice =
          OrderFrameCenters(*fc, *ic, state_.feasible, cfg.rho);
      primary_is_infeasible = choice.primary_is_infeasible;
      centers.push_back(make_center(choice.primary));
      centers.push_back(make_center(*choice.secondary));
    } else if (fc) {
      centers.push_back(make_center(*fc));
    } else if (ic) {
      centers.push_back(make_center(*ic));
      primary_is_infeasible = true;
    } else {
      --ctx_.iteration;
      return false;
    }
    // A center whose mesh is below tolerance is not polled again; the other
    // one, if any, takes the primary poll.
    std::erase_if(centers, [&](const Center& c) { return MeshConverged(c); });
    if (centers.empty()) {
      --ctx_.iteration;
      return false;
    }

    const std::size_t first_record = ctx_.history.size();
    std::vector<TrialRecord> trials;
    std::vector<std::size_t> trial_center;  // index into centers
    std::vector<Direction> trial_direction;
    bool dominated = false;

    auto try_point = [&](const Vector& x, const MeshState& mesh,
                         const Direction& d, std::size_t center) {
      std::optional<Evaluation> raw =
          ctx_.Evaluate(x, HistoryKind::kUnsuccessful);
      if (!raw) return;
      TrialRecord record;
      record.eval = view_.Apply(*raw);
      record.mesh = mesh;
      trials.push_back(std::move(record));
      trial_center.push_back(center);
      trial_direction.push_back(d);
      if (DominatesCenter(trials.back().eval, fc, ic)) dominated = true;
    };
    auto stop_now = [&]() {
      return (dominated && cfg.opportunistic) || !ctx_.BudgetLeft();
    };

    std::map<Vector, SuccessStep> previous_successes;
    previous_successes.swap(successes_);
    if (cfg.speculative) {
      for (std::size_t c = 0; c < centers.size() && !stop_now(); ++c) {
        auto found = previous_successes.find(centers[c].entry.eval.x);
        if (found == previous_successes.end()) continue;
        const SuccessStep& step = found->second;
        const Vector candidate =
            SpeculativeSearch(centers[c].entry.eval, step.direction, step.mesh);
        MeshState mesh = step.mesh;
        mesh.anchor = centers[c].entry.eval.x;
        Direction doubled = step.direction;
        for (auto& di : doubled) di *= 2;
        try_point(candidate, mesh, doubled, c);
      }
    }
    // A dominating search skips the poll.
    if (!dominated) {
      for (std::size_t c = 0; c < centers.size() && !stop_now(); ++c) {
        const MeshState& mesh = centers[c].mesh;
        const PollDirectionSet dirs = GeneratePollDirections(
            ctx_.spec.n, mesh.delta_frame, mesh.delta_mesh,
            PollSeed(cfg.rng_seed, it, static_cast<int>(c)),
            c == 0 ? PollCount::kPrimary : PollCount::kSecondary);
        for (const Direction& d : dirs.directions) {
          if (stop_now()) break;
          try_point(mesh.PointAlong(d), mesh, d, c);
        }
      }
    }

    std::vector<Evaluation> trial_evals;
    for (const TrialRecord& t : trials) trial_evals.push_back(t.eval);
    const IterationKind kind = ClassifyIteration(trial_evals, fc, ic);

    const std::vector<Evaluation> feasible_now = state_.feasible.Evaluations();
    const std::vector<Evaluation> infeasible_now =
        state_.infeasible.Evaluations();
    std::vector<IncumbentEntry> additions;
    for (std::size_t t = 0; t < trials.size(); ++t) {
      TrialRecord& trial = trials[t];
      const double center_delta = centers[trial_center[t]].entry.delta_frame;
      trial.assigned_delta = AssignTrialFrameSize(
          trial.eval, feasible_now, infeasible_now, center_delta, cfg.tau);
      assigned_delta_[trial.eval.x] = trial.assigned_delta;
      if (view_.Admits(trial.eval)) {
        additions.push_back({trial.eval, trial.assigned_delta});
      }
      if (DominatesCenter(trial.eval, fc, ic)) {
        successes_[trial.eval.x] = {trial_direction[t], trial.mesh};
      }
    }

    const double h_max_before = state_.h_max;
    if (view_.mode == View::Mode::kProgressive && ic) {
      std::vector<IncumbentEntry> archive = state_.archive;
      for (const IncumbentEntry& p : additions) {
        if (!p.eval.infeasible()) continue;
        InsertNondominated(
            archive, p,
            [](const IncumbentEntry& a, const IncumbentEntry& b) {
              return InfeasibleOrder(a.eval, b.eval);
            },
            [](const IncumbentEntry& a, const IncumbentEntry& b) {
              return SameObjectivesAndH(a.eval, b.eval);
            });
      }
      std::vector<Evaluation> candidates;
      candidates.reserve(archive.size());
      for (const IncumbentEntry& e : archive) candidates.push_back(e.eval);
      const double h_new =
          UpdateHMax(candidates, infeasible_now, ic->eval, kind);
      state_.h_max = std::min(state_.h_max, h_new);
    }
    state_ = RefreshLists(std::move(state_), additions);

    if (kind == IterationKind::kUnsuccessful) {
      for (const Center& c : centers) Shrink(c.entry.eval.x, cfg.tau);
    }

    const HistoryKind history_kind =
        kind == IterationKind::kDominating  ? HistoryKind::kDominating
        : kind == IterationKind::kImproving ? HistoryKind::kImproving
                                            : HistoryKind::kUnsuccessful;
    for (std::size_t r = first_record; r < ctx_.history.size(); ++r) {
      ctx_.history[r].kind = history_kind;
    }
    if (view_.mode == View::Mode::kProgressive) {
      h_max_trace_.push_back(state_.h_max);
    }
    if (observer_) {
      IterationReport report;
      report.iteration = it;
      report.kind = kind;
      report.h_max_before = h_max_before;
      report.state = &state_;
      report.trials = trials;
      report.feasible_center = fc;
      report.infeasible_center = ic;
      report.primary_is_infeasible = primary_is_infeasible;
      observer_(report);
    }
    return true;
  }

  RunContext& ctx_;
  View view_;
  const IterationObserver& observer_;
  BarrierState state_;
  std::map<Vector, double> assigned_delta_;
  std::map<Vector, SuccessStep> successes_;
  std::vector<double> h_max_trace_;
};

// Evaluates the in-bounds starting points. Throws ConfigError when none is
// usable.
std::vector<Evaluation> EvaluateStarts(RunContext& ctx,
                                       const std::vector<Vector>& starts) {
  bool any_in_bounds = false;
  std::vector<Evaluation> evaluated;
  for (const Vector& x : starts) {
    if (!ctx.spec.InBounds(x)) continue;
    any_in_bounds = true;
    if (auto raw = ctx.Evaluate(x, HistoryKind::kStart)) {
      evaluated.push_back(std::move(*raw));
    }
  }
  if (!any_in_bounds) {
    throw ConfigError("no starting point lies within the bounds");
  }
  if (std::all_of(evaluated.begin(), evaluated.end(),
                  [](const Evaluation& e) { return e.hidden_failure(); })) {
    throw ConfigError("every starting point failed to evaluate");
  }
  return evaluated;
}

std::vector<IncumbentEntry> AsEntries(const std::vector<Evaluation>& evals,
                                      const View& view, double delta0) {
  std::vector<IncumbentEntry> entries;
  for (const Evaluation& e : evals) entries.push_back({view.Apply(e), delta0});
  return entries;
}

void FinishResult(const RunContext& ctx, RunResult& result,
                  const IterateList* infeasible_list) {
  result.history = ctx.history;
  result.eval_count = ctx.history.size();
  std::vector<Evaluation> front;
  std::vector<Evaluation> infeasible;
  for (const HistoryRecord& r : ctx.history) {
    if (r.eval.feasible()) {
      InsertNondominated(front, r.eval, FeasibleOrder, SameObjectives);
    } else if (r.eval.infeasible() && !infeasible_list) {
      InsertNondominated(infeasible, r.eval, InfeasibleOrder,
                         SameObjectivesAndH);
    }
  }
  result.pareto_approx = std::move(front);
  if (infeasible_list) {
    for (const IncumbentEntry& e : infeasible_list->entries) {
      result.infeasible_front.push_back(*ctx.cache.Probe(e.eval.x));
    }
  } else {
    result.infeasible_front = std::move(infeasible);
  }
}

void CheckStarts(const std::vector<Vector>& starts, const ProblemSpec& spec) {
  if (starts.empty()) throw ConfigError("at least one starting point is required");
  for (const Vector& x : starts) {
    if (x.size() != static_cast<std::size_t>(spec.n)) {
      throw ConfigError("starting point has wrong dimension");
    }
  }
}

RunResult RunTwoPhase(Blackbox& problem, const SolverConfig& config,
                      const std::vector<Vector>& starts,
                      const IterationObserver& observer, bool penalty) {
  config.Validate();
  CheckStarts(starts, problem.spec());
  RunContext ctx(problem, config);
  View base{View::Mode::kExtreme, penalty, config.eps_penalty};
  View violation{View::Mode::kViolation, penalty, config.eps_penalty};

  const std::vector<Evaluation> start_evals = EvaluateStarts(ctx, starts);
  RunResult result;
  std::vector<IncumbentEntry> phase2_seed;
  for (const Evaluation& e : start_evals) {
    if (base.Apply(e).feasible()) phase2_seed.push_back({base.Apply(e), config.delta0});
  }

  if (phase2_seed.empty()) {
    Engine phase1(ctx, violation, observer);
    phase1.Seed(AsEntries(start_evals, violation, config.delta0));
    std::size_t scanned = 0;
    auto feasible_found = [&]() {
      for (; scanned < ctx.history.size(); ++scanned) {
        if (base.Apply(ctx.history[scanned].eval).feasible()) return true;
      }
      return false;
    };
    std::optional<StopReason> stop = phase1.Loop(feasible_found);
    result.phase1_evals = ctx.history.size();
    if (stop) {
      result.stop_reason = *stop;
      FinishResult(ctx, result, nullptr);
      return result;
    }
    for (const HistoryRecord& r : ctx.history) {
      const Evaluation e = base.Apply(r.eval);
      if (!e.feasible()) continue;
      phase2_seed.push_back({e, phase1.AssignedDelta(e.x, config.delta0)});
    }
  }

  Engine phase2(ctx, base, observer);
  phase2.Seed(phase2_seed);
  result.stop_reason = *phase2.Loop({});
  FinishResult(ctx, result, nullptr);
  return result;
}

}  // namespace

RunResult RunPb(Blackbox& problem, const SolverConfig& config,
                const std::vector<Vector>& starts,
                const IterationObserver& observer) {
  config.Validate();
  CheckStarts(starts, problem.spec());
  RunContext ctx(problem, config);
  View view{View::Mode::kProgressive, false, config.eps_penalty};
  Engine engine(ctx, view, observer);
  engine.Seed(AsEntries(EvaluateStarts(ctx, starts), view, config.delta0));
  RunResult result;
  result.stop_reason = *engine.Loop({});
  result.h_max_trace = engine.h_max_trace();
  FinishResult(ctx, result, &engine.state().infeasible);
  return result;
}

RunResult RunEb(Blackbox& problem, const SolverConfig& config,
                const std::vector<Vector>& starts,
                const IterationObserver& observer) {
  config.Validate();
  CheckStarts(starts, problem.spec());
  RunContext ctx(problem, config);
  View view{View::Mode::kExtreme, false, config.eps_penalty};
  const std::vector<Evaluation> start_evals = EvaluateStarts(ctx, starts);
  if (std::none_of(start_evals.begin(), start_evals.end(),
                   [](const Evaluation& e) { return e.feasible(); })) {
    throw ConfigError(
        "the extreme barrier variant requires a feasible starting point");
  }
  Engine engine(ctx, view, observer);
  engine.Seed(AsEntries(start_evals, view, config.delta0));
  RunResult result;
  result.stop_reason = *engine.Loop({});
  FinishResult(ctx, result, nullptr);
  return result;
}

RunResult RunTeb(Blackbox& problem, const SolverConfig& config,
                 const std::vector<Vector>& starts,
                 const IterationObserver& observer) {
  return RunTwoPhase(problem, config, starts, observer, false);
}

RunResult RunPenalty(Blackbox& problem, const SolverConfig& config,
                     const std::vector<Vector>& starts,
                     const IterationObserver& observer) {
  return RunTwoPhase(problem, config, starts, observer, true);
}

RunResult Run(Blackbox& problem, const SolverConfig& config,
              const std::vector<Vector>& starts,
              const IterationObserver& observer) {
  switch (config.variant) {
    case Variant::kEb:
      return RunEb(problem, config, starts, observer);
    case Variant::kTeb:
      return RunTeb(problem, config, starts, observer);
    case Variant::kPb:
      return RunPb(problem, config, starts, observer);
    case Variant::kPenalty:
      return RunPenalty(problem, config, starts, observer);
  }
  throw ConfigError("unknown variant");
}

}  // namespace dmulti
