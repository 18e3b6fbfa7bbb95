#include "cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "dmulti/csv.h"
#include "dmulti/external.h"
#include "dmulti/indicators.h"
#include "json.hpp"

#ifndef DMULTI_DEFAULT_FRONTS_DIR
#define DMULTI_DEFAULT_FRONTS_DIR "data/fronts"
#endif

namespace dmulti::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// JSON numbers are written through FormatNumber so that files are
// independent of locale and library float printing.
std::string Fixed4(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 4);
  return std::string(buf, res.ptr);
}

json Number(double v) {
  if (!std::isfinite(v)) return FormatNumber(v);
  return json::parse(FormatNumber(v));
}

Vector ParseList(const std::string& text, const std::string& what) {
  Vector values;
  std::string token;
  std::stringstream ss(text);
  while (std::getline(ss, token, ',')) {
    std::istringstream words(token);
    for (std::string w; words >> w;) {
      try {
        values.push_back(ParseNumber(w));
      } catch (const ConfigError&) {
        throw ConfigError("bad value '" + w + "' in " + what);
      }
    }
  }
  return values;
}

std::vector<std::string> SplitNames(const std::string& text) {
  std::vector<std::string> names;
  std::string token;
  std::stringstream ss(text);
  while (std::getline(ss, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(), ::isspace),
                token.end());
    if (!token.empty()) names.push_back(token);
  }
  return names;
}

void EnsureDir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "'");
}

std::ofstream OpenOut(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  return out;
}

// Options shared by solve and bench; JSON config keys use the same names.
struct Options {
  std::string config_file;
  std::string problem;
  std::string external_cmd;
  int n = 0;
  int m = 0;
  int j = 0;
  std::string lower;
  std::string upper;
  double timeout = 60.0;
  std::string variant = "pb";
  std::size_t budget = 1000;
  std::uint64_t seed = 0;
  double tau = 0.5;
  int w_plus = 1;
  double rho = 0.1;
  double delta0 = 1.0;
  double mesh_tol = 1e-9;
  double eps_penalty = 1e-3;
  bool opportunistic = true;
  bool speculative = true;
  std::string starts_file;
  std::vector<Vector> inline_starts;
  std::string start_kind = "auto";
  std::string out = ".";
  std::string eps_tau = "0.1";
  std::size_t replications = 1;
  std::size_t stride = 10;
  std::string fronts_dir = DMULTI_DEFAULT_FRONTS_DIR;
};

// Binds a flag to a field and remembers how to fill the same field from
// the JSON config when the flag is absent.
class Binder {
 public:
  Binder(CLI::App* app, Options* opts) : app_(app), opts_(opts) {}

  template <typename T>
  void Add(const std::string& flag, const std::string& key, T Options::*field,
           const std::string& help) {
    CLI::Option* opt = app_->add_option(flag, opts_->*field, help);
    setters_[key] = [this, opt, field, key](const json& v) {
      if (opt->count() > 0) return;
      try {
        if constexpr (std::is_same_v<T, std::string>) {
          if (v.is_array()) {
            std::string joined;
            for (const json& item : v) {
              if (!joined.empty()) joined += ",";
              joined += item.is_string() ? item.get<std::string>() : item.dump();
            }
            opts_->*field = joined;
            return;
          }
          if (v.is_number()) {
            opts_->*field = v.dump();
            return;
          }
        }
        opts_->*field = v.get<T>();
      } catch (const json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
      }
    };
  }

  void AddFlag(const std::string& flag, const std::string& key,
               bool Options::*field, const std::string& help) {
    CLI::Option* opt = app_->add_flag(flag, opts_->*field, help);
    setters_[key] = [this, opt, field, key](const json& v) {
      if (opt->count() > 0) return;
      if (!v.is_boolean()) {
        throw ConfigError("config key '" + key + "' must be a boolean");
      }
      opts_->*field = v.get<bool>();
    };
  }

  void Alias(const std::string& alias, const std::string& key) {
    aliases_[alias] = key;
  }

  void ApplyConfig() {
    if (opts_->config_file.empty()) return;
    std::ifstream in(opts_->config_file);
    if (!in) throw ConfigError("cannot open config '" + opts_->config_file + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError("config '" + opts_->config_file + "': " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      std::string key = it.key();
      if (auto a = aliases_.find(key); a != aliases_.end()) key = a->second;
      if (key == "starts") {
        try {
          opts_->inline_starts = it.value().get<std::vector<Vector>>();
        } catch (const json::exception&) {
          throw ConfigError("config key 'starts' must be a list of points");
        }
        continue;
      }
      auto setter = setters_.find(key);
      if (setter == setters_.end()) {
        throw ConfigError("unknown config key '" + it.key() + "'");
      }
      setter->second(it.value());
    }
  }

 private:
  CLI::App* app_;
  Options* opts_;
  std::map<std::string, std::function<void(const json&)>> setters_;
  std::map<std::string, std::string> aliases_;
};

void AddCommonOptions(Binder& b) {
  b.Add("--problem", "problem", &Options::problem,
        "Builtin problem name (bench: comma-separated list)");
  b.Add("--variant", "variant", &Options::variant,
        "eb, teb, pb or penalty (bench: comma-separated list)");
  b.Add("--budget", "budget", &Options::budget, "Maximum blackbox evaluations");
  b.Add("--seed", "rng_seed", &Options::seed, "Base random seed");
  b.Alias("seed", "rng_seed");
  b.Add("--tau", "tau", &Options::tau, "Frame size adjustment factor");
  b.Add("--wplus", "w_plus", &Options::w_plus, "Spread selection window");
  b.Add("--rho", "rho", &Options::rho, "Frame center trigger");
  b.Add("--delta0", "delta0", &Options::delta0, "Initial frame size");
  b.Add("--mesh-tol", "mesh_tol", &Options::mesh_tol, "Mesh size stop threshold");
  b.Add("--eps-penalty", "eps_penalty", &Options::eps_penalty,
        "Penalty variant epsilon");
  b.AddFlag("!--no-opportunistic", "opportunistic", &Options::opportunistic,
            "Evaluate every poll point");
  b.AddFlag("!--no-speculative", "speculative", &Options::speculative,
            "Disable the speculative search");
  b.Add("--start-kind", "start_kind", &Options::start_kind,
        "Builtin start: auto, feasible, infeasible or both");
  b.Add("--starts-file", "starts_file", &Options::starts_file,
        "Text file with one starting point per line");
  b.Add("--out", "out", &Options::out, "Output directory");
  b.Add("--eps-tau", "eps_tau", &Options::eps_tau,
        "Convergence tolerance (bench: comma-separated list)");
  b.Add("--replications", "replications", &Options::replications,
        "Number of seeds, starting at --seed");
  b.Add("--fronts-dir", "fronts_dir", &Options::fronts_dir,
        "Directory with reference front fixtures");
}

SolverConfig MakeConfig(const Options& o, Variant variant, std::uint64_t seed) {
  SolverConfig c;
  c.variant = variant;
  c.budget = o.budget;
  c.rng_seed = seed;
  c.tau = o.tau;
  c.w_plus = o.w_plus;
  c.rho = o.rho;
  c.delta0 = o.delta0;
  c.mesh_tol = o.mesh_tol;
  c.eps_penalty = o.eps_penalty;
  c.opportunistic = o.opportunistic;
  c.speculative = o.speculative;
  c.Validate();
  return c;
}

json ConfigJson(const SolverConfig& c) {
  return {{"variant", ToString(c.variant)},
          {"budget", c.budget},
          {"rng_seed", c.rng_seed},
          {"tau", Number(c.tau)},
          {"w_plus", c.w_plus},
          {"rho", Number(c.rho)},
          {"delta0", Number(c.delta0)},
          {"mesh_tol", Number(c.mesh_tol)},
          {"eps_penalty", Number(c.eps_penalty)},
          {"opportunistic", c.opportunistic},
          {"speculative", c.speculative}};
}

// "auto" picks the feasible start, which every variant accepts.
std::vector<Vector> BuiltinStarts(const BuiltinProblem& p,
                                  const std::string& kind) {
  if (kind == "feasible" || kind == "auto") return {p.feasible_start};
  if (kind == "infeasible") return {p.infeasible_start};
  if (kind == "both") return {p.feasible_start, p.infeasible_start};
  throw ConfigError("unknown start kind '" + kind +
                    "' (expected auto, feasible, infeasible or both)");
}

Vector BoundVector(const std::string& text, int n, double fallback,
                   const std::string& what) {
  if (text.empty()) return Vector(static_cast<std::size_t>(n), fallback);
  Vector v = ParseList(text, what);
  if (v.size() == 1) v.assign(static_cast<std::size_t>(n), v[0]);
  if (v.size() != static_cast<std::size_t>(n)) {
    throw ConfigError(what + " needs 1 or n values");
  }
  return v;
}

// A problem resolved from the options.
struct ResolvedProblem {
  std::string name;
  std::unique_ptr<Blackbox> blackbox;
  const BuiltinProblem* builtin = nullptr;
};

ResolvedProblem Resolve(const Options& o) {
  ResolvedProblem r;
  if (!o.external_cmd.empty()) {
    if (!o.problem.empty()) {
      throw ConfigError("--problem and --external-cmd are exclusive");
    }
    if (o.n < 1 || o.m < 1 || o.j < 0) {
      throw ConfigError("--external-cmd needs --n >= 1, --m >= 1, --j >= 0");
    }
    ProblemSpec spec = ProblemSpec::Make(
        o.n, o.m, o.j, BoundVector(o.lower, o.n, -kInf, "--lower"),
        BoundVector(o.upper, o.n, kInf, "--upper"));
    r.name = "external";
    r.blackbox = std::make_unique<ExternalBlackbox>(o.external_cmd, spec, o.timeout);
    return r;
  }
  if (o.problem.empty()) throw ConfigError("either --problem or --external-cmd is required");
  r.builtin = &FindProblem(o.problem);
  r.name = r.builtin->name;
  r.blackbox = MakeBlackbox(*r.builtin);
  return r;
}

std::vector<Vector> ResolveStarts(const Options& o, const ResolvedProblem& p) {
  if (!o.starts_file.empty()) return ReadStartsFile(o.starts_file);
  if (!o.inline_starts.empty()) return o.inline_starts;
  if (!p.builtin) throw ConfigError("an external problem needs --starts-file");
  return BuiltinStarts(*p.builtin, o.start_kind);
}

std::optional<ReferenceData> LoadReference(const Options& o,
                                           const ResolvedProblem& p) {
  if (!p.builtin) return std::nullopt;
  const std::string path = FixturePath(o.fronts_dir, p.name);
  if (!fs::exists(path)) return std::nullopt;
  return ReferenceData::FromFront(ReadFrontFile(path));
}

std::vector<double> ParseEpsList(const std::string& text) {
  Vector eps = ParseList(text, "--eps-tau");
  if (eps.empty()) throw ConfigError("--eps-tau is empty");
  for (double e : eps) {
    if (!(e > 0.0 && e < 1.0)) throw ConfigError("--eps-tau values must lie in (0, 1)");
  }
  return eps;
}

json Nullable(const std::optional<std::size_t>& v) {
  return v ? json(*v) : json(nullptr);
}

int Solve(const Options& o, std::ostream& out) {
  const Variant variant = ParseVariant(o.variant);
  if (o.replications < 1) throw ConfigError("--replications must be >= 1");
  if (o.stride < 1) throw ConfigError("--stride must be >= 1");
  const std::vector<double> eps_list = ParseEpsList(o.eps_tau);
  ResolvedProblem problem = Resolve(o);
  const ProblemSpec& spec = problem.blackbox->spec();
  const std::vector<Vector> starts = ResolveStarts(o, problem);
  const std::optional<ReferenceData> ref = LoadReference(o, problem);

  std::string summary;
  for (std::size_t r = 0; r < o.replications; ++r) {
    const std::uint64_t seed = o.seed + r;
    const SolverConfig config = MakeConfig(o, variant, seed);
    const fs::path dir = o.replications == 1
                             ? fs::path(o.out)
                             : fs::path(o.out) / ("seed_" + std::to_string(seed));
    EnsureDir(dir.string());
    const RunResult result = Run(*problem.blackbox, config, starts);

    {
      std::ofstream f = OpenOut(dir / "front.csv");
      WriteFrontWithX(f, result.pareto_approx, spec, false);
    }
    {
      std::ofstream f = OpenOut(dir / "infeasible_front.csv");
      WriteFrontWithX(f, result.infeasible_front, spec, true);
    }
    {
      std::ofstream f = OpenOut(dir / "history.csv");
      WriteHistory(f, result, spec);
    }
    json summary_json = {{"format_version", kFormatVersion},
                         {"problem", problem.name},
                         {"n", spec.n},
                         {"m", spec.m},
                         {"j", spec.j_count},
                         {"eval_count", result.eval_count},
                         {"stop_reason", ToString(result.stop_reason)},
                         {"front_size", result.pareto_approx.size()},
                         {"infeasible_front_size", result.infeasible_front.size()},
                         {"phase1_evals", result.phase1_evals},
                         {"config", ConfigJson(config)}};
    json starts_json = json::array();
    for (const Vector& s : starts) {
      json point = json::array();
      for (double v : s) point.push_back(Number(v));
      starts_json.push_back(point);
    }
    summary_json["starts"] = starts_json;
    double hv = -1.0;
    if (ref) {
      std::vector<Vector> front;
      for (const Evaluation& e : result.pareto_approx) front.push_back(e.f);
      hv = NormalizedHypervolume(front, *ref);
      summary_json["normalized_hv"] = Number(hv);
      json solved = json::object();
      for (double eps : eps_list) {
        solved[FormatNumber(eps)] = Nullable(SolvedAt(result.history, *ref, eps));
      }
      summary_json["solved_at"] = solved;
      std::ofstream f = OpenOut(dir / "convergence_profile.csv");
      WriteConvergenceProfile(f, ConvergenceProfile(result.history, *ref, o.stride));
    }
    {
      std::ofstream f = OpenOut(dir / "run.json");
      f << summary_json.dump(2) << '\n';
    }
    if (r == 0) {
      summary = "solve " + problem.name + " " + ToString(variant) + ": " +
                std::to_string(result.eval_count) + " evals, stop=" +
                ToString(result.stop_reason) + ", front=" +
                std::to_string(result.pareto_approx.size());
      if (ref) summary += ", hv=" + Fixed4(hv);
    }
  }
  if (o.replications > 1) {
    summary += " (+" + std::to_string(o.replications - 1) + " more seeds)";
  }
  out << summary << '\n';
  return kExitOk;
}

struct BenchCell {
  std::string problem;
  Variant variant = Variant::kPb;
  std::uint64_t seed = 0;
  int n = 1;
  std::optional<RunResult> result;
  std::string error;
};

int Bench(const Options& o, std::ostream& out) {
  std::vector<std::string> problems =
      o.problem.empty() ? ProblemNames() : SplitNames(o.problem);
  const std::vector<std::string> variant_names = SplitNames(o.variant);
  if (problems.empty()) throw ConfigError("bench needs at least one problem");
  if (variant_names.empty()) throw ConfigError("bench needs at least one variant");
  if (o.replications < 1) throw ConfigError("--replications must be >= 1");
  std::vector<Variant> variants;
  for (const std::string& v : variant_names) variants.push_back(ParseVariant(v));
  const std::vector<double> eps_list = ParseEpsList(o.eps_tau);
  MakeConfig(o, variants.front(), o.seed);  // validates shared settings

  std::map<std::string, FrontApprox> fixtures;
  for (const std::string& name : problems) {
    const BuiltinProblem& p = FindProblem(name);
    const std::string path = FixturePath(o.fronts_dir, p.name);
    if (!fs::exists(path)) {
      throw ConfigError("missing reference front '" + path +
                        "'; run 'dmmads fronts' first");
    }
    fixtures[name] = ReadFrontFile(path);
  }

  std::vector<BenchCell> cells;
  for (const std::string& name : problems) {
    const BuiltinProblem& p = FindProblem(name);
    for (Variant variant : variants) {
      for (std::size_t r = 0; r < o.replications; ++r) {
        BenchCell cell;
        cell.problem = name;
        cell.variant = variant;
        cell.seed = o.seed + r;
        cell.n = p.spec.n;
        try {
          auto bb = MakeBlackbox(p);
          cell.result = Run(*bb, MakeConfig(o, variant, cell.seed),
                            BuiltinStarts(p, o.start_kind));
        } catch (const ConfigError& e) {
          cell.error = e.what();
        }
        cells.push_back(std::move(cell));
      }
    }
  }

  // Reference front per problem: fixture plus everything the runs found.
  std::map<std::string, ReferenceData> refs;
  for (const std::string& name : problems) {
    std::vector<Vector> pool = fixtures[name].points;
    for (const BenchCell& c : cells) {
      if (c.problem != name || !c.result) continue;
      for (const Evaluation& e : c.result->pareto_approx) pool.push_back(e.f);
    }
    const std::size_t m = static_cast<std::size_t>(FindProblem(name).spec.m);
    refs.emplace(name, ReferenceData::FromFront(FrontApprox::Filtered(m, pool)));
  }

  EnsureDir(o.out);
  std::size_t k_max = 1;
  for (const std::string& name : problems) {
    const std::size_t group = static_cast<std::size_t>(FindProblem(name).spec.n) + 1;
    k_max = std::max(k_max, (o.budget + group - 1) / group);
  }

  json cells_json = json::array();
  std::vector<std::vector<std::optional<std::size_t>>> solved(
      cells.size(), std::vector<std::optional<std::size_t>>(eps_list.size()));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const BenchCell& c = cells[i];
    json cj = {{"problem", c.problem},
               {"variant", ToString(c.variant)},
               {"seed", c.seed}};
    if (!c.result) {
      cj["error"] = c.error;
    } else {
      const ReferenceData& ref = refs.at(c.problem);
      std::vector<Vector> front;
      for (const Evaluation& e : c.result->pareto_approx) front.push_back(e.f);
      cj["eval_count"] = c.result->eval_count;
      cj["stop_reason"] = ToString(c.result->stop_reason);
      cj["normalized_hv"] = Number(NormalizedHypervolume(front, ref));
      json sj = json::object();
      for (std::size_t e = 0; e < eps_list.size(); ++e) {
        solved[i][e] = SolvedAt(c.result->history, ref, eps_list[e]);
        sj[FormatNumber(eps_list[e])] = Nullable(solved[i][e]);
      }
      cj["solved_at"] = sj;
    }
    cells_json.push_back(cj);
  }

  json profiles = json::array();
  std::string summary = "bench: " + std::to_string(cells.size()) + " runs";
  for (std::size_t e = 0; e < eps_list.size(); ++e) {
    for (Variant variant : variants) {
      std::vector<ProfileRecord> records;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].variant != variant) continue;
        records.push_back({solved[i][e], cells[i].n});
      }
      const std::vector<DataProfilePoint> rows = DataProfile(records, k_max);
      const std::string file = std::string("data_profile_") + ToString(variant) +
                               "_eps_" + FormatNumber(eps_list[e]) + ".csv";
      std::ofstream f = OpenOut(fs::path(o.out) / file);
      WriteDataProfile(f, rows);
      const double terminal = rows.empty() ? 0.0 : rows.back().fraction;
      profiles.push_back({{"variant", ToString(variant)},
                          {"eps_tau", Number(eps_list[e])},
                          {"file", file},
                          {"terminal_fraction", Number(terminal)}});
      summary += ", " + std::string(ToString(variant)) + "@" +
                 FormatNumber(eps_list[e]) + "=" + FormatNumber(terminal);
    }
  }
  json index = {{"format_version", kFormatVersion},
                {"budget", o.budget},
                {"replications", o.replications},
                {"start_kind", o.start_kind},
                {"profiles", profiles},
                {"runs", cells_json}};
  std::ofstream f = OpenOut(fs::path(o.out) / "results.json");
  f << index.dump(2) << '\n';
  out << summary << '\n';
  return kExitOk;
}

struct FrontsOptions {
  std::string out = DMULTI_DEFAULT_FRONTS_DIR;
  std::string problem;
  std::size_t grid = 1000;
  std::size_t samples = 1000000;
  std::uint64_t seed = 0;
};

int Fronts(const FrontsOptions& o, std::ostream& out) {
  const std::vector<std::string> names =
      o.problem.empty() ? ProblemNames() : SplitNames(o.problem);
  EnsureDir(o.out);
  std::string summary = "fronts:";
  for (const std::string& name : names) {
    const BuiltinProblem& p = FindProblem(name);
    ReferenceFrontOptions opts;
    opts.grid_per_dim = o.grid;
    opts.samples = o.samples;
    opts.seed = o.seed;
    const FrontApprox front = ReferenceFront(p.spec, p.evaluator, opts);
    std::ofstream f = OpenOut(FixturePath(o.out, name));
    WriteFront(f, front);
    summary += " " + name + "=" + std::to_string(front.points.size());
  }
  out << summary << '\n';
  return kExitOk;
}

}  // namespace

void WriteHistory(std::ostream& out, const RunResult& result,
                  const ProblemSpec& spec) {
  out << "eval_index,iteration,kind";
  for (const auto& col : NumberedColumns("x", spec.n)) out << ',' << col;
  for (const auto& col : NumberedColumns("f", spec.m)) out << ',' << col;
  for (const auto& col : NumberedColumns("c", spec.j_count)) out << ',' << col;
  out << ",h\n";
  for (const HistoryRecord& r : result.history) {
    out << r.eval_index << ',' << r.iteration << ',' << ToString(r.kind);
    for (double v : r.eval.x) out << ',' << FormatNumber(v);
    for (double v : r.eval.f) out << ',' << FormatNumber(v);
    for (double v : r.eval.c) out << ',' << FormatNumber(v);
    out << ',' << FormatNumber(r.eval.h) << '\n';
  }
}

void WriteFrontWithX(std::ostream& out, const std::vector<Evaluation>& front,
                     const ProblemSpec& spec, bool with_h) {
  std::vector<std::string> header = NumberedColumns("x", spec.n);
  for (const auto& col : NumberedColumns("f", spec.m)) header.push_back(col);
  if (with_h) header.push_back("h");
  std::vector<Vector> rows;
  for (const Evaluation& e : front) {
    Vector row = e.x;
    row.insert(row.end(), e.f.begin(), e.f.end());
    if (with_h) row.push_back(e.h);
    rows.push_back(std::move(row));
  }
  WriteCsv(out, header, rows);
}

std::vector<Vector> ReadStartsFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open starts file '" + path + "'");
  std::vector<Vector> starts;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    Vector point = ParseList(line, "starts file");
    if (!point.empty()) starts.push_back(std::move(point));
  }
  if (starts.empty()) throw ConfigError("starts file '" + path + "' is empty");
  return starts;
}

int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"DMulti-MADS constrained multiobjective blackbox solver"};
  app.name("dmmads");
  app.require_subcommand(1);

  Options solve_opts;
  CLI::App* solve = app.add_subcommand("solve", "Solve one problem");
  Binder solve_binder(solve, &solve_opts);
  solve->add_option("--config", solve_opts.config_file, "JSON config file");
  AddCommonOptions(solve_binder);
  solve_binder.Add("--external-cmd", "external_cmd", &Options::external_cmd,
                   "External blackbox command");
  solve_binder.Add("--n", "n", &Options::n, "External problem dimension");
  solve_binder.Add("--m", "m", &Options::m, "External objective count");
  solve_binder.Add("--j", "j", &Options::j, "External constraint count");
  solve_binder.Add("--lower", "lower", &Options::lower,
                   "Lower bounds (comma-separated, or one value)");
  solve_binder.Add("--upper", "upper", &Options::upper,
                   "Upper bounds (comma-separated, or one value)");
  solve_binder.Add("--timeout", "timeout", &Options::timeout,
                   "External evaluation timeout in seconds");
  solve_binder.Add("--stride", "stride", &Options::stride,
                   "Convergence profile sampling stride");

  Options bench_opts;
  bench_opts.variant = "pb,teb,penalty";
  bench_opts.replications = 3;
  bench_opts.budget = 5000;
  bench_opts.start_kind = "infeasible";
  CLI::App* bench = app.add_subcommand("bench", "Run the benchmark suite");
  Binder bench_binder(bench, &bench_opts);
  bench->add_option("--config", bench_opts.config_file, "JSON config file");
  AddCommonOptions(bench_binder);

  FrontsOptions fronts_opts;
  CLI::App* fronts = app.add_subcommand(
      "fronts", "Regenerate reference front fixtures for builtin problems");
  fronts->add_option("--out", fronts_opts.out, "Output directory");
  fronts->add_option("--problem", fronts_opts.problem,
                     "Comma-separated problem names (default all)");
  fronts->add_option("--grid", fronts_opts.grid, "Grid points per dimension");
  fronts->add_option("--samples", fronts_opts.samples,
                     "Uniform samples for problems with n > 3");
  fronts->add_option("--seed", fronts_opts.seed, "Sampling seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "dmmads: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (solve->parsed()) {
      solve_binder.ApplyConfig();
      return Solve(solve_opts, out);
    }
    if (bench->parsed()) {
      bench_binder.ApplyConfig();
      return Bench(bench_opts, out);
    }
    return Fronts(fronts_opts, out);
  } catch (const ConfigError& e) {
    err << "dmmads: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const BlackboxIoError& e) {
    err << "dmmads: blackbox I/O error: " << e.what() << '\n';
    return kExitBlackboxIo;
  }
}

}  // namespace dmulti::cli
