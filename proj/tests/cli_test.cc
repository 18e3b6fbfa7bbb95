#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.h"
#include "dmulti/csv.h"
#include "json.hpp"
#include "test_util.h"

namespace dmulti {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome RunCli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::Main(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, Help) {
  const Outcome o = RunCli({"--help"});
  EXPECT_EQ(o.code, cli::kExitOk);
  EXPECT_NE(o.out.find("solve"), std::string::npos);
  EXPECT_NE(o.out.find("bench"), std::string::npos);
}

TEST(Cli, SolveWritesArtifacts) {
  testing::TempDir dir("solve");
  const Outcome o = RunCli({"solve", "--problem", "bnh", "--variant", "pb",
                            "--budget", "300", "--seed", "1", "--start-kind",
                            "infeasible", "--out", dir.str()});
  ASSERT_EQ(o.code, cli::kExitOk) << o.err;
  EXPECT_EQ(o.out.rfind("solve bnh pb: 300 evals, stop=budget", 0), 0u) << o.out;
  for (const char* name : {"front.csv", "infeasible_front.csv", "history.csv",
                           "run.json", "convergence_profile.csv"}) {
    EXPECT_TRUE(fs::exists(dir.path() / name)) << name;
  }
  const json run = json::parse(Slurp(dir.path() / "run.json"));
  EXPECT_EQ(run["format_version"], cli::kFormatVersion);
  EXPECT_EQ(run["eval_count"], 300);
  EXPECT_EQ(run["config"]["rng_seed"], 1);
  EXPECT_GT(run["normalized_hv"].get<double>(), 0.0);

  std::istringstream history(Slurp(dir.path() / "history.csv"));
  std::string line;
  std::getline(history, line);
  EXPECT_EQ(line, "eval_index,iteration,kind,x_1,x_2,f_1,f_2,c_1,c_2,h");
  std::getline(history, line);
  EXPECT_EQ(line.rfind("1,0,start,", 0), 0u) << line;
  std::size_t rows = 1;
  while (std::getline(history, line)) ++rows;
  EXPECT_EQ(rows, 300u);

  std::vector<std::string> header;
  const auto front = ReadCsvFile((dir.path() / "front.csv").string(), &header);
  EXPECT_EQ(front.size(), run["front_size"].get<std::size_t>());
  EXPECT_EQ(header, (std::vector<std::string>{"x_1", "x_2", "f_1", "f_2"}));
}

TEST(Cli, ConfigErrorsExitTwo) {
  testing::TempDir dir("errors");
  Outcome o = RunCli({"solve", "--problem", "nope", "--out", dir.str()});
  EXPECT_EQ(o.code, cli::kExitConfig);
  EXPECT_NE(o.err.find("bnh"), std::string::npos) << o.err;
  EXPECT_NE(o.err.find("c2dtlz2"), std::string::npos) << o.err;

  o = RunCli({"solve", "--problem", "tnk", "--variant", "eb", "--start-kind",
              "infeasible", "--budget", "10", "--out", dir.str()});
  EXPECT_EQ(o.code, cli::kExitConfig);

  o = RunCli({"solve", "--problem", "tnk", "--variant", "zz", "--out", dir.str()});
  EXPECT_EQ(o.code, cli::kExitConfig);

  o = RunCli({"solve", "--problem", "tnk", "--tau", "2", "--out", dir.str()});
  EXPECT_EQ(o.code, cli::kExitConfig);

  o = RunCli({"bench", "--variant", "", "--out", dir.str()});
  EXPECT_EQ(o.code, cli::kExitConfig);

  o = RunCli({"solve", "--bogus-flag"});
  EXPECT_EQ(o.code, cli::kExitConfig);
}

TEST(Cli, MissingExternalProgramExitsThree) {
  testing::TempDir dir("io");
  {
    std::ofstream s(dir.path() / "starts.txt");
    s << "0.5\n";
  }
  const Outcome o = RunCli({"solve", "--external-cmd", "/nonexistent/dmulti-bb",
                            "--n", "1", "--m", "2", "--j", "0", "--lower", "0",
                            "--upper", "1", "--starts-file",
                            (dir.path() / "starts.txt").string(), "--out",
                            dir.str()});
  EXPECT_EQ(o.code, cli::kExitBlackboxIo) << o.err;
}

TEST(Cli, ConfigFileAndFlagOverride) {
  testing::TempDir dir("config");
  {
    std::ofstream cfg(dir.path() / "cfg.json");
    cfg << R"({"problem": "srn", "variant": "teb", "budget": 120, "seed": 4,
              "starts": [[-10, 10]]})";
  }
  const Outcome o = RunCli({"solve", "--config", (dir.path() / "cfg.json").string(),
                            "--budget", "90", "--out", dir.str()});
  ASSERT_EQ(o.code, cli::kExitOk) << o.err;
  const json run = json::parse(Slurp(dir.path() / "run.json"));
  EXPECT_EQ(run["config"]["budget"], 90);
  EXPECT_EQ(run["config"]["variant"], "teb");
  EXPECT_EQ(run["config"]["rng_seed"], 4);
  EXPECT_EQ(run["starts"][0][0].get<double>(), -10.0);

  {
    std::ofstream cfg(dir.path() / "bad.json");
    cfg << R"({"problem": "srn", "colour": "blue"})";
  }
  const Outcome bad =
      RunCli({"solve", "--config", (dir.path() / "bad.json").string(), "--out", dir.str()});
  EXPECT_EQ(bad.code, cli::kExitConfig);
  EXPECT_NE(bad.err.find("colour"), std::string::npos);
}

TEST(Cli, SolveIsDeterministic) {
  testing::TempDir a("det-a"), b("det-b");
  for (const auto* dir : {&a, &b}) {
    const Outcome o = RunCli({"solve", "--problem", "tnk", "--variant", "teb",
                              "--budget", "400", "--seed", "2", "--start-kind",
                              "infeasible", "--out", dir->str()});
    ASSERT_EQ(o.code, cli::kExitOk) << o.err;
  }
  for (const char* name : {"front.csv", "history.csv", "run.json"}) {
    EXPECT_EQ(Slurp(a.path() / name), Slurp(b.path() / name)) << name;
  }
}

TEST(Cli, SmallBenchProfiles) {
  testing::TempDir dir("bench");
  const Outcome o = RunCli({"bench", "--problem", "bnh,tnk", "--variant", "pb,penalty",
                            "--replications", "2", "--budget", "200", "--eps-tau",
                            "0.1,0.5", "--out", dir.str()});
  ASSERT_EQ(o.code, cli::kExitOk) << o.err;
  const json results = json::parse(Slurp(dir.path() / "results.json"));
  EXPECT_EQ(results["runs"].size(), 8u);
  EXPECT_EQ(results["profiles"].size(), 4u);
  for (const auto& p : results["profiles"]) {
    std::vector<std::string> header;
    const auto rows =
        ReadCsvFile((dir.path() / p["file"].get<std::string>()).string(), &header);
    EXPECT_EQ(header, (std::vector<std::string>{"k", "fraction"}));
    ASSERT_FALSE(rows.empty());
    for (std::size_t i = 1; i < rows.size(); ++i) {
      EXPECT_GE(rows[i][1], rows[i - 1][1]);
      EXPECT_EQ(rows[i][0], rows[i - 1][0] + 1);
    }
  }
}

TEST(Cli, StartsFile) {
  testing::TempDir dir("starts");
  const fs::path path = dir.path() / "starts.txt";
  {
    std::ofstream s(path);
    s << "# comment\n1, 2\n\n3 4  # trailing\n";
  }
  EXPECT_EQ(cli::ReadStartsFile(path.string()), (std::vector<Vector>{{1, 2}, {3, 4}}));
  EXPECT_THROW(cli::ReadStartsFile((dir.path() / "missing").string()), ConfigError);
}

}  // namespace
}  // namespace dmulti
