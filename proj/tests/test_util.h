#ifndef DMULTI_TESTS_TEST_UTIL_H_
#define DMULTI_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <random>
#include <string>

#include "dmulti/core.h"
#include "dmulti/selection.h"

namespace dmulti::testing {

inline Evaluation Feasible(Vector f, Vector x = {}) {
  Evaluation e;
  e.x = x.empty() ? f : std::move(x);
  e.f = std::move(f);
  e.h = 0.0;
  return e;
}

inline Evaluation Infeasible(Vector f, double h, Vector x = {}) {
  Evaluation e;
  e.x = x.empty() ? f : std::move(x);
  e.f = std::move(f);
  e.h = h;
  return e;
}

inline IterateList ListOf(ListKind kind, std::vector<Evaluation> evals,
                          std::vector<double> deltas = {}) {
  IterateList list{kind, {}};
  for (std::size_t i = 0; i < evals.size(); ++i) {
    list.entries.push_back({evals[i], deltas.empty() ? 1.0 : deltas[i]});
  }
  return list;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("dmulti-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace dmulti::testing

#endif  // DMULTI_TESTS_TEST_UTIL_H_
