#include "dmulti/external.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dmulti/csv.h"

namespace dmulti {

namespace {

// Owns a file descriptor.
class Fd {
 public:
  explicit Fd(int fd = -1) : fd_(fd) {}
  ~Fd() { Reset(); }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  int get() const { return fd_; }
  void Reset(int fd = -1) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = fd;
  }

 private:
  int fd_;
};

// Temporary input file removed on scope exit.
class TempInput {
 public:
  explicit TempInput(std::span<const double> x) {
    std::string pattern =
        (std::filesystem::temp_directory_path() / "dmulti-x-XXXXXX").string();
    const int fd = ::mkstemp(pattern.data());
    if (fd < 0) {
      throw BlackboxIoError(std::string("cannot create temp file: ") +
                            std::strerror(errno));
    }
    ::close(fd);
    path_ = pattern;
    std::ofstream out(path_);
    for (std::size_t i = 0; i < x.size(); ++i) {
      out << (i ? " " : "") << FormatNumber(x[i]);
    }
    out << '\n';
    if (!out) throw BlackboxIoError("cannot write temp file " + path_);
  }
  ~TempInput() { ::unlink(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct ChildOutcome {
  bool timed_out = false;
  int status = 0;
  std::string output;
};

ChildOutcome RunChild(const std::vector<std::string>& argv, double timeout) {
  int out_pipe[2];
  int err_pipe[2];
  if (::pipe2(out_pipe, O_CLOEXEC) != 0 || ::pipe2(err_pipe, O_CLOEXEC) != 0) {
    throw BlackboxIoError(std::string("pipe failed: ") + std::strerror(errno));
  }
  Fd out_read(out_pipe[0]);
  Fd out_write(out_pipe[1]);
  Fd err_read(err_pipe[0]);
  Fd err_write(err_pipe[1]);

  std::vector<char*> args;
  for (const std::string& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  const pid_t pid = ::fork();
  if (pid < 0) {
    throw BlackboxIoError(std::string("fork failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    // Own process group, so a timeout also kills the program's children.
    ::setpgid(0, 0);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    const int devnull = ::open("/dev/null", O_RDONLY);
    if (devnull >= 0) ::dup2(devnull, STDIN_FILENO);
    ::execvp(args[0], args.data());
    const int code = errno;
    ssize_t ignored = ::write(err_pipe[1], &code, sizeof(code));
    (void)ignored;
    ::_exit(127);
  }
  out_write.Reset();
  err_write.Reset();

  // The error pipe closes on a successful exec; data on it means exec failed.
  int exec_errno = 0;
  ssize_t got;
  do {
    got = ::read(err_read.get(), &exec_errno, sizeof(exec_errno));
  } while (got < 0 && errno == EINTR);
  if (got == static_cast<ssize_t>(sizeof(exec_errno))) {
    ::waitpid(pid, nullptr, 0);
    throw BlackboxIoError("cannot execute '" + argv[0] +
                          "': " + std::strerror(exec_errno));
  }

  ChildOutcome outcome;
  const auto deadline =
      std::chrono::steady_clock::now() +
      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(timeout));
  char buf[4096];
  while (true) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      outcome.timed_out = true;
      break;
    }
    pollfd pfd{out_read.get(), POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(left.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (ready == 0) continue;
    const ssize_t n = ::read(out_read.get(), buf, sizeof(buf));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    outcome.output.append(buf, static_cast<std::size_t>(n));
  }
  if (outcome.timed_out) {
    ::kill(-pid, SIGKILL);
    ::kill(pid, SIGKILL);
  }
  while (::waitpid(pid, &outcome.status, 0) < 0 && errno == EINTR) {
  }
  return outcome;
}

}  // namespace

ExternalBlackbox::ExternalBlackbox(std::string command, ProblemSpec spec,
                                   double timeout_seconds)
    : spec_(std::move(spec)), timeout_seconds_(timeout_seconds) {
  std::istringstream words(command);
  for (std::string w; words >> w;) argv_.push_back(w);
  if (argv_.empty()) throw ConfigError("external command is empty");
  if (!(timeout_seconds > 0.0)) throw ConfigError("timeout must be > 0");
  spec_.Validate();
}

Evaluation ExternalBlackbox::Evaluate(std::span<const double> x) {
  std::lock_guard<std::mutex> lock(mutex_);
  const Vector point(x.begin(), x.end());
  TempInput input(x);
  std::vector<std::string> argv = argv_;
  argv.push_back(input.path());
  const ChildOutcome run = RunChild(argv, timeout_seconds_);
  if (run.timed_out || !WIFEXITED(run.status) || WEXITSTATUS(run.status) != 0) {
    return MakeHiddenFailure(spec_, point);
  }
  std::istringstream lines(run.output);
  std::string line;
  std::getline(lines, line);
  std::istringstream tokens(line);
  Vector values;
  try {
    for (std::string t; tokens >> t;) values.push_back(ParseNumber(t));
  } catch (const ConfigError&) {
    return MakeHiddenFailure(spec_, point);
  }
  const std::size_t m = static_cast<std::size_t>(spec_.m);
  if (values.size() != m + static_cast<std::size_t>(spec_.j_count)) {
    return MakeHiddenFailure(spec_, point);
  }
  for (double v : values) {
    if (std::isnan(v)) return MakeHiddenFailure(spec_, point);
  }
  Vector f(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(m));
  Vector c(values.begin() + static_cast<std::ptrdiff_t>(m), values.end());
  return MakeEvaluation(spec_, point, std::move(f), std::move(c));
}

}  // namespace dmulti
