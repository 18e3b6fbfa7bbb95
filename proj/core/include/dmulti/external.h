// Blackbox backed by an external program.
//
// Protocol: x is written as one line of space-separated decimals to a
// temporary file, the command runs with that file as its last argument,
// and its first stdout line must hold m + J numbers (f then c). A nonzero
// exit, a timeout, a wrong count or a NaN token is a hidden failure.

#ifndef DMULTI_EXTERNAL_H_
#define DMULTI_EXTERNAL_H_

#include <mutex>
#include <string>
#include <vector>

#include "dmulti/blackbox.h"

namespace dmulti {

class ExternalBlackbox : public Blackbox {
 public:
  // `command` is split on whitespace; no shell is involved. Throws
  // ConfigError for an empty command or a non-positive timeout.
  ExternalBlackbox(std::string command, ProblemSpec spec,
                   double timeout_seconds = 60.0);

  const ProblemSpec& spec() const override { return spec_; }
  // Throws BlackboxIoError when the program cannot be started.
  Evaluation Evaluate(std::span<const double> x) override;

 private:
  std::vector<std::string> argv_;
  ProblemSpec spec_;
  double timeout_seconds_;
  std::mutex mutex_;
};

}  // namespace dmulti

#endif  // DMULTI_EXTERNAL_H_
