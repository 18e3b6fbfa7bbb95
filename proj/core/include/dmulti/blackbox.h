#ifndef DMULTI_BLACKBOX_H_
#define DMULTI_BLACKBOX_H_

#include <functional>
#include <span>
#include <stdexcept>
#include <string>

#include "dmulti/core.h"

namespace dmulti {

// A blackbox could not be run at all (spawn failure, unwritable temp file).
// Distinct from a hidden failure, which is a normal evaluation outcome. The
// CLI maps it to exit status 3.
class BlackboxIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Blackbox {
 public:
  virtual ~Blackbox() = default;
  virtual const ProblemSpec& spec() const = 0;
  // Called only for points inside the bound box.
  virtual Evaluation Evaluate(std::span<const double> x) = 0;
};

// Adapts a callable returning (f, c) into a Blackbox.
class FunctionBlackbox : public Blackbox {
 public:
  using Fn = std::function<void(std::span<const double> x, Vector& f,
                                Vector& c)>;

  FunctionBlackbox(ProblemSpec spec, Fn fn)
      : spec_(std::move(spec)), fn_(std::move(fn)) {}

  const ProblemSpec& spec() const override { return spec_; }
  Evaluation Evaluate(std::span<const double> x) override {
    Vector f, c;
    fn_(x, f, c);
    return MakeEvaluation(spec_, Vector(x.begin(), x.end()), std::move(f),
                          std::move(c));
  }

 private:
  ProblemSpec spec_;
  Fn fn_;
};

}  // namespace dmulti

#endif  // DMULTI_BLACKBOX_H_
