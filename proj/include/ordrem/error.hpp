#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ordrem {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad file contents, out-of-range vertices, overlapping sets.
class InputError : public Error {
 public:
  using Error::Error;
};

// An exhaustive search was asked to run beyond its configured size guard.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

// A procedure's hypothesis does not hold on the given instance. Carries the
// pipeline step (if any) and the offending count rendered as decimal text.
class PreconditionError : public Error {
 public:
  PreconditionError(std::string step, std::string what, std::string count = {})
      : Error(step.empty() ? what : step + ": " + what + (count.empty() ? "" : " (count " + count + ")")),
        step_(std::move(step)),
        count_(std::move(count)) {}

  const std::string& step() const noexcept { return step_; }
  const std::string& count() const noexcept { return count_; }

 private:
  std::string step_;
  std::string count_;
};

// Requested parameters cannot produce an instance at this scale.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// The request lies outside the regime where the operation is meaningful
// (e.g. a hard instance for a pattern with polynomial removal bounds).
class RefusalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ordrem
