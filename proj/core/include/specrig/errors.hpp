#pragma once

#include <stdexcept>
#include <string>

namespace specrig {

// Thrown on violated operation preconditions (bad shape, value out of domain).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a configurable resource cap is hit before an answer could be
// certified. Carries how far the computation got; never a wrong answer.
class ComputationAborted : public std::runtime_error {
 public:
  ComputationAborted(const std::string& what, long steps)
      : std::runtime_error(what), steps_(steps) {}
  long steps() const { return steps_; }

 private:
  long steps_;
};

}  // namespace specrig
