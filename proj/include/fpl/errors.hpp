#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fpl {

/// Bad argument: out-of-range site, size mismatch, empty input.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A structural invariant (unitarity, hermiticity, unit trace) does not hold.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, double defect)
      : std::runtime_error(what + " (defect " + std::to_string(defect) + ")"),
        defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

/// Slice doubling hit its ceiling before the self-convergence target.
class ConvergenceError : public std::runtime_error {
 public:
  struct Step {
    int slices;
    double defect;
  };
  ConvergenceError(const std::string& what, std::vector<Step> history)
      : std::runtime_error(what), history_(std::move(history)) {}
  const std::vector<Step>& history() const noexcept { return history_; }

 private:
  std::vector<Step> history_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fpl
