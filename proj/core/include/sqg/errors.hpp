#pragma once

#include <stdexcept>
#include <string>

namespace sqg {

/// Bad argument to a library operation (violated precondition).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Inconsistent setup: grid mismatch, bad config file, unknown key.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested construction cannot be resolved on the given grid.
class ResolutionError : public std::runtime_error {
 public:
  explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

/// Time integration produced NaN/Inf or violated a stability guard.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, double last_good_time)
      : std::runtime_error(what), last_good_time(last_good_time) {}
  double last_good_time;
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sqg
