#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfor {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters: kernel specs, grids, configs, unsupported derivative orders.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class UnsupportedOrder : public InvalidArgument {
 public:
  explicit UnsupportedOrder(int q)
      : InvalidArgument("unsupported derivative order q=" + std::to_string(q) +
                        " (expected 0, 1 or 2)") {}
};

class GridTooSmall : public InvalidArgument {
 public:
  GridTooSmall(int n, int half_width)
      : InvalidArgument("grid of " + std::to_string(n) + " points is smaller than stencil width " +
                        std::to_string(2 * half_width + 1)) {}
};

/// Numerical failure inside a kernel evaluation; indicates a bug, not a domain error.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A solver produced a state it cannot continue from.
class SolverError : public Error {
 public:
  using Error::Error;
};

class BlowUp : public SolverError {
 public:
  explicit BlowUp(long step)
      : SolverError("non-finite state after step " + std::to_string(step)), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

class PositivityFailure : public SolverError {
 public:
  PositivityFailure(const std::string& quantity, std::size_t index, double value)
      : SolverError("non-positive " + quantity + " = " + std::to_string(value) + " at index " +
                    std::to_string(index)),
        index_(index),
        value_(value) {}
  std::size_t index() const { return index_; }
  double value() const { return value_; }

 private:
  std::size_t index_;
  double value_;
};

class ConvergenceFailure : public SolverError {
 public:
  ConvergenceFailure(const std::string& what, std::vector<double> history)
      : SolverError(what), history_(std::move(history)) {}
  const std::vector<double>& residual_history() const { return history_; }

 private:
  std::vector<double> history_;
};

/// Malformed case configuration. Line 0 means the problem is not tied to a line.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cfor
