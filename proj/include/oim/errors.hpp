#pragma once

#include <stdexcept>
#include <string>

namespace oim {

// Input text could not be parsed; `line` is 1-based within the stream.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Vector/matrix sizes do not agree with the instance dimension.
class DimensionError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exhaustive enumeration requested beyond the 2^N guard.
class GuardError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Newton linear solve hit a pivot below the conditioning threshold.
class SingularJacobianError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Newton iteration did not reach the residual target.
class MaxIterationsError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Jacobi sweeps exceeded the sweep cap; indicates a bug for symmetric input.
class EigenConvergenceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Integrator produced a NaN/Inf component.
class NonFiniteStateError : public std::runtime_error {
 public:
  NonFiniteStateError(long step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what),
        step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

// A matrix expected to be symmetric is not (e.g. tampered couplings).
class AsymmetryError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace oim
