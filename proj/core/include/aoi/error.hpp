#pragma once

#include <stdexcept>
#include <string>

namespace aoi {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected input: out-of-range probabilities, malformed files, bad sizes.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The exact solver cannot evaluate the requested policy.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// An iterative method did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, int iterations, double residual)
      : Error(what), iterations_(iterations), residual_(residual) {}

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

}  // namespace aoi
