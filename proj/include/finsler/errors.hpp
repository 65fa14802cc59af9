#pragma once

#include <stdexcept>
#include <string>

namespace finsler {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A program was evaluated outside of its chart, or produced non-finite output.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Tangent vector too close to the zero section (|y| < 1e-12).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Metric tensor failed the positive-definiteness test.
class MetricDegeneracyError : public Error {
 public:
  using Error::Error;
};

class SingularMetricError : public Error {
 public:
  using Error::Error;
};

/// Requested operation needs data the metric family does not carry
/// (x-derivatives of a pointwise family, nesting depth, frames, ...).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class ChartExitError : public Error {
 public:
  ChartExitError(const std::string& what, double exit_time)
      : Error(what), exit_time_(exit_time) {}
  double exit_time() const noexcept { return exit_time_; }

 private:
  double exit_time_;
};

class StepFailureError : public Error {
 public:
  using Error::Error;
};

/// Parallel-transported vector collapsed towards the zero section.
class TransportCollapseError : public Error {
 public:
  using Error::Error;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

}  // namespace finsler
