#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace loewner {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time or point outside the domain where a quantity is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed arguments (too few samples, bad grids, wrong side of a singularity).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Log-log fit could not be carried out on the supplied window.
class FitError : public Error {
 public:
  using Error::Error;
};

/// Scalar root search failed to bracket or converge.
class RootError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at (or numerically at) a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// The singular-solution start-up did not settle within its refinement budget.
class BootstrapError : public Error {
 public:
  using Error::Error;
};

/// Disk-to-half-plane conversion left the branch where tan((alpha-u)/2) is finite.
class ConversionDomainError : public Error {
 public:
  using Error::Error;
};

/// Backward integration for a slit tip failed.
class TraceError : public Error {
 public:
  using Error::Error;
};

/// A computed result violates an ordering or monotonicity property it must satisfy.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Adaptive integration stopped without reaching its end time or a contact.
/// Carries the last accepted state.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double t, std::complex<double> state)
      : Error(what), last_time_(t), last_state_(state) {}

  [[nodiscard]] double last_time() const noexcept { return last_time_; }
  [[nodiscard]] std::complex<double> last_state() const noexcept { return last_state_; }

 private:
  double last_time_;
  std::complex<double> last_state_;
};

}  // namespace loewner
