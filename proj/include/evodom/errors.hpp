#pragma once

#include <stdexcept>
#include <string>

namespace evodom {

// Invalid user-supplied configuration (bad schema, bad parameter values,
// ill-posed model data).  CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure while running an otherwise valid problem.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The evolution law stopped being a domain scale: rho(t) <= 0.
struct DomainCollapseError : NumericError {
  double t;
  explicit DomainCollapseError(double t_)
      : NumericError("evolution law invalid: rho(" + std::to_string(t_) +
                     ") <= 0 (domain collapse)"),
        t(t_) {}
};

// A simulated field left the trusted range (sup-norm above the blow-up
// guard).  CLI maps this to exit code 3.  Carries the time of detection;
// the partially recorded trajectory stays with the caller.
struct BlowUpError : NumericError {
  double t;
  explicit BlowUpError(double t_)
      : NumericError("solution blow-up detected at t = " + std::to_string(t_) +
                     " (sup-norm exceeded 1e6)"),
        t(t_) {}
};

// The bracketing iteration lost its ordering by more than the tolerance
// allows; the advice is part of the message because the fix is always the
// same discretization knob.
struct MonotonicityError : NumericError {
  explicit MonotonicityError(const std::string& what_)
      : NumericError(what_ +
                     " (ordering violated; refine the discretization: "
                     "halve dt or increase grid_n)") {}
};

}  // namespace evodom
