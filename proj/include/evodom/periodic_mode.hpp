#pragma once

#include <vector>

#include "evodom/eigenpair.hpp"
#include "evodom/grid.hpp"
#include "evodom/model_params.hpp"
#include "evodom/state.hpp"

namespace evodom {

// Separated time-periodic mode of one species' linearization at zero:
// phi(y, t) = psi(y) * g(t) with
//
//   g(t) = exp( int_0^t [ a_s - n rho'/rho - d_s lambda / rho^2 + lam_delta ] ds )
//
// where lam_delta = mean(d_s lambda / rho^2) - mean(a_s) is exactly the rate
// that makes g close up over one period (the dilution contributes nothing to
// the mean when rho is T-periodic; its cumulative integral is kept so the
// shape is right even when rho fails to close up, in which case the residual
// below reports the mismatch).  Normalized to sup over space and time = 1.
struct PeriodicMode {
  std::vector<double> times;        // samples+1 points spanning [0, T]
  std::vector<Field> fields;        // psi * g(t_j) / max_j g
  double lam_delta = 0.0;           // principal growth exponent (sign: decay > 0)
  double periodicity_residual = 0;  // |g(T) - g(0)| before normalization
  bool periodic_ok = false;         // residual <= 1e-6
};

// species is 1 or 2.  `samples` is the number of time subintervals; the
// cumulative integral uses per-step two-point Gauss quadrature (nodes
// interior to each step, so coefficient kinks sitting on step boundaries
// are never sampled), keeping the residual a statement about the model
// rather than the quadrature.
PeriodicMode periodic_eigenfunction(const ModelParams& p, int species,
                                    const Eigenpair& pair, int samples = 2048);

}  // namespace evodom
