#pragma once

#include "evodom/evolution_law.hpp"
#include "evodom/periodic_fn.hpp"

namespace evodom {

// Data of the two-species competition model on the evolving interval:
//
//   v1_t = (d1 / rho^2) v1_yy - (n rho'/rho) v1 + v1 (a1 - c1 v1 - b1 v2)
//   v2_t = (d2 / rho^2) v2_yy - (n rho'/rho) v2 + v2 (a2 - b2 v1 - c2 v2)
//
// on the reference interval (y_left, y_right) with homogeneous Dirichlet
// boundary values.  a_i are intrinsic rates, c_i self-limitation, b_i
// cross-competition.  All coefficients share the evolution law's period.
struct ModelParams {
  double d1, d2;  // diffusion rates, strictly positive
  PeriodicFn a1, a2, b1, b2, c1, c2;
  EvolutionLaw law;
  double y_left = 0.0, y_right = 1.0;

  double period() const { return law.period(); }

  // Throws ConfigError on: non-positive diffusion, degenerate interval,
  // coefficient negative somewhere on a fine time grid, or a coefficient
  // period differing from the law's.
  void validate() const;
};

}  // namespace evodom
