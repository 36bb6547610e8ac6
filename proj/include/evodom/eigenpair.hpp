#pragma once

#include "evodom/grid.hpp"
#include "evodom/state.hpp"

namespace evodom {

// Principal Dirichlet eigenpair of -d^2/dy^2 on the grid's interval:
// lambda is the smallest eigenvalue of the second-difference matrix, psi the
// matching positive eigenvector normalized to sup-norm 1.
struct Eigenpair {
  double lambda = 0.0;
  Field psi;
  int iterations = 0;
  double residual = 0.0;  // || L_h psi - lambda psi ||_inf after normalization
};

// Inverse power iteration with Rayleigh-quotient readout.  Iterates until
// the sup-norm residual of the sup-normalized pair drops below 1e-11 (or
// stalls at its rounding floor); throws NumericError if the result cannot
// reach a residual of 1e-10.
Eigenpair principal_eigenpair(const Grid& grid);

}  // namespace evodom
