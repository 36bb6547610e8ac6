#pragma once

#include "evodom/state.hpp"

namespace evodom {

// Second-difference Dirichlet Laplacian on a uniform grid: returns
// (-v_yy)_h, i.e. (2 v_i - v_{i-1} - v_{i+1}) / h^2 with the ghost values
// v_0 = left, v_{n+1} = right.
Field neg_laplacian(const Field& v, double h, double left = 0.0,
                    double right = 0.0);

// Solve (c_diag I + c_lap L_h) x = rhs by the Thomas algorithm, where L_h is
// the Dirichlet second-difference operator above with boundary values
// (left, right) folded into the right-hand side.  Requires c_diag > 0,
// c_lap >= 0 (the matrix is then strictly diagonally dominant).
Field solve_shifted_laplacian(double c_diag, double c_lap, const Field& rhs,
                              double h, double left = 0.0, double right = 0.0);

}  // namespace evodom
