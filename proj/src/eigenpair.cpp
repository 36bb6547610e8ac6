#include "evodom/eigenpair.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "evodom/errors.hpp"
#include "evodom/tridiag.hpp"

namespace evodom {

Eigenpair principal_eigenpair(const Grid& grid) {
  const int n = grid.n();
  const double h = grid.h();

  Field x = Field::Ones(n);
  x /= x.norm();
  double lambda = 0.0;
  int it = 0;
  const int max_iter = 10000;
  // The Rayleigh quotient settles much faster than the eigenvector, so the
  // stopping rule watches the residual of the sup-normalized iterate (the
  // quantity the caller sees) and bails out once rounding makes it stall.
  double res = 0.0, best = std::numeric_limits<double>::infinity();
  int stalled = 0;
  for (; it < max_iter; ++it) {
    // One inverse-power sweep: w = L_h^{-1} x, then Rayleigh quotient.
    Field w = solve_shifted_laplacian(0.0, 1.0, x, h);
    w /= w.norm();
    Field lw = neg_laplacian(w, h);
    lambda = w.dot(lw);
    res = (lw - lambda * w).cwiseAbs().maxCoeff() / w.cwiseAbs().maxCoeff();
    x = std::move(w);
    if (res < 1e-11) break;
    if (res >= 0.5 * best) {
      if (++stalled >= 4) break;
    } else {
      stalled = 0;
    }
    best = std::min(best, res);
  }
  if (it == max_iter || res > 1e-10)
    throw NumericError(
        "principal_eigenpair: residual stalled at " + std::to_string(res) +
        " after " + std::to_string(it + 1) + " sweeps");

  // Principal eigenvector of the Dirichlet Laplacian has one sign; make it
  // positive and sup-normalize.
  Eigenpair out;
  if (x.sum() < 0.0) x = -x;
  out.psi = x / x.maxCoeff();
  out.lambda = lambda;
  out.iterations = it + 1;
  out.residual =
      (neg_laplacian(out.psi, h) - lambda * out.psi).cwiseAbs().maxCoeff();
  if (!(out.lambda > 0.0) || out.psi.minCoeff() <= 0.0 ||
      out.residual > 1e-10)
    throw NumericError(
        "principal_eigenpair: converged pair violates its invariants "
        "(residual " +
        std::to_string(out.residual) + ")");
  return out;
}

}  // namespace evodom
