#include "evodom/tridiag.hpp"

#include "evodom/errors.hpp"

namespace evodom {

Field neg_laplacian(const Field& v, double h, double left, double right) {
  const auto n = v.size();
  Field out(n);
  const double inv_h2 = 1.0 / (h * h);
  if (n == 1) {
    out[0] = (2.0 * v[0] - left - right) * inv_h2;
    return out;
  }
  out[0] = (2.0 * v[0] - left - v[1]) * inv_h2;
  for (Eigen::Index i = 1; i + 1 < n; ++i)
    out[i] = (2.0 * v[i] - v[i - 1] - v[i + 1]) * inv_h2;
  out[n - 1] = (2.0 * v[n - 1] - v[n - 2] - right) * inv_h2;
  return out;
}

Field solve_shifted_laplacian(double c_diag, double c_lap, const Field& rhs,
                              double h, double left, double right) {
  if (c_diag < 0.0 || c_lap < 0.0 || c_diag + c_lap == 0.0)
    throw NumericError(
        "solve_shifted_laplacian: need c_diag, c_lap >= 0, not both zero");
  const auto n = rhs.size();
  const double off = -c_lap / (h * h);        // sub- and super-diagonal
  const double diag = c_diag - 2.0 * off;     // c_diag + 2 c_lap / h^2

  Field b = rhs;
  b[0] -= off * left;  // fold Dirichlet values into the right-hand side
  b[n - 1] -= off * right;

  // Thomas sweep; the matrix is strictly diagonally dominant, no pivoting.
  Field cp(n);
  cp[0] = off / diag;
  b[0] /= diag;
  for (Eigen::Index i = 1; i < n; ++i) {
    double m = diag - off * cp[i - 1];
    cp[i] = off / m;
    b[i] = (b[i] - off * b[i - 1]) / m;
  }
  for (Eigen::Index i = n - 2; i >= 0; --i) b[i] -= cp[i] * b[i + 1];
  return b;
}

}  // namespace evodom
