#include "evodom/stepper.hpp"

#include <cmath>

#include "evodom/errors.hpp"
#include "evodom/tridiag.hpp"

namespace evodom {

std::pair<Field, Field> reaction(const ModelParams& p, double t,
                                 const Field& v1, const Field& v2) {
  const double a1 = p.a1(t), a2 = p.a2(t);
  const double b1 = p.b1(t), b2 = p.b2(t);
  const double c1 = p.c1(t), c2 = p.c2(t);
  const double dil = p.law.dilution(t);
  Field f1 =
      (v1.array() * (a1 - dil - c1 * v1.array() - b1 * v2.array())).matrix();
  Field f2 =
      (v2.array() * (a2 - dil - b2 * v1.array() - c2 * v2.array())).matrix();
  return {std::move(f1), std::move(f2)};
}

namespace {

double diffusivity(const ModelParams& p, int species, double t) {
  double r = p.law.rho(t);
  return ((species == 1) ? p.d1 : p.d2) / (r * r);
}

Field advance_species(const Field& v, const Field& f, double kappa_old,
                      double kappa_new, double dt, double h, Scheme scheme) {
  if (scheme == Scheme::imex_be) {
    // (I + dt kappa(t+dt) L_h) v_new = v + dt f
    return solve_shifted_laplacian(1.0, dt * kappa_new, v + dt * f, h);
  }
  // Crank-Nicolson diffusion with the coefficient averaged over the step:
  // (I + (dt/2) kbar L_h) v_new = v - (dt/2) kbar L_h v + dt f
  double kbar = 0.5 * (kappa_old + kappa_new);
  Field rhs = v - (0.5 * dt * kbar) * neg_laplacian(v, h) + dt * f;
  return solve_shifted_laplacian(1.0, 0.5 * dt * kbar, rhs, h);
}

}  // namespace

void step(StatePair& state, const ModelParams& p, const Grid& grid, double dt,
          Scheme scheme) {
  const double t = state.t;
  const double tn = t + dt;
  auto [f1, f2] = reaction(p, t, state.v1, state.v2);
  state.v1 = advance_species(state.v1, f1, diffusivity(p, 1, t),
                             diffusivity(p, 1, tn), dt, grid.h(), scheme);
  state.v2 = advance_species(state.v2, f2, diffusivity(p, 2, t),
                             diffusivity(p, 2, tn), dt, grid.h(), scheme);
  state.t = tn;
  const double sup = std::max(state.v1.cwiseAbs().maxCoeff(),
                              state.v2.cwiseAbs().maxCoeff());
  if (!std::isfinite(sup) || sup > 1e6) throw BlowUpError(tn);
}

}  // namespace evodom
