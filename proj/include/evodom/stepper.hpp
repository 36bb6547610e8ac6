#pragma once

#include <utility>

#include "evodom/grid.hpp"
#include "evodom/model_params.hpp"
#include "evodom/state.hpp"

namespace evodom {

// Time integration schemes.  Both treat diffusion implicitly and the
// reaction + dilution terms explicitly at the step's left endpoint:
//
//   imex_be  backward-Euler diffusion, coefficient at t + dt
//   imex_cn  Crank-Nicolson diffusion, coefficient averaged over the step
enum class Scheme { imex_be, imex_cn };

struct StepperConfig {
  double dt = 1e-3;
  double t_end = 60.0;
  Scheme scheme = Scheme::imex_be;
  int record_every = 100;  // snapshot stride in steps (t=0 and t_end always kept)
};

// Reaction + dilution right-hand side at time t:
//   f1 = v1 (a1 - c1 v1 - b1 v2) - (n rho'/rho) v1   and symmetrically.
std::pair<Field, Field> reaction(const ModelParams& p, double t,
                                 const Field& v1, const Field& v2);

// Advance state by one step of size dt.  state.t is advanced too.
// Throws BlowUpError when either species' sup-norm exceeds 1e6 after the
// step, DomainCollapseError if rho crosses zero inside the step.
void step(StatePair& state, const ModelParams& p, const Grid& grid, double dt,
          Scheme scheme);

}  // namespace evodom
