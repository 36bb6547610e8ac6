#pragma once

#include <utility>
#include <vector>

#include "evodom/grid.hpp"
#include "evodom/model_params.hpp"
#include "evodom/state.hpp"
#include "evodom/stepper.hpp"

namespace evodom {

// Initial data factory.  All variants produce nonnegative fields; negative
// sampled data is a ConfigError.
struct InitialCondition {
  enum class Kind { sine_bump, sampled, constant_clipped };

  Kind kind = Kind::sine_bump;
  double amplitude = 5.0;  // sine_bump: A * sin(pi (y - y_l)/(y_r - y_l))
  double value = 0.0;      // constant_clipped: value at interior nodes, 0 at walls
  Field v1, v2;            // sampled: one value per interior node

  static InitialCondition sine_bump(double amplitude);
  static InitialCondition sampled(Field v1, Field v2);
  static InitialCondition constant_clipped(double value);

  // Nodal fields for both species on `grid`.
  std::pair<Field, Field> materialize(const Grid& grid) const;
};

// Run from t = 0 to cfg.t_end, recording every cfg.record_every steps plus
// the final state.  t_end must be an integer multiple of dt (ConfigError).
// On blow-up, snapshots recorded so far are in *partial (when given) and
// BlowUpError carries the detection time.  Warns on std::cerr when
// dt * (reaction Lipschitz bound) > 0.5 — accuracy, not stability, is then
// suspect.
Trajectory simulate(const ModelParams& p, const Grid& grid,
                    const InitialCondition& ic, const StepperConfig& cfg,
                    Trajectory* partial = nullptr);

// Map a reference-frame snapshot to the physical frame at its own time.
PulledSnapshot pullback(const StatePair& s, const EvolutionLaw& law,
                        const Grid& grid);

// Fixed point of the period map: integrate period after period from the
// initial data until consecutive period-start states agree to `tol` in
// sup-norm, then keep going until a geometric extrapolation of the residual
// puts the state within tol of its limit.  `period` holds one full period of
// the converged cycle at the stepper's snapshot cadence.
struct AttractorResult {
  Trajectory period;      // snapshots over [kT, (k+1)T], times shifted to [0, T]
  double residual = 0.0;  // last period-map increment, sup over both species
  int periods = 0;
  bool converged = false;
  std::vector<double> residual_history;  // one entry per completed period
};

// The stepper config's t_end is ignored; dt must divide the period.  When
// max_periods elapse without convergence the best iterate is returned with
// converged = false (callers decide whether that is an error).
AttractorResult periodic_attractor(const ModelParams& p, const Grid& grid,
                                   const InitialCondition& ic,
                                   const StepperConfig& cfg, double tol = 1e-6,
                                   int max_periods = 200);

}  // namespace evodom
