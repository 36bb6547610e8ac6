#pragma once

#include <string>
#include <utility>
#include <vector>

#include "evodom/dynamics.hpp"
#include "evodom/eigenpair.hpp"
#include "evodom/grid.hpp"
#include "evodom/model_params.hpp"
#include "evodom/state.hpp"

namespace evodom {

// Lipschitz bounds for the reaction (including dilution) over the box where
// the bracketing iterates live:
//   k1 = a1^max + (b1^max + 2 c1^max) a1^max/c1^min + b1^max a2^max/c2^min
//        + n |rho'|^max / rho^min,
// and symmetrically k2 (superscripts: extrema over one period).  Shifting
// the reaction by k makes the sweep's frozen-source map monotone.
struct LipschitzConstants {
  double k1 = 0.0, k2 = 0.0;
};

LipschitzConstants lipschitz_constants(const ModelParams& p,
                                       int samples = 10000);

// Change of variables (v1, v2) -> (V1, V3) = (v1, M - v2) that turns the
// competitive coupling into cooperative (quasimonotone nondecreasing)
// coupling on the box [0, M1] x [0, M].
std::pair<Field, Field> to_transformed(const Field& v1, const Field& v2,
                                       double M);
std::pair<Field, Field> from_transformed(const Field& V1, const Field& V3,
                                         double M);

// Reaction of the transformed system at time t; both cross-partials are
// nonnegative as long as V3 <= M and V1 >= 0.
std::pair<Field, Field> transformed_reaction(const ModelParams& p, double t,
                                             const Field& V1, const Field& V3,
                                             double M);

// Scalars fixing one bracketing setup.
struct TransformContext {
  double M1 = 0.0, M2 = 0.0;  // sup_t (a_s - n rho'/rho)/c_s, clamped at 0
  double M = 0.0;             // ceiling for v2: max(M2, sup of initial v2)
  double M1_eff = 0.0;        // ceiling for v1: max(M1, sup of initial v1)
  double eps0 = 0.0;          // largest sub-mode amplitude the model admits
  double eps = 0.0;           // eps0 / 2, used for nontrivial lower iterates
  LipschitzConstants k;
};

// eps0 = min over a fine time grid of
//   (1/c_s^max) [ a_s(t) (1 - 1/R_s) - b_s(t) * M_other ],  s = 1, 2,
// clamped below at 0 (it is positive only under the coexistence side
// conditions; for all three presets it clamps to 0).
TransformContext transform_context(const ModelParams& p, double lambda,
                                   double sup_v1_init = 0.0,
                                   double sup_v2_init = 0.0,
                                   int quad_nodes = 4096, int samples = 10000);

// A candidate bracketing pair on an explicit time grid.  Components (four
// scalar fields over space-time, each with its own boundary values):
//   up1 = upper barrier for v1, paired with lo2 below it on the right-hand side
//   lo1 = lower barrier for v1, paired with up2
//   up2 = upper barrier for v2, lo2 the lower one
struct CandidateComponent {
  std::vector<Field> values;          // one Field per time node
  std::vector<double> left, right;    // boundary values per time node
};

struct CandidatePair {
  std::vector<double> times;  // increasing; spanning [0, T] for periodic use
  CandidateComponent up1, lo1, up2, lo2;
};

// Tool-generated starting pair: up1 = M1_eff, up2 = M (constants), lower
// barriers eps * (separated periodic mode) when ctx.eps > 0, otherwise zero.
CandidatePair initial_iterates(const ModelParams& p, const Grid& grid,
                               const TransformContext& ctx,
                               const std::vector<double>& times,
                               const Eigenpair* pair = nullptr);

// Outcome of the defect check on a candidate pair.
struct PairCheckResult {
  bool ok = false;
  double worst_defect = 0.0;  // most negative margin over all inequalities
  std::string worst_at;       // human-readable location of the worst margin
};

// Verifies, up to tol * max(1, scale of the candidate), that the pair
// brackets the dynamics: differential inequalities for all four components
// (forward difference in time, second difference in space, reaction at the
// step's left endpoint, each upper barrier paired with the opposing lower
// one), ordering up >= lo, nonnegative upper / nonpositive-at-0 lower
// boundary values, and the periodic wrap-around inequalities when the grid
// spans a full period.
PairCheckResult check_coupled_pair(const CandidatePair& cand,
                                   const ModelParams& p, const Grid& grid,
                                   double tol = 1e-6);

// One row of the iteration log.
struct IterationRecord {
  int iter = 0;
  double gap_upper = 0.0;  // sup change of the upper pair this sweep
  double gap_lower = 0.0;
  double periodicity_residual = 0.0;  // sup |V(T) - V(0)| being enforced
  double violation = 0.0;  // worst ordering defect seen this sweep
};

// Converged bracketing limits, reported in the original (v1, v2) variables.
// The two limits bracket every solution of interest: max_v1_branch has the
// largest v1 and smallest v2, max_v2_branch the reverse.  For pinned initial
// data both branches coincide (the bracket collapses onto the solution).
struct MonotoneResult {
  std::vector<double> times;  // snapshot times (thinned by record_every)
  Trajectory max_v1_branch;
  Trajectory max_v2_branch;
  std::vector<IterationRecord> trace;
  int iterations = 0;
  bool converged = false;
  double final_bracket_gap = 0.0;
  double worst_violation = 0.0;
  TransformContext ctx;
  // First few iterate pairs (thinned), kept when keep_first > 0.
  std::vector<CandidatePair> first_iterates;
};

// Time-periodic bracketing iteration over one period: linearized implicit
// sweeps (shift k V implicit, frozen source k V_prev + reaction explicit at
// the step's left endpoint) with the period-start state wrapped from the
// previous iterate's period end.  Stops when consecutive sweeps move both
// sequences less than tol and a geometric extrapolation puts the limits
// within tol; throws MonotonicityError if the ordering chain breaks beyond
// tolerance.  cfg.scheme is ignored (the sweep is its own scheme); cfg.dt
// must divide the period; snapshots thin by cfg.record_every.
MonotoneResult monotone_iterate_periodic(const ModelParams& p,
                                         const Grid& grid,
                                         const StepperConfig& cfg,
                                         double tol = 1e-6,
                                         int max_iter = 1200,
                                         int keep_first = 0);

// Same sweeps with the initial data pinned at every iterate; the sequences
// close onto the solution of the initial-value problem over one period.
MonotoneResult monotone_iterate_ivp(const ModelParams& p, const Grid& grid,
                                    const InitialCondition& ic,
                                    const StepperConfig& cfg,
                                    double tol = 1e-6, int max_iter = 1200,
                                    int keep_first = 0);

}  // namespace evodom
