#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "evodom/grid.hpp"
#include "evodom/model_params.hpp"
#include "evodom/monotone.hpp"
#include "evodom/state.hpp"

namespace evodom {

// Shortest decimal that round-trips to the same double ("0.1", "1e-30",
// "nan").  The single number formatter for every CSV and table cell, so
// outputs are byte-stable across runs and platforms with IEEE doubles.
std::string format_double(double v);

// Trajectory schema: header `t,y,v1,v2,x,u1,u2`, rows grouped by snapshot
// time then node ascending, boundary rows (y_left and y_right, fields 0)
// included.  x/u columns are the physical-frame pullback.  When blowup_t is
// set, a final marker row `<t>,nan,nan,nan,nan,nan,nan` records where the
// run was truncated.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const EvolutionLaw& law, const Grid& grid,
                          std::optional<double> blowup_t = std::nullopt);

// Like write_trajectory_csv but with explicit per-snapshot boundary values
// for the two species (used to emit bracketing candidates, whose boundary
// values need not vanish).
void write_candidate_csv(std::ostream& os, const std::vector<double>& times,
                         const std::vector<Field>& v1,
                         const std::vector<Field>& v2,
                         const std::vector<double>& v1_boundary,
                         const std::vector<double>& v2_boundary,
                         const EvolutionLaw& law, const Grid& grid);

// One barrier pair read back from a trajectory-schema CSV: per-time interior
// fields plus the boundary values carried by the y_left/y_right rows.
struct CandidateFile {
  std::vector<double> times;
  std::vector<Field> v1, v2;
  std::vector<double> v1_left, v1_right, v2_left, v2_right;
};

// Throws ConfigError if the header, row grouping, or node coordinates do
// not match the trajectory schema on `grid`.
CandidateFile read_candidate_csv(const std::string& path, const Grid& grid);

// Convergence log: header `iter,gap_upper,gap_lower,periodicity_residual,
// violation`, one row per sweep.
void write_convergence_csv(std::ostream& os,
                           const std::vector<IterationRecord>& trace);

}  // namespace evodom
