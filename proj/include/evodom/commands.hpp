#pragma once

#include <ostream>
#include <string>

#include "evodom/config.hpp"

namespace evodom {

// Subcommand bodies.  Each writes its files under cfg.out_dir (created if
// missing), prints human-readable status to `out`, and returns the process
// exit code: 0 success, 2 config error (thrown as ConfigError before these
// run), 3 blow-up, 4 non-convergence.

// indexes.json + table.
int cmd_indexes(const RunConfig& cfg, std::ostream& out);

// trajectory.csv + meta.json; on blow-up keeps the partial trajectory with a
// truncation marker row and returns 3.
int cmd_simulate(const RunConfig& cfg, std::ostream& out);

// attractor.csv (direct period-map iteration), convergence.csv (bracketing
// iteration log), agreement.json (sup distance between the two methods'
// answers), meta.json.  Returns 4 when either method fails to converge;
// files are still written with converged=false recorded.
int cmd_periodic(const RunConfig& cfg, std::ostream& out);

struct SweepSpec {
  std::string axis;  // m_amplitude | d1 | d2
  double from = 0.0, to = 0.0;
  int steps = 0;  // >= 2 (number of rows; parameter range split in steps-1)
};

// sweep.csv with rows `param,R1,R2,rho_bar_inv_sq,regime` + meta.json.
// Rows whose law turns invalid (rho <= 0) carry nan values and the regime
// label "invalid"; the sweep continues.
int cmd_sweep(const RunConfig& cfg, const SweepSpec& spec, std::ostream& out);

struct VerifyArgs {
  std::string upper_path;  // upper pair: v1/v2 columns = upper barriers
  std::string lower_path;  // lower pair: v1/v2 columns = lower barriers
  std::string emit_dir;    // when set: write generated candidates here instead
};

// Check a candidate barrier pair read from CSV files; prints ok/violations,
// exit 0 iff ok.  With emit_dir set, writes the tool-generated initial
// candidates (upper.csv, lower.csv) for the configured model and exits 0.
int cmd_verify(const RunConfig& cfg, const VerifyArgs& args, std::ostream& out);

}  // namespace evodom
