#include "evodom/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "evodom/csv_io.hpp"
#include "evodom/dynamics.hpp"
#include "evodom/eigenpair.hpp"
#include "evodom/errors.hpp"
#include "evodom/indexes.hpp"
#include "evodom/monotone.hpp"
#include "evodom/presets.hpp"

namespace evodom {

namespace {

using nlohmann::ordered_json;

std::filesystem::path ensure_out_dir(const RunConfig& cfg) {
  std::filesystem::path dir(cfg.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw ConfigError("cannot create output directory \"" + cfg.out_dir +
                      "\": " + ec.message());
  return dir;
}

std::ofstream open_out(const std::filesystem::path& dir,
                       const std::string& name) {
  std::ofstream os(dir / name, std::ios::binary);
  if (!os)
    throw ConfigError("cannot open output file: " + (dir / name).string());
  return os;
}

void write_json_file(const std::filesystem::path& dir, const std::string& name,
                     const ordered_json& j) {
  std::ofstream os = open_out(dir, name);
  os << j.dump(2) << '\n';
}

// Written by every command so any output directory is reproducible on its own.
void write_meta(const RunConfig& cfg, const Grid& grid, double lambda0,
                const std::filesystem::path& dir,
                const ordered_json& extra = ordered_json::object()) {
  ordered_json meta;
  meta["config"] = cfg.resolved;
  meta["grid"] = {{"n", grid.n()},
                  {"h", grid.h()},
                  {"y_left", grid.y_left()},
                  {"y_right", grid.y_right()}};
  meta["lambda0"] = lambda0;
  for (const auto& [k, v] : extra.items()) meta[k] = v;
  write_json_file(dir, "meta.json", meta);
}

double sup_abs(const Field& f) {
  return f.size() == 0 ? 0.0 : f.cwiseAbs().maxCoeff();
}

// Number of dt-steps in `span`, required to be a whole number of steps.
long checked_steps(double span, double dt, const char* what) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  const long steps = std::lround(span / dt);
  if (steps < 1 || std::abs(static_cast<double>(steps) * dt - span) > 1e-6 * dt)
    throw ConfigError(std::string(what) +
                      " must be a positive integer multiple of dt");
  return steps;
}

}  // namespace

int cmd_indexes(const RunConfig& cfg, std::ostream& out) {
  const ModelParams& p = cfg.params();
  const Grid grid(p.y_left, p.y_right, cfg.grid_n);
  const IndexReport r = classify_regime(p, grid, cfg.quad_nodes);
  const std::filesystem::path dir = ensure_out_dir(cfg);

  ordered_json j;
  j["lambda0"] = r.lambda0;
  j["R1"] = r.R1;
  j["R2"] = r.R2;
  j["lam1"] = r.lam1;
  j["lam2"] = r.lam2;
  j["R1_star"] = r.R1_star;
  j["R2_star"] = r.R2_star;
  j["D1"] = r.D1;
  j["D2"] = r.D2;
  j["D1_star"] = r.D1_star;
  j["D2_star"] = r.D2_star;
  j["rho_bar_inv_sq"] = r.rho_bar_inv_sq;
  j["regime"] = std::string(regime_name(r.regime));
  j["side_ok_1"] = r.side_ok_1;
  j["side_ok_2"] = r.side_ok_2;
  j["M1"] = r.M1;
  j["M2"] = r.M2;
  write_json_file(dir, "indexes.json", j);
  write_meta(cfg, grid, r.lambda0, dir);

  auto row = [&out](const char* name, const std::string& value) {
    out << "  " << std::left << std::setw(18) << name << value << '\n';
  };
  out << "persistence indexes (grid n = " << grid.n() << ")\n";
  row("lambda0", format_double(r.lambda0));
  row("rho_bar_inv_sq", format_double(r.rho_bar_inv_sq));
  row("R1", format_double(r.R1) + "   (fixed domain: " +
               format_double(r.R1_star) + ")");
  row("R2", format_double(r.R2) + "   (fixed domain: " +
               format_double(r.R2_star) + ")");
  row("lam1", format_double(r.lam1));
  row("lam2", format_double(r.lam2));
  row("D1 / D1*", format_double(r.D1) + " / " + format_double(r.D1_star));
  row("D2 / D2*", format_double(r.D2) + " / " + format_double(r.D2_star));
  row("M1 / M2", format_double(r.M1) + " / " + format_double(r.M2));
  switch (compare_thresholds(r)) {
    case ThresholdOrder::equal:
      row("domain motion", "neutral (thresholds coincide with fixed domain)");
      break;
    case ThresholdOrder::evolving_larger:
      row("domain motion", "favors persistence (D > D*)");
      break;
    case ThresholdOrder::evolving_smaller:
      row("domain motion", "favors extinction (D < D*)");
      break;
  }
  row("regime", std::string(regime_name(r.regime)));
  row("side conditions",
      std::string(r.side_ok_1 ? "1: ok" : "1: fails") +
          (r.side_ok_2 ? ", 2: ok" : ", 2: fails") +
          (r.coexistence_certified ? "  -> coexistence certified" : ""));
  if (r.tie_1 || r.tie_2)
    out << "  warning: |R - 1| < 1e-6 for species"
        << (r.tie_1 && r.tie_2 ? " 1 and 2" : (r.tie_1 ? " 1" : " 2"))
        << "; the regime label is not reliable at this resolution\n";
  out << "  wrote " << (dir / "indexes.json").string() << '\n';
  return 0;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const ModelParams& p = cfg.params();
  const Grid grid(p.y_left, p.y_right, cfg.grid_n);
  const double lambda0 = principal_eigenpair(grid).lambda;
  const std::filesystem::path dir = ensure_out_dir(cfg);

  Trajectory partial;
  try {
    const Trajectory traj = simulate(p, grid, cfg.initial, cfg.stepper, &partial);
    {
      std::ofstream os = open_out(dir, "trajectory.csv");
      write_trajectory_csv(os, traj, p.law, grid);
    }
    write_meta(cfg, grid, lambda0, dir);
    const StatePair& last = traj.back();
    out << "simulated to t = " << format_double(last.t) << " (" << traj.size()
        << " snapshots); final sup v1 = " << format_double(sup_abs(last.v1))
        << ", sup v2 = " << format_double(sup_abs(last.v2)) << '\n';
    out << "  wrote " << (dir / "trajectory.csv").string() << '\n';
    return 0;
  } catch (const BlowUpError& e) {
    {
      std::ofstream os = open_out(dir, "trajectory.csv");
      write_trajectory_csv(os, partial, p.law, grid, e.t);
    }
    write_meta(cfg, grid, lambda0, dir);
    out << "blow-up detected at t = " << format_double(e.t)
        << "; wrote the " << partial.size()
        << " snapshots recorded before truncation\n";
    out << "  wrote " << (dir / "trajectory.csv").string() << '\n';
    return 3;
  }
}

int cmd_periodic(const RunConfig& cfg, std::ostream& out) {
  const ModelParams& p = cfg.params();
  const Grid grid(p.y_left, p.y_right, cfg.grid_n);
  const double lambda0 = principal_eigenpair(grid).lambda;
  const std::filesystem::path dir = ensure_out_dir(cfg);

  const AttractorResult att = periodic_attractor(
      p, grid, cfg.initial, cfg.stepper, cfg.periodic_tol,
      cfg.periodic_max_periods);
  {
    std::ofstream os = open_out(dir, "attractor.csv");
    write_trajectory_csv(os, att.period, p.law, grid);
  }

  std::optional<MonotoneResult> mono;
  std::string mono_error;
  try {
    mono = monotone_iterate_periodic(p, grid, cfg.stepper, cfg.monotone_tol,
                                     cfg.monotone_max_iter);
  } catch (const MonotonicityError& e) {
    mono_error = e.what();
  }

  {
    std::ofstream os = open_out(dir, "convergence.csv");
    write_convergence_csv(os, mono ? mono->trace
                                   : std::vector<IterationRecord>{});
  }

  // Distance from the direct attractor to the nearer of the two bracketing
  // limits, sup over one period and both species.
  std::optional<double> discrepancy;
  if (mono && mono->max_v1_branch.size() == att.period.size()) {
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t i = 0; i < att.period.size(); ++i) {
      const StatePair& a = att.period[i];
      d1 = std::max({d1, sup_abs(a.v1 - mono->max_v1_branch[i].v1),
                     sup_abs(a.v2 - mono->max_v1_branch[i].v2)});
      d2 = std::max({d2, sup_abs(a.v1 - mono->max_v2_branch[i].v1),
                     sup_abs(a.v2 - mono->max_v2_branch[i].v2)});
    }
    discrepancy = std::min(d1, d2);
  }

  ordered_json j;
  j["attractor"] = {{"converged", att.converged},
                    {"periods", att.periods},
                    {"residual", att.residual},
                    {"tol", cfg.periodic_tol}};
  if (mono) {
    j["monotone"] = {{"converged", mono->converged},
                     {"iterations", mono->iterations},
                     {"final_bracket_gap", mono->final_bracket_gap},
                     {"worst_violation", mono->worst_violation},
                     {"tol", cfg.monotone_tol}};
  } else {
    j["monotone"] = {{"converged", false}, {"error", mono_error}};
    j["monotone_error"] = mono_error;
  }
  if (discrepancy)
    j["discrepancy"] = *discrepancy;
  else
    j["discrepancy"] = nullptr;
  write_json_file(dir, "agreement.json", j);
  write_meta(cfg, grid, lambda0, dir);

  out << "attractor: " << (att.converged ? "converged" : "NOT converged")
      << " after " << att.periods
      << " periods (residual " << format_double(att.residual) << ")\n";
  if (mono) {
    out << "bracketing iteration: "
        << (mono->converged ? "converged" : "NOT converged") << " after "
        << mono->iterations << " sweeps (bracket gap "
        << format_double(mono->final_bracket_gap) << ")\n";
    if (discrepancy)
      out << "attractor-to-bracket discrepancy: " << format_double(*discrepancy)
          << '\n';
  } else {
    out << "bracketing iteration failed: " << mono_error << '\n';
  }
  out << "  wrote " << (dir / "attractor.csv").string() << ", convergence.csv, "
      << "agreement.json\n";
  return (att.converged && mono && mono->converged) ? 0 : 4;
}

namespace {

struct SweepRow {
  double param = 0.0;
  bool valid = false;
  double R1 = 0.0, R2 = 0.0, rho_bar_inv_sq = 0.0;
  std::string regime;
};

// The amplitude axis varies rho = 1 - m |sin(pi t)| on the unit period, so
// every coefficient must be constant in time to stay meaningful across rows.
ModelParams amplitude_params(const ModelParams& base, double m) {
  const auto is_const = [](const PeriodicFn& f) {
    return f.form() == PeriodicFn::Form::constant;
  };
  if (!is_const(base.a1) || !is_const(base.a2) || !is_const(base.b1) ||
      !is_const(base.b2) || !is_const(base.c1) || !is_const(base.c2))
    throw ConfigError(
        "sweep axis m_amplitude requires all six coefficients to be "
        "constant in time (the sweep replaces the evolution law and its "
        "period)");
  const double T = 1.0;
  auto keep = [&](const PeriodicFn& f) {
    return PeriodicFn::constant(f(0.0), T);
  };
  ModelParams p{base.d1,
                base.d2,
                keep(base.a1),
                keep(base.a2),
                keep(base.b1),
                keep(base.b2),
                keep(base.c1),
                keep(base.c2),
                EvolutionLaw(PeriodicFn::affine_abs_sin(1.0, -m, M_PI, T),
                             base.law.dimension()),
                base.y_left,
                base.y_right};
  return p;
}

}  // namespace

int cmd_sweep(const RunConfig& cfg, const SweepSpec& spec, std::ostream& out) {
  const ModelParams& base = cfg.params();
  if (spec.axis != "m_amplitude" && spec.axis != "d1" && spec.axis != "d2")
    throw ConfigError("unknown sweep axis \"" + spec.axis +
                      "\" (expected m_amplitude, d1, or d2)");
  if (spec.steps < 2) throw ConfigError("sweep needs --steps >= 2");
  if (!std::isfinite(spec.from) || !std::isfinite(spec.to))
    throw ConfigError("sweep range must be finite");
  // A base model the axis cannot scan fails the whole run up front; the
  // per-row catches below are only for out-of-range parameter values.
  if (spec.axis == "m_amplitude") (void)amplitude_params(base, spec.from);

  const Grid grid(base.y_left, base.y_right, cfg.grid_n);
  const double lambda0 = principal_eigenpair(grid).lambda;

  std::vector<SweepRow> rows;
  rows.reserve(spec.steps);
  for (int i = 0; i < spec.steps; ++i) {
    SweepRow row;
    row.param = spec.from +
                static_cast<double>(i) * (spec.to - spec.from) /
                    static_cast<double>(spec.steps - 1);
    try {
      ModelParams p = [&]() {
        if (spec.axis == "m_amplitude") return amplitude_params(base, row.param);
        ModelParams q = base;
        (spec.axis == "d1" ? q.d1 : q.d2) = row.param;
        return q;
      }();
      p.validate();
      const IndexReport r = classify_regime(p, grid, cfg.quad_nodes);
      row.R1 = r.R1;
      row.R2 = r.R2;
      row.rho_bar_inv_sq = r.rho_bar_inv_sq;
      row.regime = std::string(regime_name(r.regime));
      row.valid = true;
    } catch (const ConfigError&) {
    } catch (const NumericError&) {
    }
    if (!row.valid) {
      row.R1 = row.R2 = row.rho_bar_inv_sq =
          std::numeric_limits<double>::quiet_NaN();
      row.regime = "invalid";
    }
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) {
                     return a.param < b.param;
                   });

  const std::filesystem::path dir = ensure_out_dir(cfg);
  {
    std::ofstream os = open_out(dir, "sweep.csv");
    os << "param,R1,R2,rho_bar_inv_sq,regime\n";
    for (const SweepRow& r : rows)
      os << format_double(r.param) << ',' << format_double(r.R1) << ','
         << format_double(r.R2) << ',' << format_double(r.rho_bar_inv_sq)
         << ',' << r.regime << '\n';
  }
  ordered_json sweep_meta = {{"axis", spec.axis},
                             {"from", spec.from},
                             {"to", spec.to},
                             {"steps", spec.steps}};
  write_meta(cfg, grid, lambda0, dir, ordered_json{{"sweep", sweep_meta}});

  const long invalid = std::count_if(rows.begin(), rows.end(),
                                     [](const SweepRow& r) { return !r.valid; });
  out << "swept " << spec.axis << " over [" << format_double(spec.from) << ", "
      << format_double(spec.to) << "] in " << spec.steps << " rows";
  if (invalid > 0) out << " (" << invalid << " invalid)";
  out << '\n';
  out << "  wrote " << (dir / "sweep.csv").string() << '\n';
  return 0;
}

int cmd_verify(const RunConfig& cfg, const VerifyArgs& args, std::ostream& out) {
  const ModelParams& p = cfg.params();
  const Grid grid(p.y_left, p.y_right, cfg.grid_n);
  const Eigenpair eig = principal_eigenpair(grid);
  const std::filesystem::path dir = ensure_out_dir(cfg);

  if (!args.emit_dir.empty()) {
    // Generate the tool's own starting pair on the stepper's snapshot grid.
    const double T = p.period();
    const long S = checked_steps(T, cfg.stepper.dt, "the period");
    std::vector<double> times(static_cast<std::size_t>(S) + 1);
    for (long j = 0; j <= S; ++j)
      times[static_cast<std::size_t>(j)] = static_cast<double>(j) *
                                           cfg.stepper.dt;
    // Pointwise ceilings sampled on a refinement of the emitted time grid, so
    // the constant upper barrier dominates the reaction at every emitted time.
    const int per = static_cast<int>((10000 + S - 1) / S);
    const int samples = static_cast<int>(S) * std::max(1, per);
    const TransformContext ctx =
        transform_context(p, eig.lambda, 0.0, 0.0, cfg.quad_nodes, samples);
    const CandidatePair cand = initial_iterates(p, grid, ctx, times, &eig);

    std::filesystem::path emit(args.emit_dir);
    std::error_code ec;
    std::filesystem::create_directories(emit, ec);
    if (ec)
      throw ConfigError("cannot create candidate directory \"" +
                        args.emit_dir + "\": " + ec.message());

    const int re = std::max(1, cfg.stepper.record_every);
    std::vector<std::size_t> keep;
    for (long j = 0; j <= S; ++j)
      if (j % re == 0 || j == S) keep.push_back(static_cast<std::size_t>(j));

    auto emit_pair = [&](const char* name, const CandidateComponent& s1,
                         const CandidateComponent& s2) {
      std::vector<double> ts;
      std::vector<Field> v1, v2;
      std::vector<double> b1, b2;
      for (std::size_t j : keep) {
        ts.push_back(times[j]);
        v1.push_back(s1.values[j]);
        v2.push_back(s2.values[j]);
        b1.push_back(s1.left[j]);
        b2.push_back(s2.left[j]);
      }
      std::ofstream os(emit / name, std::ios::binary);
      if (!os)
        throw ConfigError("cannot open output file: " + (emit / name).string());
      write_candidate_csv(os, ts, v1, v2, b1, b2, p.law, grid);
    };
    emit_pair("upper.csv", cand.up1, cand.up2);
    emit_pair("lower.csv", cand.lo1, cand.lo2);
    write_meta(cfg, grid, eig.lambda, dir);
    out << "emitted candidate pair (upper constants " << format_double(ctx.M1_eff)
        << " / " << format_double(ctx.M) << ", lower "
        << (ctx.eps > 0 ? "separated periodic modes, amplitude " +
                              format_double(ctx.eps)
                        : std::string("zero")) << ")\n";
    out << "  wrote " << (emit / "upper.csv").string() << " and lower.csv\n";
    return 0;
  }

  if (args.upper_path.empty() || args.lower_path.empty())
    throw ConfigError(
        "verify needs either --emit-candidates or both --upper and --lower");

  const CandidateFile upper = read_candidate_csv(args.upper_path, grid);
  const CandidateFile lower = read_candidate_csv(args.lower_path, grid);
  if (upper.times.size() != lower.times.size())
    throw ConfigError("upper and lower files carry different numbers of "
                      "snapshots (" + std::to_string(upper.times.size()) +
                      " vs " + std::to_string(lower.times.size()) + ")");
  for (std::size_t i = 0; i < upper.times.size(); ++i)
    if (std::abs(upper.times[i] - lower.times[i]) >
        1e-9 * std::max(1.0, std::abs(upper.times[i])))
      throw ConfigError("upper and lower files disagree on snapshot time #" +
                        std::to_string(i));

  CandidatePair cand;
  cand.times = upper.times;
  cand.up1 = {upper.v1, upper.v1_left, upper.v1_right};
  cand.up2 = {upper.v2, upper.v2_left, upper.v2_right};
  cand.lo1 = {lower.v1, lower.v1_left, lower.v1_right};
  cand.lo2 = {lower.v2, lower.v2_left, lower.v2_right};

  const PairCheckResult res = check_coupled_pair(cand, p, grid,
                                                 cfg.monotone_tol);
  write_meta(cfg, grid, eig.lambda, dir);
  if (res.ok) {
    out << "ok: candidate pair brackets the dynamics (worst margin "
        << format_double(res.worst_defect) << " at " << res.worst_at << ")\n";
    return 0;
  }
  out << "not ok: bracketing fails by " << format_double(-res.worst_defect)
      << " at " << res.worst_at << '\n';
  return 1;
}

}  // namespace evodom
