#include "evodom/dynamics.hpp"

#include <cmath>
#include <iostream>
#include <utility>

#include "evodom/errors.hpp"
#include "evodom/monotone.hpp"

namespace evodom {

InitialCondition InitialCondition::sine_bump(double amplitude) {
  if (amplitude < 0.0)
    throw ConfigError("InitialCondition: sine_bump amplitude must be >= 0");
  InitialCondition ic;
  ic.kind = Kind::sine_bump;
  ic.amplitude = amplitude;
  return ic;
}

InitialCondition InitialCondition::sampled(Field v1, Field v2) {
  InitialCondition ic;
  ic.kind = Kind::sampled;
  ic.v1 = std::move(v1);
  ic.v2 = std::move(v2);
  for (const Field* f : {&ic.v1, &ic.v2}) {
    if (!f->allFinite() || (f->size() > 0 && f->minCoeff() < 0.0))
      throw ConfigError(
          "InitialCondition: sampled data must be finite and nonnegative");
  }
  return ic;
}

InitialCondition InitialCondition::constant_clipped(double value) {
  if (value < 0.0)
    throw ConfigError("InitialCondition: constant_clipped value must be >= 0");
  InitialCondition ic;
  ic.kind = Kind::constant_clipped;
  ic.value = value;
  return ic;
}

std::pair<Field, Field> InitialCondition::materialize(const Grid& grid) const {
  switch (kind) {
    case Kind::sine_bump: {
      Field f(grid.n());
      const double L = grid.length();
      for (int i = 0; i < grid.n(); ++i)
        f[i] = amplitude * std::sin(M_PI * (grid.nodes()[i] - grid.y_left()) / L);
      return {f, f};
    }
    case Kind::sampled:
      if (v1.size() != grid.n() || v2.size() != grid.n())
        throw ConfigError(
            "InitialCondition: sampled field length must equal the grid's "
            "interior node count");
      return {v1, v2};
    case Kind::constant_clipped: {
      Field f = Field::Constant(grid.n(), value);
      return {f, f};
    }
  }
  throw ConfigError("InitialCondition: unknown kind");  // unreachable
}

namespace {

long long checked_step_count(double span, double dt, const char* what) {
  if (!(dt > 0.0)) throw ConfigError("StepperConfig: dt must be > 0");
  long long steps = std::llround(span / dt);
  if (steps < 1 || std::abs(steps * dt - span) > 1e-6 * dt)
    throw ConfigError(std::string(what) +
                      " must be a positive integer multiple of dt");
  return steps;
}

void warn_if_reaction_stiff(const ModelParams& p, double dt) {
  // Explicit reaction wants dt below the reaction's Lipschitz scale; this is
  // an accuracy advisory, not an abort.  Skipped when the constants are not
  // defined (e.g. a pure-diffusion problem with c = 0).
  try {
    LipschitzConstants k = lipschitz_constants(p);
    double L = std::max(k.k1, k.k2);
    if (dt * L > 0.5)
      std::cerr << "warning: dt * reaction-Lipschitz = " << dt * L
                << " > 0.5; explicit reaction may be inaccurate (reduce dt)\n";
  } catch (const ConfigError&) {
  }
}

}  // namespace

Trajectory simulate(const ModelParams& p, const Grid& grid,
                    const InitialCondition& ic, const StepperConfig& cfg,
                    Trajectory* partial) {
  if (cfg.record_every < 1)
    throw ConfigError("StepperConfig: record_every must be >= 1");
  const long long steps = checked_step_count(cfg.t_end, cfg.dt, "t_end");
  warn_if_reaction_stiff(p, cfg.dt);

  Trajectory local;
  Trajectory& out = partial ? *partial : local;
  out.clear();

  auto [v1, v2] = ic.materialize(grid);
  StatePair state{0.0, std::move(v1), std::move(v2)};
  out.push_back(state);
  for (long long k = 1; k <= steps; ++k) {
    step(state, p, grid, cfg.dt, cfg.scheme);
    state.t = k * cfg.dt;  // exact snapshot times, no accumulated drift
    if (k % cfg.record_every == 0 || k == steps) out.push_back(state);
  }
  return out;
}

PulledSnapshot pullback(const StatePair& s, const EvolutionLaw& law,
                        const Grid& grid) {
  PulledSnapshot out;
  out.t = s.t;
  const double r = law.rho(s.t);
  out.x_left = r * grid.y_left();
  out.x_right = r * grid.y_right();
  out.x = r * grid.nodes();
  out.u1 = s.v1;
  out.u2 = s.v2;
  return out;
}

AttractorResult periodic_attractor(const ModelParams& p, const Grid& grid,
                                   const InitialCondition& ic,
                                   const StepperConfig& cfg, double tol,
                                   int max_periods) {
  if (!(tol > 0.0)) throw ConfigError("periodic_attractor: tol must be > 0");
  if (max_periods < 1)
    throw ConfigError("periodic_attractor: max_periods must be >= 1");
  if (cfg.record_every < 1)
    throw ConfigError("StepperConfig: record_every must be >= 1");
  const double T = p.period();
  const long long spp = checked_step_count(T, cfg.dt, "the period");
  warn_if_reaction_stiff(p, cfg.dt);

  auto [v1, v2] = ic.materialize(grid);
  StatePair state{0.0, std::move(v1), std::move(v2)};
  Field start1 = state.v1, start2 = state.v2;

  AttractorResult res;
  double prev_residual = -1.0;
  long long abs_step = 0;
  for (int m = 1; m <= max_periods; ++m) {
    for (long long k = 1; k <= spp; ++k) {
      step(state, p, grid, cfg.dt, cfg.scheme);
      ++abs_step;
      state.t = abs_step * cfg.dt;
    }
    double r = std::max((state.v1 - start1).cwiseAbs().maxCoeff(),
                        (state.v2 - start2).cwiseAbs().maxCoeff());
    res.residual_history.push_back(r);
    res.residual = r;
    res.periods = m;
    start1 = state.v1;
    start2 = state.v2;
    if (r < tol) {
      // Geometric safeguard: stop only once the extrapolated distance to the
      // fixed point, r q / (1 - q), is inside tol/2 — the first tol crossing
      // can still be many multiples of tol away from the limit.
      double q = (prev_residual > 0.0) ? r / prev_residual : 0.0;
      q = std::clamp(q, 0.0, 0.98);
      if (r == 0.0 || r * q / (1.0 - q) < 0.5 * tol) {
        res.converged = true;
        break;
      }
    }
    prev_residual = r;
  }

  // One more period from the (converged or best-effort) start, recorded at
  // the snapshot cadence with times shifted to [0, T].
  StatePair rec{0.0, start1, start2};
  res.period.push_back(rec);
  for (long long k = 1; k <= spp; ++k) {
    rec.t = (k - 1) * cfg.dt;  // coefficients are T-periodic, so phase in [0,T)
    step(rec, p, grid, cfg.dt, cfg.scheme);
    rec.t = k * cfg.dt;
    if (k % cfg.record_every == 0 || k == spp) res.period.push_back(rec);
  }
  return res;
}

}  // namespace evodom
