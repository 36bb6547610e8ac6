#include "evodom/periodic_mode.hpp"

#include <cmath>

#include "evodom/errors.hpp"

namespace evodom {

PeriodicMode periodic_eigenfunction(const ModelParams& p, int species,
                                    const Eigenpair& pair, int samples) {
  if (species != 1 && species != 2)
    throw ConfigError("periodic_eigenfunction: species must be 1 or 2");
  if (samples < 2)
    throw ConfigError("periodic_eigenfunction: need at least 2 time steps");

  const double T = p.period();
  const double d = (species == 1) ? p.d1 : p.d2;
  const PeriodicFn& a = (species == 1) ? p.a1 : p.a2;
  const double lambda = pair.lambda;

  auto loss = [&](double t) {  // d lambda / rho^2
    double r = p.law.rho(t);
    return d * lambda / (r * r);
  };

  // Cumulative exponents by per-step two-point Gauss quadrature.  The Gauss
  // nodes are interior to each step, so integrands that kink exactly at step
  // boundaries (|sin| laws with kinks on the grid) are only ever sampled
  // where they are smooth.
  const double dt = T / samples;
  const double off = 0.5 / std::sqrt(3.0);
  std::vector<double> cum_full(samples + 1), cum_nodil(samples + 1);
  cum_full[0] = cum_nodil[0] = 0.0;
  for (int j = 0; j < samples; ++j) {
    double t0 = j * dt;
    double sum_full = 0.0, sum_nodil = 0.0;
    for (double c : {0.5 - off, 0.5 + off}) {
      double t = t0 + c * dt;
      double nodil = a(t) - loss(t);
      sum_nodil += 0.5 * nodil;
      sum_full += 0.5 * (nodil - p.law.dilution(t));
    }
    cum_full[j + 1] = cum_full[j] + dt * sum_full;
    cum_nodil[j + 1] = cum_nodil[j] + dt * sum_nodil;
  }

  PeriodicMode mode;
  // The rate that closes the dilution-free exponent over one period; the
  // dilution part closes on its own exactly when rho is T-periodic.
  mode.lam_delta = -cum_nodil[samples] / T;
  mode.periodicity_residual =
      std::abs(std::exp(cum_full[samples] + mode.lam_delta * T) - 1.0);
  mode.periodic_ok = mode.periodicity_residual <= 1e-6;

  double log_gmax = 0.0;
  std::vector<double> log_g(samples + 1);
  for (int j = 0; j <= samples; ++j) {
    log_g[j] = cum_full[j] + mode.lam_delta * (j * dt);
    log_gmax = std::max(log_gmax, log_g[j]);
  }

  mode.times.resize(samples + 1);
  mode.fields.reserve(samples + 1);
  for (int j = 0; j <= samples; ++j) {
    mode.times[j] = j * dt;
    mode.fields.push_back(pair.psi * std::exp(log_g[j] - log_gmax));
  }
  return mode;
}

}  // namespace evodom
