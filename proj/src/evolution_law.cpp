#include "evodom/evolution_law.hpp"

#include <cmath>
#include <utility>

#include "evodom/errors.hpp"

namespace evodom {

EvolutionLaw::EvolutionLaw(PeriodicFn rho, int dimension)
    : rho_(std::move(rho)), dimension_(dimension) {
  if (dimension_ < 1)
    throw ConfigError("EvolutionLaw: dimension must be a positive integer");
  if (std::abs(rho_.eval_raw(0.0) - 1.0) > 1e-12)
    throw ConfigError("EvolutionLaw: rho(0) must equal 1 (normalized scale)");
  // Positivity screened on a fine grid up front; evaluation re-checks
  // pointwise so a dip between samples still fails loudly, just later.
  const int samples = 10000;
  for (int i = 0; i <= samples; ++i) {
    double t = rho_.period() * static_cast<double>(i) / samples;
    if (!(rho_(t) > 0.0))
      throw ConfigError("EvolutionLaw: rho(t) <= 0 at t = " +
                        std::to_string(t) + " (domain collapse)");
  }
}

double EvolutionLaw::rho(double t) const {
  double r = rho_(t);
  if (!(r > 0.0)) throw DomainCollapseError(t);
  return r;
}

double EvolutionLaw::dilution(double t) const {
  return static_cast<double>(dimension_) * rho_.deriv(t) / rho(t);
}

}  // namespace evodom
