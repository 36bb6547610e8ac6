#pragma once

#include "evodom/periodic_fn.hpp"

namespace evodom {

// Time-periodic scale factor rho(t) of the physical domain [rho(t)*y_l,
// rho(t)*y_r], together with the spatial dimension n that sets the strength
// of the dilution term n * rho'(t)/rho(t).
//
// Construction validates rho(0) = 1 (the scale is normalized so the
// reference frame coincides with the physical frame at t = 0) and positivity
// of rho on a fine grid; evaluation re-checks positivity pointwise and
// throws DomainCollapseError when it fails.
class EvolutionLaw {
 public:
  EvolutionLaw(PeriodicFn rho, int dimension);

  double rho(double t) const;
  double rho_deriv(double t) const { return rho_.deriv(t); }

  // n * rho'(t) / rho(t); the advection-free remnant of the moving domain.
  double dilution(double t) const;

  int dimension() const { return dimension_; }
  double period() const { return rho_.period(); }
  const PeriodicFn& rho_fn() const { return rho_; }

  double periodicity_residual() const { return rho_.periodicity_residual(); }
  bool periodic_within(double tol = 1e-6) const {
    return periodicity_residual() <= tol;
  }

 private:
  PeriodicFn rho_;
  int dimension_;
};

}  // namespace evodom
