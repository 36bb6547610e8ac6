#pragma once

#include <string_view>

#include "evodom/grid.hpp"
#include "evodom/model_params.hpp"

namespace evodom {

// Long-run outcome predicted by the reproduction indexes alone.
enum class Regime {
  both_extinct,       // R1 <= 1 and R2 <= 1
  species1_persists,  // R1 > 1, R2 <= 1
  species2_persists,  // R2 > 1, R1 <= 1
  persistence_both,   // R1 > 1 and R2 > 1 (coexistence needs side conditions)
};

std::string_view regime_name(Regime r);

// Average of rho(t)^-2 over one period; the single number through which the
// domain's motion enters every index.
double rho_bar_inv_sq(const EvolutionLaw& law, int nodes = 4096);

// Reproduction index of species s on the evolving domain:
//   R_s = mean(a_s) / (d_s * lambda * mean(rho^-2)).
double reproduction_index(const ModelParams& p, int species, double lambda,
                          int nodes = 4096);

// Principal growth exponent of species s at zero (positive = extinction):
//   lam_s = mean(d_s lambda / rho^2) - mean(a_s) = mean(a_s) (1/R_s - 1).
double principal_lambda(const ModelParams& p, int species, double lambda,
                        int nodes = 4096);

// Index with the domain frozen at its reference size (rho = 1):
//   R_s^* = mean(a_s) / (d_s * lambda).
double fixed_domain_index(const ModelParams& p, int species, double lambda,
                          int nodes = 4096);

// Critical diffusion rates: species s persists iff d_s < threshold.
// Starred = frozen domain, unstarred = evolving domain.
struct Thresholds {
  double D1, D2;            // evolving:  mean(a_s) / (lambda * mean(rho^-2))
  double D1_star, D2_star;  // frozen:    mean(a_s) / lambda
};

Thresholds diffusion_thresholds(const ModelParams& p, double lambda,
                                int nodes = 4096);

// How the domain's motion shifts the persistence thresholds; the same
// comparison holds for both species because it depends only on rho.
enum class ThresholdOrder {
  equal,            // mean(rho^-2) = 1: motion is neutral
  evolving_larger,  // mean(rho^-2) < 1: motion favors persistence
  evolving_smaller, // mean(rho^-2) > 1: motion favors extinction
};

// Everything the classification needs, computed from shared quadratures so
// the sign relations between R_s and lam_s hold exactly in floating point.
struct IndexReport {
  double lambda0 = 0.0;
  double R1 = 0.0, R2 = 0.0;
  double lam1 = 0.0, lam2 = 0.0;
  double R1_star = 0.0, R2_star = 0.0;
  double D1 = 0.0, D2 = 0.0, D1_star = 0.0, D2_star = 0.0;
  double rho_bar_inv_sq = 0.0;
  Regime regime = Regime::both_extinct;

  // Pointwise bounds entering the coexistence side conditions:
  // M_s = sup_t (a_s - n rho'/rho) / c_s, clamped below at 0.
  double M1 = 0.0, M2 = 0.0;
  // min_t(a_1/b_1) * (1 - 1/R_1) > M_2 and symmetrically; false whenever
  // R_s <= 1.  Both true (with both R > 1) certifies coexistence.
  bool side_ok_1 = false, side_ok_2 = false;
  bool coexistence_certified = false;

  // |R_s - 1| < 1e-6: the classification above is a coin toss; surfaced so
  // callers can warn.
  bool tie_1 = false, tie_2 = false;
};

// Computes the principal eigenvalue on `grid` internally.
IndexReport classify_regime(const ModelParams& p, const Grid& grid,
                            int nodes = 4096);

// Label from the report's rho_bar_inv_sq; asserts the matching D vs D*
// inequality holds for both species (cannot fail analytically — guarded as
// an internal error).
ThresholdOrder compare_thresholds(const IndexReport& report);

}  // namespace evodom
