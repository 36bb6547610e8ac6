#include "evodom/indexes.hpp"

#include <cmath>
#include <limits>

#include "evodom/eigenpair.hpp"
#include "evodom/errors.hpp"
#include "evodom/quadrature.hpp"

namespace evodom {

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::both_extinct: return "BothExtinct";
    case Regime::species1_persists: return "Species1Persists";
    case Regime::species2_persists: return "Species2Persists";
    case Regime::persistence_both: return "PersistenceBoth";
  }
  return "BothExtinct";  // unreachable
}

double rho_bar_inv_sq(const EvolutionLaw& law, int nodes) {
  return period_mean(
      [&law](double t) {
        double r = law.rho(t);
        return 1.0 / (r * r);
      },
      law.period(), nodes);
}

namespace {

double mean_a(const ModelParams& p, int species, int nodes) {
  const PeriodicFn& a = (species == 1) ? p.a1 : p.a2;
  return period_mean([&a](double t) { return a(t); }, p.period(), nodes);
}

double species_d(const ModelParams& p, int species) {
  if (species != 1 && species != 2)
    throw ConfigError("species index must be 1 or 2");
  return (species == 1) ? p.d1 : p.d2;
}

}  // namespace

double reproduction_index(const ModelParams& p, int species, double lambda,
                          int nodes) {
  return mean_a(p, species, nodes) /
         (species_d(p, species) * lambda * rho_bar_inv_sq(p.law, nodes));
}

double principal_lambda(const ModelParams& p, int species, double lambda,
                        int nodes) {
  return species_d(p, species) * lambda * rho_bar_inv_sq(p.law, nodes) -
         mean_a(p, species, nodes);
}

double fixed_domain_index(const ModelParams& p, int species, double lambda,
                          int nodes) {
  return mean_a(p, species, nodes) / (species_d(p, species) * lambda);
}

Thresholds diffusion_thresholds(const ModelParams& p, double lambda,
                                int nodes) {
  double a1_bar = mean_a(p, 1, nodes);
  double a2_bar = mean_a(p, 2, nodes);
  double m = rho_bar_inv_sq(p.law, nodes);
  Thresholds th;
  th.D1_star = a1_bar / lambda;
  th.D2_star = a2_bar / lambda;
  th.D1 = th.D1_star / m;
  th.D2 = th.D2_star / m;
  return th;
}

IndexReport classify_regime(const ModelParams& p, const Grid& grid,
                            int nodes) {
  IndexReport rep;
  rep.lambda0 = principal_eigenpair(grid).lambda;

  // One quadrature per ingredient, shared by every derived quantity, so the
  // sign identities (R vs lam, D vs D*) hold to the last bit.
  const double a1_bar = mean_a(p, 1, nodes);
  const double a2_bar = mean_a(p, 2, nodes);
  const double m = rho_bar_inv_sq(p.law, nodes);
  rep.rho_bar_inv_sq = m;

  rep.R1 = a1_bar / (p.d1 * rep.lambda0 * m);
  rep.R2 = a2_bar / (p.d2 * rep.lambda0 * m);
  rep.lam1 = p.d1 * rep.lambda0 * m - a1_bar;
  rep.lam2 = p.d2 * rep.lambda0 * m - a2_bar;
  rep.R1_star = a1_bar / (p.d1 * rep.lambda0);
  rep.R2_star = a2_bar / (p.d2 * rep.lambda0);
  rep.D1_star = a1_bar / rep.lambda0;
  rep.D2_star = a2_bar / rep.lambda0;
  rep.D1 = rep.D1_star / m;
  rep.D2 = rep.D2_star / m;

  // Pointwise bounds over a fine grid (sup of nonsmooth functions).
  const int samples = 10000;
  const double T = p.period();
  double m1 = 0.0, m2 = 0.0;
  double ratio1 = std::numeric_limits<double>::infinity();
  double ratio2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    double t = T * static_cast<double>(i) / samples;
    double dil = p.law.dilution(t);
    m1 = std::max(m1, (p.a1(t) - dil) / p.c1(t));
    m2 = std::max(m2, (p.a2(t) - dil) / p.c2(t));
    // min of a/b; intervals where b vanishes put no constraint (ratio inf).
    if (p.b1(t) > 0.0) ratio1 = std::min(ratio1, p.a1(t) / p.b1(t));
    if (p.b2(t) > 0.0) ratio2 = std::min(ratio2, p.a2(t) / p.b2(t));
  }
  rep.M1 = m1;
  rep.M2 = m2;

  rep.side_ok_1 = rep.R1 > 1.0 && ratio1 * (1.0 - 1.0 / rep.R1) > rep.M2;
  rep.side_ok_2 = rep.R2 > 1.0 && ratio2 * (1.0 - 1.0 / rep.R2) > rep.M1;

  if (rep.R1 <= 1.0 && rep.R2 <= 1.0)
    rep.regime = Regime::both_extinct;
  else if (rep.R1 > 1.0 && rep.R2 <= 1.0)
    rep.regime = Regime::species1_persists;
  else if (rep.R1 <= 1.0 && rep.R2 > 1.0)
    rep.regime = Regime::species2_persists;
  else
    rep.regime = Regime::persistence_both;

  rep.coexistence_certified = rep.regime == Regime::persistence_both &&
                              rep.side_ok_1 && rep.side_ok_2;
  rep.tie_1 = std::abs(rep.R1 - 1.0) < 1e-6;
  rep.tie_2 = std::abs(rep.R2 - 1.0) < 1e-6;
  return rep;
}

ThresholdOrder compare_thresholds(const IndexReport& rep) {
  ThresholdOrder order;
  if (rep.rho_bar_inv_sq == 1.0)
    order = ThresholdOrder::equal;
  else if (rep.rho_bar_inv_sq < 1.0)
    order = ThresholdOrder::evolving_larger;
  else
    order = ThresholdOrder::evolving_smaller;

  auto consistent = [&](double D, double D_star) {
    switch (order) {
      case ThresholdOrder::equal: return D == D_star;
      case ThresholdOrder::evolving_larger: return D > D_star;
      case ThresholdOrder::evolving_smaller: return D < D_star;
    }
    return false;
  };
  if (!consistent(rep.D1, rep.D1_star) || !consistent(rep.D2, rep.D2_star))
    throw NumericError(
        "compare_thresholds: threshold ordering inconsistent between species "
        "(should be impossible)");
  return order;
}

}  // namespace evodom
