#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "evodom/eigenpair.hpp"
#include "evodom/errors.hpp"
#include "evodom/grid.hpp"
#include "evodom/indexes.hpp"
#include "evodom/presets.hpp"

using namespace evodom;

namespace {

// Closed-form principal eigenvalue of the discrete Dirichlet operator.
double discrete_lambda0(int n, double length) {
  const double h = length / (n + 1);
  return 2.0 / (h * h) * (1.0 - std::cos(M_PI * h / length));
}

ModelParams with_law(double d1, double d2, double a0, PeriodicFn rho) {
  const double T = rho.period();
  return ModelParams{d1,
                     d2,
                     PeriodicFn::constant(a0, T),
                     PeriodicFn::constant(a0, T),
                     PeriodicFn::constant(0.013, T),
                     PeriodicFn::constant(0.013, T),
                     PeriodicFn::constant(0.012, T),
                     PeriodicFn::constant(0.012, T),
                     EvolutionLaw(std::move(rho), 1),
                     0.0,
                     1.0};
}

}  // namespace

TEST_CASE("reproduction index and growth exponent always share their sign") {
  const Grid g(0.0, 1.0, 99);
  const double lambda = principal_eigenpair(g).lambda;
  std::mt19937 rng(7771);
  std::uniform_real_distribution<double> dd(0.03, 0.4), da(0.5, 2.0);
  std::uniform_int_distribution<int> dl(0, 3);
  int checked = 0;
  for (int rep = 0; rep < 200; ++rep) {
    PeriodicFn rho = [&]() {
      switch (dl(rng)) {
        case 0: return PeriodicFn::constant(1.0, 2.0);
        case 1: return PeriodicFn::affine_abs_sin(1.0, 0.5, M_PI, 2.0);
        case 2: return PeriodicFn::affine_abs_sin(1.0, -0.3, M_PI, 2.0);
        default: return PeriodicFn::affine_sin(1.0, 0.2, M_PI, 0.0, 2.0);
      }
    }();
    const ModelParams p = with_law(dd(rng), dd(rng), da(rng), std::move(rho));
    for (int s : {1, 2}) {
      const double R = reproduction_index(p, s, lambda);
      const double lam = principal_lambda(p, s, lambda);
      if (std::abs(R - 1.0) <= 1e-8) continue;  // too close to call
      ++checked;
      CHECK(((R > 1.0 && lam < 0.0) || (R < 1.0 && lam > 0.0)));
    }
  }
  CHECK(checked >= 390);  // the draws essentially never land on the tie
}

TEST_CASE("diffusion thresholds are the exact unit-index rates") {
  const Grid g(0.0, 1.0, 199);
  const double lambda = principal_eigenpair(g).lambda;
  for (Preset pr :
       {Preset::example5_1, Preset::example5_2, Preset::example5_3}) {
    const ModelParams p = preset_params(pr);
    const Thresholds th = diffusion_thresholds(p, lambda);
    // R_s = D_s / d_s, so the index at d = D_s is exactly one.
    CHECK(reproduction_index(p, 1, lambda) ==
          doctest::Approx(th.D1 / p.d1).epsilon(1e-12));
    CHECK(reproduction_index(p, 2, lambda) ==
          doctest::Approx(th.D2 / p.d2).epsilon(1e-12));
    ModelParams crit = p;
    crit.d1 = th.D1;
    CHECK(reproduction_index(crit, 1, lambda) ==
          doctest::Approx(1.0).epsilon(1e-12));
    const IndexReport rep = classify_regime(crit, g);
    CHECK(rep.tie_1);  // |R1 - 1| < 1e-6 must be flagged
  }
}

TEST_CASE("domain motion shifts both thresholds the same way") {
  const Grid g(0.0, 1.0, 199);
  for (Preset pr :
       {Preset::example5_1, Preset::example5_2, Preset::example5_3}) {
    const IndexReport rep = classify_regime(preset_params(pr), g);
    const ThresholdOrder ord = compare_thresholds(rep);
    if (std::abs(rep.rho_bar_inv_sq - 1.0) < 1e-12) {
      CHECK(ord == ThresholdOrder::equal);
      CHECK(rep.D1 == doctest::Approx(rep.D1_star).epsilon(1e-12));
    } else if (rep.rho_bar_inv_sq < 1.0) {
      CHECK(ord == ThresholdOrder::evolving_larger);
      CHECK(rep.D1 > rep.D1_star);
      CHECK(rep.D2 > rep.D2_star);
    } else {
      CHECK(ord == ThresholdOrder::evolving_smaller);
      CHECK(rep.D1 < rep.D1_star);
      CHECK(rep.D2 < rep.D2_star);
    }
  }
}

TEST_CASE("mean inverse-square size of the preset laws") {
  const EvolutionLaw grow =
      EvolutionLaw(PeriodicFn::affine_abs_sin(1.0, 0.5, M_PI, 2.0), 1);
  const EvolutionLaw shrink =
      EvolutionLaw(PeriodicFn::affine_abs_sin(1.0, -0.3, M_PI, 2.0), 1);
  const EvolutionLaw still = EvolutionLaw(PeriodicFn::constant(1.0, 2.0), 1);
  CHECK(rho_bar_inv_sq(still) == doctest::Approx(1.0).epsilon(1e-14));
  // Frozen eight-digit values, plus the four digits they are known by.
  CHECK(rho_bar_inv_sq(grow) == doctest::Approx(0.60198730).epsilon(1e-7));
  CHECK(rho_bar_inv_sq(shrink) == doctest::Approx(1.58528583).epsilon(1e-7));
  CHECK(std::abs(rho_bar_inv_sq(grow) - 0.6020) < 5e-4);
  CHECK(std::abs(rho_bar_inv_sq(shrink) - 1.5853) < 5e-4);
  // Quadrature-converged: doubling the nodes does not move the digits.
  CHECK(rho_bar_inv_sq(grow, 8192) ==
        doctest::Approx(rho_bar_inv_sq(grow, 4096)).epsilon(1e-10));
}

TEST_CASE("static-domain scenario: frozen index report") {
  const Grid g(0.0, 1.0, 199);
  const IndexReport r = classify_regime(preset_params(Preset::example5_1), g);
  const double lam_exact = discrete_lambda0(199, 1.0);
  CHECK(r.lambda0 == doctest::Approx(lam_exact).epsilon(1e-9));
  CHECK(r.rho_bar_inv_sq == doctest::Approx(1.0).epsilon(1e-14));
  // Independent closed form: R_s* = a / (d_s lambda0).
  CHECK(r.R1 == doctest::Approx(1.2 / (0.2 * lam_exact)).epsilon(1e-9));
  CHECK(r.R2 == doctest::Approx(1.2 / (0.1 * lam_exact)).epsilon(1e-9));
  CHECK(r.R1 == doctest::Approx(0.6079396020).epsilon(1e-8));
  CHECK(r.R2 == doctest::Approx(1.2158792040).epsilon(1e-8));
  CHECK(r.R1_star == doctest::Approx(r.R1).epsilon(1e-12));
  CHECK(r.R2_star == doctest::Approx(r.R2).epsilon(1e-12));
  CHECK(r.lam1 == doctest::Approx(0.7738802934).epsilon(1e-8));
  CHECK(r.lam2 == doctest::Approx(-0.2130598533).epsilon(1e-8));
  CHECK(r.M1 == doctest::Approx(100.0).epsilon(1e-10));
  CHECK(r.M2 == doctest::Approx(100.0).epsilon(1e-10));
  CHECK(r.regime == Regime::species2_persists);
  CHECK(regime_name(r.regime) == "Species2Persists");
  CHECK_FALSE(r.side_ok_1);
  CHECK_FALSE(r.side_ok_2);
  CHECK_FALSE(r.coexistence_certified);
  CHECK_FALSE(r.tie_1);
  CHECK_FALSE(r.tie_2);
}

TEST_CASE("growing-domain scenario: frozen index report") {
  const Grid g(0.0, 1.0, 199);
  const IndexReport r = classify_regime(preset_params(Preset::example5_2), g);
  CHECK(r.rho_bar_inv_sq == doctest::Approx(0.6019873).epsilon(1e-6));
  CHECK(r.R1 == doctest::Approx(1.0098878).epsilon(1e-6));
  CHECK(r.R2 == doctest::Approx(2.0197755).epsilon(1e-6));
  CHECK(r.lam1 == doctest::Approx(-0.0117491).scale(1.0).epsilon(1e-5));
  CHECK(r.lam2 == doctest::Approx(-0.6058746).epsilon(1e-6));
  // Motion dilutes the confinement penalty: indexes grow by 1/0.6020.
  CHECK(r.R1 == doctest::Approx(r.R1_star / r.rho_bar_inv_sq).epsilon(1e-12));
  // Pointwise ceiling: (a + sup |shrink-rate|)/c = (1.2 + pi/2) / 0.012.
  CHECK(r.M2 ==
        doctest::Approx((1.2 + 0.5 * M_PI) / 0.012).epsilon(1e-3));
  CHECK(r.regime == Regime::persistence_both);
  CHECK(regime_name(r.regime) == "PersistenceBoth");
  // Supercritical but not certified: competition pressure is too strong.
  CHECK_FALSE(r.side_ok_1);
  CHECK_FALSE(r.side_ok_2);
  CHECK_FALSE(r.coexistence_certified);
}

TEST_CASE("shrinking-domain scenario: frozen index report") {
  const Grid g(0.0, 1.0, 199);
  const IndexReport r = classify_regime(preset_params(Preset::example5_3), g);
  CHECK(r.rho_bar_inv_sq == doctest::Approx(1.5852858).epsilon(1e-6));
  CHECK(r.R1 == doctest::Approx(0.3834890).epsilon(1e-6));
  CHECK(r.R2 == doctest::Approx(0.7669779).epsilon(1e-6));
  CHECK(r.lam1 == doctest::Approx(1.9291645).epsilon(1e-6));
  CHECK(r.lam2 == doctest::Approx(0.3645822).epsilon(1e-6));
  // The dilution peaks where rho' / rho does, at sin(pi t) = 0.3 on the
  // falling arch: sup = 0.3 pi / sqrt(1 - 0.09).
  const double sup_dil = 0.3 * M_PI / std::sqrt(0.91);
  CHECK(r.M1 == doctest::Approx((1.2 + sup_dil) / 0.012).epsilon(1e-3));
  CHECK(r.regime == Regime::both_extinct);
  CHECK(regime_name(r.regime) == "BothExtinct");
}

TEST_CASE("weak symmetric competition is certified as coexistence") {
  const double T = 2.0;
  const ModelParams p{0.01,
                      0.01,
                      PeriodicFn::constant(1.2, T),
                      PeriodicFn::constant(1.2, T),
                      PeriodicFn::constant(1e-4, T),
                      PeriodicFn::constant(1e-4, T),
                      PeriodicFn::constant(0.012, T),
                      PeriodicFn::constant(0.012, T),
                      EvolutionLaw(PeriodicFn::constant(1.0, T), 1),
                      0.0,
                      1.0};
  const Grid g(0.0, 1.0, 199);
  const IndexReport r = classify_regime(p, g);
  CHECK(r.R1 > 1.0);
  CHECK(r.R2 > 1.0);
  CHECK(r.regime == Regime::persistence_both);
  CHECK(r.side_ok_1);
  CHECK(r.side_ok_2);
  CHECK(r.coexistence_certified);
}

TEST_CASE("species-one-persists label is reachable") {
  // Flip the diffusion rates of the static scenario: now species 1 is the
  // slow diffuser and the only supercritical one.
  ModelParams p = preset_params(Preset::example5_1);
  p.d1 = 0.1;
  p.d2 = 0.2;
  const Grid g(0.0, 1.0, 199);
  const IndexReport r = classify_regime(p, g);
  CHECK(r.regime == Regime::species1_persists);
  CHECK(regime_name(r.regime) == "Species1Persists");
  CHECK(regime_name(Regime::both_extinct) == "BothExtinct");
}
