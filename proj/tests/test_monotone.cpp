#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "evodom/dynamics.hpp"
#include "evodom/eigenpair.hpp"
#include "evodom/errors.hpp"
#include "evodom/grid.hpp"
#include "evodom/indexes.hpp"
#include "evodom/monotone.hpp"
#include "evodom/presets.hpp"

using namespace evodom;

namespace {

double sup(const Field& f) { return f.cwiseAbs().maxCoeff(); }

ModelParams uncoupled_equal_rates() {
  const double T = 2.0;
  return ModelParams{0.1,
                     0.1,
                     PeriodicFn::constant(1.2, T),
                     PeriodicFn::constant(1.2, T),
                     PeriodicFn::constant(0.0, T),
                     PeriodicFn::constant(0.0, T),
                     PeriodicFn::constant(0.012, T),
                     PeriodicFn::constant(0.012, T),
                     EvolutionLaw(PeriodicFn::constant(1.0, T), 1),
                     0.0,
                     1.0};
}

StepperConfig run_stepper() {
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.record_every = 100;
  return cfg;
}

struct PresetRun {
  ModelParams p;
  AttractorResult att;
  MonotoneResult mono;
};

// Heavy fixtures, computed once per preset and shared across test cases
// (map nodes keep returned references stable).
const PresetRun& preset_run(Preset pr) {
  static std::map<int, PresetRun> cache;
  const int key = static_cast<int>(pr);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const Grid g(0.0, 1.0, 199);
  PresetRun run{preset_params(pr), {}, {}};
  run.att = periodic_attractor(run.p, g, InitialCondition::sine_bump(5.0),
                               run_stepper(), 1e-6, 200);
  const int keep_first = pr == Preset::example5_1 ? 5 : 0;
  run.mono = monotone_iterate_periodic(run.p, g, run_stepper(), 1e-6, 1200,
                                       keep_first);
  return cache.emplace(key, std::move(run)).first->second;
}

// Distance from the attractor cycle to the nearer bracketing limit.
double discrepancy(const PresetRun& r) {
  REQUIRE(r.att.period.size() == r.mono.max_v1_branch.size());
  double d1 = 0.0, d2 = 0.0;
  for (std::size_t i = 0; i < r.att.period.size(); ++i) {
    const StatePair& a = r.att.period[i];
    d1 = std::max({d1, sup(a.v1 - r.mono.max_v1_branch[i].v1),
                   sup(a.v2 - r.mono.max_v1_branch[i].v2)});
    d2 = std::max({d2, sup(a.v1 - r.mono.max_v2_branch[i].v1),
                   sup(a.v2 - r.mono.max_v2_branch[i].v2)});
  }
  return std::min(d1, d2);
}

// Largest time-slope of the attractor cycle, from its snapshots.
double max_slope(const AttractorResult& att) {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < att.period.size(); ++i) {
    const double dt = att.period[i + 1].t - att.period[i].t;
    m = std::max({m, sup(att.period[i + 1].v1 - att.period[i].v1) / dt,
                  sup(att.period[i + 1].v2 - att.period[i].v2) / dt});
  }
  return m;
}

}  // namespace

TEST_CASE("reaction Lipschitz bounds: closed forms") {
  // a = 1, b = 0, c = 1, static domain: 1 + (0 + 2)*1 + 0 + 0 = 3.
  const double T = 1.0;
  const ModelParams trivial{1.0,
                            1.0,
                            PeriodicFn::constant(1.0, T),
                            PeriodicFn::constant(1.0, T),
                            PeriodicFn::constant(0.0, T),
                            PeriodicFn::constant(0.0, T),
                            PeriodicFn::constant(1.0, T),
                            PeriodicFn::constant(1.0, T),
                            EvolutionLaw(PeriodicFn::constant(1.0, T), 1),
                            0.0,
                            1.0};
  const LipschitzConstants kt = lipschitz_constants(trivial);
  CHECK(kt.k1 == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(kt.k2 == doctest::Approx(3.0).epsilon(1e-12));

  // Shared preset coefficients: 1.2 + (0.013 + 0.024)*100 + 0.013*100 = 6.2,
  // plus the domain-motion term sup|rho'| / inf rho.
  const LipschitzConstants k1 =
      lipschitz_constants(preset_params(Preset::example5_1));
  CHECK(k1.k1 == doctest::Approx(6.2).epsilon(1e-9));
  CHECK(k1.k2 == doctest::Approx(6.2).epsilon(1e-9));
  const LipschitzConstants k2 =
      lipschitz_constants(preset_params(Preset::example5_2));
  CHECK(k2.k1 == doctest::Approx(6.2 + 0.5 * M_PI).epsilon(1e-6));
  const LipschitzConstants k3 =
      lipschitz_constants(preset_params(Preset::example5_3));
  CHECK(k3.k1 == doctest::Approx(6.2 + 0.3 * M_PI / 0.7).epsilon(1e-6));

  // Raising the growth rate raises the bound.
  ModelParams bigger = preset_params(Preset::example5_1);
  bigger.a1 = PeriodicFn::constant(2.4, 2.0);
  CHECK(lipschitz_constants(bigger).k1 > k1.k1);

  // A competition rate that touches zero leaves the bound undefined.
  ModelParams degenerate = preset_params(Preset::example5_1);
  degenerate.c1 = PeriodicFn::constant(0.0, 2.0);
  CHECK_THROWS_AS(lipschitz_constants(degenerate), ConfigError);
}

TEST_CASE("cooperative change of variables round-trips") {
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> unif(0.0, 30.0);
  const double M = 40.0;
  for (int rep = 0; rep < 20; ++rep) {
    Field v1(11), v2(11);
    for (int i = 0; i < 11; ++i) {
      v1[i] = unif(rng);
      v2[i] = unif(rng);
    }
    const auto [V1, V3] = to_transformed(v1, v2, M);
    CHECK((V3 - (Field::Constant(11, M) - v2)).cwiseAbs().maxCoeff() == 0.0);
    const auto [w1, w2] = from_transformed(V1, V3, M);
    CHECK(sup(w1 - v1) == 0.0);
    // M - (M - v2) rounds at the ulp of M.
    CHECK(sup(w2 - v2) < 1e-13);
  }
}

TEST_CASE("transformed reaction is quasimonotone nondecreasing on the box") {
  const ModelParams p = preset_params(Preset::example5_2);
  const double M = 231.0;
  std::mt19937 rng(1123);
  std::uniform_real_distribution<double> uv(0.0, 100.0), ut(0.0, 2.0),
      ub(0.0, 5.0);
  for (int rep = 0; rep < 50; ++rep) {
    const double t = ut(rng);
    Field V1(9), V3(9), bump1(9), bump3(9);
    for (int i = 0; i < 9; ++i) {
      V1[i] = uv(rng);
      V3[i] = uv(rng);
      bump1[i] = ub(rng);
      bump3[i] = ub(rng);
    }
    const auto [g1, g3] = transformed_reaction(p, t, V1, V3, M);
    // Raising the opposite component never lowers a component's source.
    const auto [g1_up, g3_same] = transformed_reaction(p, t, V1, V3 + bump3, M);
    for (int i = 0; i < 9; ++i) CHECK(g1_up[i] >= g1[i] - 1e-12);
    const auto [g1_same, g3_up] = transformed_reaction(p, t, V1 + bump1, V3, M);
    for (int i = 0; i < 9; ++i) CHECK(g3_up[i] >= g3[i] - 1e-12);
  }
}

TEST_CASE("bracketing context agrees with the index report") {
  const Grid g(0.0, 1.0, 199);
  const Eigenpair eig = principal_eigenpair(g);
  for (Preset pr :
       {Preset::example5_1, Preset::example5_2, Preset::example5_3}) {
    const ModelParams p = preset_params(pr);
    const IndexReport rep = classify_regime(p, g);
    const TransformContext ctx = transform_context(p, eig.lambda, 7.0, 12.0);
    CHECK(ctx.M1 == doctest::Approx(rep.M1).epsilon(1e-12));
    CHECK(ctx.M2 == doctest::Approx(rep.M2).epsilon(1e-12));
    CHECK(ctx.M == doctest::Approx(std::max(rep.M2, 12.0)).epsilon(1e-12));
    CHECK(ctx.M1_eff == doctest::Approx(std::max(rep.M1, 7.0)).epsilon(1e-12));
    const LipschitzConstants k = lipschitz_constants(p);
    CHECK(ctx.k.k1 == doctest::Approx(k.k1).epsilon(1e-12));
    CHECK(ctx.k.k2 == doctest::Approx(k.k2).epsilon(1e-12));
    // None of the scenarios satisfies the coexistence side conditions.
    CHECK(ctx.eps0 == 0.0);
    CHECK(ctx.eps == 0.0);
  }
}

TEST_CASE("separated sub-mode amplitude of an uncoupled supercritical model") {
  const ModelParams p = uncoupled_equal_rates();
  const Grid g(0.0, 1.0, 199);
  const Eigenpair eig = principal_eigenpair(g);
  const TransformContext ctx = transform_context(p, eig.lambda);
  const double R = 1.2 / (0.1 * eig.lambda);
  const double expected = (1.0 / 0.012) * 1.2 * (1.0 - 1.0 / R);
  CHECK(R > 1.0);
  CHECK(ctx.eps0 == doctest::Approx(expected).epsilon(1e-9));
  CHECK(ctx.eps0 == doctest::Approx(17.755).epsilon(1e-3));
  CHECK(ctx.eps == doctest::Approx(0.5 * ctx.eps0).epsilon(1e-12));
}

TEST_CASE("generated starting pair passes its own defect check") {
  const Grid g(0.0, 1.0, 199);
  const Eigenpair eig = principal_eigenpair(g);
  std::vector<double> times(201);
  for (int j = 0; j <= 200; ++j) times[j] = 2.0 * j / 200.0;

  SUBCASE("presets: constant uppers over zero lowers") {
    for (Preset pr :
         {Preset::example5_1, Preset::example5_2, Preset::example5_3}) {
      const ModelParams p = preset_params(pr);
      const TransformContext ctx = transform_context(p, eig.lambda);
      const CandidatePair cand = initial_iterates(p, g, ctx, times, &eig);
      REQUIRE(cand.up1.values.size() == times.size());
      CHECK(cand.up1.values[0].maxCoeff() == ctx.M1_eff);
      CHECK(cand.up2.left[0] == ctx.M);
      CHECK(sup(cand.lo1.values[100]) == 0.0);
      const PairCheckResult res = check_coupled_pair(cand, p, g, 1e-6);
      CHECK(res.ok);
    }
  }

  SUBCASE("positive sub-mode lowers stay admissible") {
    const ModelParams p = uncoupled_equal_rates();
    const TransformContext ctx = transform_context(p, eig.lambda);
    REQUIRE(ctx.eps > 0.0);
    const CandidatePair cand = initial_iterates(p, g, ctx, times, &eig);
    double lo_peak = 0.0;
    for (const Field& f : cand.lo1.values) lo_peak = std::max(lo_peak, f.maxCoeff());
    CHECK(lo_peak == doctest::Approx(ctx.eps).epsilon(1e-9));
    const PairCheckResult res = check_coupled_pair(cand, p, g, 1e-6);
    CHECK(res.ok);
  }
}

TEST_CASE("defect check rejects malformed and non-bracketing candidates") {
  const ModelParams p = preset_params(Preset::example5_2);
  const Grid g(0.0, 1.0, 199);
  const Eigenpair eig = principal_eigenpair(g);
  std::vector<double> times(21);
  for (int j = 0; j <= 20; ++j) times[j] = 0.1 * j;
  const TransformContext ctx = transform_context(p, eig.lambda);
  CandidatePair cand = initial_iterates(p, g, ctx, times, &eig);

  SUBCASE("halved ceilings are no barrier on the growing domain") {
    for (Field& f : cand.up1.values) f *= 0.5;
    for (Field& f : cand.up2.values) f *= 0.5;
    for (double& b : cand.up1.left) b *= 0.5;
    for (double& b : cand.up1.right) b *= 0.5;
    for (double& b : cand.up2.left) b *= 0.5;
    for (double& b : cand.up2.right) b *= 0.5;
    const PairCheckResult res = check_coupled_pair(cand, p, g, 1e-6);
    CHECK_FALSE(res.ok);
    CHECK(res.worst_defect < -1.0);  // fails by a wide margin, not roundoff
    CHECK(res.worst_at.find("upper-1") != std::string::npos);
  }

  SUBCASE("ordering violations are reported") {
    cand.lo1.values[5] = cand.up1.values[5] + Field::Constant(g.n(), 1.0);
    const PairCheckResult res = check_coupled_pair(cand, p, g, 1e-6);
    CHECK_FALSE(res.ok);
  }

  SUBCASE("malformed shapes are configuration errors") {
    cand.up1.values[3] = Field::Zero(g.n() + 1);
    CHECK_THROWS_AS(check_coupled_pair(cand, p, g, 1e-6), ConfigError);
  }

  SUBCASE("times must increase") {
    std::swap(cand.times[2], cand.times[3]);
    CHECK_THROWS_AS(check_coupled_pair(cand, p, g, 1e-6), ConfigError);
  }
}

TEST_CASE("static domain: bracketing limits straddle the attractor") {
  const PresetRun& r = preset_run(Preset::example5_1);
  REQUIRE(r.att.converged);
  REQUIRE(r.mono.converged);
  CHECK(r.mono.worst_violation < 1e-8);

  // The competitive exclusion scenario has two extremal periodic states:
  // total extinction (largest v1 branch, since species 1 is subcritical)
  // and the species-2 carrying state.
  double peak2 = 0.0, branch1_sup = 0.0;
  for (std::size_t i = 0; i < r.mono.max_v2_branch.size(); ++i) {
    peak2 = std::max(peak2, r.mono.max_v2_branch[i].v2.maxCoeff());
    branch1_sup = std::max({branch1_sup, sup(r.mono.max_v1_branch[i].v1),
                            sup(r.mono.max_v1_branch[i].v2)});
  }
  CHECK(peak2 == doctest::Approx(20.855).epsilon(1e-3));
  CHECK(branch1_sup < 1e-4);
  CHECK(r.mono.final_bracket_gap == doctest::Approx(20.855).epsilon(1e-3));

  // The attractor from positive data is the nontrivial branch.
  CHECK(discrepancy(r) < std::max(10.0 * 1e-6, 5.0 * 1e-3));

  // Both limits close up over the period.
  for (const Trajectory* br : {&r.mono.max_v1_branch, &r.mono.max_v2_branch}) {
    CHECK(sup(br->front().v1 - br->back().v1) < 1e-5);
    CHECK(sup(br->front().v2 - br->back().v2) < 1e-5);
  }
}

TEST_CASE("static domain: sweep-by-sweep log behaves") {
  const PresetRun& r = preset_run(Preset::example5_1);
  const auto& tr = r.mono.trace;
  REQUIRE(tr.size() >= 20);
  CHECK(static_cast<int>(tr.size()) == r.mono.iterations);
  // Contraction: the change per sweep decays (allowing 5% wiggle, and
  // skipping the opening sweeps where the ceilings first move).
  for (std::size_t i = 10; i + 1 < tr.size(); ++i) {
    CHECK(tr[i + 1].gap_upper <= tr[i].gap_upper * 1.05 + 1e-12);
    CHECK(tr[i + 1].gap_lower <= tr[i].gap_lower * 1.05 + 1e-12);
  }
  for (const IterationRecord& rec : tr) CHECK(rec.violation < 1e-8);
  CHECK(tr.back().periodicity_residual < 1e-5);
  CHECK(tr.front().iter == 1);
}

TEST_CASE("static domain: early iterates sandwich the flow") {
  const PresetRun& r = preset_run(Preset::example5_1);
  REQUIRE(r.mono.first_iterates.size() == 5);
  const Grid g(0.0, 1.0, 199);
  const double dt = 1e-3;
  const double maxk = std::max(r.mono.ctx.k.k1, r.mono.ctx.k.k2);

  for (int m = 1; m <= 5; ++m) {
    const CandidatePair& pair = r.mono.first_iterates[m - 1];
    const std::size_t nt = pair.times.size();
    REQUIRE(nt == 21);

    // Start between the m-th iterates and advance m periods directly.
    const Field v10 = 0.5 * (pair.up1.values[0] + pair.lo1.values[0]);
    const Field v20 = 0.5 * (pair.up2.values[0] + pair.lo2.values[0]);
    StepperConfig cfg;
    cfg.dt = dt;
    cfg.t_end = 2.0 * m;
    cfg.record_every = 100;
    const Trajectory traj =
        simulate(r.p, g, InitialCondition::sampled(v10, v20), cfg);
    REQUIRE(traj.size() == 20 * static_cast<std::size_t>(m) + 1);

    // Slack: scheme disagreement over one step times the iteration count,
    // plus the stopping tolerances.
    double max_dv = 0.0;
    for (std::size_t i = traj.size() - nt; i + 1 < traj.size(); ++i) {
      const double step = traj[i + 1].t - traj[i].t;
      max_dv = std::max({max_dv, sup(traj[i + 1].v1 - traj[i].v1) / step,
                         sup(traj[i + 1].v2 - traj[i].v2) / step});
    }
    const double slack = 1e-6 + 0.5 * maxk * dt * max_dv + 1e-5;

    for (std::size_t j = 0; j < nt; ++j) {
      const StatePair& s = traj[traj.size() - nt + j];
      const Field& up1 = pair.up1.values[j];
      const Field& lo1 = pair.lo1.values[j];
      const Field& up2 = pair.up2.values[j];
      const Field& lo2 = pair.lo2.values[j];
      CHECK((s.v1 - up1).maxCoeff() < slack);
      CHECK((lo1 - s.v1).maxCoeff() < slack);
      CHECK((s.v2 - up2).maxCoeff() < slack);
      CHECK((lo2 - s.v2).maxCoeff() < slack);
    }
  }
}

TEST_CASE("growing domain: both branches collapse onto one cycle") {
  const PresetRun& r = preset_run(Preset::example5_2);
  REQUIRE(r.att.converged);
  REQUIRE(r.mono.converged);
  CHECK(r.mono.final_bracket_gap < 1e-5);
  CHECK(r.mono.worst_violation < 1e-8);
  // First-order sweeps lag the attractor in proportion to the shift, the
  // step, and how fast the cycle moves.
  const double lag = 0.5 * std::max(r.mono.ctx.k.k1, r.mono.ctx.k.k2) * 1e-3 *
                     max_slope(r.att);
  CHECK(discrepancy(r) < 5e-3 + lag);
  CHECK(discrepancy(r) > 1e-3);  // the lag is real, not a loose bound
}

TEST_CASE("shrinking domain: the bracket pins total extinction") {
  const PresetRun& r = preset_run(Preset::example5_3);
  REQUIRE(r.att.converged);
  REQUIRE(r.mono.converged);
  double worst = 0.0;
  for (const Trajectory* br : {&r.mono.max_v1_branch, &r.mono.max_v2_branch})
    for (const StatePair& s : *br)
      worst = std::max({worst, sup(s.v1), sup(s.v2)});
  CHECK(worst < 2e-6);
  CHECK(discrepancy(r) < 1e-5);
}

TEST_CASE("pinned initial data: zero stays zero") {
  const ModelParams p = preset_params(Preset::example5_2);
  const Grid g(0.0, 1.0, 199);
  const MonotoneResult res = monotone_iterate_ivp(
      p, g, InitialCondition::constant_clipped(0.0), run_stepper(), 1e-6, 400);
  REQUIRE(res.converged);
  for (const Trajectory* br : {&res.max_v1_branch, &res.max_v2_branch})
    for (const StatePair& s : *br) {
      CHECK(sup(s.v1) < 1e-6);
      CHECK(sup(s.v2) < 1e-6);
    }
}

TEST_CASE("pinned initial data reproduces the direct solution") {
  const ModelParams p = preset_params(Preset::example5_2);
  const Grid g(0.0, 1.0, 199);
  const InitialCondition ic = InitialCondition::sine_bump(0.05);
  const MonotoneResult res =
      monotone_iterate_ivp(p, g, ic, run_stepper(), 1e-6, 400);
  REQUIRE(res.converged);
  CHECK(res.iterations < 100);
  CHECK(res.final_bracket_gap < 1e-5);

  StepperConfig cfg = run_stepper();
  cfg.t_end = 2.0;
  const Trajectory traj = simulate(p, g, ic, cfg);
  REQUIRE(traj.size() == res.max_v1_branch.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i)
    dist = std::max({dist, sup(traj[i].v1 - res.max_v1_branch[i].v1),
                     sup(traj[i].v2 - res.max_v1_branch[i].v2)});
  CHECK(dist < std::max(10.0 * 1e-6, 5.0 * 1e-3));
  // Both branches pin the same solution.
  CHECK(sup(res.max_v1_branch.back().v2 - res.max_v2_branch.back().v2) < 1e-5);
}

TEST_CASE("an unreachable tolerance turns rounding into a reported break") {
  const ModelParams p = preset_params(Preset::example5_1);
  const Grid g(0.0, 1.0, 49);
  StepperConfig cfg;
  cfg.dt = 1e-2;
  cfg.record_every = 10;
  // With tol = 1e-15 the allowed ordering defect (10 tol) sits below the
  // rounding floor of the sweeps, so the iteration must either report the
  // broken ordering or stop unconverged at its iteration cap -- converging
  // to an impossible tolerance is the one forbidden outcome.
  try {
    const MonotoneResult res =
        monotone_iterate_periodic(p, g, cfg, 1e-15, 300);
    CHECK_FALSE(res.converged);
  } catch (const MonotonicityError& e) {
    CHECK(std::string(e.what()).find("ordering") != std::string::npos);
  }
}
