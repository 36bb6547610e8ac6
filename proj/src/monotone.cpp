#include "evodom/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "evodom/errors.hpp"
#include "evodom/indexes.hpp"
#include "evodom/periodic_mode.hpp"
#include "evodom/tridiag.hpp"

namespace evodom {

LipschitzConstants lipschitz_constants(const ModelParams& p, int samples) {
  const double T = p.period();
  auto a1 = extrema_over_period(p.a1, samples);
  auto a2 = extrema_over_period(p.a2, samples);
  auto b1 = extrema_over_period(p.b1, samples);
  auto b2 = extrema_over_period(p.b2, samples);
  auto c1 = extrema_over_period(p.c1, samples);
  auto c2 = extrema_over_period(p.c2, samples);
  if (!(c1.first > 0.0) || !(c2.first > 0.0))
    throw ConfigError(
        "lipschitz_constants: c1 and c2 must stay strictly positive over the "
        "period (their minimum enters a denominator)");
  const auto& law = p.law;
  auto rho =
      extrema_over_period([&](double t) { return law.rho(t); }, T, samples);
  auto rd = extrema_over_period(
      [&](double t) { return std::abs(law.rho_deriv(t)); }, T, samples);
  const double dil = law.dimension() * rd.second / rho.first;
  LipschitzConstants k;
  k.k1 = a1.second + (b1.second + 2.0 * c1.second) * (a1.second / c1.first) +
         b1.second * (a2.second / c2.first) + dil;
  k.k2 = a2.second + (b2.second + 2.0 * c2.second) * (a2.second / c2.first) +
         b2.second * (a1.second / c1.first) + dil;
  return k;
}

std::pair<Field, Field> to_transformed(const Field& v1, const Field& v2,
                                       double M) {
  return {v1, Field(M - v2.array())};
}

std::pair<Field, Field> from_transformed(const Field& V1, const Field& V3,
                                         double M) {
  return {V1, Field(M - V3.array())};
}

std::pair<Field, Field> transformed_reaction(const ModelParams& p, double t,
                                             const Field& V1, const Field& V3,
                                             double M) {
  const double a1 = p.a1(t), a2 = p.a2(t), b1 = p.b1(t), b2 = p.b2(t);
  const double c1 = p.c1(t), c2 = p.c2(t), dil = p.law.dilution(t);
  Eigen::ArrayXd v2 = M - V3.array();
  Field G1 = V1.array() * (a1 - dil - c1 * V1.array() - b1 * v2);
  // dV3/dt source is -f2(V1, M - V3)
  Field G3 = -(v2 * (a2 - dil - b2 * V1.array() - c2 * v2));
  return {std::move(G1), std::move(G3)};
}

TransformContext transform_context(const ModelParams& p, double lambda,
                                   double sup_v1_init, double sup_v2_init,
                                   int quad_nodes, int samples) {
  if (samples < 1000)
    throw ConfigError("transform_context: samples must be >= 1000");
  TransformContext ctx;
  ctx.k = lipschitz_constants(p, samples);  // also validates c > 0

  const double T = p.period();
  double c1_max = 0.0, c2_max = 0.0;
  for (int j = 0; j <= samples; ++j) {
    const double t = j * T / samples;
    const double dil = p.law.dilution(t);
    ctx.M1 = std::max(ctx.M1, (p.a1(t) - dil) / p.c1(t));
    ctx.M2 = std::max(ctx.M2, (p.a2(t) - dil) / p.c2(t));
    c1_max = std::max(c1_max, p.c1(t));
    c2_max = std::max(c2_max, p.c2(t));
  }
  ctx.M1 = std::max(ctx.M1, 0.0);
  ctx.M2 = std::max(ctx.M2, 0.0);
  ctx.M = std::max(ctx.M2, sup_v2_init);
  ctx.M1_eff = std::max(ctx.M1, sup_v1_init);

  const double R1 = reproduction_index(p, 1, lambda, quad_nodes);
  const double R2 = reproduction_index(p, 2, lambda, quad_nodes);
  double eps0 = std::numeric_limits<double>::infinity();
  if (R1 > 1.0 && R2 > 1.0) {
    for (int j = 0; j <= samples; ++j) {
      const double t = j * T / samples;
      eps0 = std::min(
          eps0, (p.a1(t) * (1.0 - 1.0 / R1) - p.b1(t) * ctx.M2) / c1_max);
      eps0 = std::min(
          eps0, (p.a2(t) * (1.0 - 1.0 / R2) - p.b2(t) * ctx.M1) / c2_max);
    }
  } else {
    eps0 = 0.0;
  }
  ctx.eps0 = std::isfinite(eps0) ? std::max(eps0, 0.0) : 0.0;
  ctx.eps = 0.5 * ctx.eps0;
  return ctx;
}

namespace {

bool uniform_over_period(const std::vector<double>& times, double T) {
  if (times.size() < 2) return false;
  const std::size_t S = times.size() - 1;
  const double dt = T / static_cast<double>(S);
  for (std::size_t j = 0; j < times.size(); ++j)
    if (std::abs(times[j] - j * dt) > 1e-9 * std::max(1.0, T)) return false;
  return true;
}

}  // namespace

CandidatePair initial_iterates(const ModelParams& p, const Grid& grid,
                               const TransformContext& ctx,
                               const std::vector<double>& times,
                               const Eigenpair* pair) {
  if (times.size() < 2)
    throw ConfigError("initial_iterates: need at least two time nodes");
  const std::size_t m = times.size();
  CandidatePair cand;
  cand.times = times;
  const Field zero = Field::Zero(grid.n());
  const Field upper1 = Field::Constant(grid.n(), ctx.M1_eff);
  const Field upper2 = Field::Constant(grid.n(), ctx.M);
  cand.up1.values.assign(m, upper1);
  cand.up2.values.assign(m, upper2);
  cand.up1.left.assign(m, ctx.M1_eff);
  cand.up1.right.assign(m, ctx.M1_eff);
  cand.up2.left.assign(m, ctx.M);
  cand.up2.right.assign(m, ctx.M);
  for (CandidateComponent* c : {&cand.lo1, &cand.lo2}) {
    c->left.assign(m, 0.0);
    c->right.assign(m, 0.0);
  }
  if (ctx.eps > 0.0) {
    if (!uniform_over_period(times, p.period()))
      throw ConfigError(
          "initial_iterates: a nontrivial lower iterate needs a uniform time "
          "grid spanning one period");
    Eigenpair local;
    const Eigenpair* ep = pair;
    if (!ep) {
      local = principal_eigenpair(grid);
      ep = &local;
    }
    const int samples = static_cast<int>(m) - 1;
    const PeriodicMode g1 = periodic_eigenfunction(p, 1, *ep, samples);
    const PeriodicMode g2 = periodic_eigenfunction(p, 2, *ep, samples);
    for (std::size_t j = 0; j < m; ++j) {
      cand.lo1.values.push_back(ctx.eps * g1.fields[j]);
      cand.lo2.values.push_back(ctx.eps * g2.fields[j]);
    }
  } else {
    cand.lo1.values.assign(m, zero);
    cand.lo2.values.assign(m, zero);
  }
  return cand;
}

namespace {

struct DefectTracker {
  double worst = std::numeric_limits<double>::infinity();
  std::string where;

  void offer(double margin, const char* what, double t, int node) {
    if (margin < worst) {
      worst = margin;
      std::ostringstream os;
      os << what << " at t = " << t;
      if (node >= 0) os << ", interior node " << node;
      where = os.str();
    }
  }
};

void offer_field(DefectTracker& tr, const Field& margins, const char* what,
                 double t) {
  int idx = 0;
  const double m = margins.minCoeff(&idx);
  tr.offer(m, what, t, idx);
}

}  // namespace

PairCheckResult check_coupled_pair(const CandidatePair& cand,
                                   const ModelParams& p, const Grid& grid,
                                   double tol) {
  const std::size_t m = cand.times.size();
  if (m < 2)
    throw ConfigError("check_coupled_pair: need at least two time nodes");
  for (const CandidateComponent* c :
       {&cand.up1, &cand.lo1, &cand.up2, &cand.lo2}) {
    if (c->values.size() != m || c->left.size() != m || c->right.size() != m)
      throw ConfigError(
          "check_coupled_pair: component length does not match the time grid");
    for (const Field& f : c->values)
      if (f.size() != grid.n())
        throw ConfigError(
            "check_coupled_pair: field length does not match the grid's "
            "interior node count");
  }
  for (std::size_t j = 1; j < m; ++j)
    if (!(cand.times[j] > cand.times[j - 1]))
      throw ConfigError("check_coupled_pair: times must be increasing");

  double scale = 0.0;
  for (const CandidateComponent* c :
       {&cand.up1, &cand.lo1, &cand.up2, &cand.lo2}) {
    for (const Field& f : c->values)
      scale = std::max(scale, f.cwiseAbs().maxCoeff());
    for (double v : c->left) scale = std::max(scale, std::abs(v));
    for (double v : c->right) scale = std::max(scale, std::abs(v));
  }
  const double tolr = tol * std::max(1.0, scale);

  DefectTracker tr;
  const double h = grid.h();
  // Differential inequalities, forward difference in time, reaction and
  // coefficients at the step's left endpoint; each barrier is paired with
  // the opposing species' opposite barrier.
  for (std::size_t j = 0; j + 1 < m; ++j) {
    const double t = cand.times[j];
    const double dtj = cand.times[j + 1] - cand.times[j];
    const double r = p.law.rho(t);
    const double k1 = p.d1 / (r * r), k2 = p.d2 / (r * r);
    const double a1 = p.a1(t), a2 = p.a2(t), b1 = p.b1(t), b2 = p.b2(t);
    const double c1 = p.c1(t), c2 = p.c2(t), dil = p.law.dilution(t);

    const Field& u1 = cand.up1.values[j];
    const Field& l1 = cand.lo1.values[j];
    const Field& u2 = cand.up2.values[j];
    const Field& l2 = cand.lo2.values[j];

    Field res_u1 =
        (cand.up1.values[j + 1] - u1) / dtj +
        k1 * neg_laplacian(u1, h, cand.up1.left[j], cand.up1.right[j]) -
        Field(u1.array() * (a1 - dil - c1 * u1.array() - b1 * l2.array()));
    offer_field(tr, res_u1, "upper-1 differential inequality", t);

    Field res_l1 =
        (cand.lo1.values[j + 1] - l1) / dtj +
        k1 * neg_laplacian(l1, h, cand.lo1.left[j], cand.lo1.right[j]) -
        Field(l1.array() * (a1 - dil - c1 * l1.array() - b1 * u2.array()));
    offer_field(tr, Field(-res_l1), "lower-1 differential inequality", t);

    Field res_u2 =
        (cand.up2.values[j + 1] - u2) / dtj +
        k2 * neg_laplacian(u2, h, cand.up2.left[j], cand.up2.right[j]) -
        Field(u2.array() * (a2 - dil - b2 * l1.array() - c2 * u2.array()));
    offer_field(tr, res_u2, "upper-2 differential inequality", t);

    Field res_l2 =
        (cand.lo2.values[j + 1] - l2) / dtj +
        k2 * neg_laplacian(l2, h, cand.lo2.left[j], cand.lo2.right[j]) -
        Field(l2.array() * (a2 - dil - b2 * u1.array() - c2 * l2.array()));
    offer_field(tr, Field(-res_l2), "lower-2 differential inequality", t);
  }

  // Pointwise order, sign, and boundary conditions at every time node.
  for (std::size_t j = 0; j < m; ++j) {
    const double t = cand.times[j];
    offer_field(tr, Field(cand.up1.values[j] - cand.lo1.values[j]),
                "ordering upper-1 >= lower-1", t);
    offer_field(tr, Field(cand.up2.values[j] - cand.lo2.values[j]),
                "ordering upper-2 >= lower-2", t);
    offer_field(tr, cand.lo1.values[j], "lower-1 nonnegativity", t);
    offer_field(tr, cand.lo2.values[j], "lower-2 nonnegativity", t);
    tr.offer(cand.up1.left[j], "upper-1 left boundary sign", t, -1);
    tr.offer(cand.up1.right[j], "upper-1 right boundary sign", t, -1);
    tr.offer(cand.up2.left[j], "upper-2 left boundary sign", t, -1);
    tr.offer(cand.up2.right[j], "upper-2 right boundary sign", t, -1);
    tr.offer(-std::abs(cand.lo1.left[j]), "lower-1 left boundary zero", t, -1);
    tr.offer(-std::abs(cand.lo1.right[j]), "lower-1 right boundary zero", t,
             -1);
    tr.offer(-std::abs(cand.lo2.left[j]), "lower-2 left boundary zero", t, -1);
    tr.offer(-std::abs(cand.lo2.right[j]), "lower-2 right boundary zero", t,
             -1);
  }

  // Periodicity order conditions: upper starts no lower than it ends, lower
  // starts no higher than it ends.
  const double t0 = cand.times.front();
  offer_field(tr, Field(cand.up1.values.front() - cand.up1.values.back()),
              "upper-1 periodicity order", t0);
  offer_field(tr, Field(cand.up2.values.front() - cand.up2.values.back()),
              "upper-2 periodicity order", t0);
  offer_field(tr, Field(cand.lo1.values.back() - cand.lo1.values.front()),
              "lower-1 periodicity order", t0);
  offer_field(tr, Field(cand.lo2.values.back() - cand.lo2.values.front()),
              "lower-2 periodicity order", t0);

  PairCheckResult out;
  out.worst_defect = tr.worst;
  out.worst_at = tr.where;
  out.ok = tr.worst >= -tolr;
  return out;
}

namespace {

// Coefficient values cached on the iteration's uniform time grid (0..S).
struct TimeTables {
  std::vector<double> a1, a2, b1, b2, c1, c2, dil, mu1, mu2;
  double dt = 0.0;
  int S = 0;
};

TimeTables build_tables(const ModelParams& p, double dt, long long S) {
  TimeTables tb;
  tb.dt = dt;
  tb.S = static_cast<int>(S);
  tb.a1.resize(S + 1);
  tb.a2.resize(S + 1);
  tb.b1.resize(S + 1);
  tb.b2.resize(S + 1);
  tb.c1.resize(S + 1);
  tb.c2.resize(S + 1);
  tb.dil.resize(S + 1);
  tb.mu1.resize(S + 1);
  tb.mu2.resize(S + 1);
  for (long long j = 0; j <= S; ++j) {
    const double t = j * dt;
    tb.a1[j] = p.a1(t);
    tb.a2[j] = p.a2(t);
    tb.b1[j] = p.b1(t);
    tb.b2[j] = p.b2(t);
    tb.c1[j] = p.c1(t);
    tb.c2[j] = p.c2(t);
    tb.dil[j] = p.law.dilution(t);
    const double r = p.law.rho(t);
    tb.mu1[j] = dt * p.d1 / (r * r);
    tb.mu2[j] = dt * p.d2 / (r * r);
  }
  return tb;
}

// One (V1, V3) space-time iterate.
struct PairSeq {
  std::vector<Field> V1, V3;  // indexed by time node, 0..S
};

// One linearized implicit sweep: integrate the two linear parabolic
// problems over [0, T] with the Lipschitz shift implicit and the frozen
// source k * prev + reaction(prev), evaluated at each step's left endpoint,
// explicit.  init1/init3 supply the new iterate's initial data.
void sweep_pair(const PairSeq& prev, PairSeq& next, const Field& init1,
                const Field& init3, const Grid& grid, const TimeTables& tb,
                const TransformContext& ctx) {
  const int S = tb.S;
  const double dt = tb.dt, h = grid.h(), M = ctx.M;
  next.V1[0] = init1;
  next.V3[0] = init3;
  for (int j = 0; j < S; ++j) {
    const auto& P1 = prev.V1[j];
    const auto& P3 = prev.V3[j];
    Eigen::ArrayXd v2 = M - P3.array();
    Eigen::ArrayXd G1 = P1.array() * (tb.a1[j] - tb.dil[j] -
                                      tb.c1[j] * P1.array() - tb.b1[j] * v2);
    Eigen::ArrayXd G3 =
        -(v2 * (tb.a2[j] - tb.dil[j] - tb.b2[j] * P1.array() - tb.c2[j] * v2));
    Field rhs1 = next.V1[j].array() + dt * (ctx.k.k1 * P1.array() + G1);
    Field rhs3 = next.V3[j].array() + dt * (ctx.k.k2 * P3.array() + G3);
    next.V1[j + 1] = solve_shifted_laplacian(1.0 + dt * ctx.k.k1,
                                             tb.mu1[j + 1], rhs1, h, 0.0, 0.0);
    next.V3[j + 1] = solve_shifted_laplacian(1.0 + dt * ctx.k.k2,
                                             tb.mu2[j + 1], rhs3, h, M, M);
  }
}

double sup_change(const PairSeq& a, const PairSeq& b) {
  double g = 0.0;
  for (std::size_t j = 0; j < a.V1.size(); ++j) {
    g = std::max(g, (a.V1[j] - b.V1[j]).cwiseAbs().maxCoeff());
    g = std::max(g, (a.V3[j] - b.V3[j]).cwiseAbs().maxCoeff());
  }
  return g;
}

// Largest breach of the ordering chain this sweep: the upper iterate must
// not rise, the lower must not fall, and lower must stay below upper.
double ordering_violation(const PairSeq& up_prev, const PairSeq& up_next,
                          const PairSeq& lo_prev, const PairSeq& lo_next) {
  double v = 0.0;
  for (std::size_t j = 0; j < up_prev.V1.size(); ++j) {
    v = std::max(v, (up_next.V1[j] - up_prev.V1[j]).maxCoeff());
    v = std::max(v, (up_next.V3[j] - up_prev.V3[j]).maxCoeff());
    v = std::max(v, (lo_prev.V1[j] - lo_next.V1[j]).maxCoeff());
    v = std::max(v, (lo_prev.V3[j] - lo_next.V3[j]).maxCoeff());
    v = std::max(v, (lo_next.V1[j] - up_next.V1[j]).maxCoeff());
    v = std::max(v, (lo_next.V3[j] - up_next.V3[j]).maxCoeff());
  }
  return std::max(v, 0.0);
}

double periodic_defect(const PairSeq& s) {
  return std::max((s.V1.back() - s.V1.front()).cwiseAbs().maxCoeff(),
                  (s.V3.back() - s.V3.front()).cwiseAbs().maxCoeff());
}

struct IterationSetup {
  long long S = 0;
  std::vector<double> times;        // full resolution, 0..S
  std::vector<double> thinned;      // times kept in the result
  std::vector<long long> keep_idx;  // indices of the thinned times
};

IterationSetup make_setup(const ModelParams& p, const StepperConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw ConfigError("StepperConfig: dt must be > 0");
  if (cfg.record_every < 1)
    throw ConfigError("StepperConfig: record_every must be >= 1");
  const double T = p.period();
  IterationSetup su;
  su.S = std::llround(T / cfg.dt);
  if (su.S < 1 || std::abs(su.S * cfg.dt - T) > 1e-6 * cfg.dt)
    throw ConfigError("the period must be a positive integer multiple of dt");
  su.times.resize(su.S + 1);
  for (long long j = 0; j <= su.S; ++j) su.times[j] = j * cfg.dt;
  for (long long j = 0; j <= su.S; ++j)
    if (j % cfg.record_every == 0 || j == su.S) {
      su.thinned.push_back(su.times[j]);
      su.keep_idx.push_back(j);
    }
  return su;
}

// Extrema sampling density for the iteration: a multiple of the step count
// at least as dense as the 10^4-point default, so every time node is a
// sample point and the box bounds dominate all grid values exactly.
int aligned_samples(long long S) {
  const long long mult = (10000 + S - 1) / S;
  return static_cast<int>(S * std::max<long long>(1, mult));
}

// A swept iterate pair expressed as original-variable barriers: the upper
// (V1, V3) pair carries the largest v1 and (via v2 = M - V3) the smallest
// v2, so its components land in up1/lo2; the lower pair fills lo1/up2.
// Swept iterates carry the scheme's boundary data — 0 for V1 and M for V3 —
// so every original-variable boundary value is 0.
CandidatePair pair_to_candidate(const PairSeq& up, const PairSeq& lo,
                                const IterationSetup& su, double M) {
  CandidatePair out;
  out.times = su.thinned;
  for (long long j : su.keep_idx) {
    out.up1.values.push_back(up.V1[j]);
    out.lo2.values.push_back(M - up.V3[j].array());
    out.lo1.values.push_back(lo.V1[j]);
    out.up2.values.push_back(M - lo.V3[j].array());
  }
  const std::size_t m = su.keep_idx.size();
  for (CandidateComponent* c : {&out.up1, &out.lo1, &out.up2, &out.lo2}) {
    c->left.assign(m, 0.0);
    c->right.assign(m, 0.0);
  }
  return out;
}

MonotoneResult run_iteration(const ModelParams& p, const Grid& grid,
                             const StepperConfig& cfg, double tol, int max_iter,
                             int keep_first, const InitialCondition* ic) {
  if (!(tol > 0.0)) throw ConfigError("monotone iteration: tol must be > 0");
  if (max_iter < 1)
    throw ConfigError("monotone iteration: max_iter must be >= 1");
  const IterationSetup su = make_setup(p, cfg);
  const Eigenpair eig = principal_eigenpair(grid);

  double sup1 = 0.0, sup2 = 0.0;
  Field init1, init3;
  if (ic) {
    auto [v10, v20] = ic->materialize(grid);
    sup1 = v10.maxCoeff();
    sup2 = v20.maxCoeff();
    init1 = std::move(v10);
    init3 = std::move(v20);  // becomes M - v20 once M is known
  }

  MonotoneResult res;
  res.ctx =
      transform_context(p, eig.lambda, sup1, sup2, 4096, aligned_samples(su.S));
  const double M = res.ctx.M;
  if (ic) init3 = M - init3.array();

  const CandidatePair start = initial_iterates(p, grid, res.ctx, su.times, &eig);
  PairSeq up, lo, up_next, lo_next;
  up.V1.resize(su.S + 1);
  up.V3.resize(su.S + 1);
  lo.V1.resize(su.S + 1);
  lo.V3.resize(su.S + 1);
  for (long long j = 0; j <= su.S; ++j) {
    up.V1[j] = start.up1.values[j];
    up.V3[j] = M - start.lo2.values[j].array();
    lo.V1[j] = start.lo1.values[j];
    lo.V3[j] = M - start.up2.values[j].array();
  }
  up_next = up;
  lo_next = lo;

  const TimeTables tb = build_tables(p, cfg.dt, su.S);
  double prev_gap = -1.0;
  for (int m = 1; m <= max_iter; ++m) {
    // Periodic mode wraps each iterate's initial data from the previous
    // iterate's period end; the IVP mode pins the given data every sweep.
    sweep_pair(up, up_next, ic ? init1 : up.V1.back(),
               ic ? init3 : up.V3.back(), grid, tb, res.ctx);
    sweep_pair(lo, lo_next, ic ? init1 : lo.V1.back(),
               ic ? init3 : lo.V3.back(), grid, tb, res.ctx);

    IterationRecord rec;
    rec.iter = m;
    rec.gap_upper = sup_change(up_next, up);
    rec.gap_lower = sup_change(lo_next, lo);
    rec.violation = ordering_violation(up, up_next, lo, lo_next);
    rec.periodicity_residual =
        std::max(periodic_defect(up_next), periodic_defect(lo_next));
    res.trace.push_back(rec);
    res.iterations = m;
    res.worst_violation = std::max(res.worst_violation, rec.violation);

    std::swap(up, up_next);
    std::swap(lo, lo_next);
    if (keep_first > 0 && m <= keep_first)
      res.first_iterates.push_back(pair_to_candidate(up, lo, su, M));

    if (rec.violation > 10.0 * tol) {
      std::ostringstream os;
      os << "monotone iteration: ordering defect " << rec.violation
         << " exceeds 10 * tol at sweep " << m;
      throw MonotonicityError(os.str());
    }

    const double gap = std::max(rec.gap_upper, rec.gap_lower);
    if (gap < tol) {
      // Stop only when a geometric extrapolation of the sweep-to-sweep
      // contraction puts the limit inside tol/2: the first tol crossing can
      // still sit many multiples of tol away from the limit.
      double q = (prev_gap > 0.0) ? gap / prev_gap : 0.0;
      q = std::clamp(q, 0.0, 0.98);
      if (gap == 0.0 || gap * q / (1.0 - q) < 0.5 * tol) {
        res.converged = true;
        break;
      }
    }
    prev_gap = gap;
  }

  res.times = su.thinned;
  double bracket = 0.0;
  for (long long j : su.keep_idx) {
    res.max_v1_branch.push_back(
        StatePair{su.times[j], up.V1[j], Field(M - up.V3[j].array())});
    res.max_v2_branch.push_back(
        StatePair{su.times[j], lo.V1[j], Field(M - lo.V3[j].array())});
  }
  for (long long j = 0; j <= su.S; ++j) {
    bracket = std::max(bracket, (up.V1[j] - lo.V1[j]).cwiseAbs().maxCoeff());
    bracket = std::max(bracket, (up.V3[j] - lo.V3[j]).cwiseAbs().maxCoeff());
  }
  res.final_bracket_gap = bracket;
  return res;
}

}  // namespace

MonotoneResult monotone_iterate_periodic(const ModelParams& p, const Grid& grid,
                                         const StepperConfig& cfg, double tol,
                                         int max_iter, int keep_first) {
  return run_iteration(p, grid, cfg, tol, max_iter, keep_first, nullptr);
}

MonotoneResult monotone_iterate_ivp(const ModelParams& p, const Grid& grid,
                                    const InitialCondition& ic,
                                    const StepperConfig& cfg, double tol,
                                    int max_iter, int keep_first) {
  return run_iteration(p, grid, cfg, tol, max_iter, keep_first, &ic);
}

}  // namespace evodom
