#include "evodom/periodic_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evodom/errors.hpp"

namespace evodom {

double wrap_time(double t, double period) {
  double w = std::fmod(t, period);
  if (w < 0.0) w += period;
  return w;
}

PeriodicFn PeriodicFn::constant(double value, double period) {
  if (!(period > 0.0)) throw ConfigError("PeriodicFn: period must be > 0");
  PeriodicFn f;
  f.form_ = Form::constant;
  f.period_ = period;
  f.c0_ = value;
  return f;
}

PeriodicFn PeriodicFn::affine_sin(double c0, double c1, double omega,
                                  double phase, double period) {
  if (!(period > 0.0)) throw ConfigError("PeriodicFn: period must be > 0");
  PeriodicFn f;
  f.form_ = Form::affine_sin;
  f.period_ = period;
  f.c0_ = c0;
  f.c1_ = c1;
  f.omega_ = omega;
  f.phase_ = phase;
  return f;
}

PeriodicFn PeriodicFn::affine_abs_sin(double c0, double c1, double omega,
                                      double period) {
  if (!(period > 0.0)) throw ConfigError("PeriodicFn: period must be > 0");
  PeriodicFn f;
  f.form_ = Form::affine_abs_sin;
  f.period_ = period;
  f.c0_ = c0;
  f.c1_ = c1;
  f.omega_ = omega;
  return f;
}

PeriodicFn PeriodicFn::sampled(std::vector<double> times,
                               std::vector<double> values) {
  if (times.size() < 2 || times.size() != values.size())
    throw ConfigError("PeriodicFn: sampled table needs >= 2 (t, value) pairs");
  if (times.front() != 0.0)
    throw ConfigError("PeriodicFn: sampled table must start at t = 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw ConfigError("PeriodicFn: sampled times must strictly increase");
  for (double v : values)
    if (!std::isfinite(v))
      throw ConfigError("PeriodicFn: sampled values must be finite");
  PeriodicFn f;
  f.form_ = Form::sampled;
  f.period_ = times.back();
  f.times_ = std::move(times);
  f.values_ = std::move(values);
  return f;
}

double PeriodicFn::eval_raw(double t) const {
  switch (form_) {
    case Form::constant:
      return c0_;
    case Form::affine_sin:
      return c0_ + c1_ * std::sin(omega_ * t + phase_);
    case Form::affine_abs_sin:
      return c0_ + c1_ * std::abs(std::sin(omega_ * t));
    case Form::sampled: {
      double tc = std::clamp(t, times_.front(), times_.back());
      auto it = std::upper_bound(times_.begin(), times_.end(), tc);
      if (it == times_.begin()) return values_.front();
      if (it == times_.end()) return values_.back();
      std::size_t i = static_cast<std::size_t>(it - times_.begin());
      double t0 = times_[i - 1], t1 = times_[i];
      double w = (tc - t0) / (t1 - t0);
      return (1.0 - w) * values_[i - 1] + w * values_[i];
    }
  }
  return c0_;  // unreachable
}

double PeriodicFn::operator()(double t) const {
  return eval_raw(wrap_time(t, period_));
}

double PeriodicFn::deriv(double t) const {
  double tw = wrap_time(t, period_);
  switch (form_) {
    case Form::constant:
      return 0.0;
    case Form::affine_sin:
      return c1_ * omega_ * std::cos(omega_ * tw + phase_);
    case Form::affine_abs_sin: {
      double s = std::sin(omega_ * tw);
      if (s != 0.0)
        return c1_ * omega_ * std::cos(omega_ * tw) * (s > 0.0 ? 1.0 : -1.0);
      // Kink (or genuine extremum of sin): |sin| grows at rate |omega cos|
      // to the right of any zero of sin.
      return c1_ * std::abs(omega_ * std::cos(omega_ * tw));
    }
    case Form::sampled: {
      double dh = period_ * 1e-6;
      return ((*this)(tw + dh) - (*this)(tw - dh)) / (2.0 * dh);
    }
  }
  return 0.0;  // unreachable
}

double PeriodicFn::periodicity_residual() const {
  return std::abs(eval_raw(period_) - eval_raw(0.0));
}

std::pair<double, double> extrema_over_period(
    const std::function<double(double)>& f, double period, int samples) {
  if (samples < 1000)
    throw ConfigError("extrema_over_period: samples must be >= 1000");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    double v = f(period * static_cast<double>(i) / samples);
    if (!std::isfinite(v))
      throw NumericError("extrema_over_period: non-finite value in sweep");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

std::pair<double, double> extrema_over_period(const PeriodicFn& f,
                                              int samples) {
  return extrema_over_period([&f](double t) { return f(t); }, f.period(),
                             samples);
}

}  // namespace evodom
