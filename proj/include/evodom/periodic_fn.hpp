#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace evodom {

// Reduce t to [0, period).  Exact for t already in range; handles negative t.
double wrap_time(double t, double period);

// Scalar coefficient of time, periodic by construction: evaluation wraps t
// into [0, T).  Four shapes cover every coefficient in the model:
//
//   constant        c0
//   affine_sin      c0 + c1 * sin(omega * t + phase)
//   affine_abs_sin  c0 + c1 * |sin(omega * t)|
//   sampled         piecewise-linear through (t_j, v_j), t_0 = 0, t_last = T
//
// The analytic forms are NOT required to close up over [0, T]; call
// periodicity_residual() to measure the wrap-around jump |f_raw(T) - f(0)|.
class PeriodicFn {
 public:
  enum class Form { constant, affine_sin, affine_abs_sin, sampled };

  static PeriodicFn constant(double value, double period);
  static PeriodicFn affine_sin(double c0, double c1, double omega, double phase,
                               double period);
  static PeriodicFn affine_abs_sin(double c0, double c1, double omega,
                                   double period);
  // times must start at 0, end at period, and strictly increase.
  static PeriodicFn sampled(std::vector<double> times,
                            std::vector<double> values);

  // Value at wrap_time(t).
  double operator()(double t) const;

  // Value without wrapping; only meaningful on [0, T] and used to measure
  // how far the analytic formula is from closing up at t = T.
  double eval_raw(double t) const;

  // One-sided (right) derivative at wrap_time(t).  At kinks of |sin| this is
  // the limit from the right; sampled forms use a centered difference with
  // step T/1e6.
  double deriv(double t) const;

  double period() const { return period_; }
  Form form() const { return form_; }

  // Construction parameters, exposed so a function can be serialized and
  // rebuilt exactly (configuration echo).  Meaningful per form: c0 for all
  // closed forms, c1/omega for the sin shapes, phase for affine_sin, the
  // table for sampled.
  double c0() const { return c0_; }
  double c1() const { return c1_; }
  double omega() const { return omega_; }
  double phase() const { return phase_; }
  const std::vector<double>& sample_times() const { return times_; }
  const std::vector<double>& sample_values() const { return values_; }

  // |eval_raw(T) - eval(0)|: zero for constants and for abs-sin with omega a
  // multiple of pi/T; generally nonzero for free-frequency sin forms.
  double periodicity_residual() const;

 private:
  PeriodicFn() = default;

  Form form_ = Form::constant;
  double period_ = 1.0;
  double c0_ = 0.0, c1_ = 0.0, omega_ = 0.0, phase_ = 0.0;
  std::vector<double> times_, values_;
};

// Min and max of f over one period, sampled at `samples`+1 equally spaced
// points of [0, T].  Sampling-based on purpose: coefficients may have kinks,
// and every tolerance downstream is calibrated for grid extrema.
std::pair<double, double> extrema_over_period(
    const std::function<double(double)>& f, double period, int samples = 10000);

std::pair<double, double> extrema_over_period(const PeriodicFn& f,
                                              int samples = 10000);

}  // namespace evodom
