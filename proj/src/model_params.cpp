#include "evodom/model_params.hpp"

#include <cmath>
#include <string>

#include "evodom/errors.hpp"

namespace evodom {

namespace {

void check_coefficient(const PeriodicFn& f, const char* name, double period,
                       bool strictly_positive) {
  if (std::abs(f.period() - period) > 1e-12 * std::max(1.0, period))
    throw ConfigError(std::string("ModelParams: coefficient ") + name +
                      " has period " + std::to_string(f.period()) +
                      ", expected the law's period " + std::to_string(period));
  const int samples = 10000;
  for (int i = 0; i <= samples; ++i) {
    double t = period * static_cast<double>(i) / samples;
    double v = f(t);
    if (v < 0.0 || (strictly_positive && v == 0.0))
      throw ConfigError(std::string("ModelParams: coefficient ") + name +
                        (strictly_positive ? " must be strictly positive"
                                           : " must be nonnegative") +
                        "; offending value at t = " + std::to_string(t));
  }
}

}  // namespace

void ModelParams::validate() const {
  if (!(d1 > 0.0) || !(d2 > 0.0))
    throw ConfigError("ModelParams: diffusion rates d1, d2 must be > 0");
  if (!(y_left < y_right))
    throw ConfigError("ModelParams: interval requires y_left < y_right");
  double T = law.period();
  // Growth and cross-competition may be switched off (zero); the
  // self-limitation coefficients must stay strictly positive — they bound
  // the solutions and divide the bracketing constants.
  check_coefficient(a1, "a1", T, false);
  check_coefficient(a2, "a2", T, false);
  check_coefficient(b1, "b1", T, false);
  check_coefficient(b2, "b2", T, false);
  check_coefficient(c1, "c1", T, true);
  check_coefficient(c2, "c2", T, true);
}

}  // namespace evodom
