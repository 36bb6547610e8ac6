#include "evodom/quadrature.hpp"

#include <cmath>

#include "evodom/errors.hpp"

namespace evodom {

double integrate(const std::function<double(double)>& f, double length,
                 int nodes) {
  if (nodes < 2 || nodes % 2 != 0)
    throw ConfigError("integrate: subinterval count must be even and >= 2");
  if (!(length > 0.0)) throw ConfigError("integrate: length must be > 0");
  const double h = length / nodes;
  double sum = f(0.0) + f(length);
  for (int i = 1; i < nodes; ++i) {
    double v = f(i * h);
    sum += (i % 2 == 1 ? 4.0 : 2.0) * v;
  }
  sum *= h / 3.0;
  if (!std::isfinite(sum))
    throw NumericError("integrate: non-finite integrand encountered");
  return sum;
}

double period_mean(const std::function<double(double)>& f, double period,
                   int nodes) {
  return integrate(f, period, nodes) / period;
}

}  // namespace evodom
