#pragma once

#include <functional>

namespace evodom {

// Composite-Simpson integral of f over [0, length] with `nodes` subintervals
// (nodes must be even and >= 2; throws ConfigError otherwise).
double integrate(const std::function<double(double)>& f, double length,
                 int nodes = 4096);

// Mean value of f over one period: integrate(f, T, nodes) / T.
double period_mean(const std::function<double(double)>& f, double period,
                   int nodes = 4096);

}  // namespace evodom
