#pragma once

#include <Eigen/Dense>
#include <vector>

namespace evodom {

// A field is the vector of interior nodal values of one species.
using Field = Eigen::VectorXd;

// Both species at one instant, in the fixed reference frame.
struct StatePair {
  double t = 0.0;
  Field v1, v2;
};

// Time-ordered snapshots (strictly increasing t).
using Trajectory = std::vector<StatePair>;

// One snapshot mapped back to the physical (evolving) frame:
// x = rho(t) * y, u_i(x, t) = v_i(y, t).  Interior nodes only; the physical
// endpoints are rho(t)*y_left and rho(t)*y_right with u = 0 there.
struct PulledSnapshot {
  double t = 0.0;
  double x_left = 0.0, x_right = 0.0;
  Eigen::VectorXd x;  // physical positions of the interior nodes
  Field u1, u2;
};

}  // namespace evodom
