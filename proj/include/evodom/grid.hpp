#pragma once

#include <Eigen/Dense>

namespace evodom {

// Uniform grid on [y_left, y_right] with n interior nodes, spacing
// h = (y_right - y_left) / (n + 1).  Fields live on the interior nodes;
// the Dirichlet boundary values are carried separately by the operators
// that need them.
class Grid {
 public:
  Grid(double y_left, double y_right, int n_interior);

  int n() const { return n_; }
  double h() const { return h_; }
  double length() const { return y_right_ - y_left_; }
  double y_left() const { return y_left_; }
  double y_right() const { return y_right_; }

  // Interior node coordinates y_i = y_left + (i+1) h, i = 0..n-1.
  const Eigen::VectorXd& nodes() const { return nodes_; }

 private:
  double y_left_, y_right_, h_;
  int n_;
  Eigen::VectorXd nodes_;
};

}  // namespace evodom
