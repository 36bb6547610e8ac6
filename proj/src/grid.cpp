#include "evodom/grid.hpp"

#include "evodom/errors.hpp"

namespace evodom {

Grid::Grid(double y_left, double y_right, int n_interior)
    : y_left_(y_left), y_right_(y_right), n_(n_interior) {
  if (!(y_left < y_right))
    throw ConfigError("Grid: interval requires y_left < y_right");
  if (n_ < 3) throw ConfigError("Grid: need at least 3 interior nodes");
  h_ = (y_right_ - y_left_) / (n_ + 1);
  nodes_.resize(n_);
  for (int i = 0; i < n_; ++i) nodes_[i] = y_left_ + (i + 1) * h_;
}

}  // namespace evodom
