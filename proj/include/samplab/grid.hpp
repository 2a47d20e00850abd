#pragma once

#include <string>
#include <vector>

#include "samplab/geometry.hpp"

namespace samplab {

// Finite discretization: cell centers of a box with positive weights rho_i
// taken from a catalog shape evaluated at the centers.
struct GridSpec {
  int dim = 1;   // 1 or 2
  int n = 2;     // points per axis; N = n^dim states
  BoundingBox box;
  std::string weight_name;
  std::vector<Point> centers;   // row-major in d=2: index = r*n + c
  std::vector<double> rho;

  int num_states() const { return static_cast<int>(rho.size()); }
  int index2(int r, int c) const { return r * n + c; }
};

// weights: uniform | cone | gaussian. The cone in d=2 lives on a smaller box
// so that every cell center stays strictly inside the unit ball.
GridSpec make_grid(const std::string& weights, int dim, int n);

}  // namespace samplab
