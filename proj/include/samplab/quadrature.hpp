#pragma once

#include <functional>
#include <vector>

#include "samplab/parallel.hpp"
#include "samplab/target.hpp"

namespace samplab {

// Composite Simpson over [a, b] with `intervals` subintervals (made even).
double simpson(const std::function<double(double)>& f, double a, double b,
               long intervals);

// Tensor midpoint rule over the target box with cells_per_axis^2 cells.
double midpoint_2d(const std::function<double(double, double)>& f,
                   const BoundingBox& box, int cells_per_axis,
                   par::Mode mode = par::default_mode());

struct QuadratureMoments {
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
};

// E_pi f and E_pi f^2 by quadrature: Simpson with 1e6 subintervals in d=1,
// 4096^2 midpoint cells in d=2.
QuadratureMoments quadrature_moments(const TargetDensity& target,
                                     const std::function<double(std::span<const double>)>& f,
                                     par::Mode mode = par::default_mode());

// Normalized pi-masses of `bins` equal-width cells of the bounding box (d=1).
std::vector<double> bin_masses_1d(const TargetDensity& target, int bins);

}  // namespace samplab
