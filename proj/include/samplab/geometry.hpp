#pragma once

#include <span>
#include <vector>

namespace samplab {

using Point = std::vector<double>;

struct BoundingBox {
  std::vector<double> lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(std::span<const double> x) const;
  double volume() const;
  void validate() const;  // lo_i < hi_i componentwise
};

// Parameter range of the line x + s*theta clipped to a bounding box.
// The anchor always lies on the chord: s_lo <= 0 <= s_hi.
struct Chord {
  Point anchor;
  Point direction;  // unit vector
  double s_lo = 0.0;
  double s_hi = 0.0;

  Point at(double s) const;
};

struct Interval {
  double lo = 0.0, hi = 0.0;
  double length() const { return hi - lo; }
};

// Ordered disjoint open intervals in the chord parameter.
struct IntervalSet {
  std::vector<Interval> parts;

  double total_length() const;
  bool contains(double s) const;
};

double norm(std::span<const double> v);
Point add_scaled(std::span<const double> x, double s, std::span<const double> theta);

// [s_lo, s_hi] such that x + s*theta stays inside the box; requires x inside.
Interval clip_line_to_box(const BoundingBox& box, std::span<const double> x,
                          std::span<const double> theta);

}  // namespace samplab
