#include "samplab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "samplab/errors.hpp"

namespace samplab {

bool BoundingBox::contains(std::span<const double> x) const {
  if (x.size() != lo.size()) return false;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  }
  return true;
}

double BoundingBox::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
  return v;
}

void BoundingBox::validate() const {
  if (lo.empty() || lo.size() != hi.size())
    throw ArgumentError("bounding box: lo/hi size mismatch");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i]))
      throw ArgumentError("bounding box: lo must be strictly below hi");
  }
}

Point Chord::at(double s) const { return add_scaled(anchor, s, direction); }

double IntervalSet::total_length() const {
  double sum = 0.0;
  for (const auto& part : parts) sum += part.length();
  return sum;
}

bool IntervalSet::contains(double s) const {
  for (const auto& part : parts) {
    if (s > part.lo && s < part.hi) return true;
  }
  return false;
}

double norm(std::span<const double> v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  return std::sqrt(sq);
}

Point add_scaled(std::span<const double> x, double s, std::span<const double> theta) {
  Point y(x.begin(), x.end());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * theta[i];
  return y;
}

Interval clip_line_to_box(const BoundingBox& box, std::span<const double> x,
                          std::span<const double> theta) {
  double s_lo = -std::numeric_limits<double>::infinity();
  double s_hi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < box.lo.size(); ++i) {
    if (theta[i] == 0.0) continue;
    const double a = (box.lo[i] - x[i]) / theta[i];
    const double b = (box.hi[i] - x[i]) / theta[i];
    s_lo = std::max(s_lo, std::min(a, b));
    s_hi = std::min(s_hi, std::max(a, b));
  }
  // The anchor is inside the box, so the range brackets zero.
  s_lo = std::min(s_lo, 0.0);
  s_hi = std::max(s_hi, 0.0);
  return {s_lo, s_hi};
}

}  // namespace samplab
