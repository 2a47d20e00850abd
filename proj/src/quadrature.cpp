#include "samplab/quadrature.hpp"

#include <array>
#include <cmath>

#include "samplab/errors.hpp"

namespace samplab {

double simpson(const std::function<double(double)>& f, double a, double b,
               long intervals) {
  if (intervals < 2) throw ArgumentError("simpson: need at least 2 intervals");
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / static_cast<double>(intervals);
  // Split into chunks so the compensated accumulation stays cache-friendly.
  const double interior = par::chunked_sum(intervals - 1, 4096, par::Mode::serial, [&](std::int64_t k) {
    const double x = a + h * static_cast<double>(k + 1);
    return (k % 2 == 0 ? 4.0 : 2.0) * f(x);
  });
  return h / 3.0 * (f(a) + f(b) + interior);
}

double midpoint_2d(const std::function<double(double, double)>& f,
                   const BoundingBox& box, int cells_per_axis,
                   par::Mode mode) {
  if (box.dim() != 2) throw ArgumentError("midpoint_2d: box must be 2-dimensional");
  const long n = cells_per_axis;
  const double hx = (box.hi[0] - box.lo[0]) / static_cast<double>(n);
  const double hy = (box.hi[1] - box.lo[1]) / static_cast<double>(n);
  // One chunk per grid row: deterministic regardless of the schedule.
  std::vector<double> row_sums(static_cast<std::size_t>(n), 0.0);
  par::for_each_index(n, mode, [&](std::int64_t r) {
    const double y = box.lo[1] + (static_cast<double>(r) + 0.5) * hy;
    double sum = 0.0, comp = 0.0;
    for (long c = 0; c < n; ++c) {
      const double x = box.lo[0] + (static_cast<double>(c) + 0.5) * hx;
      const double v = f(x, y);
      const double t = sum + v;
      if (std::abs(sum) >= std::abs(v))
        comp += (sum - t) + v;
      else
        comp += (v - t) + sum;
      sum = t;
    }
    row_sums[static_cast<std::size_t>(r)] = sum + comp;
  });
  return hx * hy * par::neumaier_sum(row_sums);
}

QuadratureMoments quadrature_moments(const TargetDensity& target,
                                     const std::function<double(std::span<const double>)>& f,
                                     par::Mode mode) {
  QuadratureMoments out;
  if (target.dim == 1) {
    const double a = target.bbox.lo[0], b = target.bbox.hi[0];
    const long n = 1'000'000;
    const auto rho1 = [&](double x) {
      const std::array<double, 1> p{x};
      return eval_density(target, p);
    };
    const double mass = simpson(rho1, a, b, n);
    if (mass <= 0.0) throw NumericalError("quadrature_moments: zero target mass");
    const double first = simpson([&](double x) {
      const std::array<double, 1> p{x};
      return eval_density(target, p) * f(p);
    }, a, b, n);
    const double second = simpson([&](double x) {
      const std::array<double, 1> p{x};
      const double v = f(p);
      return eval_density(target, p) * v * v;
    }, a, b, n);
    out.mean = first / mass;
    out.second_moment = second / mass;
  } else if (target.dim == 2) {
    const int n = 4096;
    const auto rho2 = [&](double x, double y) {
      const std::array<double, 2> p{x, y};
      return eval_density(target, p);
    };
    const double mass = midpoint_2d(rho2, target.bbox, n, mode);
    if (mass <= 0.0) throw NumericalError("quadrature_moments: zero target mass");
    const double first = midpoint_2d([&](double x, double y) {
      const std::array<double, 2> p{x, y};
      return eval_density(target, p) * f(p);
    }, target.bbox, n, mode);
    const double second = midpoint_2d([&](double x, double y) {
      const std::array<double, 2> p{x, y};
      const double v = f(p);
      return eval_density(target, p) * v * v;
    }, target.bbox, n, mode);
    out.mean = first / mass;
    out.second_moment = second / mass;
  } else {
    throw ArgumentError("quadrature_moments: only d in {1,2} supported");
  }
  out.variance = out.second_moment - out.mean * out.mean;
  return out;
}

std::vector<double> bin_masses_1d(const TargetDensity& target, int bins) {
  if (target.dim != 1) throw ArgumentError("bin_masses_1d: target must be 1-dimensional");
  if (bins < 2) throw ArgumentError("bin_masses_1d: need at least 2 bins");
  const double a = target.bbox.lo[0], b = target.bbox.hi[0];
  const double h = (b - a) / bins;
  std::vector<double> masses(static_cast<std::size_t>(bins));
  const auto rho1 = [&](double x) {
    const std::array<double, 1> p{x};
    return eval_density(target, p);
  };
  for (int k = 0; k < bins; ++k)
    masses[static_cast<std::size_t>(k)] = simpson(rho1, a + k * h, a + (k + 1) * h, 4096);
  const double total = par::neumaier_sum(masses);
  if (total <= 0.0) throw NumericalError("bin_masses_1d: zero target mass");
  for (double& m : masses) m /= total;
  return masses;
}

}  // namespace samplab
