#include "samplab/target.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "samplab/errors.hpp"

namespace samplab {

namespace {

void check_dim(const TargetDensity& target, std::span<const double> x) {
  if (static_cast<int>(x.size()) != target.dim)
    throw ArgumentError("target '" + target.id + "': point has dimension " +
                        std::to_string(x.size()) + ", expected " +
                        std::to_string(target.dim));
}

double norm_sq(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

}  // namespace

double eval_density(const TargetDensity& target, std::span<const double> x) {
  check_dim(target, x);
  if (!target.support_test(x)) return 0.0;
  return target.rho(x);
}

Chord chord_segment(const TargetDensity& target, std::span<const double> x,
                    std::span<const double> theta) {
  check_dim(target, x);
  if (theta.size() != x.size()) throw ArgumentError("chord_segment: direction dimension mismatch");
  const double len = norm(theta);
  if (len < 1e-300) throw ArgumentError("chord_segment: zero direction");
  if (!target.support_test(x))
    throw DomainError("chord_segment: anchor outside the support of '" + target.id + "'");
  Chord chord;
  chord.anchor.assign(x.begin(), x.end());
  chord.direction.assign(theta.begin(), theta.end());
  for (double& c : chord.direction) c /= len;
  const Interval range = clip_line_to_box(target.bbox, x, chord.direction);
  chord.s_lo = range.lo;
  chord.s_hi = range.hi;
  return chord;
}

namespace {

// Level-set endpoint between s = 0 (inside, since t < rho(x)) and s_out,
// which may have either sign. Returns the inside end of the final bracket,
// so for quasi-concave densities the whole returned interval is strictly
// inside the level set.
double bisect_level_boundary(const TargetDensity& target, const Chord& chord,
                             double t, double s_out, double tol) {
  if (eval_density(target, chord.at(s_out)) > t) return s_out;
  double inside = 0.0;
  double outside = s_out;
  while (std::abs(outside - inside) > tol) {
    const double mid = 0.5 * (inside + outside);
    if (eval_density(target, chord.at(mid)) > t)
      inside = mid;
    else
      outside = mid;
  }
  return inside;
}

}  // namespace

std::optional<IntervalSet> level_chord(const TargetDensity& target,
                                       std::span<const double> x,
                                       std::span<const double> theta, double t) {
  const Chord chord = chord_segment(target, x, theta);
  const double rho_x = eval_density(target, x);
  if (!(t >= 0.0) || t >= rho_x)
    throw ArgumentError("level_chord: level t must lie in [0, rho(x))");
  if (!target.quasi_concave) return std::nullopt;
  const double tol = 1e-12 * (chord.s_hi - chord.s_lo);
  IntervalSet set;
  Interval part;
  part.hi = bisect_level_boundary(target, chord, t, chord.s_hi, tol);
  part.lo = bisect_level_boundary(target, chord, t, chord.s_lo, tol);
  set.parts.push_back(part);
  return set;
}

Point sample_pi(const TargetDensity& target, RngStream& rng, long attempt_cap) {
  if (!(target.sup_rho > 0.0) || !std::isfinite(target.sup_rho))
    throw ArgumentError("sample_pi: sup_rho must be finite and positive");
  target.bbox.validate();
  Point x(static_cast<std::size_t>(target.dim));
  for (long attempt = 0; attempt < attempt_cap; ++attempt) {
    for (int i = 0; i < target.dim; ++i)
      x[static_cast<std::size_t>(i)] = rng.uniform(target.bbox.lo[static_cast<std::size_t>(i)],
                                                   target.bbox.hi[static_cast<std::size_t>(i)]);
    const double r = eval_density(target, x);
    if (r > 0.0 && rng.uniform01() < r / target.sup_rho) return x;
  }
  throw EfficiencyError("sample_pi: attempt cap exceeded for target '" + target.id + "'");
}

double max_density_found(const TargetDensity& target, long probes, RngStream& rng) {
  Point x(static_cast<std::size_t>(target.dim));
  double best = 0.0;
  for (long k = 0; k < probes; ++k) {
    for (int i = 0; i < target.dim; ++i)
      x[static_cast<std::size_t>(i)] = rng.uniform(target.bbox.lo[static_cast<std::size_t>(i)],
                                                   target.bbox.hi[static_cast<std::size_t>(i)]);
    best = std::max(best, eval_density(target, x));
  }
  return best;
}

namespace {

BoundingBox cube(int dim, double half_width) {
  BoundingBox box;
  box.lo.assign(static_cast<std::size_t>(dim), -half_width);
  box.hi.assign(static_cast<std::size_t>(dim), half_width);
  return box;
}

TargetDensity uniform_box_target(int dim, const BoundingBox& box) {
  TargetDensity t;
  t.id = "uniform_box";
  t.dim = dim;
  t.bbox = box;
  t.support_test = [box](std::span<const double> x) { return box.contains(x); };
  t.rho = [box](std::span<const double> x) { return box.contains(x) ? 1.0 : 0.0; };
  t.sup_rho = 1.0;
  t.quasi_concave = true;
  for (int k = 0; k < dim; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const double w = box.hi[i] - box.lo[i];
    t.exact_moments["coord" + std::to_string(k + 1)] =
        Moments{0.5 * (box.lo[i] + box.hi[i]), w * w / 12.0};
  }
  return t;
}

TargetDensity uniform_ball_target(int dim, const BoundingBox& box) {
  TargetDensity t;
  t.id = "uniform_ball";
  t.dim = dim;
  t.bbox = box;
  t.support_test = [](std::span<const double> x) { return norm_sq(x) < 1.0; };
  t.rho = [](std::span<const double> x) { return norm_sq(x) < 1.0 ? 1.0 : 0.0; };
  t.sup_rho = 1.0;
  t.quasi_concave = true;
  for (int k = 0; k < dim; ++k)
    t.exact_moments["coord" + std::to_string(k + 1)] = Moments{0.0, std::nullopt};
  // E|x|^2 for the uniform unit ball is d/(d+2).
  t.exact_moments["radius_sq"] =
      Moments{static_cast<double>(dim) / (dim + 2.0), std::nullopt};
  return t;
}

TargetDensity gaussian_box_target(int dim, const BoundingBox& box) {
  TargetDensity t;
  t.id = "gaussian_box";
  t.dim = dim;
  t.bbox = box;
  t.support_test = [box](std::span<const double> x) { return box.contains(x); };
  t.rho = [box](std::span<const double> x) {
    return box.contains(x) ? std::exp(-0.5 * norm_sq(x)) : 0.0;
  };
  // The mode is the box point closest to the origin.
  double closest_sq = 0.0;
  for (std::size_t i = 0; i < box.lo.size(); ++i) {
    const double c = std::clamp(0.0, box.lo[i], box.hi[i]);
    closest_sq += c * c;
  }
  t.sup_rho = std::exp(-0.5 * closest_sq);
  t.quasi_concave = true;
  bool symmetric = true;
  for (std::size_t i = 0; i < box.lo.size(); ++i)
    symmetric = symmetric && box.lo[i] == -box.hi[i];
  if (symmetric) {
    for (int k = 0; k < dim; ++k)
      t.exact_moments["coord" + std::to_string(k + 1)] = Moments{0.0, std::nullopt};
  }
  return t;
}

TargetDensity cone_target(int dim, const BoundingBox& box) {
  TargetDensity t;
  t.id = "cone";
  t.dim = dim;
  t.bbox = box;
  t.support_test = [](std::span<const double> x) { return norm_sq(x) < 1.0; };
  t.rho = [](std::span<const double> x) {
    const double r = std::sqrt(norm_sq(x));
    return r < 1.0 ? 1.0 - r : 0.0;
  };
  t.sup_rho = 1.0;
  t.quasi_concave = true;
  for (int k = 0; k < dim; ++k)
    t.exact_moments["coord" + std::to_string(k + 1)] =
        Moments{0.0, dim == 1 ? std::optional<double>(1.0 / 6.0) : std::nullopt};
  return t;
}

// Two Gaussian bumps of different widths; not quasi-concave. 1D only.
TargetDensity bimodal1d_target(const BoundingBox& box) {
  TargetDensity t;
  t.id = "bimodal1d";
  t.dim = 1;
  t.bbox = box;
  t.support_test = [box](std::span<const double> x) { return box.contains(x); };
  t.rho = [box](std::span<const double> x) {
    if (!box.contains(x)) return 0.0;
    const double u = x[0];
    const double a = std::exp(-0.5 * (u + 1.0) * (u + 1.0) / (0.3 * 0.3));
    const double b = 0.8 * std::exp(-0.5 * (u - 1.0) * (u - 1.0) / (0.25 * 0.25));
    return a + b;
  };
  t.sup_rho = 1.05;  // loose bound; the peaks overlap only negligibly
  t.quasi_concave = false;
  return t;
}

BoundingBox default_box(const std::string& name, int dim) {
  if (name == "uniform_box") return cube(dim, 1.0);
  if (name == "uniform_ball") return cube(dim, 1.0);
  if (name == "gaussian_box") return cube(dim, 2.5);
  if (name == "cone") return cube(dim, 1.0);
  if (name == "bimodal1d") return cube(dim, 2.5);
  throw ArgumentError("unknown target '" + name + "'");
}

}  // namespace

TargetDensity make_target(const std::string& name, int dim) {
  return make_target(name, dim, default_box(name, dim));
}

TargetDensity make_target(const std::string& name, int dim, const BoundingBox& bbox) {
  if (dim < 1) throw ArgumentError("target dimension must be positive");
  bbox.validate();
  if (bbox.dim() != dim) throw ArgumentError("target bbox dimension mismatch");
  if (name == "uniform_box") return uniform_box_target(dim, bbox);
  if (name == "uniform_ball") return uniform_ball_target(dim, bbox);
  if (name == "gaussian_box") return gaussian_box_target(dim, bbox);
  if (name == "cone") return cone_target(dim, bbox);
  if (name == "bimodal1d") {
    if (dim != 1) throw ArgumentError("bimodal1d is one-dimensional");
    return bimodal1d_target(bbox);
  }
  throw ArgumentError("unknown target '" + name + "'");
}

}  // namespace samplab
