#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "samplab/geometry.hpp"
#include "samplab/rng.hpp"

namespace samplab {

struct Moments {
  double mean = 0.0;
  std::optional<double> variance;
};

// Unnormalized density rho on a support K inside a bounding box.
// rho(x) > 0 exactly on K; sup_rho bounds rho over K; quasi_concave
// declares that every level set {rho > t} meets chords in one interval.
struct TargetDensity {
  std::string id;
  int dim = 1;
  std::function<double(std::span<const double>)> rho;
  std::function<bool(std::span<const double>)> support_test;
  BoundingBox bbox;
  double sup_rho = 1.0;
  bool quasi_concave = true;
  // Analytic moments of catalog test functions, keyed by function id.
  std::map<std::string, Moments> exact_moments;
};

double eval_density(const TargetDensity& target, std::span<const double> x);

// Line through x in direction theta clipped to the bounding box.
Chord chord_segment(const TargetDensity& target, std::span<const double> x,
                    std::span<const double> theta);

// {s : rho(x + s*theta) > t} on the chord. Returns the single interval found
// by endpoint bisection when the target is quasi-concave; nullopt means the
// caller must fall back to rejection on the chord.
std::optional<IntervalSet> level_chord(const TargetDensity& target,
                                       std::span<const double> x,
                                       std::span<const double> theta, double t);

// Exact draw from pi by rejection from the bounding box.
Point sample_pi(const TargetDensity& target, RngStream& rng,
                long attempt_cap = 1'000'000);

// Randomized search for the density maximum; used to audit sup_rho.
double max_density_found(const TargetDensity& target, long probes, RngStream& rng);

// Catalog: uniform_box, uniform_ball, gaussian_box, cone, bimodal1d.
TargetDensity make_target(const std::string& name, int dim);
TargetDensity make_target(const std::string& name, int dim, const BoundingBox& bbox);

}  // namespace samplab
