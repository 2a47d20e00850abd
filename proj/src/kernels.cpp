#include "samplab/kernels.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "samplab/errors.hpp"
#include "samplab/io.hpp"

namespace samplab {

std::string kernel_kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::hit_and_run: return "hit_and_run";
    case KernelKind::simple_slice: return "simple_slice";
    case KernelKind::hybrid_slice: return "hybrid_slice";
    case KernelKind::rwm: return "rwm";
  }
  return "?";
}

KernelKind kernel_kind_from_name(const std::string& name) {
  if (name == "hit_and_run") return KernelKind::hit_and_run;
  if (name == "simple_slice") return KernelKind::simple_slice;
  if (name == "hybrid_slice") return KernelKind::hybrid_slice;
  if (name == "rwm") return KernelKind::rwm;
  throw ArgumentError("unknown kernel kind '" + name + "'");
}

namespace {

double unit_ball_volume(int dim) {
  return std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
}

double norm_sq(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

}  // namespace

double ProposalSpec::density(std::span<const double> z) const {
  const int dim = static_cast<int>(z.size());
  if (kind == Kind::ball_walk) {
    if (norm_sq(z) > delta * delta) return 0.0;
    return 1.0 / (std::pow(delta, dim) * unit_ball_volume(dim));
  }
  return std::exp(-0.5 * norm_sq(z)) /
         std::pow(2.0 * std::numbers::pi, dim / 2.0);
}

Point ProposalSpec::sample(int dim, RngStream& rng) const {
  if (kind == Kind::gaussian) {
    Point z(static_cast<std::size_t>(dim));
    for (double& v : z) v = rng.normal();
    return z;
  }
  // Uniform in the delta-ball: uniform direction, radius delta * U^(1/d).
  Point z = sample_direction(dim, rng);
  const double r = delta * std::pow(rng.uniform01(), 1.0 / dim);
  for (double& v : z) v *= r;
  return z;
}

std::string ProposalSpec::name() const {
  return kind == Kind::ball_walk ? "ball_walk" : "gaussian";
}

void KernelSpec::validate() const {
  if (kind == KernelKind::rwm) {
    if (!proposal) throw ArgumentError("rwm kernel requires a proposal");
  } else if (proposal) {
    throw ArgumentError("proposal is only valid for the rwm kernel");
  }
  if (kind == KernelKind::hit_and_run) {
    if (inner_grid && *inner_grid < 2)
      throw ArgumentError("hit_and_run inner_grid must be at least 2");
  } else if (inner_grid) {
    throw ArgumentError("inner_grid is only valid for the hit_and_run kernel");
  }
  if (attempt_cap < 1) throw ArgumentError("attempt_cap must be positive");
}

KernelSpec make_kernel(KernelKind kind) {
  KernelSpec spec;
  spec.kind = kind;
  if (kind == KernelKind::rwm) spec.proposal = ProposalSpec{};
  if (kind == KernelKind::hit_and_run) spec.inner_grid = 4096;
  return spec;
}

Point sample_direction(int dim, RngStream& rng) {
  if (dim < 1) throw ArgumentError("sample_direction: dimension must be positive");
  Point theta(static_cast<std::size_t>(dim));
  while (true) {
    for (double& v : theta) v = rng.normal();
    const double len = norm(theta);
    if (len >= 1e-300) {
      for (double& v : theta) v /= len;
      return theta;
    }
  }
}

Point sample_on_chord(const TargetDensity& target, const Chord& chord, int cells,
                      RngStream& rng) {
  if (cells < 2) throw ArgumentError("sample_on_chord: need at least 2 cells");
  const double h = (chord.s_hi - chord.s_lo) / cells;
  std::vector<double> cdf(static_cast<std::size_t>(cells) + 1, 0.0);
  double prev = eval_density(target, chord.at(chord.s_lo));
  for (int k = 1; k <= cells; ++k) {
    const double cur = eval_density(target, chord.at(chord.s_lo + h * k));
    cdf[static_cast<std::size_t>(k)] =
        cdf[static_cast<std::size_t>(k) - 1] + 0.5 * h * (prev + cur);
    prev = cur;
  }
  const double total = cdf.back();
  if (!(total > 1e-300))
    throw NumericalError("sample_on_chord: vanishing chord mass for target '" +
                         target.id + "'");
  const double u = rng.uniform01() * total;
  // First cell whose upper CDF exceeds u.
  int lo = 0, hi = cells;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (cdf[static_cast<std::size_t>(mid) + 1] > u)
      hi = mid;
    else
      lo = mid + 1;
  }
  const double c0 = cdf[static_cast<std::size_t>(lo)];
  const double c1 = cdf[static_cast<std::size_t>(lo) + 1];
  const double frac = c1 > c0 ? (u - c0) / (c1 - c0) : 0.5;
  const double s = chord.s_lo + h * (static_cast<double>(lo) + frac);
  return chord.at(s);
}

StepResult hit_and_run_step(const TargetDensity& target, std::span<const double> x,
                            int cells, RngStream& rng) {
  const Point theta = sample_direction(target.dim, rng);
  const Chord chord = chord_segment(target, x, theta);
  StepResult out;
  out.y = sample_on_chord(target, chord, cells, rng);
  return out;
}

StepResult simple_slice_step(const TargetDensity& target, std::span<const double> x,
                             long attempt_cap, RngStream& rng) {
  const double rho_x = eval_density(target, x);
  if (!(rho_x > 0.0))
    throw DomainError("simple_slice_step: state outside the support");
  const double t = rng.uniform_open() * rho_x;
  StepResult out;
  Point candidate(static_cast<std::size_t>(target.dim));
  for (long attempt = 0; attempt < attempt_cap; ++attempt) {
    for (int i = 0; i < target.dim; ++i)
      candidate[static_cast<std::size_t>(i)] =
          rng.uniform(target.bbox.lo[static_cast<std::size_t>(i)],
                      target.bbox.hi[static_cast<std::size_t>(i)]);
    if (eval_density(target, candidate) > t) {
      out.y = std::move(candidate);
      out.rejections = attempt;
      return out;
    }
  }
  throw EfficiencyError("simple_slice_step: attempt cap exceeded at level t = " +
                        format_g17(t));
}

StepResult hybrid_slice_step(const TargetDensity& target, std::span<const double> x,
                             long attempt_cap, RngStream& rng) {
  const double rho_x = eval_density(target, x);
  if (!(rho_x > 0.0))
    throw DomainError("hybrid_slice_step: state outside the support");
  const double t = rng.uniform_open() * rho_x;
  const Point theta = sample_direction(target.dim, rng);
  StepResult out;
  if (target.quasi_concave) {
    const auto set = level_chord(target, x, theta, t);
    const Interval part = set->parts.front();
    const Chord chord = chord_segment(target, x, theta);
    out.y = chord.at(rng.uniform(part.lo, part.hi));
    return out;
  }
  // General targets: rejection on the bounding-box chord. Uniform proposals on
  // a superset restricted to {rho > t} land uniformly on the level chord.
  const Chord chord = chord_segment(target, x, theta);
  for (long attempt = 0; attempt < attempt_cap; ++attempt) {
    const double s = rng.uniform(chord.s_lo, chord.s_hi);
    Point candidate = chord.at(s);
    if (eval_density(target, candidate) > t) {
      out.y = std::move(candidate);
      out.rejections = attempt;
      return out;
    }
  }
  throw EfficiencyError("hybrid_slice_step: attempt cap exceeded at level t = " +
                        format_g17(t));
}

StepResult rwm_step(const TargetDensity& target, const ProposalSpec& proposal,
                    std::span<const double> x, RngStream& rng) {
  const double rho_x = eval_density(target, x);
  if (!(rho_x > 0.0)) throw DomainError("rwm_step: state outside the support");
  const Point z = proposal.sample(target.dim, rng);
  const double u1 = rng.uniform01();
  const double u2 = rng.uniform01();
  StepResult out;
  Point candidate(x.begin(), x.end());
  for (std::size_t i = 0; i < candidate.size(); ++i) candidate[i] += z[i];
  const double rho_y = eval_density(target, candidate);
  if (u1 <= 0.5 && rho_y > 0.0 && u2 < rho_y / rho_x) {
    out.y = std::move(candidate);
    out.accepted = true;
  } else {
    out.y.assign(x.begin(), x.end());
    out.accepted = false;
  }
  return out;
}

StepResult kernel_step(const TargetDensity& target, const KernelSpec& spec,
                       std::span<const double> x, RngStream& rng) {
  switch (spec.kind) {
    case KernelKind::hit_and_run:
      return hit_and_run_step(target, x, spec.chord_cells(), rng);
    case KernelKind::simple_slice:
      return simple_slice_step(target, x, spec.attempt_cap, rng);
    case KernelKind::hybrid_slice:
      return hybrid_slice_step(target, x, spec.attempt_cap, rng);
    case KernelKind::rwm:
      return rwm_step(target, *spec.proposal, x, rng);
  }
  throw ArgumentError("kernel_step: bad kernel kind");
}

ChainTrace run_chain(const TargetDensity& target, const KernelSpec& spec,
                     Point x0, long steps, std::uint64_t seed) {
  spec.validate();
  if (steps < 0) throw ArgumentError("run_chain: negative step count");
  if (!target.support_test(x0))
    throw DomainError("run_chain: x0 outside the support of '" + target.id + "'");
  ChainTrace trace;
  trace.target_id = target.id;
  trace.kernel = spec;
  trace.seed = seed;
  trace.states.reserve(static_cast<std::size_t>(steps) + 1);
  trace.states.push_back(std::move(x0));
  trace.accepted.push_back(1);
  trace.rejections.push_back(0);
  RngStream rng(seed);
  for (long k = 0; k < steps; ++k) {
    try {
      StepResult r = kernel_step(target, spec, trace.states.back(), rng);
      trace.states.push_back(std::move(r.y));
      trace.accepted.push_back(r.accepted ? 1 : 0);
      trace.rejections.push_back(r.rejections);
    } catch (const EfficiencyError& e) {
      throw EfficiencyError(std::string(e.what()) + " (chain step " +
                            std::to_string(k + 1) + ")");
    }
  }
  return trace;
}

void write_trace_csv(const ChainTrace& trace, std::ostream& os) {
  const int dim = trace.states.empty() ? 0 : static_cast<int>(trace.states.front().size());
  os << "step";
  for (int i = 1; i <= dim; ++i) os << ",x_" << i;
  os << ",accepted\r\n";
  for (std::size_t k = 0; k < trace.states.size(); ++k) {
    os << k;
    for (double v : trace.states[k]) os << ',' << format_g17(v);
    os << ',' << static_cast<int>(trace.accepted[k]) << "\r\n";
  }
}

}  // namespace samplab
