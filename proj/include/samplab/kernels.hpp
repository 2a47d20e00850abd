#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "samplab/target.hpp"

namespace samplab {

enum class KernelKind { hit_and_run, simple_slice, hybrid_slice, rwm };

std::string kernel_kind_name(KernelKind kind);
KernelKind kernel_kind_from_name(const std::string& name);

// Rotationally invariant proposal for the random walk Metropolis.
struct ProposalSpec {
  enum class Kind { ball_walk, gaussian };
  Kind kind = Kind::ball_walk;
  double delta = 1.0;  // ball walk radius

  double density(std::span<const double> z) const;
  Point sample(int dim, RngStream& rng) const;
  std::string name() const;
};

struct KernelSpec {
  KernelKind kind = KernelKind::hit_and_run;
  std::optional<ProposalSpec> proposal;  // rwm only
  std::optional<int> inner_grid;         // hit-and-run only: chord CDF cells
  long attempt_cap = 1'000'000;

  void validate() const;  // kind-specific fields present exactly when required
  int chord_cells() const { return inner_grid.value_or(4096); }
  std::string name() const { return kernel_kind_name(kind); }
};

KernelSpec make_kernel(KernelKind kind);

struct StepResult {
  Point y;
  bool accepted = true;  // rwm: proposal accepted; others: always true
  long rejections = 0;   // rejection-loop proposals discarded in this step
};

// Uniform direction on the unit sphere.
Point sample_direction(int dim, RngStream& rng);

// Draw from the density proportional to rho along the chord, via a composite
// trapezoid CDF on `cells` cells with linear interpolation inside a cell.
Point sample_on_chord(const TargetDensity& target, const Chord& chord, int cells,
                      RngStream& rng);

StepResult hit_and_run_step(const TargetDensity& target, std::span<const double> x,
                            int cells, RngStream& rng);
StepResult simple_slice_step(const TargetDensity& target, std::span<const double> x,
                             long attempt_cap, RngStream& rng);
StepResult hybrid_slice_step(const TargetDensity& target, std::span<const double> x,
                             long attempt_cap, RngStream& rng);
StepResult rwm_step(const TargetDensity& target, const ProposalSpec& proposal,
                    std::span<const double> x, RngStream& rng);

StepResult kernel_step(const TargetDensity& target, const KernelSpec& spec,
                       std::span<const double> x, RngStream& rng);

struct ChainTrace {
  std::string target_id;
  KernelSpec kernel;
  std::uint64_t seed = 0;
  std::vector<Point> states;       // states[0] = x0
  std::vector<char> accepted;      // aligned with states
  std::vector<long> rejections;
};

ChainTrace run_chain(const TargetDensity& target, const KernelSpec& spec,
                     Point x0, long steps, std::uint64_t seed);

// One row per step: step, x_1..x_d, accepted. 17 significant digits.
void write_trace_csv(const ChainTrace& trace, std::ostream& os);

}  // namespace samplab
