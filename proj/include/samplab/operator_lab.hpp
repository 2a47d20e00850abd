#pragma once

#include <map>
#include <string>
#include <vector>

#include "samplab/discrete.hpp"
#include "samplab/parallel.hpp"

namespace samplab {

// <Pf, f>_pi = sum_i pi_i f_i (Pf)_i.
double quadratic_form(const DiscreteKernel& kernel, std::span<const double> f);

struct OrderingRow {
  std::string f_id;
  double qf_M = 0.0, qf_U = 0.0, qf_H = 0.0, qf_S = 0.0;
  double margin_MU = 0.0, margin_UH = 0.0, margin_US = 0.0;
};

struct LabReport {
  std::vector<OrderingRow> rows;
  double min_margin_MU = 0.0, min_margin_UH = 0.0, min_margin_US = 0.0;
  bool pass = false;
  double slack = 1e-10;
  std::string note;
};

// Quadratic-form ordering <Mf,f> >= <Uf,f> >= <Hf,f> and <Uf,f> >= <Sf,f>
// over num_random_f standard-normal vectors plus all cell indicators and the
// coordinate functions. Verdicts allow slack -1e-10.
LabReport verify_ordering(const KernelSet& kernels, int num_random_f,
                          std::uint64_t seed, par::Mode mode = par::default_mode());

// 1 - lambda_2 of the symmetrized kernel; aborts if the symmetrization
// residual exceeds 1e-10.
double spectral_gap(const DiscreteKernel& kernel);

enum class ConductanceMode { exact_subsets, contiguous };

// min over admissible A of <(I-P)1_A, 1_A>_pi / pi(A) with pi(A) <= 1/2.
// exact_subsets enumerates all subsets (N <= 16 only); contiguous restricts
// to intervals (d=1) or rectangles (d=2) and is an upper bound.
double conductance(const DiscreteKernel& kernel, ConductanceMode mode,
                   const GridSpec& grid);

struct ConsequenceReport {
  std::map<std::string, double> gap;          // per kernel label
  std::map<std::string, double> conductance;  // per kernel label
  std::string conductance_mode;
  bool gap_ordering_pass = false;
  bool conductance_ordering_pass = false;
  bool pass = false;
  double slack = 1e-10;
};

// gap(M) <= gap(U) <= gap(H), gap(U) <= gap(S), and the same chains for
// conductance (exact mode when N <= 16, contiguous otherwise).
ConsequenceReport ordering_consequences(const KernelSet& kernels);

}  // namespace samplab
