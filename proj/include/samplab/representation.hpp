#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "samplab/grid.hpp"

namespace samplab {

// Shared structure of a two-step transition: an index a is drawn from the
// density s(x, .) against the weights lambda, then the state moves inside the
// equivalence class fiber_id[a] according to a fiber kernel.
struct RepresentationIndex {
  int num_states = 0;
  Eigen::VectorXd pi;                       // global stationary weights
  std::vector<double> lambda;               // lambda({a})
  std::vector<Eigen::VectorXd> s;           // s[a](i), density w.r.t. lambda
  std::vector<std::vector<int>> fiber_id;   // fiber_id[a][i]: class of state i
  std::vector<std::string> index_name;
};

struct TwoStepRepresentation {
  std::shared_ptr<const RepresentationIndex> index;
  std::string label;                        // which operator this side composes to
  std::vector<Eigen::MatrixXd> fiber_kernel;
};

enum class RepresentationPair { har_vs_hybrid, simple_vs_hybrid, rwm_vs_hybrid };

std::string representation_pair_name(RepresentationPair pair);
RepresentationPair representation_pair_from_name(const std::string& name);

// Both sides over the same index set, fibers and s. The first element is the
// dominating side (U, U, M respectively), the second the dominated one
// (H, S, U). w is the Metropolis proposal half-width (rwm pair only).
std::pair<TwoStepRepresentation, TwoStepRepresentation> build_representation(
    RepresentationPair pair, const GridSpec& grid, int w = 1);

// Mixture kernel sum_a lambda(a) s(x,a) P_a(x, .). Rows off by more than
// 1e-9 raise a construction error naming the row.
Eigen::MatrixXd compose(const TwoStepRepresentation& rep);

// pi_a: pi weighted by s(., a), normalized.
Eigen::VectorXd fiber_measure(const RepresentationIndex& index, int a);

struct CheckReport {
  std::string check;
  std::vector<double> per_fiber;  // residual or min eigenvalue per index a
  double worst = 0.0;
  bool pass = false;
  double tolerance = 1e-10;
};

// (i) max |pi_a(i) P_a(i,j) - pi_a(j) P_a(j,i)| per index a.
CheckReport check_fiber_reversibility(const TwoStepRepresentation& rep);
// (ii) min eigenvalue of the symmetrized fiber kernel, restricted to the
// support of pi_a; refuses when the fiber is not reversible.
CheckReport check_fiber_positivity(const TwoStepRepresentation& rep);
// (iii) max-norm of P1_a P2_a - P2_a per index a.
CheckReport check_interweaving(const TwoStepRepresentation& rep1,
                               const TwoStepRepresentation& rep2);

}  // namespace samplab
