#pragma once

#include <Eigen/Dense>
#include <string>

#include "samplab/grid.hpp"

namespace samplab {

enum class KernelLabel { M, U, H, S, Pi_iid };

std::string kernel_label_name(KernelLabel label);

// Row-stochastic matrix with its stationary weight vector.
struct DiscreteKernel {
  Eigen::MatrixXd P;
  Eigen::VectorXd pi;
  KernelLabel label = KernelLabel::Pi_iid;
};

// Row sums within 1e-12, detailed balance within 1e-12, entries nonnegative.
void validate_kernel(const DiscreteKernel& kernel);
double detailed_balance_residual(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi);

// Exact finite analogs of the four kernels on a grid's weights.
//   Pi_iid : every row equals pi.
//   S      : level mixture of uniform-on-level-set, summed over the sorted
//            distinct weight values (exact, no quadrature).
//   H      : d=1 iid pi; d=2 average of the pi-conditionals on the point's
//            row and column.
//   U      : average over axis directions of the slice construction
//            restricted to the line.
//   M      : lazy Metropolis, uniform axis-step proposal of half-width w:
//            off-grid proposals are rejected; per-candidate weight is
//            1/(2wd), so the chain holds with probability >= 1/2.
struct KernelSet {
  DiscreteKernel M, U, H, S, Pi_iid;
  GridSpec grid;
  int w = 1;
};

KernelSet build_discrete_kernels(const GridSpec& grid, int w);

// Slice analog on an arbitrary positive weight vector; used whole-space for S
// and per line for U. Exact level sums over the distinct values.
Eigen::MatrixXd slice_matrix(const Eigen::VectorXd& rho);

// Rows all equal to rho normalized.
Eigen::MatrixXd iid_matrix(const Eigen::VectorXd& rho);

}  // namespace samplab
