#include "samplab/discrete.hpp"

#include <algorithm>
#include <cmath>

#include "samplab/errors.hpp"
#include "samplab/io.hpp"

namespace samplab {

std::string kernel_label_name(KernelLabel label) {
  switch (label) {
    case KernelLabel::M: return "M";
    case KernelLabel::U: return "U";
    case KernelLabel::H: return "H";
    case KernelLabel::S: return "S";
    case KernelLabel::Pi_iid: return "Pi_iid";
  }
  return "?";
}

double detailed_balance_residual(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < P.rows(); ++i)
    for (Eigen::Index j = i + 1; j < P.cols(); ++j)
      worst = std::max(worst, std::abs(pi(i) * P(i, j) - pi(j) * P(j, i)));
  return worst;
}

void validate_kernel(const DiscreteKernel& kernel) {
  const auto& P = kernel.P;
  const std::string name = kernel_label_name(kernel.label);
  for (Eigen::Index i = 0; i < P.rows(); ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < P.cols(); ++j) {
      if (P(i, j) < 0.0)
        throw ConstructionError("kernel " + name + ": negative entry at (" +
                                std::to_string(i) + "," + std::to_string(j) +
                                ") = " + format_g17(P(i, j)));
      row += P(i, j);
    }
    if (std::abs(row - 1.0) > 1e-12)
      throw ConstructionError("kernel " + name + ": row " + std::to_string(i) +
                              " sums to " + format_g17(row));
  }
  const double db = detailed_balance_residual(P, kernel.pi);
  if (db > 1e-12)
    throw ConstructionError("kernel " + name + ": detailed balance residual " +
                            format_g17(db));
}

Eigen::MatrixXd iid_matrix(const Eigen::VectorXd& rho) {
  const double total = rho.sum();
  Eigen::MatrixXd P(rho.size(), rho.size());
  for (Eigen::Index i = 0; i < rho.size(); ++i)
    for (Eigen::Index j = 0; j < rho.size(); ++j) P(i, j) = rho(j) / total;
  return P;
}

Eigen::MatrixXd slice_matrix(const Eigen::VectorXd& rho) {
  const Eigen::Index N = rho.size();
  std::vector<double> levels(rho.data(), rho.data() + N);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  const std::size_t m = levels.size();

  // count[l] = #{k : rho_k >= levels[l]} via the sorted weights.
  std::vector<double> sorted(rho.data(), rho.data() + N);
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> prefix(m);  // sum_{j<=l} (levels_j - levels_{j-1}) / count_j
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t l = 0; l < m; ++l) {
    const auto below =
        std::lower_bound(sorted.begin(), sorted.end(), levels[l]) - sorted.begin();
    const double count = static_cast<double>(N - below);
    acc += (levels[l] - prev) / count;
    prefix[l] = acc;
    prev = levels[l];
  }

  std::vector<std::size_t> rank(static_cast<std::size_t>(N));
  for (Eigen::Index i = 0; i < N; ++i)
    rank[static_cast<std::size_t>(i)] = static_cast<std::size_t>(
        std::lower_bound(levels.begin(), levels.end(), rho(i)) - levels.begin());

  Eigen::MatrixXd P(N, N);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j < N; ++j)
      P(i, j) = prefix[std::min(rank[static_cast<std::size_t>(i)],
                                rank[static_cast<std::size_t>(j)])] /
                rho(i);
  return P;
}

namespace {

Eigen::VectorXd weights_of(const GridSpec& grid) {
  Eigen::VectorXd rho(grid.num_states());
  for (int i = 0; i < grid.num_states(); ++i) rho(i) = grid.rho[static_cast<std::size_t>(i)];
  return rho;
}

Eigen::MatrixXd metropolis_matrix(const GridSpec& grid, const Eigen::VectorXd& rho, int w) {
  const Eigen::Index N = rho.size();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(N, N);
  const double step_prob = 1.0 / (2.0 * w * grid.dim);
  const auto add_move = [&](Eigen::Index i, Eigen::Index j) {
    P(i, j) += 0.5 * step_prob * std::min(1.0, rho(j) / rho(i));
  };
  if (grid.dim == 1) {
    for (int i = 0; i < grid.n; ++i)
      for (int k = 1; k <= w; ++k) {
        if (i - k >= 0) add_move(i, i - k);
        if (i + k < grid.n) add_move(i, i + k);
      }
  } else {
    for (int r = 0; r < grid.n; ++r)
      for (int c = 0; c < grid.n; ++c) {
        const Eigen::Index i = grid.index2(r, c);
        for (int k = 1; k <= w; ++k) {
          if (r - k >= 0) add_move(i, grid.index2(r - k, c));
          if (r + k < grid.n) add_move(i, grid.index2(r + k, c));
          if (c - k >= 0) add_move(i, grid.index2(r, c - k));
          if (c + k < grid.n) add_move(i, grid.index2(r, c + k));
        }
      }
  }
  for (Eigen::Index i = 0; i < N; ++i) {
    double off = 0.0;
    for (Eigen::Index j = 0; j < N; ++j)
      if (j != i) off += P(i, j);
    P(i, i) = 1.0 - off;
  }
  return P;
}

Eigen::MatrixXd hit_and_run_matrix_2d(const GridSpec& grid, const Eigen::VectorXd& rho) {
  const Eigen::Index N = rho.size();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(N, N);
  std::vector<double> row_sum(static_cast<std::size_t>(grid.n), 0.0);
  std::vector<double> col_sum(static_cast<std::size_t>(grid.n), 0.0);
  for (int r = 0; r < grid.n; ++r)
    for (int c = 0; c < grid.n; ++c) {
      row_sum[static_cast<std::size_t>(r)] += rho(grid.index2(r, c));
      col_sum[static_cast<std::size_t>(c)] += rho(grid.index2(r, c));
    }
  for (int r = 0; r < grid.n; ++r)
    for (int c = 0; c < grid.n; ++c) {
      const Eigen::Index i = grid.index2(r, c);
      for (int k = 0; k < grid.n; ++k) {
        P(i, grid.index2(r, k)) += 0.5 * rho(grid.index2(r, k)) / row_sum[static_cast<std::size_t>(r)];
        P(i, grid.index2(k, c)) += 0.5 * rho(grid.index2(k, c)) / col_sum[static_cast<std::size_t>(c)];
      }
    }
  return P;
}

Eigen::MatrixXd hybrid_matrix_2d(const GridSpec& grid, const Eigen::VectorXd& rho) {
  const Eigen::Index N = rho.size();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(N, N);
  Eigen::VectorXd line(grid.n);
  for (int r = 0; r < grid.n; ++r) {
    for (int c = 0; c < grid.n; ++c) line(c) = rho(grid.index2(r, c));
    const Eigen::MatrixXd S_line = slice_matrix(line);
    for (int c = 0; c < grid.n; ++c)
      for (int k = 0; k < grid.n; ++k)
        P(grid.index2(r, c), grid.index2(r, k)) += 0.5 * S_line(c, k);
  }
  for (int c = 0; c < grid.n; ++c) {
    for (int r = 0; r < grid.n; ++r) line(r) = rho(grid.index2(r, c));
    const Eigen::MatrixXd S_line = slice_matrix(line);
    for (int r = 0; r < grid.n; ++r)
      for (int k = 0; k < grid.n; ++k)
        P(grid.index2(r, c), grid.index2(k, c)) += 0.5 * S_line(r, k);
  }
  return P;
}

}  // namespace

KernelSet build_discrete_kernels(const GridSpec& grid, int w) {
  if (w < 1) throw ArgumentError("build_discrete_kernels: w must be positive");
  KernelSet set;
  set.grid = grid;
  set.w = w;
  const Eigen::VectorXd rho = weights_of(grid);
  const Eigen::VectorXd pi = rho / rho.sum();

  set.Pi_iid = {iid_matrix(rho), pi, KernelLabel::Pi_iid};
  set.S = {slice_matrix(rho), pi, KernelLabel::S};
  set.M = {metropolis_matrix(grid, rho, w), pi, KernelLabel::M};
  if (grid.dim == 1) {
    set.H = {iid_matrix(rho), pi, KernelLabel::H};
    set.U = {slice_matrix(rho), pi, KernelLabel::U};
  } else {
    set.H = {hit_and_run_matrix_2d(grid, rho), pi, KernelLabel::H};
    set.U = {hybrid_matrix_2d(grid, rho), pi, KernelLabel::U};
  }
  for (const DiscreteKernel* kernel : {&set.M, &set.U, &set.H, &set.S, &set.Pi_iid})
    validate_kernel(*kernel);
  return set;
}

}  // namespace samplab
