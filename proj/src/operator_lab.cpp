#include "samplab/operator_lab.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "samplab/errors.hpp"
#include "samplab/rng.hpp"

namespace samplab {

double quadratic_form(const DiscreteKernel& kernel, std::span<const double> f) {
  const Eigen::Index N = kernel.P.rows();
  if (static_cast<Eigen::Index>(f.size()) != N)
    throw ArgumentError("quadratic_form: test function has wrong length");
  const Eigen::Map<const Eigen::VectorXd> fv(f.data(), N);
  const Eigen::VectorXd Pf = kernel.P * fv;
  return fv.cwiseProduct(kernel.pi).dot(Pf);
}

LabReport verify_ordering(const KernelSet& kernels, int num_random_f,
                          std::uint64_t seed, par::Mode mode) {
  const int N = kernels.grid.num_states();
  const int dim = kernels.grid.dim;
  const long total = num_random_f + N + dim;
  LabReport report;
  report.rows.resize(static_cast<std::size_t>(total));
  if (kernels.grid.dim == 2)
    report.note = "d=2 Metropolis uses the uniform axis-step proposal";
  RngStream base(seed);
  par::for_each_index(total, mode, [&](std::int64_t idx) {
    std::vector<double> f(static_cast<std::size_t>(N), 0.0);
    OrderingRow row;
    if (idx < num_random_f) {
      RngStream rng = base.derive(static_cast<std::uint64_t>(idx));
      for (double& v : f) v = rng.normal();
      row.f_id = "random_" + std::to_string(idx);
    } else if (idx < num_random_f + N) {
      f[static_cast<std::size_t>(idx - num_random_f)] = 1.0;
      row.f_id = "indicator_" + std::to_string(idx - num_random_f);
    } else {
      const int axis = static_cast<int>(idx - num_random_f - N);
      for (int i = 0; i < N; ++i)
        f[static_cast<std::size_t>(i)] =
            kernels.grid.centers[static_cast<std::size_t>(i)][static_cast<std::size_t>(axis)];
      row.f_id = "coord_" + std::to_string(axis + 1);
    }
    row.qf_M = quadratic_form(kernels.M, f);
    row.qf_U = quadratic_form(kernels.U, f);
    row.qf_H = quadratic_form(kernels.H, f);
    row.qf_S = quadratic_form(kernels.S, f);
    row.margin_MU = row.qf_M - row.qf_U;
    row.margin_UH = row.qf_U - row.qf_H;
    row.margin_US = row.qf_U - row.qf_S;
    report.rows[static_cast<std::size_t>(idx)] = std::move(row);
  });
  report.min_margin_MU = report.rows.front().margin_MU;
  report.min_margin_UH = report.rows.front().margin_UH;
  report.min_margin_US = report.rows.front().margin_US;
  for (const OrderingRow& row : report.rows) {
    report.min_margin_MU = std::min(report.min_margin_MU, row.margin_MU);
    report.min_margin_UH = std::min(report.min_margin_UH, row.margin_UH);
    report.min_margin_US = std::min(report.min_margin_US, row.margin_US);
  }
  report.pass = report.min_margin_MU >= -report.slack &&
                report.min_margin_UH >= -report.slack &&
                report.min_margin_US >= -report.slack;
  return report;
}

namespace {

Eigen::MatrixXd symmetrized(const DiscreteKernel& kernel) {
  const Eigen::Index N = kernel.P.rows();
  Eigen::MatrixXd A(N, N);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j < N; ++j)
      A(i, j) = std::sqrt(kernel.pi(i) / kernel.pi(j)) * kernel.P(i, j);
  const double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10)
    throw NumericalError("symmetrization residual " + std::to_string(asym) +
                         " for kernel " + kernel_label_name(kernel.label));
  return 0.5 * (A + A.transpose());
}

}  // namespace

double spectral_gap(const DiscreteKernel& kernel) {
  const Eigen::MatrixXd A = symmetrized(kernel);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigensolver failed for kernel " +
                         kernel_label_name(kernel.label));
  const Eigen::Index N = A.rows();
  return 1.0 - solver.eigenvalues()(N - 2);
}

namespace {

double conductance_exact(const DiscreteKernel& kernel) {
  const int N = static_cast<int>(kernel.P.rows());
  if (N > 16) throw ArgumentError("conductance: exact_subsets requires N <= 16");
  // T(i,j) = pi_i P_ij; for A with pi(A) in (0, 1/2]:
  //   <(I-P)1_A, 1_A>_pi / pi(A) = 1 - sum_{i,j in A} T(i,j) / pi(A).
  double best = std::numeric_limits<double>::infinity();
  const std::uint32_t full = (1u << N) - 1u;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    double pa = 0.0;
    for (int i = 0; i < N; ++i)
      if (mask & (1u << i)) pa += kernel.pi(i);
    if (pa > 0.5 + 1e-13) continue;
    double inside = 0.0;
    for (int i = 0; i < N; ++i) {
      if (!(mask & (1u << i))) continue;
      for (int j = 0; j < N; ++j)
        if (mask & (1u << j)) inside += kernel.pi(i) * kernel.P(i, j);
    }
    best = std::min(best, 1.0 - inside / pa);
  }
  return best;
}

// 2D prefix sums over T(i,j) = pi_i P_ij indexed by 1D positions.
double conductance_intervals(const DiscreteKernel& kernel) {
  const int N = static_cast<int>(kernel.P.rows());
  std::vector<std::vector<double>> pre(static_cast<std::size_t>(N) + 1,
                                       std::vector<double>(static_cast<std::size_t>(N) + 1, 0.0));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      pre[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j) + 1] =
          kernel.pi(i) * kernel.P(i, j) + pre[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) + 1] +
          pre[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j)] -
          pre[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  std::vector<double> pi_prefix(static_cast<std::size_t>(N) + 1, 0.0);
  for (int i = 0; i < N; ++i)
    pi_prefix[static_cast<std::size_t>(i) + 1] = pi_prefix[static_cast<std::size_t>(i)] + kernel.pi(i);
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < N; ++a)
    for (int b = a; b < N; ++b) {
      const double pa = pi_prefix[static_cast<std::size_t>(b) + 1] - pi_prefix[static_cast<std::size_t>(a)];
      if (pa <= 0.0 || pa > 0.5 + 1e-13) continue;
      const double inside = pre[static_cast<std::size_t>(b) + 1][static_cast<std::size_t>(b) + 1] -
                            pre[static_cast<std::size_t>(a)][static_cast<std::size_t>(b) + 1] -
                            pre[static_cast<std::size_t>(b) + 1][static_cast<std::size_t>(a)] +
                            pre[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)];
      best = std::min(best, 1.0 - inside / pa);
    }
  return best;
}

// 4D prefix sums over T((r,c),(r',c')) for rectangle subsets of a 2D grid.
double conductance_rectangles(const DiscreteKernel& kernel, const GridSpec& grid) {
  const int n = grid.n;
  const auto at = [n](std::vector<double>& v, int a, int b, int c, int d) -> double& {
    return v[static_cast<std::size_t>(((a * (n + 1) + b) * (n + 1) + c)) * (n + 1) + d];
  };
  std::vector<double> pre(static_cast<std::size_t>(n + 1) * (n + 1) * (n + 1) * (n + 1), 0.0);
  for (int r = 1; r <= n; ++r)
    for (int c = 1; c <= n; ++c)
      for (int r2 = 1; r2 <= n; ++r2)
        for (int c2 = 1; c2 <= n; ++c2) {
          const Eigen::Index i = grid.index2(r - 1, c - 1);
          const Eigen::Index j = grid.index2(r2 - 1, c2 - 1);
          at(pre, r, c, r2, c2) = kernel.pi(i) * kernel.P(i, j) +
                                  at(pre, r - 1, c, r2, c2) + at(pre, r, c - 1, r2, c2) +
                                  at(pre, r, c, r2 - 1, c2) + at(pre, r, c, r2, c2 - 1) -
                                  at(pre, r - 1, c - 1, r2, c2) - at(pre, r - 1, c, r2 - 1, c2) -
                                  at(pre, r - 1, c, r2, c2 - 1) - at(pre, r, c - 1, r2 - 1, c2) -
                                  at(pre, r, c - 1, r2, c2 - 1) - at(pre, r, c, r2 - 1, c2 - 1) +
                                  at(pre, r - 1, c - 1, r2 - 1, c2) + at(pre, r - 1, c - 1, r2, c2 - 1) +
                                  at(pre, r - 1, c, r2 - 1, c2 - 1) + at(pre, r, c - 1, r2 - 1, c2 - 1) -
                                  at(pre, r - 1, c - 1, r2 - 1, c2 - 1);
        }
  const auto box_sum = [&](int r1, int r2, int c1, int c2, int R1, int R2, int C1, int C2) {
    // Sum of T over i in rows [r1,r2] x cols [c1,c2], j in rows [R1,R2] x cols [C1,C2].
    double s = 0.0;
    for (int br : {0, 1})
      for (int bc : {0, 1})
        for (int bR : {0, 1})
          for (int bC : {0, 1}) {
            const int sign = ((br + bc + bR + bC) % 2 == 0) ? 1 : -1;
            s += sign * at(pre, br ? r2 + 1 : r1, bc ? c2 + 1 : c1, bR ? R2 + 1 : R1, bC ? C2 + 1 : C1);
          }
    return s;
  };
  // pi over rectangles via 2D prefix.
  std::vector<double> pi_pre(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
  for (int r = 1; r <= n; ++r)
    for (int c = 1; c <= n; ++c)
      pi_pre[static_cast<std::size_t>(r) * (n + 1) + c] =
          kernel.pi(grid.index2(r - 1, c - 1)) +
          pi_pre[static_cast<std::size_t>(r - 1) * (n + 1) + c] +
          pi_pre[static_cast<std::size_t>(r) * (n + 1) + c - 1] -
          pi_pre[static_cast<std::size_t>(r - 1) * (n + 1) + c - 1];
  const auto pi_rect = [&](int r1, int r2, int c1, int c2) {
    return pi_pre[static_cast<std::size_t>(r2 + 1) * (n + 1) + c2 + 1] -
           pi_pre[static_cast<std::size_t>(r1) * (n + 1) + c2 + 1] -
           pi_pre[static_cast<std::size_t>(r2 + 1) * (n + 1) + c1] +
           pi_pre[static_cast<std::size_t>(r1) * (n + 1) + c1];
  };
  double best = std::numeric_limits<double>::infinity();
  for (int r1 = 0; r1 < n; ++r1)
    for (int r2 = r1; r2 < n; ++r2)
      for (int c1 = 0; c1 < n; ++c1)
        for (int c2 = c1; c2 < n; ++c2) {
          const double pa = pi_rect(r1, r2, c1, c2);
          if (pa <= 0.0 || pa > 0.5 + 1e-13) continue;
          const double inside = box_sum(r1, r2, c1, c2, r1, r2, c1, c2);
          best = std::min(best, 1.0 - inside / pa);
        }
  return best;
}

}  // namespace

double conductance(const DiscreteKernel& kernel, ConductanceMode mode,
                   const GridSpec& grid) {
  if (mode == ConductanceMode::exact_subsets) return conductance_exact(kernel);
  if (grid.dim == 1) return conductance_intervals(kernel);
  return conductance_rectangles(kernel, grid);
}

ConsequenceReport ordering_consequences(const KernelSet& kernels) {
  ConsequenceReport report;
  const int N = kernels.grid.num_states();
  const ConductanceMode mode =
      N <= 16 ? ConductanceMode::exact_subsets : ConductanceMode::contiguous;
  report.conductance_mode =
      mode == ConductanceMode::exact_subsets ? "exact_subsets" : "contiguous";
  for (const DiscreteKernel* kernel : {&kernels.M, &kernels.U, &kernels.H, &kernels.S}) {
    const std::string name = kernel_label_name(kernel->label);
    report.gap[name] = spectral_gap(*kernel);
    report.conductance[name] = conductance(*kernel, mode, kernels.grid);
  }
  const double s = report.slack;
  report.gap_ordering_pass = report.gap["M"] <= report.gap["U"] + s &&
                             report.gap["U"] <= report.gap["H"] + s &&
                             report.gap["U"] <= report.gap["S"] + s;
  report.conductance_ordering_pass =
      report.conductance["M"] <= report.conductance["U"] + s &&
      report.conductance["U"] <= report.conductance["H"] + s &&
      report.conductance["U"] <= report.conductance["S"] + s;
  report.pass = report.gap_ordering_pass && report.conductance_ordering_pass;
  return report;
}

}  // namespace samplab
