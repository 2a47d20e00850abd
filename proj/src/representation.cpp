#include "samplab/representation.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "samplab/discrete.hpp"
#include "samplab/errors.hpp"
#include "samplab/io.hpp"

namespace samplab {

std::string representation_pair_name(RepresentationPair pair) {
  switch (pair) {
    case RepresentationPair::har_vs_hybrid: return "har_vs_hybrid";
    case RepresentationPair::simple_vs_hybrid: return "simple_vs_hybrid";
    case RepresentationPair::rwm_vs_hybrid: return "rwm_vs_hybrid";
  }
  return "?";
}

RepresentationPair representation_pair_from_name(const std::string& name) {
  if (name == "har_vs_hybrid") return RepresentationPair::har_vs_hybrid;
  if (name == "simple_vs_hybrid") return RepresentationPair::simple_vs_hybrid;
  if (name == "rwm_vs_hybrid") return RepresentationPair::rwm_vs_hybrid;
  throw ArgumentError("unknown representation pair '" + name + "'");
}

namespace {

Eigen::VectorXd grid_weights(const GridSpec& grid) {
  Eigen::VectorXd rho(grid.num_states());
  for (int i = 0; i < grid.num_states(); ++i)
    rho(i) = grid.rho[static_cast<std::size_t>(i)];
  return rho;
}

// States of the axis line through state i: the whole grid in d=1, the row or
// column through i in d=2 (axis 0 varies the column index, axis 1 the row).
std::vector<int> line_through(const GridSpec& grid, int i, int axis) {
  std::vector<int> line;
  if (grid.dim == 1) {
    line.resize(static_cast<std::size_t>(grid.n));
    for (int k = 0; k < grid.n; ++k) line[static_cast<std::size_t>(k)] = k;
    return line;
  }
  const int r = i / grid.n, c = i % grid.n;
  line.reserve(static_cast<std::size_t>(grid.n));
  for (int k = 0; k < grid.n; ++k)
    line.push_back(axis == 0 ? grid.index2(r, k) : grid.index2(k, c));
  return line;
}

int line_id(const GridSpec& grid, int i, int axis) {
  if (grid.dim == 1) return 0;
  return axis == 0 ? i / grid.n : grid.n + i % grid.n;
}

std::vector<double> distinct_levels(const Eigen::VectorXd& rho) {
  std::vector<double> levels(rho.data(), rho.data() + rho.size());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

// Directions are one per sign and axis, matching the uniform measure on the
// discrete sphere; both signs share the same line fibers.
int num_directions(int dim) { return 2 * dim; }

struct LevelIndexLayout {
  std::vector<double> levels;  // ascending distinct weight values
  std::vector<double> gaps;    // levels[l] - levels[l-1]
};

LevelIndexLayout level_layout(const Eigen::VectorXd& rho) {
  LevelIndexLayout out;
  out.levels = distinct_levels(rho);
  out.gaps.resize(out.levels.size());
  double prev = 0.0;
  for (std::size_t l = 0; l < out.levels.size(); ++l) {
    out.gaps[l] = out.levels[l] - prev;
    prev = out.levels[l];
  }
  return out;
}

Eigen::MatrixXd identity_like(int n) { return Eigen::MatrixXd::Identity(n, n); }

}  // namespace

std::pair<TwoStepRepresentation, TwoStepRepresentation> build_representation(
    RepresentationPair pair, const GridSpec& grid, int w) {
  if (grid.dim != 1 && grid.dim != 2)
    throw ArgumentError("build_representation: grid dimension must be 1 or 2");
  const Eigen::VectorXd rho = grid_weights(grid);
  const Eigen::VectorXd pi = rho / rho.sum();
  const int N = grid.num_states();
  auto index = std::make_shared<RepresentationIndex>();
  index->num_states = N;
  index->pi = pi;

  TwoStepRepresentation rep1, rep2;
  rep1.index = index;
  rep2.index = index;

  if (pair == RepresentationPair::har_vs_hybrid) {
    // Index = direction; s = 1; fibers = axis lines; pi_a = pi.
    rep1.label = "U";
    rep2.label = "H";
    const int dirs = num_directions(grid.dim);
    for (int d = 0; d < dirs; ++d) {
      const int axis = d / 2;
      index->lambda.push_back(1.0 / dirs);
      index->s.emplace_back(Eigen::VectorXd::Ones(N));
      index->index_name.push_back("dir" + std::to_string(d));
      std::vector<int> fibers(static_cast<std::size_t>(N));
      for (int i = 0; i < N; ++i)
        fibers[static_cast<std::size_t>(i)] = line_id(grid, i, axis);
      index->fiber_id.push_back(std::move(fibers));

      Eigen::MatrixXd slice_side = Eigen::MatrixXd::Zero(N, N);
      Eigen::MatrixXd iid_side = Eigen::MatrixXd::Zero(N, N);
      std::vector<char> done(static_cast<std::size_t>(N), 0);
      for (int i = 0; i < N; ++i) {
        if (done[static_cast<std::size_t>(i)]) continue;
        const std::vector<int> line = line_through(grid, i, axis);
        Eigen::VectorXd line_rho(static_cast<Eigen::Index>(line.size()));
        for (std::size_t k = 0; k < line.size(); ++k)
          line_rho(static_cast<Eigen::Index>(k)) = rho(line[k]);
        const Eigen::MatrixXd S_line = slice_matrix(line_rho);
        const Eigen::MatrixXd H_line = iid_matrix(line_rho);
        for (std::size_t a = 0; a < line.size(); ++a) {
          done[static_cast<std::size_t>(line[a])] = 1;
          for (std::size_t b = 0; b < line.size(); ++b) {
            slice_side(line[a], line[b]) = S_line(static_cast<Eigen::Index>(a),
                                                  static_cast<Eigen::Index>(b));
            iid_side(line[a], line[b]) = H_line(static_cast<Eigen::Index>(a),
                                                static_cast<Eigen::Index>(b));
          }
        }
      }
      rep1.fiber_kernel.push_back(std::move(slice_side));
      rep2.fiber_kernel.push_back(std::move(iid_side));
    }
    return {std::move(rep1), std::move(rep2)};
  }

  if (pair == RepresentationPair::simple_vs_hybrid) {
    // Index = level; lambda = gap lengths; s(i,l) = 1[rho_i >= t_l] / rho_i;
    // fiber = the level set (one class) plus singletons below the level.
    rep1.label = "U";
    rep2.label = "S";
    const LevelIndexLayout layout = level_layout(rho);
    for (std::size_t l = 0; l < layout.levels.size(); ++l) {
      const double t = layout.levels[l];
      index->lambda.push_back(layout.gaps[l]);
      index->index_name.push_back("level" + std::to_string(l));
      Eigen::VectorXd s(N);
      std::vector<int> fibers(static_cast<std::size_t>(N));
      std::vector<int> members;
      for (int i = 0; i < N; ++i) {
        const bool in = rho(i) >= t;
        s(i) = in ? 1.0 / rho(i) : 0.0;
        fibers[static_cast<std::size_t>(i)] = in ? 0 : 1 + i;
        if (in) members.push_back(i);
      }
      index->s.push_back(std::move(s));
      index->fiber_id.push_back(std::move(fibers));

      Eigen::MatrixXd uniform_side = identity_like(N);
      Eigen::MatrixXd chord_side = identity_like(N);
      for (int i : members) {
        for (Eigen::Index j = 0; j < N; ++j) {
          uniform_side(i, j) = 0.0;
          chord_side(i, j) = 0.0;
        }
        for (int j : members)
          uniform_side(i, j) = 1.0 / static_cast<double>(members.size());
        for (int axis = 0; axis < grid.dim; ++axis) {
          const std::vector<int> line = line_through(grid, i, axis);
          std::vector<int> seg;
          for (int j : line)
            if (rho(j) >= t) seg.push_back(j);
          for (int j : seg)
            chord_side(i, j) += 1.0 / (grid.dim * static_cast<double>(seg.size()));
        }
      }
      rep1.fiber_kernel.push_back(std::move(chord_side));
      rep2.fiber_kernel.push_back(std::move(uniform_side));
    }
    return {std::move(rep1), std::move(rep2)};
  }

  // rwm_vs_hybrid: index = (direction, level); fibers = line cut to the level
  // set; the Metropolis side walks on the fiber with per-candidate weight
  // 1/(2w), the hybrid side resamples the fiber uniformly.
  rep1.label = "M";
  rep2.label = "U";
  if (w < 1) throw ArgumentError("build_representation: w must be positive");
  const LevelIndexLayout layout = level_layout(rho);
  const int dirs = num_directions(grid.dim);
  for (int d = 0; d < dirs; ++d) {
    const int axis = d / 2;
    for (std::size_t l = 0; l < layout.levels.size(); ++l) {
      const double t = layout.levels[l];
      index->lambda.push_back(layout.gaps[l] / dirs);
      index->index_name.push_back("dir" + std::to_string(d) + "_level" + std::to_string(l));
      Eigen::VectorXd s(N);
      std::vector<int> fibers(static_cast<std::size_t>(N));
      for (int i = 0; i < N; ++i) {
        const bool in = rho(i) >= t;
        s(i) = in ? 1.0 / rho(i) : 0.0;
        fibers[static_cast<std::size_t>(i)] = in ? line_id(grid, i, axis) : 2 * grid.n + i;
      }
      index->s.push_back(std::move(s));
      index->fiber_id.push_back(std::move(fibers));

      Eigen::MatrixXd walk_side = identity_like(N);
      Eigen::MatrixXd uniform_side = identity_like(N);
      std::vector<char> done(static_cast<std::size_t>(N), 0);
      for (int i = 0; i < N; ++i) {
        if (rho(i) < t || done[static_cast<std::size_t>(i)]) continue;
        const std::vector<int> line = line_through(grid, i, axis);
        std::vector<int> seg;   // fiber: line cut to the level set
        std::vector<int> pos;   // position of each fiber member along the line
        for (std::size_t k = 0; k < line.size(); ++k)
          if (rho(line[k]) >= t) {
            seg.push_back(line[k]);
            pos.push_back(static_cast<int>(k));
          }
        for (std::size_t a = 0; a < seg.size(); ++a) {
          done[static_cast<std::size_t>(seg[a])] = 1;
          for (Eigen::Index j = 0; j < N; ++j) {
            walk_side(seg[a], j) = 0.0;
            uniform_side(seg[a], j) = 0.0;
          }
          for (std::size_t b = 0; b < seg.size(); ++b) {
            uniform_side(seg[a], seg[b]) = 1.0 / static_cast<double>(seg.size());
            if (a != b && std::abs(pos[a] - pos[b]) <= w)
              walk_side(seg[a], seg[b]) = 0.5 / (2.0 * w);
          }
          double off = 0.0;
          for (std::size_t b = 0; b < seg.size(); ++b)
            if (b != a) off += walk_side(seg[a], seg[b]);
          walk_side(seg[a], seg[a]) = 1.0 - off;
        }
      }
      rep1.fiber_kernel.push_back(std::move(walk_side));
      rep2.fiber_kernel.push_back(std::move(uniform_side));
    }
  }
  return {std::move(rep1), std::move(rep2)};
}

Eigen::MatrixXd compose(const TwoStepRepresentation& rep) {
  const RepresentationIndex& index = *rep.index;
  const int N = index.num_states;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(N, N);
  for (std::size_t a = 0; a < rep.fiber_kernel.size(); ++a) {
    const double la = index.lambda[a];
    const Eigen::VectorXd& s = index.s[a];
    P += la * s.asDiagonal() * rep.fiber_kernel[a];
  }
  for (Eigen::Index i = 0; i < N; ++i) {
    const double row = P.row(i).sum();
    if (std::abs(row - 1.0) > 1e-9)
      throw ConstructionError("compose(" + rep.label + "): row " + std::to_string(i) +
                              " sums to " + format_g17(row));
  }
  return P;
}

Eigen::VectorXd fiber_measure(const RepresentationIndex& index, int a) {
  Eigen::VectorXd weights =
      index.s[static_cast<std::size_t>(a)].cwiseProduct(index.pi);
  const double total = weights.sum();
  if (!(total > 0.0))
    throw NumericalError("fiber_measure: index " + std::to_string(a) +
                         " has zero mass");
  return weights / total;
}

CheckReport check_fiber_reversibility(const TwoStepRepresentation& rep) {
  CheckReport report;
  report.check = "fiber_reversibility";
  const RepresentationIndex& index = *rep.index;
  for (std::size_t a = 0; a < rep.fiber_kernel.size(); ++a) {
    const Eigen::VectorXd pi_a = fiber_measure(index, static_cast<int>(a));
    const Eigen::MatrixXd& P = rep.fiber_kernel[a];
    double worst = 0.0;
    for (Eigen::Index i = 0; i < P.rows(); ++i)
      for (Eigen::Index j = i + 1; j < P.cols(); ++j)
        worst = std::max(worst, std::abs(pi_a(i) * P(i, j) - pi_a(j) * P(j, i)));
    report.per_fiber.push_back(worst);
  }
  report.worst = *std::max_element(report.per_fiber.begin(), report.per_fiber.end());
  report.pass = report.worst <= report.tolerance;
  return report;
}

CheckReport check_fiber_positivity(const TwoStepRepresentation& rep) {
  const CheckReport reversibility = check_fiber_reversibility(rep);
  if (!reversibility.pass)
    throw ArgumentError("check_fiber_positivity: fiber kernels of '" + rep.label +
                        "' are not reversible (residual " +
                        format_g17(reversibility.worst) +
                        "); run check_fiber_reversibility");
  CheckReport report;
  report.check = "fiber_positivity";
  const RepresentationIndex& index = *rep.index;
  for (std::size_t a = 0; a < rep.fiber_kernel.size(); ++a) {
    const Eigen::VectorXd pi_a = fiber_measure(index, static_cast<int>(a));
    std::vector<int> support;
    for (Eigen::Index i = 0; i < pi_a.size(); ++i)
      if (pi_a(i) > 0.0) support.push_back(static_cast<int>(i));
    const Eigen::Index m = static_cast<Eigen::Index>(support.size());
    Eigen::MatrixXd A(m, m);
    const Eigen::MatrixXd& P = rep.fiber_kernel[a];
    for (Eigen::Index r = 0; r < m; ++r)
      for (Eigen::Index c = 0; c < m; ++c)
        A(r, c) = std::sqrt(pi_a(support[static_cast<std::size_t>(r)]) /
                            pi_a(support[static_cast<std::size_t>(c)])) *
                  P(support[static_cast<std::size_t>(r)], support[static_cast<std::size_t>(c)]);
    const Eigen::MatrixXd sym = 0.5 * (A + A.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw NumericalError("check_fiber_positivity: eigensolver failed");
    report.per_fiber.push_back(solver.eigenvalues()(0));
  }
  report.worst = *std::min_element(report.per_fiber.begin(), report.per_fiber.end());
  report.pass = report.worst >= -report.tolerance;
  return report;
}

CheckReport check_interweaving(const TwoStepRepresentation& rep1,
                               const TwoStepRepresentation& rep2) {
  if (rep1.index != rep2.index || rep1.fiber_kernel.size() != rep2.fiber_kernel.size())
    throw ArgumentError("check_interweaving: representations do not share fibers");
  CheckReport report;
  report.check = "interweaving";
  for (std::size_t a = 0; a < rep1.fiber_kernel.size(); ++a) {
    const Eigen::MatrixXd residual =
        rep1.fiber_kernel[a] * rep2.fiber_kernel[a] - rep2.fiber_kernel[a];
    report.per_fiber.push_back(residual.cwiseAbs().maxCoeff());
  }
  report.worst = *std::max_element(report.per_fiber.begin(), report.per_fiber.end());
  report.pass = report.worst <= report.tolerance;
  return report;
}

}  // namespace samplab
