#include <doctest.h>

#include <Eigen/Dense>

#include "samplab/discrete.hpp"
#include "samplab/errors.hpp"

using namespace samplab;

TEST_CASE("slice_matrix against a hand-computed 3-state oracle") {
  // Weights (3, 1, 2): distinct levels 1, 2, 3 with gaps 1 each and level-set
  // sizes 3, 2, 1, so the prefix values are 1/3, 1/3 + 1/2 = 5/6, 11/6.
  Eigen::VectorXd rho(3);
  rho << 3.0, 1.0, 2.0;
  const Eigen::MatrixXd S = slice_matrix(rho);
  CHECK(S(0, 0) == doctest::Approx(11.0 / 18.0).epsilon(1e-14));
  CHECK(S(0, 1) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(S(0, 2) == doctest::Approx(5.0 / 18.0).epsilon(1e-14));
  CHECK(S(1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(S(1, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(S(1, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(S(2, 0) == doctest::Approx(5.0 / 12.0).epsilon(1e-14));
  CHECK(S(2, 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(S(2, 2) == doctest::Approx(5.0 / 12.0).epsilon(1e-14));
  for (int i = 0; i < 3; ++i) CHECK(S.row(i).sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("uniform weights collapse S, H, U to the iid kernel") {
  const GridSpec grid = make_grid("uniform", 1, 16);
  const KernelSet set = build_discrete_kernels(grid, 1);
  const double p = 1.0 / 16.0;
  for (const DiscreteKernel* k : {&set.S, &set.H, &set.U, &set.Pi_iid})
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) CHECK(k->P(i, j) == doctest::Approx(p).epsilon(1e-13));
}

TEST_CASE("d=1 degeneracies: H is iid pi exactly, U equals S") {
  for (const char* weights : {"cone", "gaussian"}) {
    const GridSpec grid = make_grid(weights, 1, 64);
    const KernelSet set = build_discrete_kernels(grid, 1);
    CHECK((set.H.P - set.Pi_iid.P).cwiseAbs().maxCoeff() == 0.0);
    CHECK((set.U.P - set.S.P).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("metropolis analog on two states") {
  // Weights (2, 1), w = 1: the single admissible move from each state carries
  // proposal weight 1/(2w) = 1/2 and laziness 1/2, so
  // M_12 = (1/2)(1/2) min{1, 1/2} = 1/8 and M_21 = (1/2)(1/2) = 1/4.
  GridSpec grid = make_grid("uniform", 1, 2);
  grid.rho = {2.0, 1.0};
  const KernelSet set = build_discrete_kernels(grid, 1);
  CHECK(set.M.P(0, 0) == doctest::Approx(7.0 / 8.0).epsilon(1e-15));
  CHECK(set.M.P(0, 1) == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
  CHECK(set.M.P(1, 0) == doctest::Approx(1.0 / 4.0).epsilon(1e-15));
  CHECK(set.M.P(1, 1) == doctest::Approx(3.0 / 4.0).epsilon(1e-15));
}

TEST_CASE("all discrete kernels satisfy their invariants") {
  for (const auto& [weights, dim, n, w] :
       {std::tuple{"cone", 1, 8, 1}, std::tuple{"gaussian", 1, 64, 2},
        std::tuple{"uniform", 2, 6, 1}, std::tuple{"gaussian", 2, 8, 2},
        std::tuple{"cone", 2, 8, 1}}) {
    const GridSpec grid = make_grid(weights, dim, n);
    const KernelSet set = build_discrete_kernels(grid, w);
    for (const DiscreteKernel* k : {&set.M, &set.U, &set.H, &set.S, &set.Pi_iid}) {
      CHECK_NOTHROW(validate_kernel(*k));
      CHECK(detailed_balance_residual(k->P, k->pi) <= 1e-12);
    }
    // Laziness of the Metropolis analog.
    for (int i = 0; i < grid.num_states(); ++i) CHECK(set.M.P(i, i) >= 0.5);
  }
}

TEST_CASE("d=2 hit-and-run analog mixes the row and column conditionals") {
  const GridSpec grid = make_grid("uniform", 2, 4);
  const KernelSet set = build_discrete_kernels(grid, 1);
  // Uniform weights: same-row off-diagonal entries are 1/(2n).
  const int i = grid.index2(1, 2);
  CHECK(set.H.P(i, grid.index2(1, 0)) == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
  CHECK(set.H.P(i, grid.index2(3, 2)) == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
  CHECK(set.H.P(i, grid.index2(0, 0)) == 0.0);
  CHECK(set.H.P(i, i) == doctest::Approx(2.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("validation rejects a corrupted kernel") {
  const GridSpec grid = make_grid("cone", 1, 8);
  KernelSet set = build_discrete_kernels(grid, 1);
  set.M.P(0, 1) += 1e-6;
  CHECK_THROWS_AS(validate_kernel(set.M), ConstructionError);
}

TEST_CASE("grid construction guards") {
  CHECK_THROWS_AS((void)make_grid("cone", 3, 4), ArgumentError);
  CHECK_THROWS_AS((void)make_grid("nope", 1, 4), ArgumentError);
  CHECK_THROWS_AS((void)make_grid("cone", 1, 1), ArgumentError);
  const GridSpec grid = make_grid("cone", 2, 16);
  for (double r : grid.rho) CHECK(r > 0.0);
}
