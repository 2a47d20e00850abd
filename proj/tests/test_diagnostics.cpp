#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "samplab/diagnostics.hpp"
#include "samplab/errors.hpp"
#include "samplab/operator_lab.hpp"
#include "samplab/quadrature.hpp"

using namespace samplab;

namespace {

struct TwoStateChain {
  Eigen::MatrixXd P;
  Eigen::VectorXd pi;
  std::vector<double> f;

  TwoStateChain() : P(2, 2), pi(2), f{1.0, -1.0} {
    P << 0.75, 0.25, 0.5, 0.5;
    pi << 2.0 / 3.0, 1.0 / 3.0;
  }

  int init(RngStream& rng) const { return rng.uniform01() < pi(0) ? 0 : 1; }
  int step(int x, RngStream& rng) const {
    return rng.uniform01() < P(x, 0) ? 0 : 1;
  }
  double mean() const { return pi(0) * f[0] + pi(1) * f[1]; }
  double variance() const {
    const double m = mean();
    return pi(0) * (f[0] - m) * (f[0] - m) + pi(1) * (f[1] - m) * (f[1] - m);
  }
  // <P^k g, g>_pi by matrix powers.
  double autocov(int k) const {
    Eigen::VectorXd g(2);
    g << f[0] - mean(), f[1] - mean();
    Eigen::VectorXd v = g;
    for (int i = 0; i < k; ++i) v = P * v;
    return (g.cwiseProduct(pi)).dot(v);
  }
  double mse_closed_form(long n) const {
    double acc = variance() / static_cast<double>(n);
    for (long k = 1; k < n; ++k)
      acc += 2.0 / (static_cast<double>(n) * n) * static_cast<double>(n - k) * autocov(static_cast<int>(k));
    return acc;
  }
  double asymptotic_variance() const {
    double acc = variance();
    for (int k = 1; k < 200; ++k) acc += 2.0 * autocov(k);
    return acc;
  }
};

}  // namespace

TEST_CASE("test function catalog and quadrature means") {
  const TargetDensity cone = make_target("cone", 1);
  const TestFunction fx = make_test_function(cone, "coord1");
  REQUIRE(fx.known_mean.has_value());
  CHECK(*fx.known_mean == doctest::Approx(0.0).epsilon(1e-12));
  REQUIRE(fx.known_variance.has_value());
  CHECK(*fx.known_variance == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  // Exact moments agree with the quadrature route.
  const QuadratureMoments q = quadrature_moments(cone, fx.fn);
  CHECK(std::abs(q.mean - *fx.known_mean) <= 1e-8);
  CHECK(std::abs(q.variance - *fx.known_variance) <= 1e-8);

  const TargetDensity box2 = make_target("uniform_box", 2);
  const TestFunction fy = make_test_function(box2, "coord2");
  CHECK(std::abs(*fy.known_mean) <= 1e-6);
  const TestFunction fr = make_test_function(box2, "radius_sq");
  CHECK(*fr.known_mean == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  const TestFunction fh = make_test_function(box2, "halfspace");
  CHECK(*fh.known_mean == doctest::Approx(0.5).epsilon(1e-6));

  CHECK_THROWS_AS((void)make_test_function(cone, "coord9"), ArgumentError);
}

TEST_CASE("one_step_form of a constant function") {
  const TargetDensity cone = make_target("cone", 1);
  const KernelSpec spec = make_kernel(KernelKind::hybrid_slice);
  const double c = 1.7;
  const TestFunction f{"const", [c](std::span<const double>) { return c; }, c, 0.0};
  const EstimateWithError est = one_step_form(cone, spec, f, 8192, 33);
  CHECK(est.estimate == c * c);
  CHECK(est.se == 0.0);
}

TEST_CASE("d=1 hit-and-run one-step form reduces to (Ef)^2") {
  const TargetDensity cone = make_target("cone", 1);
  const KernelSpec spec = make_kernel(KernelKind::hit_and_run);
  const TestFunction f = make_test_function(cone, "coord1");
  const EstimateWithError est = one_step_form(cone, spec, f, 50000, 35);
  CHECK(std::abs(est.estimate - 0.0) <= 3.0 * est.se);
}

TEST_CASE("one_step_form matches the discrete quadratic form oracle") {
  const TargetDensity cone = make_target("cone", 1);
  const GridSpec grid = make_grid("cone", 1, 256);
  const KernelSet set = build_discrete_kernels(grid, 1);
  std::vector<double> f_grid(256);
  for (int i = 0; i < 256; ++i) f_grid[static_cast<std::size_t>(i)] = grid.centers[static_cast<std::size_t>(i)][0];
  const TestFunction f = make_test_function(cone, "coord1");
  for (const auto& [kind, kernel] :
       {std::pair{KernelKind::simple_slice, &set.S},
        std::pair{KernelKind::hybrid_slice, &set.U},
        std::pair{KernelKind::hit_and_run, &set.H}}) {
    const KernelSpec spec = make_kernel(kind);
    const EstimateWithError est = one_step_form(cone, spec, f, 100000, 37);
    const double oracle = quadratic_form(*kernel, f_grid);
    INFO(spec.name(), ": ", est.estimate, " vs ", oracle, " +- ", est.se);
    CHECK(std::abs(est.estimate - oracle) <= 3.0 * est.se + 1e-3);
  }
}

TEST_CASE("shift identity of the one-step estimator") {
  const TargetDensity box = make_target("uniform_box", 2);
  const KernelSpec spec = make_kernel(KernelKind::rwm);
  RngStream root(39);
  const auto x0 = draw_stationary(box, 20000, root.derive(1), 100000);
  const auto x1 = advance(box, spec, x0, root.derive(2));
  const auto f = [](std::span<const double> x) { return x[0] + 0.5 * x[1]; };
  const double c = 0.8;
  double sum_ff = 0.0, sum_f0 = 0.0, sum_f1 = 0.0, sum_shift = 0.0;
  for (std::size_t i = 0; i < x0.size(); ++i) {
    const double f0 = f(x0[i]), f1 = f(x1[i]);
    sum_ff += f0 * f1;
    sum_f0 += f0;
    sum_f1 += f1;
    sum_shift += (f0 + c) * (f1 + c);
  }
  const double n = static_cast<double>(x0.size());
  const double lhs = sum_shift / n;
  const double rhs = sum_ff / n + c * (sum_f0 / n + sum_f1 / n) + c * c;
  CHECK(std::abs(lhs - rhs) <= 1e-12);
}

TEST_CASE("mse_of_average sanity: single stationary draw and iid averages") {
  const TargetDensity box = make_target("uniform_box", 1);
  const TestFunction f = make_test_function(box, "coord1");
  REQUIRE(*f.known_variance == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  for (const KernelKind kind : {KernelKind::hit_and_run, KernelKind::simple_slice,
                                KernelKind::hybrid_slice}) {
    const EstimateWithError one = mse_of_average(box, make_kernel(kind), f, 1, 400, 43);
    CHECK(std::abs(one.estimate - *f.known_variance) <= 3.0 * one.se);
  }
  // iid chain: n * MSE -> Var(f).
  const EstimateWithError iid = mse_of_average(box, make_kernel(KernelKind::hit_and_run),
                                               f, 50, 400, 45);
  CHECK(std::abs(50.0 * iid.estimate - *f.known_variance) <= 3.0 * 50.0 * iid.se);
}

TEST_CASE("mse_of_average requires a known mean") {
  const TargetDensity box = make_target("uniform_box", 1);
  TestFunction f{"blank", [](std::span<const double> x) { return x[0]; },
                 std::nullopt, std::nullopt};
  CHECK_THROWS_AS((void)mse_of_average(box, make_kernel(KernelKind::hit_and_run), f, 10, 10, 1),
                  ArgumentError);
}

TEST_CASE("2-state fixture through the shared chain core matches the closed form") {
  const TwoStateChain chain;
  const long n = 10;
  const int R = 40000;
  RngStream root(47);
  const std::vector<double> averages = chain_average_core(
      [&](RngStream& rng) { return chain.init(rng); },
      [&](int x, RngStream& rng) { return chain.step(x, rng); },
      [&](int x) { return chain.f[static_cast<std::size_t>(x)]; }, n, R,
      root.derive(1), root.derive(2), par::default_mode());
  std::vector<double> sq(averages.size());
  for (std::size_t r = 0; r < averages.size(); ++r) {
    const double d = averages[r] - chain.mean();
    sq[r] = d * d;
  }
  const stats::MeanSe ms = stats::mean_and_se(sq);
  const double closed = chain.mse_closed_form(n);
  INFO("mse ", ms.mean, " +- ", ms.se, " vs closed form ", closed);
  CHECK(std::abs(ms.mean - closed) <= 3.0 * ms.se);
}

TEST_CASE("batch means: constant sequences and iid traces") {
  std::vector<double> constant(1024, 3.7);
  const EstimateWithError zero = batch_means_core(constant, 32);
  CHECK(zero.estimate == 0.0);

  const TargetDensity cone = make_target("cone", 1);
  const KernelSpec spec = make_kernel(KernelKind::hit_and_run);
  const ChainTrace trace = run_chain(cone, spec, {0.2}, 32 * 256 - 1, 49);
  const TestFunction f = make_test_function(cone, "coord1");
  const EstimateWithError est = batch_means_variance(trace, f, 32);
  CHECK(std::abs(est.estimate - *f.known_variance) <= 3.0 * est.se);
}

TEST_CASE("batch means argument guards") {
  std::vector<double> values(100, 0.0);
  CHECK_THROWS_AS((void)batch_means_core(values, 7), ArgumentError);
  CHECK_THROWS_AS((void)batch_means_core(values, 32), ArgumentError);  // not divisible
}

TEST_CASE("batch means matches the eigen-series asymptotic variance") {
  const TwoStateChain chain;
  RngStream rng(53);
  const long L = 32 * 2048;
  std::vector<double> values(static_cast<std::size_t>(L));
  int x = chain.init(rng);
  for (long k = 0; k < L; ++k) {
    values[static_cast<std::size_t>(k)] = chain.f[static_cast<std::size_t>(x)];
    x = chain.step(x, rng);
  }
  const EstimateWithError est = batch_means_core(values, 32);
  const double truth = chain.asymptotic_variance();
  INFO("batch means ", est.estimate, " +- ", est.se, " vs ", truth);
  CHECK(std::abs(est.estimate - truth) <= 3.0 * est.se);
  // Reversal invariance within two standard errors.
  std::vector<double> reversed(values.rbegin(), values.rend());
  const EstimateWithError back = batch_means_core(reversed, 32);
  CHECK(std::abs(est.estimate - back.estimate) <= 2.0 * (est.se + back.se));
}

TEST_CASE("compare_kernels on the uniform box") {
  const TargetDensity box = make_target("uniform_box", 2);
  std::vector<KernelSpec> specs{make_kernel(KernelKind::hit_and_run),
                                make_kernel(KernelKind::simple_slice),
                                make_kernel(KernelKind::hybrid_slice),
                                make_kernel(KernelKind::rwm)};
  specs[3].proposal->delta = 0.5;
  const std::vector<TestFunction> fs{make_test_function(box, "coord1"),
                                     make_test_function(box, "radius_sq")};
  MseParams mse;
  mse.chain_length = 20;
  mse.replications = 100;
  const CompareReport report = compare_kernels(box, specs, fs, 20000, mse, 57);
  CHECK_FALSE(report.any_fail);
  REQUIRE(report.rows.size() == 2);
  // The lazy walk is visibly least efficient on coordinates.
  CHECK(report.rows[0].mu.verdict == Verdict::pass);
  CHECK(report.mse_rows.size() == 4);

  std::vector<KernelSpec> missing{make_kernel(KernelKind::hit_and_run)};
  CHECK_THROWS_AS((void)compare_kernels(box, missing, fs, 100, mse, 1), ArgumentError);
}

TEST_CASE("on the 1d cone the hit-and-run column sits lowest") {
  const TargetDensity cone = make_target("cone", 1);
  std::vector<KernelSpec> specs{make_kernel(KernelKind::hit_and_run),
                                make_kernel(KernelKind::simple_slice),
                                make_kernel(KernelKind::hybrid_slice),
                                make_kernel(KernelKind::rwm)};
  specs[3].proposal->delta = 0.5;
  const std::vector<TestFunction> fs{make_test_function(cone, "coord1")};
  MseParams mse;
  mse.enabled = false;
  const CompareReport report = compare_kernels(cone, specs, fs, 30000, mse, 61);
  REQUIRE(report.rows.size() == 1);
  const CompareRow& row = report.rows[0];
  // One-step exactness in d=1: the H form is (Ef)^2 = 0 up to noise.
  CHECK(std::abs(row.qf_H.estimate) <= 3.0 * row.qf_H.se);
  CHECK(row.qf_H.estimate <= row.qf_M.estimate + 3.0 * (row.qf_M.se + row.qf_H.se));
  CHECK(row.qf_H.estimate <= row.qf_U.estimate + 3.0 * (row.qf_U.se + row.qf_H.se));
  CHECK(row.qf_H.estimate <= row.qf_S.estimate + 3.0 * (row.qf_S.se + row.qf_H.se));
  CHECK_FALSE(report.any_fail);
}

TEST_CASE("equal operators compare as inconclusive, not fail") {
  const TargetDensity box = make_target("uniform_box", 1);
  const KernelSpec spec = make_kernel(KernelKind::hit_and_run);
  const TestFunction f = make_test_function(box, "coord1");
  RngStream root(59);
  const auto x0 = draw_stationary(box, 5000, root.derive(1), 100000);
  const auto x1 = advance(box, spec, x0, root.derive(2));
  // Same kernel, same streams: the paired difference is exactly zero.
  std::vector<double> pa(x0.size()), pb(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i)
    pa[i] = pb[i] = f.fn(x0[i]) * f.fn(x1[i]);
  std::vector<double> diff(pa.size());
  for (std::size_t i = 0; i < pa.size(); ++i) diff[i] = pa[i] - pb[i];
  const stats::MeanSe ms = stats::mean_and_se(diff);
  CHECK(ms.mean == 0.0);
  CHECK(ms.se == 0.0);
  // Rule: neither margin > 3 se nor margin < -3 se holds at zero.
  CHECK_FALSE(ms.mean > 3.0 * ms.se);
  CHECK_FALSE(ms.mean < -3.0 * ms.se);
}
