#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "samplab/parallel.hpp"
#include "samplab/rng.hpp"
#include "samplab/stats.hpp"

using namespace samplab;

TEST_CASE("rng streams are deterministic and derivable") {
  RngStream a(123), b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  RngStream c(123);
  RngStream d0 = c.derive(0), d1 = c.derive(1);
  CHECK(d0.next_u64() != d1.next_u64());
  // Derivation depends on the base seed only, not on consumption.
  RngStream e(123);
  e.next_u64();
  RngStream d0_again = e.derive(0);
  RngStream d0_ref = RngStream(123).derive(0);
  CHECK(d0_again.next_u64() == d0_ref.next_u64());
}

TEST_CASE("uniform variates stay inside their ranges") {
  RngStream rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = rng.uniform_open();
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("normal moments") {
  RngStream rng(11);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / n) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(sq / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("gamma_p against closed forms") {
  // chi2 with 2 df is Exp(rate 1/2).
  for (double x : {0.5, 1.0, 3.0, 10.0})
    CHECK(stats::chi2_sf(x, 2) == doctest::Approx(std::exp(-0.5 * x)).epsilon(1e-12));
  // P(1/2, x) = erf(sqrt(x)).
  for (double x : {0.1, 0.5, 2.0, 5.0})
    CHECK(stats::gamma_p(0.5, x) == doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-12));
}

TEST_CASE("two-sample KS separates shifted laws and accepts equal ones") {
  RngStream rng(5);
  std::vector<double> a(20000), b(20000), c(20000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = rng.normal();
    b[i] = rng.normal();
    c[i] = rng.normal() + 0.1;
  }
  CHECK(stats::ks_two_sample(a, b).p_value > 1e-3);
  CHECK(stats::ks_two_sample(a, c).p_value < 1e-6);
}

TEST_CASE("chi-square goodness of fit") {
  RngStream rng(9);
  std::vector<long> counts(10, 0);
  for (int i = 0; i < 50000; ++i) counts[static_cast<std::size_t>(rng.uniform_index(10))]++;
  std::vector<double> probs(10, 0.1);
  CHECK(stats::chi2_gof(counts, probs).p_value > 1e-3);
  counts[0] += 600;  // visibly skewed
  CHECK(stats::chi2_gof(counts, probs).p_value < 1e-6);
}

TEST_CASE("symmetry test") {
  RngStream rng(3);
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < 30000; ++i) {
    const int r = static_cast<int>(rng.uniform_index(4));
    const int c = static_cast<int>(rng.uniform_index(4));
    cells.emplace_back(r, c);
  }
  CHECK(stats::symmetry_test(cells, 4).p_value > 1e-3);
  for (int i = 0; i < 500; ++i) cells.emplace_back(0, 3);
  CHECK(stats::symmetry_test(cells, 4).p_value < 1e-6);
}

TEST_CASE("quantile bins") {
  std::vector<double> pooled;
  for (int i = 0; i < 1000; ++i) pooled.push_back(static_cast<double>(i));
  const auto edges = stats::quantile_edges(pooled, 4);
  REQUIRE(edges.size() == 3);
  CHECK(stats::bin_of(-1.0, edges) == 0);
  CHECK(stats::bin_of(999.0, edges) == 3);
  CHECK(stats::bin_of(edges[0], edges) == 1);
}

TEST_CASE("compensated summation") {
  const std::array<double, 3> v{1e16, 1.0, -1e16};
  CHECK(par::neumaier_sum(std::span<const double>(v)) == 1.0);
}
