#pragma once

#include <span>
#include <utility>
#include <vector>

namespace samplab::stats {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean
  long n = 0;
};

// Compensated two-pass mean and standard error.
MeanSe mean_and_se(std::span<const double> values);
double sample_variance(std::span<const double> values);

// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
// Chi-square survival function P(X > x) with df degrees of freedom.
double chi2_sf(double x, int df);
// Asymptotic Kolmogorov distribution Q(lambda) = P(D > lambda-scaled).
double kolmogorov_q(double lambda);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  long n1 = 0, n2 = 0;
};

// Two-sample Kolmogorov-Smirnov test (1D). Inputs are copied and sorted.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct Chi2Result {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
};

// Goodness of fit of observed counts against cell probabilities.
Chi2Result chi2_gof(std::span<const long> counts, std::span<const double> probs);

// Bowker symmetry test on a square contingency table: under exchangeability
// of a pair (X0, X1), cell counts C[a][b] and C[b][a] are binomial splits of
// their sum. cells holds one (row, col) entry per observed pair.
Chi2Result symmetry_test(std::span<const std::pair<int, int>> cells, int num_bins);

// Equal-count bin edges from a pooled sample (interior edges only, sorted).
std::vector<double> quantile_edges(std::vector<double> pooled, int bins);
// Index in [0, edges.size()] of the bin containing x.
int bin_of(double x, std::span<const double> edges);

// Lag-1 sample autocorrelation.
double lag1_autocorrelation(std::span<const double> values);

}  // namespace samplab::stats
