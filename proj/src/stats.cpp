#include "samplab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "samplab/errors.hpp"
#include "samplab/parallel.hpp"

namespace samplab::stats {

MeanSe mean_and_se(std::span<const double> values) {
  MeanSe out;
  out.n = static_cast<long>(values.size());
  if (out.n == 0) return out;
  out.mean = par::neumaier_sum(values) / static_cast<double>(out.n);
  if (out.n < 2) return out;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - out.mean;
    sq[i] = d * d;
  }
  const double var = par::neumaier_sum(sq) / static_cast<double>(out.n - 1);
  out.se = std::sqrt(var / static_cast<double>(out.n));
  return out;
}

double sample_variance(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double mean = par::neumaier_sum(values) / static_cast<double>(values.size());
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - mean;
    sq[i] = d * d;
  }
  return par::neumaier_sum(sq) / static_cast<double>(values.size() - 1);
}

namespace {

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) = 1 - P(a, x), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = std::numeric_limits<double>::min() / 1e-30;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw ArgumentError("gamma_p: bad arguments");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double chi2_sf(double x, int df) {
  if (df <= 0) throw ArgumentError("chi2_sf: df must be positive");
  if (x <= 0.0) return 1.0;
  if (x < 0.5 * df + 1.0) return 1.0 - gamma_p_series(0.5 * df, 0.5 * x);
  return gamma_q_cf(0.5 * df, 0.5 * x);
}

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-18) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ArgumentError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult out;
  out.statistic = d;
  out.n1 = static_cast<long>(a.size());
  out.n2 = static_cast<long>(b.size());
  const double ne = std::sqrt(na * nb / (na + nb));
  out.p_value = kolmogorov_q((ne + 0.12 + 0.11 / ne) * d);
  return out;
}

Chi2Result chi2_gof(std::span<const long> counts, std::span<const double> probs) {
  if (counts.size() != probs.size() || counts.empty())
    throw ArgumentError("chi2_gof: size mismatch");
  long total = 0;
  for (long c : counts) total += c;
  Chi2Result out;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double expected = probs[k] * static_cast<double>(total);
    if (expected <= 0.0) {
      if (counts[k] != 0) out.statistic = std::numeric_limits<double>::infinity();
      continue;
    }
    const double d = static_cast<double>(counts[k]) - expected;
    out.statistic += d * d / expected;
    out.df += 1;
  }
  out.df -= 1;  // total count is fixed
  out.p_value = out.df > 0 ? chi2_sf(out.statistic, out.df) : 1.0;
  return out;
}

Chi2Result symmetry_test(std::span<const std::pair<int, int>> cells, int num_bins) {
  std::vector<long> table(static_cast<std::size_t>(num_bins) * num_bins, 0);
  for (const auto& [r, c] : cells) {
    table[static_cast<std::size_t>(r) * num_bins + c] += 1;
  }
  Chi2Result out;
  for (int r = 0; r < num_bins; ++r) {
    for (int c = r + 1; c < num_bins; ++c) {
      const double up = static_cast<double>(table[static_cast<std::size_t>(r) * num_bins + c]);
      const double dn = static_cast<double>(table[static_cast<std::size_t>(c) * num_bins + r]);
      if (up + dn == 0.0) continue;
      out.statistic += (up - dn) * (up - dn) / (up + dn);
      out.df += 1;
    }
  }
  out.p_value = out.df > 0 ? chi2_sf(out.statistic, out.df) : 1.0;
  return out;
}

std::vector<double> quantile_edges(std::vector<double> pooled, int bins) {
  if (bins < 2) throw ArgumentError("quantile_edges: need at least 2 bins");
  std::sort(pooled.begin(), pooled.end());
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(bins) - 1);
  const std::size_t n = pooled.size();
  for (int k = 1; k < bins; ++k) {
    const std::size_t idx = (n * static_cast<std::size_t>(k)) / static_cast<std::size_t>(bins);
    edges.push_back(pooled[std::min(idx, n - 1)]);
  }
  return edges;
}

int bin_of(double x, std::span<const double> edges) {
  int lo = 0, hi = static_cast<int>(edges.size());
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (x < edges[static_cast<std::size_t>(mid)])
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

double lag1_autocorrelation(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 3) return 0.0;
  const double mean = par::neumaier_sum(values) / static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = values[i] - mean;
    den += d * d;
    if (i + 1 < n) num += d * (values[i + 1] - mean);
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace samplab::stats
