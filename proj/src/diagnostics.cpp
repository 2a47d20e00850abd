#include "samplab/diagnostics.hpp"

#include <cmath>

#include "samplab/errors.hpp"
#include "samplab/quadrature.hpp"

namespace samplab {

TestFunction make_test_function(const TargetDensity& target, const std::string& id,
                                par::Mode mode) {
  TestFunction f;
  f.id = id;
  if (id.rfind("coord", 0) == 0) {
    const int axis = std::stoi(id.substr(5)) - 1;
    if (axis < 0 || axis >= target.dim)
      throw ArgumentError("test function '" + id + "' out of range for dim " +
                          std::to_string(target.dim));
    f.fn = [axis](std::span<const double> x) { return x[static_cast<std::size_t>(axis)]; };
  } else if (id == "radius_sq") {
    f.fn = [](std::span<const double> x) {
      double s = 0.0;
      for (double v : x) s += v * v;
      return s;
    };
  } else if (id == "halfspace") {
    f.fn = [](std::span<const double> x) { return x[0] > 0.0 ? 1.0 : 0.0; };
  } else {
    throw ArgumentError("unknown test function '" + id + "'");
  }
  if (auto it = target.exact_moments.find(id); it != target.exact_moments.end()) {
    f.known_mean = it->second.mean;
    f.known_variance = it->second.variance;
  }
  if (!f.known_mean || !f.known_variance) {
    if (target.dim <= 2) {
      const QuadratureMoments moments = quadrature_moments(target, f.fn, mode);
      if (!f.known_mean) f.known_mean = moments.mean;
      if (!f.known_variance) f.known_variance = moments.variance;
    }
  }
  return f;
}

std::vector<Point> draw_stationary(const TargetDensity& target, long n,
                                   RngStream base, long attempt_cap, par::Mode mode) {
  std::vector<Point> out(static_cast<std::size_t>(n));
  par::for_each_index(n, mode, [&](std::int64_t i) {
    RngStream rng = base.derive(static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] = sample_pi(target, rng, attempt_cap);
  });
  return out;
}

std::vector<Point> advance(const TargetDensity& target, const KernelSpec& spec,
                           std::span<const Point> x0, RngStream base, par::Mode mode) {
  std::vector<Point> out(x0.size());
  par::for_each_index(static_cast<std::int64_t>(x0.size()), mode, [&](std::int64_t i) {
    RngStream rng = base.derive(static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] =
        kernel_step(target, spec, x0[static_cast<std::size_t>(i)], rng).y;
  });
  return out;
}

namespace {

EstimateWithError to_estimate(std::span<const double> values) {
  const stats::MeanSe ms = stats::mean_and_se(values);
  return {ms.mean, ms.se, ms.n};
}

std::vector<double> products_of(const std::vector<Point>& x0,
                                const std::vector<Point>& x1,
                                const TestFunction& f) {
  std::vector<double> out(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i)
    out[i] = f.fn(x0[i]) * f.fn(x1[i]);
  return out;
}

PairedMargin paired_margin(const std::string& pair,
                           std::span<const double> larger,
                           std::span<const double> smaller) {
  std::vector<double> diff(larger.size());
  for (std::size_t i = 0; i < larger.size(); ++i) diff[i] = larger[i] - smaller[i];
  const stats::MeanSe ms = stats::mean_and_se(diff);
  PairedMargin out;
  out.pair = pair;
  out.margin = ms.mean;
  out.se = ms.se;
  if (out.margin < -3.0 * out.se)
    out.verdict = Verdict::fail;
  else if (out.margin > 3.0 * out.se)
    out.verdict = Verdict::pass;
  else
    out.verdict = Verdict::inconclusive;
  return out;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::inconclusive: return "INCONCLUSIVE";
    case Verdict::fail: return "FAIL";
  }
  return "?";
}

EstimateWithError one_step_form(const TargetDensity& target, const KernelSpec& spec,
                                const TestFunction& f, long n_pairs,
                                std::uint64_t seed, par::Mode mode) {
  spec.validate();
  RngStream root(seed);
  const std::vector<Point> x0 =
      draw_stationary(target, n_pairs, root.derive(1), spec.attempt_cap, mode);
  const std::vector<Point> x1 = advance(target, spec, x0, root.derive(2), mode);
  return to_estimate(products_of(x0, x1, f));
}

EstimateWithError mse_of_average(const TargetDensity& target, const KernelSpec& spec,
                                 const TestFunction& f, long n, int R,
                                 std::uint64_t seed, par::Mode mode) {
  spec.validate();
  if (!f.known_mean)
    throw ArgumentError("mse_of_average: test function '" + f.id +
                        "' has no known mean");
  if (n < 1 || R < 1) throw ArgumentError("mse_of_average: n and R must be positive");
  RngStream root(seed);
  const std::vector<double> averages = chain_average_core(
      [&](RngStream& rng) { return sample_pi(target, rng, spec.attempt_cap); },
      [&](const Point& x, RngStream& rng) { return kernel_step(target, spec, x, rng).y; },
      [&](const Point& x) { return f.fn(x); }, n, R, root.derive(1), root.derive(2),
      mode);
  std::vector<double> sq(averages.size());
  for (std::size_t r = 0; r < averages.size(); ++r) {
    const double d = averages[r] - *f.known_mean;
    sq[r] = d * d;
  }
  return to_estimate(sq);
}

EstimateWithError batch_means_core(std::span<const double> values, int batch_count) {
  if (batch_count < 8) throw ArgumentError("batch_means: need at least 8 batches");
  const long L = static_cast<long>(values.size());
  if (L < batch_count || L % batch_count != 0)
    throw ArgumentError("batch_means: trace length must be a positive multiple of the batch count");
  const long m = L / batch_count;
  std::vector<double> batch_mean(static_cast<std::size_t>(batch_count));
  for (int b = 0; b < batch_count; ++b) {
    batch_mean[static_cast<std::size_t>(b)] =
        par::neumaier_sum(values.subspan(static_cast<std::size_t>(b) * m,
                                         static_cast<std::size_t>(m))) /
        static_cast<double>(m);
  }
  const double bn = static_cast<double>(batch_count);
  const double mean = par::neumaier_sum(batch_mean) / bn;
  double s2 = 0.0;
  for (double y : batch_mean) s2 += (y - mean) * (y - mean);
  EstimateWithError out;
  out.estimate = static_cast<double>(m) * s2 / (bn - 1.0);
  out.count = batch_count;
  // Jackknife over batches.
  double sum_y = 0.0, sum_y2 = 0.0;
  for (double y : batch_mean) {
    sum_y += y;
    sum_y2 += y * y;
  }
  std::vector<double> loo(static_cast<std::size_t>(batch_count));
  for (int b = 0; b < batch_count; ++b) {
    const double y = batch_mean[static_cast<std::size_t>(b)];
    const double s1 = sum_y - y;
    const double s2b = sum_y2 - y * y;
    const double mu = s1 / (bn - 1.0);
    const double var = (s2b - (bn - 1.0) * mu * mu) / (bn - 2.0);
    loo[static_cast<std::size_t>(b)] = static_cast<double>(m) * var;
  }
  const double loo_mean = par::neumaier_sum(loo) / bn;
  double jack = 0.0;
  for (double v : loo) jack += (v - loo_mean) * (v - loo_mean);
  out.se = std::sqrt(std::max(0.0, (bn - 1.0) / bn * jack));
  return out;
}

EstimateWithError batch_means_variance(const ChainTrace& trace, const TestFunction& f,
                                       int batch_count) {
  std::vector<double> values(trace.states.size());
  for (std::size_t k = 0; k < trace.states.size(); ++k)
    values[k] = f.fn(trace.states[k]);
  return batch_means_core(values, batch_count);
}

CompareReport compare_kernels(const TargetDensity& target,
                              const std::vector<KernelSpec>& specs,
                              const std::vector<TestFunction>& fs, long n_pairs,
                              const MseParams& mse, std::uint64_t seed,
                              par::Mode mode) {
  // Locate the four kernels; each must appear exactly once.
  const KernelSpec* by_kind[4] = {nullptr, nullptr, nullptr, nullptr};
  for (const KernelSpec& spec : specs) {
    spec.validate();
    auto& slot = by_kind[static_cast<int>(spec.kind)];
    if (slot) throw ArgumentError("compare_kernels: duplicate kernel " + spec.name());
    slot = &spec;
  }
  for (int k = 0; k < 4; ++k)
    if (!by_kind[k])
      throw ArgumentError("compare_kernels: missing kernel " +
                          kernel_kind_name(static_cast<KernelKind>(k)));
  const KernelSpec& spec_M = *by_kind[static_cast<int>(KernelKind::rwm)];
  const KernelSpec& spec_U = *by_kind[static_cast<int>(KernelKind::hybrid_slice)];
  const KernelSpec& spec_H = *by_kind[static_cast<int>(KernelKind::hit_and_run)];
  const KernelSpec& spec_S = *by_kind[static_cast<int>(KernelKind::simple_slice)];

  CompareReport report;
  report.n_pairs = n_pairs;
  RngStream root(seed);
  long cap = 1'000'000;
  for (const KernelSpec& spec : specs) cap = std::max(cap, spec.attempt_cap);
  const std::vector<Point> x0 = draw_stationary(target, n_pairs, root.derive(1), cap, mode);
  const std::vector<Point> x1_M = advance(target, spec_M, x0, root.derive(2), mode);
  const std::vector<Point> x1_U = advance(target, spec_U, x0, root.derive(3), mode);
  const std::vector<Point> x1_H = advance(target, spec_H, x0, root.derive(4), mode);
  const std::vector<Point> x1_S = advance(target, spec_S, x0, root.derive(5), mode);

  for (const TestFunction& f : fs) {
    CompareRow row;
    row.f_id = f.id;
    const std::vector<double> pM = products_of(x0, x1_M, f);
    const std::vector<double> pU = products_of(x0, x1_U, f);
    const std::vector<double> pH = products_of(x0, x1_H, f);
    const std::vector<double> pS = products_of(x0, x1_S, f);
    row.qf_M = to_estimate(pM);
    row.qf_U = to_estimate(pU);
    row.qf_H = to_estimate(pH);
    row.qf_S = to_estimate(pS);
    row.mu = paired_margin("M-U", pM, pU);
    row.uh = paired_margin("U-H", pU, pH);
    row.us = paired_margin("U-S", pU, pS);
    for (const PairedMargin* pm : {&row.mu, &row.uh, &row.us}) {
      if (pm->verdict == Verdict::fail) report.any_fail = true;
      if (pm->verdict == Verdict::inconclusive) ++report.inconclusive_count;
    }
    report.rows.push_back(std::move(row));
  }

  if (mse.enabled) {
    report.mse_chain_length = mse.chain_length;
    report.mse_replications = mse.replications;
    // Common stationary starts across kernels, kernel-specific step streams.
    const RngStream start_base = root.derive(10);
    const auto averages_for = [&](const KernelSpec& spec, std::uint64_t salt) {
      std::vector<std::vector<double>> out;
      for (const TestFunction& f : fs) {
        out.push_back(chain_average_core(
            [&](RngStream& rng) { return sample_pi(target, rng, spec.attempt_cap); },
            [&](const Point& x, RngStream& rng) {
              return kernel_step(target, spec, x, rng).y;
            },
            [&f](const Point& x) { return f.fn(x); },
            mse.chain_length, mse.replications, start_base, root.derive(salt), mode));
      }
      return out;
    };
    const auto avg_M = averages_for(spec_M, 11);
    const auto avg_U = averages_for(spec_U, 12);
    const auto avg_H = averages_for(spec_H, 13);
    const auto add_mse_rows = [&](const std::string& pair_name,
                                  const std::vector<std::vector<double>>& larger,
                                  const std::vector<std::vector<double>>& smaller) {
      for (std::size_t fi = 0; fi < fs.size(); ++fi) {
        const TestFunction& f = fs[fi];
        if (!f.known_mean)
          throw ArgumentError("compare_kernels: '" + f.id + "' has no known mean");
        std::vector<double> e_larger(larger[fi].size()), e_smaller(smaller[fi].size());
        for (std::size_t r = 0; r < larger[fi].size(); ++r) {
          const double dl = larger[fi][r] - *f.known_mean;
          const double ds = smaller[fi][r] - *f.known_mean;
          e_larger[r] = dl * dl;
          e_smaller[r] = ds * ds;
        }
        MseRow row;
        row.f_id = f.id;
        row.pair = pair_name;
        row.mse_larger = to_estimate(e_larger);
        row.mse_smaller = to_estimate(e_smaller);
        row.diff = paired_margin(pair_name, e_larger, e_smaller);
        if (row.diff.verdict == Verdict::fail) report.any_fail = true;
        if (row.diff.verdict == Verdict::inconclusive) ++report.inconclusive_count;
        report.mse_rows.push_back(std::move(row));
      }
    };
    add_mse_rows("M-U", avg_M, avg_U);
    add_mse_rows("U-H", avg_U, avg_H);
  }
  return report;
}

}  // namespace samplab
