#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "samplab/kernels.hpp"
#include "samplab/parallel.hpp"
#include "samplab/stats.hpp"

namespace samplab {

struct TestFunction {
  std::string id;
  std::function<double(std::span<const double>)> fn;
  std::optional<double> known_mean;
  std::optional<double> known_variance;
};

// Catalog ids: coord1..coordd, radius_sq, halfspace. known_mean comes from
// the target's exact moments when available, otherwise from quadrature
// (Simpson in d=1, tensor midpoint in d=2).
TestFunction make_test_function(const TargetDensity& target, const std::string& id,
                                par::Mode mode = par::default_mode());

struct EstimateWithError {
  double estimate = 0.0;
  double se = 0.0;
  long count = 0;
};

// n independent stationary draws; item i is reproducible on its own stream.
std::vector<Point> draw_stationary(const TargetDensity& target, long n,
                                   RngStream base, long attempt_cap,
                                   par::Mode mode = par::default_mode());

// One kernel transition from every pool point, per-item streams.
std::vector<Point> advance(const TargetDensity& target, const KernelSpec& spec,
                           std::span<const Point> x0, RngStream base,
                           par::Mode mode = par::default_mode());

// E_pi[f(X0) f(X1)]: the one-step stationary quadratic form.
EstimateWithError one_step_form(const TargetDensity& target, const KernelSpec& spec,
                                const TestFunction& f, long n_pairs,
                                std::uint64_t seed,
                                par::Mode mode = par::default_mode());

// E|S_n(f) - Ef|^2 over R stationarity-started replications.
EstimateWithError mse_of_average(const TargetDensity& target, const KernelSpec& spec,
                                 const TestFunction& f, long n, int R,
                                 std::uint64_t seed,
                                 par::Mode mode = par::default_mode());

// Batch-means asymptotic variance (batch-length scaling) with jackknife SE.
EstimateWithError batch_means_variance(const ChainTrace& trace, const TestFunction& f,
                                       int batch_count);

enum class Verdict { pass, inconclusive, fail };
std::string verdict_name(Verdict v);

struct PairedMargin {
  std::string pair;      // e.g. "M-U": first minus second
  double margin = 0.0;   // estimate(expected larger) - estimate(expected smaller)
  double se = 0.0;       // paired standard error of the difference
  Verdict verdict = Verdict::inconclusive;
};

struct CompareRow {
  std::string f_id;
  EstimateWithError qf_M, qf_U, qf_H, qf_S;
  PairedMargin mu, uh, us;
};

struct MseRow {
  std::string f_id;
  std::string pair;  // "M-U" or "U-H"
  EstimateWithError mse_larger, mse_smaller;
  PairedMargin diff;
};

struct CompareReport {
  std::vector<CompareRow> rows;
  std::vector<MseRow> mse_rows;
  long n_pairs = 0;
  long mse_chain_length = 0;
  int mse_replications = 0;
  bool any_fail = false;
  int inconclusive_count = 0;
};

struct MseParams {
  long chain_length = 100;
  int replications = 500;
  bool enabled = true;
};

// Paired one-step forms for all four kernels over a shared stationary pool,
// plus the MSE ordering for (M,U) and (U,H). specs must name each kind once.
CompareReport compare_kernels(const TargetDensity& target,
                              const std::vector<KernelSpec>& specs,
                              const std::vector<TestFunction>& fs, long n_pairs,
                              const MseParams& mse, std::uint64_t seed,
                              par::Mode mode = par::default_mode());

// --- generic cores, shared with the discrete test fixtures ---

// Average of f over n states of a chain started by init; one replication per
// derived stream pair.
template <class InitFn, class StepFn, class EvalFn>
std::vector<double> chain_average_core(InitFn&& init, StepFn&& step, EvalFn&& f,
                                       long n, int R, RngStream start_base,
                                       RngStream step_base, par::Mode mode) {
  std::vector<double> out(static_cast<std::size_t>(R), 0.0);
  par::for_each_index(R, mode, [&](std::int64_t r) {
    RngStream srng = start_base.derive(static_cast<std::uint64_t>(r));
    RngStream krng = step_base.derive(static_cast<std::uint64_t>(r));
    auto x = init(srng);
    double sum = f(x), comp = 0.0;
    for (long k = 1; k < n; ++k) {
      x = step(x, krng);
      const double v = f(x);
      const double t = sum + v;
      if (std::abs(sum) >= std::abs(v))
        comp += (sum - t) + v;
      else
        comp += (v - t) + sum;
      sum = t;
    }
    out[static_cast<std::size_t>(r)] = (sum + comp) / static_cast<double>(n);
  });
  return out;
}

// Batch-means estimate from a sequence of f-values.
EstimateWithError batch_means_core(std::span<const double> values, int batch_count);

}  // namespace samplab
