// Times the OpenMP estimator loops against the serial reference and checks
// that both modes produce identical numbers.

#include <chrono>
#include <cstdio>
#include <string>

#include "samplab/diagnostics.hpp"
#include "samplab/operator_lab.hpp"
#include "samplab/parallel.hpp"

using namespace samplab;

namespace {

struct Timed {
  double value;
  double ms;
};

template <class Fn>
Timed timed(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  const double v = fn();
  const auto t1 = std::chrono::steady_clock::now();
  return {v, std::chrono::duration<double, std::milli>(t1 - t0).count()};
}

int mismatches = 0;

void row(const std::string& name, const Timed& serial, const Timed& openmp) {
  const bool same = serial.value == openmp.value;
  if (!same) ++mismatches;
  std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   %s\n", name.c_str(), serial.ms,
              openmp.ms, serial.ms / openmp.ms, same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", par::max_threads());
  std::printf("%-28s %13s %13s %7s\n", "loop", "serial", "openmp", "speedup");

  {
    const TargetDensity target = make_target("gaussian_box", 2);
    const KernelSpec spec = make_kernel(KernelKind::hit_and_run);
    const TestFunction f{"coord1",
                         [](std::span<const double> x) { return x[0]; },
                         0.0, std::nullopt};
    const long n_pairs = 100000;
    const auto run = [&](par::Mode mode) {
      return one_step_form(target, spec, f, n_pairs, 42, mode).estimate;
    };
    row("one_step_form pool (1e5)", timed([&] { return run(par::Mode::serial); }),
        timed([&] { return run(par::Mode::openmp); }));
  }

  {
    const GridSpec grid = make_grid("gaussian", 2, 16);
    const KernelSet kernels = build_discrete_kernels(grid, 2);
    const auto run = [&](par::Mode mode) {
      return verify_ordering(kernels, 500, 7, mode).min_margin_MU;
    };
    row("verify_ordering (500 f)", timed([&] { return run(par::Mode::serial); }),
        timed([&] { return run(par::Mode::openmp); }));
  }

  {
    const TargetDensity target = make_target("uniform_box", 2);
    const KernelSpec spec = make_kernel(KernelKind::hybrid_slice);
    TestFunction f{"coord1", [](std::span<const double> x) { return x[0]; },
                   0.0, std::nullopt};
    const auto run = [&](par::Mode mode) {
      return mse_of_average(target, spec, f, 100, 200, 11, mode).estimate;
    };
    row("mse_of_average (200 reps)", timed([&] { return run(par::Mode::serial); }),
        timed([&] { return run(par::Mode::openmp); }));
  }

  if (mismatches) {
    std::printf("FAIL: %d loops differ between modes\n", mismatches);
    return 1;
  }
  std::printf("all loops identical across modes\n");
  return 0;
}
