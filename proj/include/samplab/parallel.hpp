#pragma once

#include <cstdint>
#include <exception>
#include <span>
#include <vector>

// Execution layer for the data-parallel estimator loops. Every loop has a
// serial mode and an OpenMP mode; both must produce bit-identical results,
// which callers get by writing per-index outputs into preallocated buffers
// and reducing serially with compensated summation afterwards.

namespace samplab::par {

enum class Mode { serial, openmp };

Mode default_mode();
int max_threads();
const char* mode_name(Mode mode);

namespace detail {
void rethrow_if(std::exception_ptr& err);
}

template <class Body>
void for_each_index(std::int64_t n, Mode mode, Body&& body) {
  if (mode == Mode::serial) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr err;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(samplab_par_err)
      if (!err) err = std::current_exception();
    }
  }
  detail::rethrow_if(err);
#else
  for (std::int64_t i = 0; i < n; ++i) body(i);
#endif
}

// Neumaier compensated sum; deterministic for a fixed element order.
double neumaier_sum(std::span<const double> values);

// Sum of item(i) for i in [0,n): items are accumulated per fixed-size chunk
// (each chunk serially compensated), chunks reduced serially. The result does
// not depend on the thread count or schedule.
template <class ItemFn>
double chunked_sum(std::int64_t n, std::int64_t chunk, Mode mode, ItemFn&& item) {
  const std::int64_t num_chunks = (n + chunk - 1) / chunk;
  std::vector<double> partial(static_cast<std::size_t>(num_chunks), 0.0);
  for_each_index(num_chunks, mode, [&](std::int64_t c) {
    const std::int64_t lo = c * chunk;
    const std::int64_t hi = std::min(n, lo + chunk);
    double sum = 0.0, comp = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) {
      const double v = item(i);
      const double t = sum + v;
      if (std::abs(sum) >= std::abs(v))
        comp += (sum - t) + v;
      else
        comp += (v - t) + sum;
      sum = t;
    }
    partial[static_cast<std::size_t>(c)] = sum + comp;
  });
  return neumaier_sum(partial);
}

}  // namespace samplab::par
