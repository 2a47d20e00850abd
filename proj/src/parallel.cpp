#include "samplab/parallel.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace samplab::par {

Mode default_mode() {
#ifdef _OPENMP
  return Mode::openmp;
#else
  return Mode::serial;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

const char* mode_name(Mode mode) {
  return mode == Mode::serial ? "serial" : "openmp";
}

void detail::rethrow_if(std::exception_ptr& err) {
  if (err) std::rethrow_exception(err);
}

double neumaier_sum(std::span<const double> values) {
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace samplab::par
