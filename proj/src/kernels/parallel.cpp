#include "toric/kernels/parallel.hpp"

#include <cstdlib>

#include <omp.h>

namespace toric {

ExecPolicy default_policy() {
  static const ExecPolicy p = std::getenv("TORIC_ARAKELOV_SERIAL") ? ExecPolicy::serial : ExecPolicy::parallel;
  return p;
}

int max_threads() { return omp_get_max_threads(); }

double ordered_sum(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return ordered_sum(x, h) + ordered_sum(x + h, n - h);
}

}  // namespace toric
