#pragma once

#include <cstddef>
#include <vector>

namespace toric {

enum class ExecPolicy { serial, parallel };

// Parallel unless TORIC_ARAKELOV_SERIAL is set in the environment.
ExecPolicy default_policy();
int max_threads();

// Fixed-shape pairwise sum: result depends only on the input order, never on scheduling.
double ordered_sum(const double* x, std::size_t n);
inline double ordered_sum(const std::vector<double>& x) { return ordered_sum(x.data(), x.size()); }

template <class F>
void for_each_index(std::size_t n, ExecPolicy policy, F&& f) {
  if (policy == ExecPolicy::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  const long nn = static_cast<long>(n);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < nn; ++i) f(static_cast<std::size_t>(i));
}

}  // namespace toric
