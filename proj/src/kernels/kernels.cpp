#include "toric/kernels/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace toric::kernels {

namespace {

double stroud2(const PointFn& f, std::size_t n, const SimplexD& s) {
  const double np2 = static_cast<double>(n + 2), np1 = static_cast<double>(n + 1);
  const double rt = std::sqrt(np2);
  const double r = (np2 - rt) / (np1 * np2);
  const double a = (np2 + static_cast<double>(n) * rt) / (np1 * np2);
  std::vector<double> centre(n, 0.0), p(n);
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t j = 0; j < n; ++j) centre[j] += s.v[k * n + j];
  double acc = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::size_t j = 0; j < n; ++j) p[j] = r * centre[j] + (a - r) * s.v[k * n + j];
    acc += f(p.data());
  }
  return acc * s.volume / np1;
}

}  // namespace

void rule_batch(const PointFn& f, std::size_t n, const std::vector<SimplexD>& simplices, std::vector<double>& out,
                ExecPolicy policy) {
  out.assign(simplices.size(), 0.0);
  for_each_index(simplices.size(), policy, [&](std::size_t i) { out[i] = stroud2(f, n, simplices[i]); });
}

double lattice_sum(const PointFn& w, std::size_t n, const std::vector<double>& points, ExecPolicy policy) {
  const std::size_t count = n == 0 ? 0 : points.size() / n;
  std::vector<double> vals(count);
  for_each_index(count, policy, [&](std::size_t i) { vals[i] = w(points.data() + i * n); });
  return ordered_sum(vals);
}

double grid_max(const std::function<double(std::size_t)>& g, std::size_t count, ExecPolicy policy) {
  constexpr std::size_t kBlock = 1024;
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<double> part(blocks, -std::numeric_limits<double>::infinity());
  for_each_index(blocks, policy, [&](std::size_t b) {
    double m = -std::numeric_limits<double>::infinity();
    const std::size_t end = std::min(count, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) m = std::max(m, g(i));
    part[b] = m;
  });
  double m = -std::numeric_limits<double>::infinity();
  for (double x : part) m = std::max(m, x);
  return m;
}

}  // namespace toric::kernels
