#pragma once

#include <functional>
#include <vector>

#include "toric/kernels/parallel.hpp"

namespace toric::kernels {

using PointFn = std::function<double(const double*)>;

// Simplex given by n+1 vertices, flattened row-major ((n+1) x n).
struct SimplexD {
  std::vector<double> v;
  double volume = 0;  // Euclidean volume
};

// Degree-2 simplex rule applied to each simplex; out[i] = rule(simplices[i]).
void rule_batch(const PointFn& f, std::size_t n, const std::vector<SimplexD>& simplices, std::vector<double>& out,
                ExecPolicy policy);

// sum_i w(points[i]) over flattened points (count x n), fixed-order reduction.
double lattice_sum(const PointFn& w, std::size_t n, const std::vector<double>& points, ExecPolicy policy);

// max_i g(i) for i < count, computed in fixed blocks.
double grid_max(const std::function<double(std::size_t)>& g, std::size_t count, ExecPolicy policy);

}  // namespace toric::kernels
