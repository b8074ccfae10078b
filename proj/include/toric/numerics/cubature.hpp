#pragma once

#include <functional>
#include <vector>

#include "toric/kernels/parallel.hpp"
#include "toric/numerics/rational.hpp"

namespace toric {

using Integrand = std::function<double(const double*)>;

struct CubatureOptions {
  long max_subdivisions = 4'000'000;
  ExecPolicy policy = default_policy();
};

struct CubatureResult {
  double value = 0;
  double error_estimate = 0;
  long subdivisions = 0;
  long evaluations = 0;
};

// Integral of f over the union of the given simplices (each: n+1 vertices in R^n),
// with respect to Euclidean volume. Deterministic for any thread count.
CubatureResult adaptive_integrate(const Integrand& f, const std::vector<std::vector<std::vector<double>>>& simplices,
                                  double tol, const CubatureOptions& opts = {});
CubatureResult adaptive_integrate(const Integrand& f, const std::vector<QVec>& simplex, double tol,
                                  const CubatureOptions& opts = {});

double simplex_volume(const std::vector<std::vector<double>>& vertices);

}  // namespace toric
