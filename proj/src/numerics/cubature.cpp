#include "toric/numerics/cubature.hpp"

#include <cmath>
#include <string>

#include "toric/error.hpp"
#include "toric/kernels/kernels.hpp"
#include "toric/numerics/linalg.hpp"

namespace toric {

double simplex_volume(const std::vector<std::vector<double>>& v) {
  const std::size_t n = v.size() - 1;
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = v[i + 1][j] - v[0][j];
  double det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (std::abs(m[i][c]) > std::abs(m[p][c])) p = i;
    if (m[p][c] == 0) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      double f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  double fact = 1;
  for (std::size_t k = 2; k <= n; ++k) fact *= static_cast<double>(k);
  return std::abs(det) / fact;
}

namespace {

struct Item {
  kernels::SimplexD s;
  double tol;
};

// Splits along the longest edge (first such pair in index order).
std::pair<kernels::SimplexD, kernels::SimplexD> bisect(const kernels::SimplexD& s, std::size_t n) {
  std::size_t bi = 0, bj = 1;
  double best = -1;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) {
      double d = 0;
      for (std::size_t k = 0; k < n; ++k) {
        double t = s.v[i * n + k] - s.v[j * n + k];
        d += t * t;
      }
      if (d > best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  kernels::SimplexD a = s, b = s;
  for (std::size_t k = 0; k < n; ++k) {
    double mid = 0.5 * (s.v[bi * n + k] + s.v[bj * n + k]);
    a.v[bj * n + k] = mid;
    b.v[bi * n + k] = mid;
  }
  a.volume = b.volume = 0.5 * s.volume;
  return {a, b};
}

}  // namespace

CubatureResult adaptive_integrate(const Integrand& f, const std::vector<std::vector<std::vector<double>>>& simplices,
                                  double tol, const CubatureOptions& opts) {
  if (!(tol > 0)) fail(Errc::invalid_argument, "cubature tolerance must be positive");
  CubatureResult res;
  if (simplices.empty()) return res;
  const std::size_t n = simplices[0].size() - 1;
  if (n == 0) {
    // Zero-dimensional: a point with unit counting measure.
    std::vector<double> vals;
    for (const auto& s : simplices) vals.push_back(f(s[0].data()));
    res.value = ordered_sum(vals);
    res.evaluations = static_cast<long>(vals.size());
    return res;
  }
  std::vector<Item> active;
  double total = 0;
  for (const auto& sv : simplices) {
    kernels::SimplexD s;
    for (const auto& p : sv) s.v.insert(s.v.end(), p.begin(), p.end());
    s.volume = simplex_volume(sv);
    total += s.volume;
    active.push_back({std::move(s), 0});
  }
  if (total == 0) return res;
  for (auto& it : active) it.tol = tol * it.s.volume / total;

  std::vector<double> accepted, accepted_err;
  long subdivisions = 0;
  while (!active.empty()) {
    std::vector<kernels::SimplexD> batch;
    batch.reserve(active.size() * 3);
    for (const auto& it : active) {
      auto [a, b] = bisect(it.s, n);
      batch.push_back(it.s);
      batch.push_back(std::move(a));
      batch.push_back(std::move(b));
    }
    std::vector<double> q;
    kernels::rule_batch(f, n, batch, q, opts.policy);
    res.evaluations += static_cast<long>(batch.size() * (n + 1));
    std::vector<Item> next;
    for (std::size_t i = 0; i < active.size(); ++i) {
      const double coarse = q[3 * i], fine = q[3 * i + 1] + q[3 * i + 2];
      const double err = std::abs(coarse - fine);
      if (!std::isfinite(fine)) fail(Errc::invalid_argument, "integrand is not finite on the domain");
      if (err <= active[i].tol || active[i].s.volume < 1e-300) {
        accepted.push_back(fine);
        accepted_err.push_back(err);
      } else {
        next.push_back({std::move(batch[3 * i + 1]), 0.5 * active[i].tol});
        next.push_back({std::move(batch[3 * i + 2]), 0.5 * active[i].tol});
        subdivisions += 1;
        if (subdivisions > opts.max_subdivisions)
          fail(Errc::budget_exceeded,
               "cubature exceeded " + std::to_string(opts.max_subdivisions) + " subdivisions");
      }
    }
    active = std::move(next);
  }
  res.value = ordered_sum(accepted);
  res.error_estimate = ordered_sum(accepted_err);
  res.subdivisions = subdivisions;
  return res;
}

CubatureResult adaptive_integrate(const Integrand& f, const std::vector<QVec>& simplex, double tol,
                                  const CubatureOptions& opts) {
  std::vector<std::vector<double>> v;
  for (const auto& p : simplex) v.push_back(to_double(p));
  return adaptive_integrate(f, {v}, tol, opts);
}

}  // namespace toric
