#pragma once

// Dimension-generic polyhedral kernels shared by the exact (Rational), certified
// (LogRational offsets) and floating (double) paths.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "toric/error.hpp"
#include "toric/numerics/linalg.hpp"
#include "toric/numerics/scalar.hpp"

namespace toric {

// { x : <x, normal> >= offset }
template <class N, class T>
struct Halfspace {
  std::vector<N> normal;
  T offset;
};

using QHalfspace = Halfspace<Rational, Rational>;
using LHalfspace = Halfspace<Rational, LogRational>;
using DHalfspace = Halfspace<double, double>;

template <class T>
struct VertexInfo {
  std::vector<T> point;
  std::vector<std::size_t> tight;  // indices of constraints active at the vertex
};

// Calls f(subset) for each k-subset of {0..n-1} in lexicographic order; stops if f returns false.
inline void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!f(idx)) return;
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline bool same_point(const std::vector<Rational>& a, const std::vector<Rational>& b) { return a == b; }
inline bool same_point(const std::vector<LogRational>& a, const std::vector<LogRational>& b) { return a == b; }
inline bool same_point(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-8) return false;
  return true;
}

template <class N, class T>
int slack_sign(const std::vector<T>& x, const Halfspace<N, T>& h) {
  T s = dot_mixed(x, h.normal);
  s -= h.offset;
  return sign_of(s);
}

// All vertices of { x : <x,n_j> >= c_j } in R^dim by exhaustive basis enumeration.
// Returns an empty list for an empty polyhedron; the caller is responsible for boundedness.
template <class N, class T>
std::vector<VertexInfo<T>> enumerate_vertices(const std::vector<Halfspace<N, T>>& hs, std::size_t dim) {
  std::vector<VertexInfo<T>> out;
  if (dim == 0) {
    bool ok = true;
    for (const auto& h : hs) ok = ok && sign_of(T{} - h.offset) >= 0;
    if (ok) {
      VertexInfo<T> v;
      for (std::size_t j = 0; j < hs.size(); ++j) v.tight.push_back(j);
      out.push_back(v);
    }
    return out;
  }
  for_each_subset(hs.size(), dim, [&](const std::vector<std::size_t>& sub) {
    std::vector<std::vector<N>> a;
    for (auto j : sub) a.push_back(hs[j].normal);
    auto inv = inverse(a);
    if (!inv) return true;
    std::vector<T> x(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      T s{};
      for (std::size_t k = 0; k < dim; ++k) s += hs[sub[k]].offset * (*inv)[i][k];
      x[i] = s;
    }
    for (const auto& v : out)
      if (same_point(v.point, x)) return true;
    VertexInfo<T> info;
    for (std::size_t j = 0; j < hs.size(); ++j) {
      int s = slack_sign(x, hs[j]);
      if (s < 0) return true;
      if (s == 0) info.tight.push_back(j);
    }
    info.point = std::move(x);
    out.push_back(std::move(info));
    return true;
  });
  return out;
}

template <class T>
std::size_t affine_dimension(const std::vector<std::vector<T>>& pts, const std::vector<std::size_t>& ids) {
  if (ids.size() <= 1) return 0;
  std::vector<std::vector<T>> d;
  for (std::size_t k = 1; k < ids.size(); ++k) {
    std::vector<T> row(pts[ids[0]].size());
    for (std::size_t i = 0; i < row.size(); ++i) row[i] = pts[ids[k]][i] - pts[ids[0]][i];
    d.push_back(std::move(row));
  }
  return rank(d);
}

// Pulling triangulation of the face spanned by `ids` (affine dimension d): cone from the
// smallest vertex over the facets of the face not containing it. Facets are read off the
// constraint tight sets.
template <class T>
void pulling_triangulation(const std::vector<std::vector<T>>& pts, const std::vector<std::vector<std::size_t>>& tight,
                           std::size_t n_constraints, const std::vector<std::size_t>& ids, std::size_t d,
                           std::vector<std::vector<std::size_t>>& out) {
  if (d == 0) {
    out.push_back({ids[0]});
    return;
  }
  if (ids.size() == d + 1) {
    out.push_back(ids);
    return;
  }
  const std::size_t apex = ids[0];
  std::vector<std::vector<std::size_t>> facets;
  for (std::size_t c = 0; c < n_constraints; ++c) {
    std::vector<std::size_t> f;
    for (auto v : ids)
      if (std::binary_search(tight[v].begin(), tight[v].end(), c)) f.push_back(v);
    if (f.empty() || std::binary_search(f.begin(), f.end(), apex)) continue;
    if (std::find(facets.begin(), facets.end(), f) != facets.end()) continue;
    if (affine_dimension(pts, f) != d - 1) continue;
    facets.push_back(std::move(f));
  }
  for (const auto& f : facets) {
    std::vector<std::vector<std::size_t>> sub;
    pulling_triangulation(pts, tight, n_constraints, f, d - 1, sub);
    for (auto& s : sub) {
      s.insert(s.begin(), apex);
      out.push_back(std::move(s));
    }
  }
}

inline Rational factorial(std::size_t n) {
  Rational f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= Rational(static_cast<long>(k));
  return f;
}

// Volume of a d-simplex normalised by the lattice with the given basis (rows, d vectors);
// for d = ambient dimension pass the standard basis.
inline Rational simplex_lattice_volume(const std::vector<QVec>& verts, const QMat& basis) {
  const std::size_t d = verts.size() - 1;
  if (d == 0) return 1;
  QMat m;
  for (std::size_t k = 1; k <= d; ++k) {
    auto y = coordinates_in(basis, verts[k] - verts[0]);
    if (!y) fail(Errc::invalid_argument, "simplex outside lattice span");
    m.push_back(*y);
  }
  return determinant(m).abs() / factorial(d);
}

}  // namespace toric
