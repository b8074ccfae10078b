#include "toric/numerics/linalg.hpp"

#include <cmath>
#include <utility>

#include "toric/error.hpp"

namespace toric {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMat& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t m = a.size(), n = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a[p][c].is_zero()) ++p;
    if (p == m) continue;
    std::swap(a[p], a[r]);
    Rational inv = a[r][c].inverse();
    for (std::size_t j = c; j < n; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(QMat a) { return rref(a).size(); }

std::size_t rank(std::vector<std::vector<double>> a) {
  if (a.empty()) return 0;
  const std::size_t m = a.size(), n = a[0].size();
  double scale = 0;
  for (auto& row : a)
    for (double x : row) scale = std::max(scale, std::abs(x));
  const double eps = 1e-10 * std::max(1.0, scale);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    for (std::size_t i = r + 1; i < m; ++i)
      if (std::abs(a[i][c]) > std::abs(a[p][c])) p = i;
    if (std::abs(a[p][c]) <= eps) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < m; ++i) {
      double f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

Rational determinant(QMat a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    Rational inv = a[c][c].inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c].is_zero()) continue;
      Rational f = a[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

std::optional<QMat> inverse(QMat a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    a[i].resize(2 * n);
    a[i][n + i] = 1;
  }
  auto piv = rref(a);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  QMat inv(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

std::optional<std::vector<std::vector<double>>> inverse(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  double scale = 0;
  for (auto& row : a)
    for (double x : row) scale = std::max(scale, std::abs(x));
  const double eps = 1e-12 * std::max(1.0, scale);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (std::abs(a[i][c]) > std::abs(a[p][c])) p = i;
    if (std::abs(a[p][c]) <= eps) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    double d = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      double f = a[i][c];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

QMat nullspace(const QMat& a0, std::size_t cols) {
  QMat a = a0;
  auto piv = rref(a);
  std::vector<bool> is_piv(cols, false);
  for (auto c : piv) is_piv[c] = true;
  QMat basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    QVec v(cols);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

QMat integer_kernel_basis(const QMat& a0, std::size_t n) {
  const std::size_t m = a0.size();
  std::vector<std::vector<mpz_class>> a(m, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < m; ++i) {
    mpz_class l = 1;
    for (const auto& x : a0[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.denominator().get_mpz_t());
    for (std::size_t j = 0; j < n; ++j) a[i][j] = a0[i][j].numerator() * (l / a0[i][j].denominator());
  }
  std::vector<std::vector<mpz_class>> u(n, std::vector<mpz_class>(n));
  for (std::size_t j = 0; j < n; ++j) u[j][j] = 1;  // u[col][row]: column vectors of U
  auto col_axpy = [&](std::size_t dst, std::size_t src, const mpz_class& f) {
    for (std::size_t i = 0; i < m; ++i) a[i][dst] -= f * a[i][src];
    for (std::size_t k = 0; k < n; ++k) u[dst][k] -= f * u[src][k];
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < m; ++i) std::swap(a[i][x], a[i][y]);
    std::swap(u[x], u[y]);
  };
  std::size_t c = 0;
  for (std::size_t i = 0; i < m && c < n; ++i) {
    for (;;) {
      std::size_t best = n;
      for (std::size_t j = c; j < n; ++j)
        if (a[i][j] != 0 && (best == n || ::abs(a[i][j]) < ::abs(a[i][best]))) best = j;
      if (best == n) break;
      bool others = false;
      for (std::size_t j = c; j < n; ++j) {
        if (j == best || a[i][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][j].get_mpz_t(), a[i][best].get_mpz_t());
        col_axpy(j, best, q);
        if (a[i][j] != 0) others = true;
      }
      if (!others) {
        col_swap(best, c);
        ++c;
        break;
      }
    }
  }
  QMat basis;
  for (std::size_t j = c; j < n; ++j) {
    QVec v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = Rational(u[j][k]);
    basis.push_back(std::move(v));
  }
  return basis;
}

QMat lattice_basis_of_span(const QMat& dirs, std::size_t dim) {
  QMat orth = nullspace(dirs, dim);  // spans span(dirs)^perp
  return integer_kernel_basis(orth, dim);
}

std::optional<QVec> coordinates_in(const QMat& basis, const QVec& v) {
  const std::size_t d = basis.size();
  if (d == 0) {
    for (const auto& x : v)
      if (!x.is_zero()) return std::nullopt;
    return QVec{};
  }
  QMat gram(d, QVec(d));
  QVec rhs(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) gram[i][j] = dot(basis[i], basis[j]);
    rhs[i] = dot(basis[i], v);
  }
  auto inv = inverse(gram);
  if (!inv) return std::nullopt;
  QVec y(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) y[i] += (*inv)[i][j] * rhs[j];
  QVec back(v.size());
  for (std::size_t i = 0; i < d; ++i) back = back + y[i] * basis[i];
  if (back != v) return std::nullopt;
  return y;
}

std::vector<std::size_t> independent_rows(const QMat& a) {
  std::vector<std::size_t> keep;
  QMat acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc.push_back(a[i]);
    if (rank(acc) == acc.size())
      keep.push_back(i);
    else
      acc.pop_back();
  }
  return keep;
}

}  // namespace toric
