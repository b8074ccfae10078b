#include "toric/numerics/lp.hpp"

#include <vector>

#include "toric/error.hpp"

namespace toric {

namespace {

struct Tableau {
  std::vector<std::vector<mpq_class>> t;  // rows x (cols + 1), last column = rhs
  std::vector<std::size_t> basis;
  std::size_t cols = 0;

  void pivot(std::size_t r, std::size_t c, std::vector<mpq_class>& obj) {
    mpq_class inv = 1 / t[r][c];
    for (auto& x : t[r]) x *= inv;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == r || sgn(t[i][c]) == 0) continue;
      mpq_class f = t[i][c];
      for (std::size_t j = 0; j <= cols; ++j)
        if (sgn(t[r][j]) != 0) t[i][j] -= f * t[r][j];
    }
    if (sgn(obj[c]) != 0) {
      mpq_class f = obj[c];
      for (std::size_t j = 0; j <= cols; ++j)
        if (sgn(t[r][j]) != 0) obj[j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  // Maximizes cost over allowed columns starting from the current basis.
  // Returns false if unbounded.
  bool run(const std::vector<mpq_class>& cost, const std::vector<bool>& allowed, std::vector<mpq_class>& obj) {
    obj.assign(cols + 1, 0);
    for (std::size_t j = 0; j < cols; ++j) obj[j] = -cost[j];
    for (std::size_t i = 0; i < t.size(); ++i) {
      const mpq_class& cb = cost[basis[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols; ++j) obj[j] += cb * t[i][j];
    }
    for (;;) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j)
        if (allowed[j] && sgn(obj[j]) < 0) {
          enter = j;
          break;
        }
      if (enter == cols) return true;
      std::size_t leave = t.size();
      mpq_class best;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (sgn(t[i][enter]) <= 0) continue;
        mpq_class ratio = t[i][cols] / t[i][enter];
        if (leave == t.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == t.size()) return false;
      pivot(leave, enter, obj);
    }
  }
};

enum class DualOutcome { optimal, infeasible, unbounded };

// Dual of max <c,x> s.t. a x <= b: min <b,y> s.t. a^T y = c, y >= 0. The tableau has n rows
// instead of m, which is what we want for many constraints in few variables. x comes back as
// the simplex multipliers of the equality rows.
DualOutcome solve_dual(const QMat& a, const QVec& b, const QVec& c, QVec& x, Rational& value) {
  const std::size_t m = a.size(), n = c.size();
  Tableau tb;
  tb.cols = m + n;
  tb.t.assign(n, std::vector<mpq_class>(tb.cols + 1, 0));
  tb.basis.assign(n, 0);
  std::vector<int> sign(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    sign[i] = c[i].sign() < 0 ? -1 : 1;
    auto& row = tb.t[i];
    for (std::size_t j = 0; j < m; ++j) row[j] = a[j][i].raw() * sign[i];
    row[m + i] = 1;
    row[tb.cols] = c[i].raw() * sign[i];
    tb.basis[i] = m + i;
  }
  std::vector<mpq_class> obj;
  std::vector<mpq_class> cost(tb.cols, 0);
  for (std::size_t j = m; j < tb.cols; ++j) cost[j] = -1;
  std::vector<bool> allowed(tb.cols, true);
  tb.run(cost, allowed, obj);
  if (sgn(obj[tb.cols]) < 0) return DualOutcome::infeasible;
  // Pivot artificials out where possible; rows that stay are dependent and harmless since the
  // artificial sits at zero and is barred from re-entering.
  for (std::size_t i = 0; i < tb.t.size(); ++i) {
    if (tb.basis[i] < m) continue;
    for (std::size_t j = 0; j < m; ++j)
      if (sgn(tb.t[i][j]) != 0) {
        tb.pivot(i, j, obj);
        break;
      }
  }
  std::fill(cost.begin(), cost.end(), 0);
  for (std::size_t j = 0; j < m; ++j) cost[j] = -b[j].raw();
  for (std::size_t j = m; j < tb.cols; ++j) allowed[j] = false;
  if (!tb.run(cost, allowed, obj)) return DualOutcome::unbounded;
  // obj over the artificial columns is c_B B^-1 (their cost is zero in this phase).
  x.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) x[i] = Rational(mpq_class(-obj[m + i] * sign[i]));
  value = Rational(mpq_class(-obj[tb.cols]));
  return DualOutcome::optimal;
}

bool feasible(const QMat& a, const QVec& b, const QVec& x) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (dot(a[i], x) > b[i]) return false;
  return true;
}

LpResult lp_primal(const QMat& a, const QVec& b, const QVec& c);

}  // namespace

LpResult lp_maximize(const QMat& a, const QVec& b, const QVec& c) {
  const std::size_t m = a.size(), n = c.size();
  for (const auto& row : a)
    if (row.size() != n) fail(Errc::invalid_argument, "lp: dimension mismatch");
  if (m <= n) return lp_primal(a, b, c);
  QVec x;
  Rational value;
  switch (solve_dual(a, b, c, x, value)) {
    case DualOutcome::optimal:
      // a feasible x matching the dual bound is optimal; anything else goes to the primal
      if (feasible(a, b, x) && dot(c, x) == value) return LpResult{LpStatus::optimal, x, value};
      break;
    case DualOutcome::unbounded:
      return LpResult{LpStatus::infeasible, {}, {}};
    case DualOutcome::infeasible: {
      // primal is unbounded or infeasible; a zero objective separates the two
      QVec y;
      Rational v;
      if (solve_dual(a, b, QVec(n), y, v) == DualOutcome::unbounded) return LpResult{LpStatus::infeasible, {}, {}};
      return LpResult{LpStatus::unbounded, {}, {}};
    }
  }
  return lp_primal(a, b, c);
}

namespace {

LpResult lp_primal(const QMat& a, const QVec& b, const QVec& c) {
  const std::size_t m = a.size(), n = c.size();
  // Columns: x+ (n), x- (n), slack (m), artificial (one per row with negative rhs).
  std::vector<std::size_t> art_row;
  for (std::size_t i = 0; i < m; ++i)
    if (b[i].sign() < 0) art_row.push_back(i);
  const std::size_t n_struct = 2 * n + m;
  Tableau tb;
  tb.cols = n_struct + art_row.size();
  tb.t.assign(m, std::vector<mpq_class>(tb.cols + 1, 0));
  tb.basis.assign(m, 0);
  std::size_t next_art = n_struct;
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i].sign() < 0;
    const int s = flip ? -1 : 1;
    auto& row = tb.t[i];
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = a[i][j].raw() * s;
      row[n + j] = -a[i][j].raw() * s;
    }
    row[2 * n + i] = s;
    row[tb.cols] = b[i].raw() * s;
    if (flip) {
      row[next_art] = 1;
      tb.basis[i] = next_art++;
    } else {
      tb.basis[i] = 2 * n + i;
    }
  }
  std::vector<mpq_class> obj;
  if (!art_row.empty()) {
    std::vector<mpq_class> cost(tb.cols, 0);
    for (std::size_t j = n_struct; j < tb.cols; ++j) cost[j] = -1;
    std::vector<bool> allowed(tb.cols, true);
    tb.run(cost, allowed, obj);
    if (sgn(obj[tb.cols]) < 0) return LpResult{LpStatus::infeasible, {}, {}};
    // Drive artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < tb.t.size();) {
      if (tb.basis[i] < n_struct) {
        ++i;
        continue;
      }
      std::size_t col = n_struct;
      for (std::size_t j = 0; j < n_struct; ++j)
        if (sgn(tb.t[i][j]) != 0) {
          col = j;
          break;
        }
      if (col == n_struct) {
        tb.t.erase(tb.t.begin() + static_cast<long>(i));
        tb.basis.erase(tb.basis.begin() + static_cast<long>(i));
        continue;
      }
      tb.pivot(i, col, obj);
      ++i;
    }
  }
  std::vector<mpq_class> cost(tb.cols, 0);
  for (std::size_t j = 0; j < n; ++j) {
    cost[j] = c[j].raw();
    cost[n + j] = -c[j].raw();
  }
  std::vector<bool> allowed(tb.cols, false);
  for (std::size_t j = 0; j < n_struct; ++j) allowed[j] = true;
  if (!tb.run(cost, allowed, obj)) return LpResult{LpStatus::unbounded, {}, {}};
  LpResult res;
  res.status = LpStatus::optimal;
  res.x.assign(n, Rational(0));
  std::vector<mpq_class> val(tb.cols, 0);
  for (std::size_t i = 0; i < tb.t.size(); ++i) val[tb.basis[i]] = tb.t[i][tb.cols];
  for (std::size_t j = 0; j < n; ++j) res.x[j] = Rational(mpq_class(val[j] - val[n + j]));
  res.value = dot(c, res.x);
  return res;
}

}  // namespace

}  // namespace toric
