#include <cmath>
#include <numbers>

#include "toric/arakelov/arakelov.hpp"
#include "toric/numerics/certified.hpp"
#include "toric/numerics/linalg.hpp"

namespace toric {

namespace {

bool inside(const std::vector<DHalfspace>& hs, const double* x, double tol) {
  for (const auto& h : hs) {
    double s = -h.offset;
    for (std::size_t i = 0; i < h.normal.size(); ++i) s += h.normal[i] * x[i];
    if (s < -tol) return false;
  }
  return true;
}

// Sign of a roof-cell value at a vertex: exact when the vertex is rational.
std::optional<int> vertex_sign(const RoofCell& c, const std::vector<LogRational>& v) {
  QVec q;
  for (const auto& x : v) {
    if (!x.is_rational()) {
      q.clear();
      break;
    }
    q.push_back(x.rational_part());
  }
  if (q.size() == v.size()) return certified_sign(c.at(q));
  double s = c.offset.to_double();
  for (std::size_t i = 0; i < v.size(); ++i) s += c.slope[i].to_double() * v[i].to_double();
  if (std::abs(s) < 1e-12) return std::nullopt;
  return s > 0 ? 1 : -1;
}

// Slope whose direction is a rational vector: coefficient matrix over {1, log p} has rank <= 1.
bool rational_direction(const std::vector<LogRational>& slope) {
  std::vector<std::uint64_t> primes;
  for (const auto& s : slope)
    for (const auto& [p, c] : s.log_terms()) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  QMat m;
  for (const auto& s : slope) {
    QVec row{s.rational_part()};
    for (auto p : primes) row.push_back(s.log_coefficient(p));
    m.push_back(std::move(row));
  }
  return rank(m) <= 1;
}

std::vector<std::vector<double>> directions(std::size_t n) {
  std::vector<std::vector<double>> out;
  if (n == 1) return {{1.0}, {-1.0}};
  if (n == 2) {
    const int k = 96;
    for (int i = 0; i < k; ++i) {
      double t = 2 * std::numbers::pi * i / k;
      out.push_back({std::cos(t), std::sin(t)});
    }
    return out;
  }
  // Fibonacci sphere (n = 3).
  const int k = 240;
  const double g = std::numbers::pi * (3 - std::sqrt(5.0));
  for (int i = 0; i < k; ++i) {
    double z = 1 - 2.0 * (i + 0.5) / k, r = std::sqrt(1 - z * z);
    out.push_back({r * std::cos(g * i), r * std::sin(g * i), z});
  }
  return out;
}

// Boundary of {roof >= 0} ∩ Δ along rays from an interior point c, by bisection.
// The flag records whether the boundary point lies on the zero level (not on a face of Δ).
std::vector<std::pair<std::vector<double>, bool>> trace_boundary(const Roof& r, const std::vector<double>& c) {
  const std::size_t n = r.dim();
  auto hs = r.domain().double_hrep();
  std::vector<std::pair<std::vector<double>, bool>> out;
  std::vector<double> x(n);
  for (const auto& dir : directions(n)) {
    // Exit parameter from Δ.
    double tmax = std::numeric_limits<double>::infinity();
    for (const auto& h : hs) {
      double a = 0, s = -h.offset;
      for (std::size_t i = 0; i < n; ++i) {
        a += h.normal[i] * dir[i];
        s += h.normal[i] * c[i];
      }
      if (a < -1e-15) tmax = std::min(tmax, s / -a);
    }
    if (!std::isfinite(tmax)) continue;
    auto at = [&](double t) {
      for (std::size_t i = 0; i < n; ++i) x[i] = c[i] + t * dir[i];
      return r.value(x.data());
    };
    if (at(tmax) >= 0) {
      out.push_back({x, false});
      continue;
    }
    double lo = 0, hi = tmax;
    for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
      double mid = 0.5 * (lo + hi);
      (at(mid) >= 0 ? lo : hi) = mid;
    }
    at(lo);
    out.push_back({x, true});
  }
  return out;
}

// Three consecutive level-set points off a common line (n = 2), or off a common plane (n = 3).
bool curved(const std::vector<std::pair<std::vector<double>, bool>>& pts, std::size_t n) {
  std::vector<std::vector<double>> level;
  for (const auto& [p, on_level] : pts)
    if (on_level) level.push_back(p);
  if (n == 2) {
    for (std::size_t i = 0; i + 2 < level.size(); ++i) {
      const auto &a = level[i], &b = level[i + 1], &c = level[i + 2];
      double cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
      double scale = std::hypot(b[0] - a[0], b[1] - a[1]) * std::hypot(c[0] - a[0], c[1] - a[1]);
      if (scale > 1e-12 && std::abs(cross) > 1e-6 * scale) return true;
    }
    return false;
  }
  // n = 3: four level points near each other not coplanar.
  for (std::size_t i = 0; i + 3 < level.size(); ++i) {
    std::vector<std::vector<double>> m;
    for (int k = 1; k <= 3; ++k) {
      std::vector<double> row(3);
      for (int j = 0; j < 3; ++j) row[j] = level[i + k][j] - level[i][j];
      m.push_back(row);
    }
    double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                 m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    double scale = 1;
    for (const auto& row : m) scale *= std::sqrt(row[0] * row[0] + row[1] * row[1] + row[2] * row[2]);
    if (scale > 1e-15 && std::abs(det) > 1e-6 * scale) return true;
  }
  return false;
}

}  // namespace

bool ThetaRegion::contains(const std::vector<double>& x, double tol) const {
  if (empty) return false;
  if (polytope) return inside(polytope->double_hrep(), x.data(), tol);
  if (!inside(roof.domain().double_hrep(), x.data(), tol)) return false;
  return roof.value(x.data()) >= -tol;
}

ThetaRegion theta_region(const ToricMetrizedRDivisor& d, const NumericOptions& opts) {
  ThetaRegion t;
  t.roof = global_roof(d);
  const auto& delta = t.roof.domain();
  const std::size_t n = d.dim();
  if (delta.is_empty()) {
    t.empty = true;
    t.quasi_rational = Tri::yes;
    t.polytope = delta;
    t.method = "exact";
    t.reason = "Delta_D is empty";
    return t;
  }

  if (t.roof.is_rational()) {
    auto c = t.roof.as_concave();
    std::vector<LHalfspace> hs;
    auto canon = c.f.canonical_on(delta);
    for (const auto& f : canon.forms()) hs.push_back({f.slope, -f.offset});
    auto p = intersect(delta, hs);
    t.empty = p.is_empty();
    t.polytope = p;
    t.quasi_rational = Tri::yes;
    t.method = "exact";
    t.reason = "roof has rational slopes";
    return t;
  }

  auto mx = roof_max(t.roof, opts);
  auto s = mx.sign();
  if (s && *s < 0) {
    t.empty = true;
    t.quasi_rational = Tri::yes;
    t.polytope = RationalPolytope::empty(n);
    t.method = mx.exact ? "exact" : "numeric";
    t.reason = "max theta = " + std::to_string(mx.value) + " < 0";
    return t;
  }

  if (t.roof.is_exact()) {
    t.method = "exact";
    auto cells = roof_cells(t.roof);
    bool all_rational = true, undecided = false;
    for (const auto& c : cells) {
      bool neg = false, pos = false;
      for (const auto& v : c.cell.vertices()) {
        auto sg = vertex_sign(c, v);
        if (!sg) undecided = true;
        else if (*sg < 0) neg = true;
        else if (*sg > 0) pos = true;
      }
      if (!(neg && pos)) continue;
      if (n >= 2 && !rational_direction(c.slope)) {
        t.quasi_rational = Tri::no;
        t.reason = "the zero level crosses a cell with slope of irrational direction";
        for (const auto& [p, on_level] : trace_boundary(t.roof, mx.point)) t.boundary.push_back(p);
        return t;
      }
      for (const auto& x : c.slope) all_rational = all_rational && x.is_rational();
    }
    if (undecided && n >= 2) {
      t.quasi_rational = Tri::unknown;
      t.reason = "vertex sign undecided";
      return t;
    }
    t.quasi_rational = Tri::yes;
    if (all_rational) {
      // Facets only come from sign-changing cells; the other cell forms are nonnegative on Θ.
      std::vector<LHalfspace> all;
      for (const auto& c : cells) {
        QVec q;
        for (const auto& x : c.slope)
          if (x.is_rational()) q.push_back(x.rational_part());
        if (q.size() == n) all.push_back({q, -c.offset});
      }
      if (all.size() == cells.size()) {
        auto p = intersect(delta, all);
        t.polytope = p;
        t.empty = p.is_empty();
        t.reason = "zero level has rational slopes";
        return t;
      }
    }
    t.reason = n == 1 ? "dimension one" : "facet offsets are not log-rational";
    for (const auto& [p, on_level] : trace_boundary(t.roof, mx.point)) t.boundary.push_back(p);
    return t;
  }

  // Numeric roof.
  t.method = "numeric";
  bool all_nonneg = true, undecided = false;
  for (const auto& v : delta.vertices()) {
    QVec q;
    for (const auto& x : v)
      if (x.is_rational()) q.push_back(x.rational_part());
    std::optional<int> sg;
    if (q.size() == n) {
      if (auto e = t.roof.exact_value(q)) {
        sg = certified_sign(*e);
        t.method = "closed-form";
      }
    }
    if (!sg) {
      std::vector<double> x;
      for (const auto& c : v) x.push_back(c.to_double());
      double val = t.roof.value(x.data());
      if (std::abs(val) > opts.tol) sg = val > 0 ? 1 : -1;
    }
    if (!sg) undecided = true;
    else if (*sg < 0) all_nonneg = false;
  }
  if (all_nonneg && !undecided) {
    t.quasi_rational = Tri::yes;
    t.polytope = delta;
    t.reason = "theta >= 0 at every vertex of Delta_D";
    return t;
  }
  if (s && *s == 0) {
    if (mx.exact_point) {
      t.quasi_rational = Tri::yes;
      t.polytope = RationalPolytope::from_vertices(n, {*mx.exact_point});
      t.reason = "max theta = 0";
      return t;
    }
    t.quasi_rational = Tri::unknown;
    t.reason = "max theta = 0 at a non-rational point";
    return t;
  }
  if (!s) {
    t.quasi_rational = Tri::unknown;
    t.reason = "sign of max theta undecided";
    return t;
  }
  auto traced = trace_boundary(t.roof, mx.point);
  for (const auto& [p, on_level] : traced) t.boundary.push_back(p);
  if (n == 1) {
    t.quasi_rational = Tri::yes;
    t.reason = "dimension one";
    return t;
  }
  bool strict = false;
  for (const auto& term : t.roof.numeric_terms()) strict = strict || term.strictly_concave();
  if (strict) {
    if (curved(traced, n)) {
      t.quasi_rational = Tri::no;
      t.reason = "strictly concave roof; zero level crosses the interior (non-collinear boundary samples)";
    } else {
      t.quasi_rational = Tri::unknown;
      t.reason = "strictly concave roof but boundary samples look flat";
    }
    return t;
  }
  t.quasi_rational = Tri::unknown;
  t.reason = "oracle roof";
  return t;
}

}  // namespace toric
