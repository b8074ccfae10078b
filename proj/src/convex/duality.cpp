#include "toric/convex/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "toric/numerics/lp.hpp"

namespace toric {

namespace {

LogRational log_part(const LogRational& c) { return c - LogRational(c.rational_part()); }

ConcavePA shifted(const ConcavePA& f, const LogRational& c) { return f.twisted(QVec(f.dim()), c); }

std::vector<QVec> normals_of(const std::vector<QHalfspace>& cs) {
  std::vector<QVec> out;
  for (const auto& h : cs) out.push_back(h.normal);
  return out;
}

bool in_domain(const RationalPolytope& p, const double* x) {
  for (const auto& h : p.double_hrep()) {
    double s = -h.offset;
    for (std::size_t i = 0; i < h.normal.size(); ++i) s += h.normal[i] * x[i];
    if (s < -1e-9) return false;
  }
  return !p.is_empty();
}

}  // namespace

std::optional<LogRational> common_log_part(const std::vector<AffineForm>& forms) {
  if (forms.empty()) return LogRational(0);
  LogRational l = log_part(forms[0].offset);
  for (const auto& f : forms)
    if (log_part(f.offset) != l) return std::nullopt;
  return l;
}

namespace {

// Drops constraints implied by the others (one LP each). Vertex enumeration is
// exhaustive over bases, so this pays off quickly once there are many constraints.
std::vector<QHalfspace> irredundant(const std::vector<QHalfspace>& cs, std::size_t dim) {
  if (cs.size() <= 2 * dim + 2) return cs;
  std::vector<bool> live(cs.size(), true);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    // minimize <n_i,x> over the other live constraints, capped one unit below c_i
    QMat a;
    QVec b;
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (j == i || !live[j]) continue;
      a.push_back(Rational(-1) * cs[j].normal);
      b.push_back(-cs[j].offset);
    }
    a.push_back(Rational(-1) * cs[i].normal);
    b.push_back(Rational(1) - cs[i].offset);
    auto r = lp_maximize(a, b, Rational(-1) * cs[i].normal);
    if (r.status == LpStatus::infeasible) return cs;
    if (r.status == LpStatus::optimal && -r.value >= cs[i].offset) live[i] = false;
  }
  std::vector<QHalfspace> out;
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (live[i]) out.push_back(cs[i]);
  return out;
}

}  // namespace

PolyhedronGenerators polyhedron_generators(const std::vector<QHalfspace>& cs0, std::size_t dim) {
  const auto cs = irredundant(cs0, dim);
  PolyhedronGenerators g;
  QMat a = normals_of(cs);
  g.lineality = nullspace(a, dim);
  std::vector<QHalfspace> aug = cs;
  for (const auto& l : g.lineality) {
    aug.push_back({l, 0});
    aug.push_back({Rational(-1) * l, 0});
  }
  for (auto& v : enumerate_vertices(aug, dim)) g.vertices.push_back(std::move(v.point));
  g.rays = cone_rays(normals_of(aug), dim);
  return g;
}

RationalPolytope stability_set(const GeneralPA& f) {
  std::vector<QHalfspace> hs;
  for (const auto& c : f.cells()) {
    auto g = polyhedron_generators(c.constraints, f.dim());
    std::vector<QVec> dirs = g.rays;
    for (const auto& l : g.lineality) {
      dirs.push_back(l);
      dirs.push_back(Rational(-1) * l);
    }
    for (const auto& r : dirs) hs.push_back({r, dot(c.slope, r)});
  }
  return RationalPolytope::from_hrep(f.dim(), hs);
}

RationalPolytope stability_set(const ConcavePA& f) {
  std::vector<QVec> pts;
  for (const auto& a : f.forms()) pts.push_back(a.slope);
  return RationalPolytope::from_vertices(f.dim(), pts);
}

RationalPolytope stability_set(const OracleFunction& f) { return stability_set(f.recession); }

GeneralPA recession(const GeneralPA& f) {
  std::vector<PACell> cells;
  for (const auto& c : f.cells()) {
    PACell r;
    for (const auto& h : c.constraints) r.constraints.push_back({h.normal, 0});
    r.slope = c.slope;
    r.offset = 0;
    if (cell_is_full_dimensional(r.constraints, f.dim())) cells.push_back(std::move(r));
  }
  return GeneralPA::make_unchecked(f.dim(), std::move(cells));
}

namespace {

// Forms <x,v> - f(v) for the vertices v of every cell's pointed part.
ConcavePA dual_forms(const GeneralPA& f) {
  // one form per slope v; the dual is a minimum so the smallest offset wins
  std::map<QVec, Rational> best;
  for (const auto& c : f.cells()) {
    auto g = polyhedron_generators(c.constraints, f.dim());
    for (const auto& v : g.vertices) {
      Rational o = -(dot(c.slope, v) + c.offset);
      auto [it, fresh] = best.emplace(v, o);
      if (!fresh && o < it->second) it->second = o;
    }
  }
  std::vector<AffineForm> forms;
  for (auto& [v, o] : best) forms.push_back({v, LogRational(o)});
  return ConcavePA(f.dim(), std::move(forms));
}

}  // namespace

ConcaveOnPolytope legendre_dual(const GeneralPA& f) {
  auto p = stability_set(f);
  if (p.is_empty()) fail(Errc::empty_stability_set, "stability set is empty");
  return {p, dual_forms(f).canonical_on(p)};
}

ConcaveOnPolytope legendre_dual(const GeneralPA& f, const RationalPolytope& domain) {
  auto p = stability_set(f);
  if (p.is_empty()) fail(Errc::empty_stability_set, "stability set is empty");
  if (domain.is_empty() || !p.contains(domain)) fail(Errc::not_in_stability_set, "domain is not inside the stability set");
  return {domain, dual_forms(f).canonical_on(domain)};
}

ConcaveOnPolytope legendre_dual(const ConcavePA& f) {
  auto l = common_log_part(f.forms());
  if (!l) fail(Errc::oracle_path_unsupported, "exact dual needs offsets with a common log part");
  auto f0 = shifted(f, *l);
  auto d = legendre_dual(GeneralPA::from_concave(f0));
  d.f = shifted(d.f, -*l);
  return d;
}

ConcavePA legendre_dual(const ConcaveOnPolytope& g) {
  const auto& p = g.domain;
  if (p.is_empty()) fail(Errc::empty_stability_set, "domain is empty");
  if (!p.is_rational()) fail(Errc::oracle_path_unsupported, "exact dual needs a rational domain");
  auto l = common_log_part(g.f.forms());
  if (!l) fail(Errc::oracle_path_unsupported, "exact dual needs offsets with a common log part");
  auto g0 = shifted(g.f, *l).canonical_on(p);
  std::vector<AffineForm> forms;
  std::set<QVec> seen;
  for (std::size_t k = 0; k < g0.forms().size(); ++k) {
    auto r = g0.region(k, p);
    for (const auto& x : r.rational_vertices())
      if (seen.insert(x).second) forms.push_back({x, LogRational(0) - g0(x)});
  }
  return shifted(ConcavePA(p.dim(), forms).canonical(), -*l);
}

LogRational evaluate(const ConcaveOnPolytope& g, const QVec& x) {
  if (!g.domain.contains(x)) fail(Errc::not_in_stability_set, "point " + str(x) + " is outside the domain");
  return g.f(x);
}

double evaluate(const ConcaveOnPolytope& g, const double* x) {
  if (!in_domain(g.domain, x)) fail(Errc::not_in_stability_set, "point is outside the domain");
  return g.f.evaluate(x);
}

namespace {

double golden_min(const std::function<double(double)>& phi, double lo, double hi, double tol) {
  const double r = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = phi(c), fd = phi(d);
  for (int it = 0; it < 400 && b - a > tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = phi(d);
    }
  }
  return std::min({fc, fd, phi(lo), phi(hi)});
}

double nelder_mead(const std::function<double(const std::vector<double>&)>& phi, std::vector<double> start, double step,
                   double box, double tol) {
  const std::size_t n = start.size();
  auto clamp = [&](std::vector<double>& p) {
    for (auto& v : p) v = std::clamp(v, -box, box);
  };
  double best = phi(start);
  for (int restart = 0; restart < 4; ++restart) {
    std::vector<std::vector<double>> s(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) s[i + 1][i] += step;
    for (auto& p : s) clamp(p);
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = phi(s[i]);
    for (int it = 0; it < 20000; ++it) {
      std::vector<std::size_t> ord(n + 1);
      for (std::size_t i = 0; i <= n; ++i) ord[i] = i;
      std::sort(ord.begin(), ord.end(), [&](auto x, auto y) { return fv[x] < fv[y]; });
      auto s2 = s;
      auto f2 = fv;
      for (std::size_t i = 0; i <= n; ++i) {
        s[i] = s2[ord[i]];
        fv[i] = f2[ord[i]];
      }
      double size = 0;
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t k = 0; k < n; ++k) size = std::max(size, std::abs(s[i][k] - s[0][k]));
      if (fv[n] - fv[0] <= tol && size <= 1e-9 * std::max(1.0, box)) break;
      std::vector<double> cen(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) cen[k] += s[i][k] / n;
      auto along = [&](double t) {
        std::vector<double> p(n);
        for (std::size_t k = 0; k < n; ++k) p[k] = cen[k] + t * (s[n][k] - cen[k]);
        clamp(p);
        return p;
      };
      auto xr = along(-1);
      double fr = phi(xr);
      if (fr < fv[0]) {
        auto xe = along(-2);
        double fe = phi(xe);
        if (fe < fr) {
          s[n] = xe;
          fv[n] = fe;
        } else {
          s[n] = xr;
          fv[n] = fr;
        }
      } else if (fr < fv[n - 1]) {
        s[n] = xr;
        fv[n] = fr;
      } else {
        auto xc = along(fr < fv[n] ? -0.5 : 0.5);
        double fc = phi(xc);
        if (fc < std::min(fr, fv[n])) {
          s[n] = xc;
          fv[n] = fc;
        } else {
          for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t k = 0; k < n; ++k) s[i][k] = s[0][k] + 0.5 * (s[i][k] - s[0][k]);
            fv[i] = phi(s[i]);
          }
        }
      }
    }
    std::size_t b = std::min_element(fv.begin(), fv.end()) - fv.begin();
    best = std::min(best, fv[b]);
    start = s[b];
    step = std::max(step / 8, 1e-6);
  }
  return best;
}

}  // namespace

double legendre_dual_at(const OracleFunction& f, const std::vector<double>& x, const OracleDualOptions& opts) {
  const std::size_t n = f.dim;
  if (n == 0 || n > 3) fail(Errc::oracle_path_unsupported, "numerical dual supports dimensions 1 to 3");
  if (x.size() != n) fail(Errc::invalid_argument, "point dimension mismatch");
  if (!in_domain(stability_set(f), x.data())) fail(Errc::not_in_stability_set, "point is outside the stability set");
  auto phi = [&](const double* u) {
    double s = -f.eval(u);
    for (std::size_t i = 0; i < n; ++i) s += x[i] * u[i];
    return s;
  };
  if (n == 1) {
    // A coarse scan brackets the minimum when the oracle is not concave.
    const int grid = 400;
    double best_u = 0, best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= grid; ++k) {
      double u = -opts.box + 2 * opts.box * k / grid;
      double v = phi(&u);
      if (v < best) best = v, best_u = u;
    }
    double h = 2 * opts.box / grid;
    double lo = std::max(-opts.box, best_u - h), hi = std::min(opts.box, best_u + h);
    if (f.concave) lo = -opts.box, hi = opts.box;
    return std::min(best, golden_min([&](double u) { return phi(&u); }, lo, hi, opts.tol));
  }
  const int grid = n == 2 ? 40 : 16;
  std::vector<double> best_u(n, 0.0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> idx(n, 0);
  for (;;) {
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = -opts.box + 2 * opts.box * idx[i] / grid;
    double v = phi(u.data());
    if (v < best) best = v, best_u = u;
    std::size_t i = 0;
    while (i < n && ++idx[i] > grid) idx[i++] = 0;
    if (i == n) break;
  }
  double r = nelder_mead([&](const std::vector<double>& u) { return phi(u.data()); }, best_u, 2 * opts.box / grid,
                         opts.box, opts.tol);
  return std::min(best, r);
}

ConcavePA concave_envelope(const ConcavePA& f) { return f.canonical(); }

ConcavePA concave_envelope(const GeneralPA& f) {
  if (stability_set(f).is_empty()) fail(Errc::empty_stability_set, "stability set is empty");
  const std::size_t n = f.dim();
  // Lifted generators of the hypograph: points (v, f(v)) and directions (r, <m,r>).
  std::set<std::pair<QVec, bool>> seen;
  std::vector<QVec> gen;  // (u, t, is_point)
  std::vector<bool> is_point;
  for (const auto& c : f.cells()) {
    auto g = polyhedron_generators(c.constraints, n);
    auto add = [&](const QVec& u, bool pt) {
      QVec w = u;
      w.push_back(pt ? dot(c.slope, u) + c.offset : dot(c.slope, u));
      if (seen.insert({w, pt}).second) {
        gen.push_back(std::move(w));
        is_point.push_back(pt);
      }
    };
    for (const auto& v : g.vertices) add(v, true);
    for (const auto& r : g.rays) add(r, false);
    for (const auto& l : g.lineality) {
      add(l, false);
      add(Rational(-1) * l, false);
    }
  }
  std::vector<std::vector<double>> dgen;
  for (const auto& w : gen) dgen.push_back(to_double(w));
  auto row_of = [&](std::size_t k) {
    QVec r(gen[k].begin(), gen[k].begin() + n);
    r.push_back(is_point[k] ? 1 : 0);
    return r;
  };
  std::vector<AffineForm> forms;
  std::set<QVec> found;
  for_each_subset(gen.size(), n + 1, [&](const std::vector<std::size_t>& sub) {
    bool any_point = false;
    for (auto k : sub) any_point = any_point || is_point[k];
    if (!any_point) return true;
    // Floating-point screen first.
    std::vector<std::vector<double>> m;
    for (auto k : sub) {
      std::vector<double> r(dgen[k].begin(), dgen[k].begin() + n);
      r.push_back(is_point[k] ? 1 : 0);
      m.push_back(std::move(r));
    }
    auto inv = inverse(m);
    if (!inv) return true;
    std::vector<double> ab(n + 1, 0.0);
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k <= n; ++k) ab[i] += (*inv)[i][k] * dgen[sub[k]][n];
    for (std::size_t k = 0; k < gen.size(); ++k) {
      double s = is_point[k] ? ab[n] : 0.0;
      for (std::size_t i = 0; i < n; ++i) s += ab[i] * dgen[k][i];
      if (s - dgen[k][n] < -1e-7 * (1 + std::abs(dgen[k][n]))) return true;
    }
    QMat qm;
    QVec rhs;
    for (auto k : sub) {
      qm.push_back(row_of(k));
      rhs.push_back(gen[k][n]);
    }
    auto qinv = inverse(qm);
    if (!qinv) return true;
    QVec sol(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k <= n; ++k) sol[i] += (*qinv)[i][k] * rhs[k];
    for (std::size_t k = 0; k < gen.size(); ++k)
      if (dot(row_of(k), sol) < gen[k][n]) return true;
    if (found.insert(sol).second) forms.push_back({QVec(sol.begin(), sol.begin() + n), LogRational(sol[n])});
    return true;
  });
  if (forms.empty()) fail(Errc::empty_stability_set, "hypograph hull has no upper facet");
  return ConcavePA(n, std::move(forms)).canonical();
}

ConcaveOnPolytope sup_convolution(const ConcaveOnPolytope& g, const ConcaveOnPolytope& h) {
  if (g.domain.dim() != h.domain.dim()) fail(Errc::invalid_argument, "dimension mismatch");
  return legendre_dual(legendre_dual(g) + legendre_dual(h));
}

ConcavityWitness is_concave(const GeneralPA& f) {
  const auto& cells = f.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto u = cell_interior_point(cells[i].constraints, f.dim());
    if (!u) continue;
    Rational own = dot(cells[i].slope, *u) + cells[i].offset;
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (j == i) continue;
      if (dot(cells[j].slope, *u) + cells[j].offset < own) return {false, i, j, *u};
    }
  }
  return {};
}

}  // namespace toric
