#include "toric/divisor/roof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "toric/numerics/certified.hpp"

namespace toric {

namespace {

std::optional<LogRational> times(const LogRational& a, const LogRational& b) {
  if (a.is_rational()) return b * a.rational_part();
  if (b.is_rational()) return a * b.rational_part();
  return std::nullopt;
}

double entropy_term(double t, double alpha) { return t > 0 ? t * std::log(t / alpha) : 0.0; }

bool same_term(const NumericRoofTerm& a, const NumericRoofTerm& b) {
  auto fa = std::get_if<FubiniStudyRoof>(&a.base);
  auto fb = std::get_if<FubiniStudyRoof>(&b.base);
  if (!fa || !fb) return false;
  return fa->alpha == fb->alpha && a.weight == b.weight && a.shift == b.shift && a.constant == b.constant;
}

bool is_constant_term(const ExactRoofTerm& t) {
  const auto& f = t.g.forms();
  if (f.size() != 1) return false;
  for (const auto& s : f[0].slope)
    if (!s.is_zero()) return false;
  return true;
}

LogRational constant_of(const ExactRoofTerm& t) {
  auto v = times(t.scale, t.g.forms()[0].offset);
  if (!v) fail(Errc::oracle_path_unsupported, "product of two logarithms");
  return *v + t.constant;
}

}  // namespace

// NumericRoofTerm

double NumericRoofTerm::evaluate(const double* x) const {
  double base_value = 0;
  const std::size_t n = shift.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + shift[i].to_double();
  if (auto fs = std::get_if<FubiniStudyRoof>(&base)) {
    double y0 = 1;
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      y0 -= y[i];
      s += entropy_term(y[i], fs->alpha[i + 1].to_double());
    }
    s += entropy_term(y0, fs->alpha[0].to_double());
    base_value = -0.5 * s;
  } else {
    const auto& o = std::get<OracleRoof>(base);
    base_value = o.lambda.to_double() * legendre_dual_at(o.psi, y, o.opts);
  }
  return weight.to_double() * (base_value - constant.to_double());
}

std::optional<LogRational> NumericRoofTerm::exact_at(const QVec& x) const {
  auto fs = std::get_if<FubiniStudyRoof>(&base);
  if (!fs) return std::nullopt;
  QVec y = x + shift;
  Rational y0 = 1;
  for (const auto& t : y) y0 -= t;
  LogRational s;
  for (std::size_t i = 0; i <= y.size(); ++i) {
    const Rational& t = i == 0 ? y0 : y[i - 1];
    if (t.sign() < 0) fail(Errc::point_outside_polytope, "point outside the simplex");
    if (t.is_zero()) continue;
    s += (LogRational::log_of(t) - LogRational::log_of(fs->alpha[i])) * t;
  }
  return (s * Rational(-1, 2) - constant) * weight;
}

std::optional<std::pair<LogRational, QVec>> NumericRoofTerm::closed_max(const RationalPolytope& domain) const {
  auto fs = std::get_if<FubiniStudyRoof>(&base);
  if (!fs) return std::nullopt;
  Rational total = 0;
  for (const auto& a : fs->alpha) total += a;
  QVec x(shift.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = fs->alpha[i + 1] / total - shift[i];
  if (!domain.contains(x)) return std::nullopt;
  return std::make_pair((LogRational::log_of(total) * Rational(1, 2) - constant) * weight, x);
}

// Roof

Roof::Roof(RationalPolytope domain) : domain_(std::move(domain)) {}

Roof Roof::exact(RationalPolytope domain, ExactRoofTerm t) {
  Roof r(std::move(domain));
  r.exact_.push_back(std::move(t));
  return r;
}

Roof Roof::numeric(RationalPolytope domain, NumericRoofTerm t) {
  Roof r(std::move(domain));
  r.numeric_.push_back(std::move(t));
  return r;
}

bool Roof::is_rational() const {
  if (!numeric_.empty()) return false;
  for (const auto& t : exact_)
    if (!t.scale.is_rational() && !is_constant_term(t)) return false;
  return true;
}

ConcaveOnPolytope Roof::as_concave() const {
  if (!is_rational()) fail(Errc::oracle_path_unsupported, "roof is not a rational piecewise affine function");
  const std::size_t n = dim();
  ConcavePA f = ConcavePA::constant(n, LogRational(0));
  LogRational c;
  for (const auto& t : exact_) {
    if (is_constant_term(t)) {
      c += constant_of(t);
      continue;
    }
    f = f + t.scale.rational_part() * t.g;
    c += t.constant;
    if (!domain_.is_empty()) f = f.canonical_on(domain_);
  }
  f = f.twisted(QVec(n), -c);
  if (!domain_.is_empty()) f = f.canonical_on(domain_);
  return {domain_, f};
}

std::optional<LogRational> Roof::exact_value(const QVec& x) const {
  LogRational s;
  for (const auto& t : exact_) {
    auto v = times(t.scale, t.g(x));
    if (!v) return std::nullopt;
    s += *v + t.constant;
  }
  for (const auto& t : numeric_) {
    auto v = t.exact_at(x);
    if (!v) return std::nullopt;
    s += *v;
  }
  return s;
}

double Roof::value(const double* x) const {
  double s = 0;
  for (const auto& t : exact_) s += t.scale.to_double() * t.g.evaluate(x) + t.constant.to_double();
  for (const auto& t : numeric_) s += t.evaluate(x);
  return s;
}

double Roof::value(const QVec& x) const {
  auto d = to_double(x);
  return value(d.data());
}

Roof Roof::scaled(const Rational& w) const {
  if (w.sign() < 0) fail(Errc::invalid_argument, "roof functions scale by nonnegative weights");
  Roof r(domain_);
  if (w.is_zero()) return r;
  for (auto t : exact_) {
    t.scale *= w;
    t.constant *= w;
    r.exact_.push_back(std::move(t));
  }
  for (auto t : numeric_) {
    t.weight *= w;
    r.numeric_.push_back(std::move(t));
  }
  return r;
}

Roof Roof::twisted(const QVec& a, const LogRational& gamma) const {
  const std::size_t n = dim();
  QVec minus(n);
  for (std::size_t i = 0; i < n; ++i) minus[i] = -a[i];
  Roof r(translate(domain_, minus));
  for (auto t : exact_) {
    t.g = t.g.twisted(a, LogRational(0));
    r.exact_.push_back(std::move(t));
  }
  for (auto t : numeric_) {
    t.shift = t.shift + a;
    r.numeric_.push_back(std::move(t));
  }
  if (!gamma.is_zero()) r.exact_.push_back({LogRational(1), ConcavePA::constant(n, LogRational(0)), -gamma});
  return r;
}

Roof Roof::restricted(const RationalPolytope& sub) const {
  Roof r = *this;
  r.domain_ = sub;
  return r;
}

Roof operator+(const Roof& a, const Roof& b) {
  if (!(a.domain_ == b.domain_)) fail(Errc::invalid_argument, "roof functions live on different polytopes");
  Roof r = a;
  r.exact_.insert(r.exact_.end(), b.exact_.begin(), b.exact_.end());
  r.numeric_.insert(r.numeric_.end(), b.numeric_.begin(), b.numeric_.end());
  return r;
}

// Cells

LogRational RoofCell::at(const QVec& x) const {
  LogRational s = offset;
  for (std::size_t i = 0; i < x.size(); ++i) s += slope[i] * x[i];
  return s;
}

std::vector<RoofCell> roof_cells(const Roof& r) {
  if (!r.is_exact()) fail(Errc::oracle_path_unsupported, "roof has numeric terms");
  const auto& dom = r.domain();
  if (dom.is_empty()) return {};
  const std::size_t n = r.dim();
  const std::size_t d = dom.affine_dimension();
  std::vector<RoofCell> cells{{dom, std::vector<LogRational>(n), LogRational(0)}};
  for (const auto& t : r.exact_terms()) {
    if (is_constant_term(t)) {
      LogRational c = constant_of(t);
      for (auto& cell : cells) cell.offset += c;
      continue;
    }
    ConcavePA g = t.g.canonical_on(dom);
    std::vector<RoofCell> next;
    for (const auto& cell : cells) {
      for (std::size_t k = 0; k < g.forms().size(); ++k) {
        RationalPolytope piece = g.forms().size() == 1 ? cell.cell : g.region(k, cell.cell);
        if (piece.is_empty() || piece.affine_dimension() != d) continue;
        RoofCell c{piece, cell.slope, cell.offset};
        const auto& f = g.forms()[k];
        for (std::size_t i = 0; i < n; ++i) c.slope[i] += t.scale * f.slope[i];
        auto off = times(t.scale, f.offset);
        if (!off) fail(Errc::oracle_path_unsupported, "product of two logarithms");
        c.offset += *off + t.constant;
        next.push_back(std::move(c));
      }
    }
    cells = std::move(next);
  }
  return cells;
}

namespace {

// Value of a cell's affine function at a (possibly log-rational) vertex.
std::optional<LogRational> cell_value(const RoofCell& c, const std::vector<LogRational>& v) {
  LogRational s = c.offset;
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto p = times(c.slope[i], v[i]);
    if (!p) return std::nullopt;
    s += *p;
  }
  return s;
}

double cell_value_double(const RoofCell& c, const std::vector<LogRational>& v) {
  double s = c.offset.to_double();
  for (std::size_t i = 0; i < v.size(); ++i) s += c.slope[i].to_double() * v[i].to_double();
  return s;
}

std::optional<QVec> rational_point(const std::vector<LogRational>& v) {
  QVec q;
  for (const auto& c : v) {
    if (!c.is_rational()) return std::nullopt;
    q.push_back(c.rational_part());
  }
  return q;
}

// Extremum of the exact roof over all cell vertices (max if sign = +1, min if -1).
Extremum cell_vertex_extremum(const std::vector<RoofCell>& cells, int sign) {
  Extremum best;
  bool have = false, exact = true;
  for (const auto& c : cells) {
    for (const auto& v : c.cell.vertices()) {
      auto ev = cell_value(c, v);
      double dv = ev ? ev->to_double() : cell_value_double(c, v);
      bool better;
      if (!have) {
        better = true;
      } else if (ev && best.exact) {
        auto cmp = certified_compare(*ev, *best.exact);
        better = sign > 0 ? cmp > 0 : cmp < 0;
      } else {
        better = sign > 0 ? dv > best.value : dv < best.value;
      }
      if (!ev) exact = false;
      if (better) {
        have = true;
        best.exact = ev;
        best.value = dv;
        best.point.clear();
        for (const auto& x : v) best.point.push_back(x.to_double());
        best.exact_point = rational_point(v);
      }
    }
  }
  if (!exact) {
    best.exact.reset();
    best.error = 1e-12 * (1 + std::abs(best.value));
  }
  return best;
}

}  // namespace

std::optional<int> Estimate::sign() const {
  if (exact) return certified_sign(*exact);
  if (value > error) return 1;
  if (value < -error) return -1;
  return std::nullopt;
}

Extremum concave_max_numeric(const RationalPolytope& p, const std::function<double(const double*)>& f, double tol) {
  if (p.is_empty()) fail(Errc::empty_polytope, "maximum over an empty polytope");
  const std::size_t n = p.dim();
  const std::size_t d = p.affine_dimension();
  if (d > 3) fail(Errc::invalid_argument, "numeric maximisation supports dimension <= 3");
  auto dv = p.double_vertices();
  std::vector<double> x0 = dv[0];
  std::vector<std::vector<double>> basis;
  if (d == n) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> e(n, 0.0);
      e[i] = 1;
      basis.push_back(e);
    }
  } else {
    if (!p.is_rational()) fail(Errc::oracle_path_unsupported, "lower-dimensional polytope with irrational offsets");
    for (const auto& b : direction_lattice_basis(p.rational_vertices(), n)) basis.push_back(to_double(b));
  }
  auto to_x = [&](const std::vector<double>& y) {
    std::vector<double> x = x0;
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < n; ++i) x[i] += y[k] * basis[k][i];
    return x;
  };
  Extremum out;
  if (d == 0) {
    out.value = f(x0.data());
    out.point = x0;
    return out;
  }
  // constraints in y coordinates
  std::vector<DHalfspace> hs;
  for (const auto& h : p.double_hrep()) {
    DHalfspace g;
    g.normal.assign(d, 0.0);
    double scale = 0;
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t i = 0; i < n; ++i) g.normal[k] += h.normal[i] * basis[k][i];
      scale = std::max(scale, std::abs(g.normal[k]));
    }
    if (scale < 1e-12) continue;
    double off = h.offset;
    for (std::size_t i = 0; i < n; ++i) off -= h.normal[i] * x0[i];
    for (auto& c : g.normal) c /= scale;
    g.offset = off / scale;
    hs.push_back(std::move(g));
  }
  std::vector<double> y(d, 0.0);
  std::vector<double> best_y(d, 0.0);
  double best = -std::numeric_limits<double>::infinity();
  const double step_tol = std::max(1e-12, tol * 1e-2);
  auto eval = [&]() {
    auto x = to_x(y);
    double v = f(x.data());
    if (v > best) {
      best = v;
      best_y = y;
    }
    return v;
  };
  // range of y_k over the slice with y_0..y_{k-1} fixed
  auto range = [&](std::size_t k) {
    std::vector<DHalfspace> sl;
    for (const auto& h : hs) {
      DHalfspace g;
      g.normal.assign(h.normal.begin() + static_cast<long>(k), h.normal.end());
      g.offset = h.offset;
      for (std::size_t i = 0; i < k; ++i) g.offset -= h.normal[i] * y[i];
      sl.push_back(std::move(g));
    }
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& v : enumerate_vertices(sl, d - k)) {
      lo = std::min(lo, v.point[0]);
      hi = std::max(hi, v.point[0]);
    }
    return std::make_pair(lo, hi);
  };
  std::function<double(std::size_t)> level = [&](std::size_t k) -> double {
    if (k == d) return eval();
    auto [lo, hi] = range(k);
    if (!(lo <= hi)) {
      // numerically empty slice: fall back to the nearest feasible value
      return -std::numeric_limits<double>::infinity();
    }
    auto at = [&](double t) {
      y[k] = t;
      return level(k + 1);
    };
    if (hi - lo < step_tol) return at(0.5 * (lo + hi));
    const double r = 0.5 * (std::sqrt(5.0) - 1);
    double a = lo, b = hi;
    double c = b - r * (b - a), e = a + r * (b - a);
    double fc = at(c), fe = at(e);
    while (b - a > step_tol) {
      if (fc < fe) {
        a = c;
        c = e;
        fc = fe;
        e = a + r * (b - a);
        fe = at(e);
      } else {
        b = e;
        e = c;
        fe = fc;
        c = b - r * (b - a);
        fc = at(c);
      }
    }
    double m = std::max({fc, fe, at(lo), at(hi)});
    return m;
  };
  level(0);
  out.value = best;
  out.point = to_x(best_y);
  out.error = tol;
  return out;
}

Extremum roof_max(const Roof& r, const NumericOptions& opts) {
  if (r.domain().is_empty()) fail(Errc::empty_polytope, "roof on an empty polytope");
  if (r.is_exact()) {
    try {
      return cell_vertex_extremum(roof_cells(r), +1);
    } catch (const Error& e) {
      if (e.code() != Errc::oracle_path_unsupported) throw;
    }
  }
  // One closed-form numeric term plus constants.
  if (r.numeric_terms().size() == 1) {
    bool constants_only = true;
    LogRational c;
    for (const auto& t : r.exact_terms()) {
      if (!is_constant_term(t)) {
        constants_only = false;
        break;
      }
      c += constant_of(t);
    }
    if (constants_only) {
      if (auto m = r.numeric_terms()[0].closed_max(r.domain())) {
        Extremum out;
        out.exact = m->first + c;
        out.value = out.exact->to_double();
        out.exact_point = m->second;
        out.point = to_double(m->second);
        return out;
      }
    }
  }
  return concave_max_numeric(r.domain(), [&](const double* x) { return r.value(x); }, opts.tol);
}

Extremum roof_min(const Roof& r) {
  if (r.domain().is_empty()) fail(Errc::empty_polytope, "roof on an empty polytope");
  if (r.is_exact()) {
    try {
      return cell_vertex_extremum(roof_cells(r), -1);
    } catch (const Error& e) {
      if (e.code() != Errc::oracle_path_unsupported) throw;
    }
  }
  Extremum best;
  bool have = false, exact = true;
  for (const auto& v : r.domain().vertices()) {
    auto q = rational_point(v);
    std::optional<LogRational> ev;
    if (q) ev = r.exact_value(*q);
    std::vector<double> x;
    for (const auto& c : v) x.push_back(c.to_double());
    double dv = ev ? ev->to_double() : r.value(x.data());
    if (!ev) exact = false;
    bool better = !have || (ev && best.exact ? certified_compare(*ev, *best.exact) < 0 : dv < best.value);
    if (better) {
      have = true;
      best.exact = ev;
      best.value = dv;
      best.point = x;
      best.exact_point = q;
    }
  }
  if (!exact) {
    best.exact.reset();
    best.error = 1e-9 * (1 + std::abs(best.value));
  }
  return best;
}

Estimate roof_integral(const Roof& r, const NumericOptions& opts) {
  Estimate out;
  const auto& p = r.domain();
  if (p.is_empty()) {
    out.exact = LogRational(0);
    return out;
  }
  if (p.affine_dimension() == 0) {
    auto q = rational_point(p.vertices()[0]);
    if (q) out.exact = r.exact_value(*q);
    if (out.exact)
      out.value = out.exact->to_double();
    else
      out.value = r.value(p.double_vertices()[0].data());
    return out;
  }
  if (r.is_exact() && p.is_rational()) {
    try {
      LogRational total;
      const Rational vol = lattice_volume(p);
      for (const auto& t : r.exact_terms()) {
        auto v = times(t.scale, integrate_pa({p, t.g}));
        if (!v) fail(Errc::oracle_path_unsupported, "product of two logarithms");
        total += *v + t.constant * vol;
      }
      out.exact = total;
      out.value = total.to_double();
      return out;
    } catch (const Error& e) {
      if (e.code() != Errc::oracle_path_unsupported) throw;
    }
  }
  auto res = integrate_numeric(p, [&](const double* x) { return r.value(x); }, opts.tol, opts.cubature);
  out.value = res.value;
  out.error = std::max(res.error_estimate, opts.tol);
  return out;
}

namespace {

// ∫ over a simplex of the positive part of an affine function given by its vertex values.
double positive_part_simplex(std::vector<double> vals, double vol) {
  std::size_t pos = vals.size(), neg = vals.size();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] > 0 && pos == vals.size()) pos = i;
    if (vals[i] < 0 && neg == vals.size()) neg = i;
  }
  if (neg == vals.size()) {
    double s = 0;
    for (double v : vals) s += v;
    return vol * s / static_cast<double>(vals.size());
  }
  if (pos == vals.size()) return 0;
  const double t = vals[pos] / (vals[pos] - vals[neg]);
  auto a = vals, b = vals;
  a[neg] = 0;  // keeps vertex `pos`: volume fraction t
  b[pos] = 0;
  return positive_part_simplex(a, vol * t) + positive_part_simplex(b, vol * (1 - t));
}

}  // namespace

Estimate roof_positive_integral(const Roof& r, const NumericOptions& opts) {
  Estimate out;
  const auto& p = r.domain();
  if (p.is_empty()) {
    out.exact = LogRational(0);
    return out;
  }
  if (p.affine_dimension() == 0) {
    auto v = roof_integral(r, opts);
    if (v.exact) {
      if (certified_sign(*v.exact) < 0) v.exact = LogRational(0);
      v.value = v.exact->to_double();
    } else {
      v.value = std::max(0.0, v.value);
    }
    return v;
  }
  if (r.is_rational() && p.is_rational()) {
    auto res = integrate_positive_part(r.as_concave());
    out.exact = res.exact;
    out.value = res.value;
    if (!res.exact) out.error = 1e-12 * (1 + std::abs(res.value));
    return out;
  }
  if (r.is_exact() && p.is_rational()) {
    try {
      auto cells = roof_cells(r);
      QMat basis = direction_lattice_basis(p.rational_vertices(), p.dim());
      std::vector<double> parts;
      for (const auto& c : cells) {
        if (!c.cell.is_rational()) fail(Errc::oracle_path_unsupported, "irrational cell");
        auto pts = c.cell.rational_vertices();
        for (const auto& s : c.cell.triangulation()) {
          std::vector<QVec> vs;
          std::vector<double> vals;
          for (auto i : s) {
            vs.push_back(pts[i]);
            vals.push_back(cell_value_double(c, c.cell.vertices()[i]));
          }
          parts.push_back(positive_part_simplex(vals, simplex_lattice_volume(vs, basis).to_double()));
        }
      }
      out.value = ordered_sum(parts);
      out.error = 1e-12 * (1 + std::abs(out.value));
      return out;
    } catch (const Error& e) {
      if (e.code() != Errc::oracle_path_unsupported) throw;
    }
  }
  auto res = integrate_numeric(p, [&](const double* x) { return std::max(0.0, r.value(x)); }, opts.tol, opts.cubature);
  out.value = res.value;
  out.error = std::max(res.error_estimate, opts.tol);
  return out;
}

Extremum min_difference(const Roof& a0, const Roof& b0, const NumericOptions& opts) {
  const auto& dom = b0.domain();
  if (dom.is_empty()) fail(Errc::empty_polytope, "comparison on an empty polytope");
  if (!a0.domain().contains(dom)) fail(Errc::invalid_argument, "domain of the subtrahend must lie in the other domain");
  // Cancel numeric terms present on both sides.
  std::vector<NumericRoofTerm> na = a0.numeric_terms(), nb = b0.numeric_terms();
  for (std::size_t i = 0; i < na.size();) {
    auto it = std::find_if(nb.begin(), nb.end(), [&](const NumericRoofTerm& t) { return same_term(t, na[i]); });
    if (it != nb.end()) {
      nb.erase(it);
      na.erase(na.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
  Roof a(dom), b(dom);
  for (const auto& t : a0.exact_terms()) a = a + Roof::exact(dom, t);
  for (const auto& t : na) a = a + Roof::numeric(dom, t);
  for (const auto& t : b0.exact_terms()) b = b + Roof::exact(dom, t);
  for (const auto& t : nb) b = b + Roof::numeric(dom, t);

  Extremum best;
  bool have = false, exact = true;
  auto consider = [&](std::optional<LogRational> ev, double dv, const std::vector<double>& x, std::optional<QVec> q,
                      double err) {
    if (!ev) exact = false;
    bool better = !have || (ev && best.exact ? certified_compare(*ev, *best.exact) < 0 : dv < best.value);
    if (better) {
      have = true;
      best.exact = ev;
      best.value = dv;
      best.point = x;
      best.exact_point = q;
    }
    best.error = std::max(best.error, err);
  };
  if (b.is_exact()) {
    // a - b is concave on each cell of b: minimum at cell vertices
    for (const auto& c : roof_cells(b)) {
      for (const auto& v : c.cell.vertices()) {
        std::vector<double> x;
        for (const auto& t : v) x.push_back(t.to_double());
        auto q = rational_point(v);
        std::optional<LogRational> ev;
        if (q) {
          auto av = a.exact_value(*q);
          if (av) ev = *av - c.at(*q);
        }
        double dv = ev ? ev->to_double() : a.value(x.data()) - cell_value_double(c, v);
        consider(ev, dv, x, q, ev ? 0.0 : 1e-9 * (1 + std::abs(dv)));
      }
    }
  } else if (a.is_exact()) {
    // a affine on each cell, b concave: maximise b - a per cell
    for (const auto& c : roof_cells(a)) {
      std::vector<double> sl;
      for (const auto& s : c.slope) sl.push_back(s.to_double());
      const double off = c.offset.to_double();
      auto m = concave_max_numeric(
          c.cell,
          [&](const double* x) {
            double av = off;
            for (std::size_t i = 0; i < sl.size(); ++i) av += sl[i] * x[i];
            return b.value(x) - av;
          },
          opts.tol);
      consider(std::nullopt, -m.value, m.point, std::nullopt, m.error);
    }
  } else {
    // difference of two numeric concave functions: dense sampling only
    if (dom.affine_dimension() != dom.dim() || dom.dim() > 2)
      fail(Errc::oracle_path_unsupported, "numeric comparison needs a full-dimensional domain of dimension <= 2");
    auto dv = dom.double_vertices();
    const int g = dom.dim() == 1 ? 4000 : 200;
    std::vector<double> lo(dom.dim(), 1e300), hi(dom.dim(), -1e300);
    for (const auto& v : dv)
      for (std::size_t i = 0; i < v.size(); ++i) {
        lo[i] = std::min(lo[i], v[i]);
        hi[i] = std::max(hi[i], v[i]);
      }
    auto hs = dom.double_hrep();
    auto inside = [&](const std::vector<double>& x) {
      for (const auto& h : hs) {
        double s = -h.offset;
        for (std::size_t i = 0; i < x.size(); ++i) s += h.normal[i] * x[i];
        if (s < -1e-12) return false;
      }
      return true;
    };
    std::vector<std::vector<double>> pts = dv;
    if (dom.dim() == 1) {
      for (int i = 0; i <= g; ++i) pts.push_back({lo[0] + (hi[0] - lo[0]) * i / g});
    } else {
      for (int i = 0; i <= g; ++i)
        for (int j = 0; j <= g; ++j) {
          std::vector<double> x{lo[0] + (hi[0] - lo[0]) * i / g, lo[1] + (hi[1] - lo[1]) * j / g};
          if (inside(x)) pts.push_back(x);
        }
    }
    for (const auto& x : pts) consider(std::nullopt, a.value(x.data()) - b.value(x.data()), x, std::nullopt, 0);
    best.error = std::max(best.error, 1e-6);
  }
  if (!exact) best.exact.reset();
  return best;
}

}  // namespace toric
