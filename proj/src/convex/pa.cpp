#include "toric/convex/pa.hpp"

#include <algorithm>
#include <cmath>

#include "toric/numerics/lp.hpp"

namespace toric {

namespace {

// Exact total order on LogRational used only for canonical sorting.
bool symbolic_less(const LogRational& a, const LogRational& b) {
  if (a.rational_part() != b.rational_part()) return a.rational_part() < b.rational_part();
  const auto& la = a.log_terms();
  const auto& lb = b.log_terms();
  return std::lexicographical_compare(la.begin(), la.end(), lb.begin(), lb.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return x.second < y.second;
  });
}

std::vector<AffineForm> dedupe(std::vector<AffineForm> f) {
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

}  // namespace

LogRational AffineForm::operator()(const std::vector<LogRational>& u) const {
  LogRational s = offset;
  for (std::size_t i = 0; i < slope.size(); ++i) s += u[i] * slope[i];
  return s;
}

double AffineForm::evaluate(const double* u) const {
  double s = offset.to_double();
  for (std::size_t i = 0; i < slope.size(); ++i) s += slope[i].to_double() * u[i];
  return s;
}

bool operator==(const AffineForm& a, const AffineForm& b) { return a.slope == b.slope && a.offset == b.offset; }

bool operator<(const AffineForm& a, const AffineForm& b) {
  if (a.slope != b.slope) return a.slope < b.slope;
  return symbolic_less(a.offset, b.offset);
}

ConcavePA::ConcavePA(std::size_t dim, std::vector<AffineForm> forms) : dim_(dim), forms_(std::move(forms)) {
  if (forms_.empty()) fail(Errc::construction_error, "concave function needs at least one form");
  for (const auto& f : forms_)
    if (f.slope.size() != dim_) fail(Errc::construction_error, "form dimension mismatch");
}

ConcavePA ConcavePA::constant(std::size_t dim, const LogRational& c) { return ConcavePA(dim, {{QVec(dim), c}}); }

ConcavePA ConcavePA::linear(const QVec& m) { return ConcavePA(m.size(), {{m, LogRational(0)}}); }

bool ConcavePA::is_rational() const {
  for (const auto& f : forms_)
    if (!f.offset.is_rational()) return false;
  return true;
}

LogRational ConcavePA::operator()(const QVec& u) const {
  LogRational best = forms_[0](u);
  for (std::size_t k = 1; k < forms_.size(); ++k) {
    LogRational v = forms_[k](u);
    if (v != best && certified_compare(v, best) < 0) best = v;
  }
  return best;
}

LogRational ConcavePA::operator()(const std::vector<LogRational>& u) const {
  LogRational best = forms_[0](u);
  for (std::size_t k = 1; k < forms_.size(); ++k) {
    LogRational v = forms_[k](u);
    if (v != best && certified_compare(v, best) < 0) best = v;
  }
  return best;
}

double ConcavePA::evaluate(const double* u) const {
  double best = forms_[0].evaluate(u);
  for (std::size_t k = 1; k < forms_.size(); ++k) best = std::min(best, forms_[k].evaluate(u));
  return best;
}

ConcavePA ConcavePA::canonical() const {
  if (!is_rational()) fail(Errc::oracle_path_unsupported, "canonical form on N_R needs rational offsets");
  auto f = dedupe(forms_);
  if (f.size() == 1) return ConcavePA(dim_, f);
  std::vector<AffineForm> keep;
  for (std::size_t k = 0; k < f.size(); ++k) {
    // maximize t : l_j(u) - l_k(u) >= t for j != k, t <= 1
    QMat a;
    QVec b;
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (j == k) continue;
      QVec row(dim_ + 1);
      for (std::size_t i = 0; i < dim_; ++i) row[i] = f[k].slope[i] - f[j].slope[i];
      row[dim_] = 1;
      a.push_back(row);
      b.push_back(f[j].offset.rational_part() - f[k].offset.rational_part());
    }
    QVec t(dim_ + 1);
    t[dim_] = 1;
    a.push_back(t);
    b.push_back(1);
    QVec c(dim_ + 1);
    c[dim_] = 1;
    auto r = lp_maximize(a, b, c);
    if (r.status == LpStatus::optimal && r.value.sign() > 0) keep.push_back(f[k]);
  }
  return ConcavePA(dim_, keep);
}

RationalPolytope ConcavePA::region(std::size_t k, const RationalPolytope& p) const {
  std::vector<LHalfspace> extra;
  for (std::size_t j = 0; j < forms_.size(); ++j) {
    if (j == k) continue;
    extra.push_back({forms_[j].slope - forms_[k].slope, forms_[k].offset - forms_[j].offset});
  }
  return intersect(p, extra);
}

ConcavePA ConcavePA::canonical_on(const RationalPolytope& p) const {
  if (p.is_empty()) return *this;
  ConcavePA d(dim_, dedupe(forms_));
  // Rational data goes through one LP per form instead of a vertex enumeration.
  const bool exact = p.is_rational() && d.is_rational();
  std::vector<QHalfspace> hs;
  std::vector<QVec> qverts;
  if (exact) {
    hs = p.rational_hrep();
    qverts = p.rational_vertices();
  }
  std::vector<AffineForm> keep;
  for (std::size_t k = 0; k < d.forms_.size(); ++k) {
    const auto& fk = d.forms_[k];
    bool dup = false;
    for (const auto& g : keep) {
      bool same = true;
      for (const auto& v : p.vertices()) same = same && fk(v) == g(v);
      if (same) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    if (exact) {
      // maximize t : u in p, l_j(u) - l_k(u) >= t for the l_j that differ from l_k on p, t <= 1
      QMat a;
      QVec b;
      for (const auto& h : hs) {
        QVec row(dim_ + 1);
        for (std::size_t i = 0; i < dim_; ++i) row[i] = -h.normal[i];
        a.push_back(row);
        b.push_back(-h.offset);
      }
      for (std::size_t j = 0; j < d.forms_.size(); ++j) {
        if (j == k) continue;
        const auto& fj = d.forms_[j];
        bool same = true;
        for (const auto& v : qverts) same = same && fk(v) == fj(v);
        if (same) continue;
        QVec row(dim_ + 1);
        for (std::size_t i = 0; i < dim_; ++i) row[i] = fk.slope[i] - fj.slope[i];
        row[dim_] = 1;
        a.push_back(row);
        b.push_back(fj.offset.rational_part() - fk.offset.rational_part());
      }
      QVec t(dim_ + 1);
      t[dim_] = 1;
      a.push_back(t);
      b.push_back(1);
      auto r = lp_maximize(a, b, t);
      if (r.status == LpStatus::optimal && r.value.sign() > 0) keep.push_back(fk);
      continue;
    }
    auto r = d.region(k, p);
    if (!r.is_empty() && r.affine_dimension() == p.affine_dimension()) keep.push_back(fk);
  }
  return ConcavePA(dim_, keep);
}

ConcavePA ConcavePA::twisted(const QVec& shift, const LogRational& c) const {
  std::vector<AffineForm> f = forms_;
  for (auto& a : f) a.offset += LogRational(dot(a.slope, shift)) - c;
  return ConcavePA(dim_, std::move(f));
}

ConcavePA operator+(const ConcavePA& a, const ConcavePA& b) {
  std::vector<AffineForm> f;
  for (const auto& x : a.forms_)
    for (const auto& y : b.forms_) f.push_back({x.slope + y.slope, x.offset + y.offset});
  return ConcavePA(a.dim_, dedupe(std::move(f)));
}

ConcavePA operator*(const Rational& s, const ConcavePA& a) {
  if (s.sign() < 0) fail(Errc::invalid_argument, "concave functions scale by nonnegative factors only");
  if (s.is_zero()) return ConcavePA::constant(a.dim_, LogRational(0));
  std::vector<AffineForm> f = a.forms_;
  for (auto& x : f) {
    x.slope = s * x.slope;
    x.offset *= s;
  }
  return ConcavePA(a.dim_, std::move(f));
}

bool operator==(const ConcavePA& a, const ConcavePA& b) {
  if (a.dim() != b.dim()) return false;
  auto fa = a.forms(), fb = b.forms();
  std::sort(fa.begin(), fa.end());
  std::sort(fb.begin(), fb.end());
  return fa == fb;
}

bool cell_is_full_dimensional(const std::vector<QHalfspace>& cs, std::size_t dim) {
  auto c = chebyshev_center(cs, dim);
  return c && c->second.sign() > 0;
}

std::optional<QVec> cell_interior_point(const std::vector<QHalfspace>& cs, std::size_t dim) {
  auto c = chebyshev_center(cs, dim);
  if (!c || c->second.sign() <= 0) return std::nullopt;
  return c->first;
}

namespace {

bool cell_contains(const PACell& c, const QVec& u) {
  for (const auto& h : c.constraints)
    if (dot(u, h.normal) < h.offset) return false;
  return true;
}

bool cell_contains(const PACell& c, const double* u) {
  for (const auto& h : c.constraints) {
    double s = -h.offset.to_double();
    for (std::size_t i = 0; i < h.normal.size(); ++i) s += h.normal[i].to_double() * u[i];
    if (s < -1e-12) return false;
  }
  return true;
}

}  // namespace

GeneralPA GeneralPA::make_unchecked(std::size_t dim, std::vector<PACell> cells) {
  GeneralPA g;
  g.dim_ = dim;
  for (auto& c : cells)
    if (cell_is_full_dimensional(c.constraints, dim)) g.cells_.push_back(std::move(c));
  if (g.cells_.empty()) fail(Errc::construction_error, "complex has no full-dimensional cell");
  return g;
}

GeneralPA GeneralPA::make(std::size_t dim, std::vector<PACell> cells) {
  if (cells.empty()) fail(Errc::construction_error, "complex has no cells");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    if (c.slope.size() != dim) fail(Errc::construction_error, "cell form dimension mismatch");
    for (const auto& h : c.constraints)
      if (h.normal.size() != dim) fail(Errc::construction_error, "cell constraint dimension mismatch");
    if (!cell_is_full_dimensional(c.constraints, dim))
      fail(Errc::construction_error, "cell " + std::to_string(i) + " is not full-dimensional");
  }
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      std::vector<QHalfspace> both = cells[i].constraints;
      both.insert(both.end(), cells[j].constraints.begin(), cells[j].constraints.end());
      auto cc = chebyshev_center(both, dim);
      if (!cc || cc->second.sign() < 0) continue;
      if (cc->second.sign() > 0)
        fail(Errc::construction_error, "cells " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
      // Forms must agree on the common face.
      QMat a;
      QVec b;
      for (const auto& h : both) {
        a.push_back(Rational(-1) * h.normal);
        b.push_back(-h.offset);
      }
      QVec diff = cells[i].slope - cells[j].slope;
      Rational off = cells[i].offset - cells[j].offset;
      for (int s : {1, -1}) {
        auto r = lp_maximize(a, b, Rational(s) * diff);
        if (r.status != LpStatus::optimal || r.value + Rational(s) * off != 0)
          fail(Errc::construction_error,
               "cells " + std::to_string(i) + " and " + std::to_string(j) + " disagree on their common face");
      }
    }
  // Cover test on a box containing every vertex of the hyperplane arrangement.
  std::vector<std::pair<std::vector<double>, double>> planes;
  for (const auto& c : cells)
    for (const auto& h : c.constraints) planes.push_back({to_double(h.normal), h.offset.to_double()});
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> e(dim, 0.0);
    e[i] = 1;
    planes.push_back({e, 0.0});
  }
  double big = 0;
  for_each_subset(planes.size(), dim, [&](const std::vector<std::size_t>& sub) {
    std::vector<std::vector<double>> m;
    for (auto k : sub) m.push_back(planes[k].first);
    auto inv = inverse(m);
    if (!inv) return true;
    for (std::size_t r = 0; r < dim; ++r) {
      double x = 0;
      for (std::size_t k = 0; k < dim; ++k) x += (*inv)[r][k] * planes[sub[k]].second;
      big = std::max(big, std::abs(x));
    }
    return true;
  });
  const long radius = static_cast<long>(std::ceil(2 * big + 1));
  Rational covered = 0, full = 1;
  for (std::size_t i = 0; i < dim; ++i) full *= Rational(2 * radius);
  for (const auto& c : cells) {
    auto hs = c.constraints;
    for (std::size_t i = 0; i < dim; ++i) {
      QVec e(dim);
      e[i] = 1;
      hs.push_back({e, Rational(-radius)});
      hs.push_back({Rational(-1) * e, Rational(-radius)});
    }
    covered += lattice_volume(RationalPolytope::from_hrep(dim, hs));
  }
  if (covered != full) fail(Errc::construction_error, "cells do not cover R^n");
  GeneralPA g;
  g.dim_ = dim;
  g.cells_ = std::move(cells);
  return g;
}

GeneralPA GeneralPA::from_concave(const ConcavePA& f0) {
  ConcavePA f = f0.canonical();
  std::vector<PACell> cells;
  for (std::size_t k = 0; k < f.forms().size(); ++k) {
    PACell c;
    for (std::size_t j = 0; j < f.forms().size(); ++j) {
      if (j == k) continue;
      c.constraints.push_back({f.forms()[j].slope - f.forms()[k].slope,
                               f.forms()[k].offset.rational_part() - f.forms()[j].offset.rational_part()});
    }
    c.slope = f.forms()[k].slope;
    c.offset = f.forms()[k].offset.rational_part();
    cells.push_back(std::move(c));
  }
  return make_unchecked(f.dim(), std::move(cells));
}

GeneralPA GeneralPA::from_support_function(const VirtualSupportFunction& psi) {
  std::vector<PACell> cells;
  for (std::size_t c = 0; c < psi.fan().size(); ++c) {
    PACell cell;
    for (const auto& a : psi.fan().facets(c)) cell.constraints.push_back({a, 0});
    cell.slope = psi.defining_vectors()[c];
    cell.offset = 0;
    cells.push_back(std::move(cell));
  }
  GeneralPA g;
  g.dim_ = psi.dim();
  g.cells_ = std::move(cells);
  return g;
}

Rational GeneralPA::operator()(const QVec& u) const {
  for (const auto& c : cells_)
    if (cell_contains(c, u)) return dot(c.slope, u) + c.offset;
  fail(Errc::invalid_argument, "point not covered by complex");
}

double GeneralPA::evaluate(const double* u) const {
  for (const auto& c : cells_)
    if (cell_contains(c, u)) {
      double s = c.offset.to_double();
      for (std::size_t i = 0; i < dim_; ++i) s += c.slope[i].to_double() * u[i];
      return s;
    }
  // Rounding at a cell boundary: take the nearest cell by constraint violation.
  double best_v = 1e300, val = 0;
  for (const auto& c : cells_) {
    double worst = 0;
    for (const auto& h : c.constraints) {
      double s = -h.offset.to_double();
      for (std::size_t i = 0; i < dim_; ++i) s += h.normal[i].to_double() * u[i];
      worst = std::min(worst, s);
    }
    if (-worst < best_v) {
      best_v = -worst;
      val = c.offset.to_double();
      for (std::size_t i = 0; i < dim_; ++i) val += c.slope[i].to_double() * u[i];
    }
  }
  return val;
}

namespace {

GeneralPA combine(const GeneralPA& a, const GeneralPA& b, const Rational& sb) {
  if (a.dim() != b.dim()) fail(Errc::invalid_argument, "dimension mismatch");
  std::vector<PACell> cells;
  for (const auto& x : a.cells())
    for (const auto& y : b.cells()) {
      PACell c;
      c.constraints = x.constraints;
      c.constraints.insert(c.constraints.end(), y.constraints.begin(), y.constraints.end());
      c.slope = x.slope + sb * y.slope;
      c.offset = x.offset + sb * y.offset;
      cells.push_back(std::move(c));
    }
  return GeneralPA::make_unchecked(a.dim(), std::move(cells));
}

}  // namespace

GeneralPA operator+(const GeneralPA& a, const GeneralPA& b) { return combine(a, b, 1); }
GeneralPA operator-(const GeneralPA& a, const GeneralPA& b) { return combine(a, b, -1); }

GeneralPA operator*(const Rational& s, const GeneralPA& a) {
  GeneralPA g = a;
  for (auto& c : g.cells_) {
    c.slope = s * c.slope;
    c.offset *= s;
  }
  return g;
}

}  // namespace toric
