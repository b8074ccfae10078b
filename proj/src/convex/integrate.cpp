#include "toric/convex/integrate.hpp"

#include <cmath>

#include "toric/convex/duality.hpp"

namespace toric {

namespace {

// Lattice-normalised volume of a simplex whose vertices are given in floating point.
double simplex_volume_in(const std::vector<std::vector<double>>& vs, const QMat& basis) {
  const std::size_t d = vs.size() - 1;
  if (d == 0) return 1;
  const std::size_t n = vs[0].size();
  std::vector<std::vector<double>> b;
  for (const auto& r : basis) b.push_back(to_double(r));
  std::vector<std::vector<double>> gram(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < n; ++k) gram[i][j] += b[i][k] * b[j][k];
  auto ginv = inverse(gram);
  if (!ginv) fail(Errc::invalid_argument, "degenerate lattice basis");
  std::vector<std::vector<double>> y;
  for (std::size_t s = 1; s <= d; ++s) {
    std::vector<double> rhs(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < n; ++k) rhs[i] += b[i][k] * (vs[s][k] - vs[0][k]);
    std::vector<double> c(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) c[i] += (*ginv)[i][j] * rhs[j];
    y.push_back(std::move(c));
  }
  double det = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < d; ++i)
      if (std::abs(y[i][c]) > std::abs(y[piv][c])) piv = i;
    std::swap(y[piv], y[c]);
    if (y[c][c] == 0) return 0;
    det *= y[c][c];
    for (std::size_t i = c + 1; i < d; ++i) {
      double f = y[i][c] / y[c][c];
      for (std::size_t k = c; k < d; ++k) y[i][k] -= f * y[c][k];
    }
  }
  double fact = 1;
  for (std::size_t k = 2; k <= d; ++k) fact *= static_cast<double>(k);
  return std::abs(det) / fact;
}

// ∫_S form over a polytope S with exact data.
Rational integrate_form_exact(const RationalPolytope& s, const AffineForm& form, const QMat& basis) {
  if (s.is_empty()) return 0;
  auto pts = s.rational_vertices();
  Rational total = 0;
  for (const auto& simplex : s.triangulation()) {
    std::vector<QVec> vs;
    Rational sum = 0;
    for (auto i : simplex) {
      vs.push_back(pts[i]);
      sum += form(pts[i]).rational_part();
    }
    total += simplex_lattice_volume(vs, basis) * sum / Rational(static_cast<long>(simplex.size()));
  }
  return total;
}

double integrate_form_numeric(const RationalPolytope& s, const AffineForm& form, const QMat& basis) {
  if (s.is_empty() || s.affine_dimension() < basis.size()) return 0;
  auto pts = s.double_vertices();
  std::vector<std::size_t> ids(pts.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  std::vector<std::vector<std::size_t>> simplices;
  pulling_triangulation(pts, s.vertex_tight_sets(), s.hrep().size(), ids, s.affine_dimension(), simplices);
  double total = 0;
  for (const auto& simplex : simplices) {
    std::vector<std::vector<double>> vs;
    double sum = 0;
    for (auto i : simplex) {
      vs.push_back(pts[i]);
      sum += form.evaluate(pts[i].data());
    }
    total += simplex_volume_in(vs, basis) * sum / static_cast<double>(simplex.size());
  }
  return total;
}

ConcavePA rational_part_of(const ConcaveOnPolytope& g, LogRational& log_shift) {
  auto l = common_log_part(g.f.forms());
  if (!l) fail(Errc::oracle_path_unsupported, "exact integration needs offsets with a common log part");
  log_shift = *l;
  return g.f.twisted(QVec(g.f.dim()), *l).canonical_on(g.domain);
}

}  // namespace

LogRational integrate_pa(const ConcaveOnPolytope& g) {
  const auto& p = g.domain;
  if (p.is_empty()) return LogRational(0);
  if (!p.is_rational()) fail(Errc::oracle_path_unsupported, "exact integration needs a rational domain");
  LogRational l;
  auto g0 = rational_part_of(g, l);
  QMat basis = direction_lattice_basis(p.rational_vertices(), p.dim());
  Rational total = 0;
  for (std::size_t k = 0; k < g0.forms().size(); ++k)
    total += integrate_form_exact(g0.region(k, p), g0.forms()[k], basis);
  return LogRational(total) + l * lattice_volume(p);
}

PAIntegral integrate_positive_part(const ConcaveOnPolytope& g) {
  const auto& p = g.domain;
  PAIntegral out;
  if (p.is_empty()) {
    out.exact = LogRational(0);
    return out;
  }
  if (!p.is_rational()) fail(Errc::oracle_path_unsupported, "integration needs a rational domain");
  LogRational l;
  auto g0 = rational_part_of(g, l);
  QMat basis = direction_lattice_basis(p.rational_vertices(), p.dim());
  Rational exact = 0;
  double value = 0;
  bool all_exact = true;
  for (std::size_t k = 0; k < g0.forms().size(); ++k) {
    AffineForm form = g0.forms()[k];
    form.offset += l;
    auto region = g0.region(k, p);
    auto pos = intersect(region, {LHalfspace{form.slope, LogRational(0) - form.offset}});
    if (pos.is_empty()) continue;
    if (pos.is_rational() && form.offset.is_rational()) {
      Rational v = integrate_form_exact(pos, form, basis);
      exact += v;
      value += v.to_double();
    } else {
      all_exact = false;
      value += integrate_form_numeric(pos, form, basis);
    }
  }
  if (all_exact) {
    out.exact = LogRational(exact);
    out.value = exact.to_double();
  } else {
    out.value = value;
  }
  return out;
}

CubatureResult integrate_numeric(const RationalPolytope& p, const Integrand& f, double tol, const CubatureOptions& opts) {
  if (p.is_empty()) return {};
  if (!p.is_rational()) fail(Errc::oracle_path_unsupported, "numeric integration needs a rational domain");
  const std::size_t n = p.dim();
  auto pts = p.rational_vertices();
  const std::size_t d = p.affine_dimension();
  if (d == 0) {
    CubatureResult r;
    auto x = to_double(pts[0]);
    r.value = f(x.data());
    r.evaluations = 1;
    return r;
  }
  if (d == n) {
    std::vector<std::vector<std::vector<double>>> simplices;
    for (const auto& s : p.triangulation()) {
      std::vector<std::vector<double>> vs;
      for (auto i : s) vs.push_back(to_double(pts[i]));
      simplices.push_back(std::move(vs));
    }
    return adaptive_integrate(f, simplices, tol, opts);
  }
  // Integrate in lattice coordinates y of aff(P) = x0 + span(basis).
  QMat basis = direction_lattice_basis(pts, n);
  const QVec& x0 = pts[0];
  std::vector<std::vector<std::vector<double>>> simplices;
  for (const auto& s : p.triangulation()) {
    std::vector<std::vector<double>> vs;
    for (auto i : s) {
      auto y = coordinates_in(basis, pts[i] - x0);
      vs.push_back(to_double(*y));
    }
    simplices.push_back(std::move(vs));
  }
  auto bd = std::vector<std::vector<double>>();
  for (const auto& r : basis) bd.push_back(to_double(r));
  auto x0d = to_double(x0);
  Integrand g = [&, bd, x0d](const double* y) {
    std::vector<double> x = x0d;
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < n; ++i) x[i] += y[k] * bd[k][i];
    return f(x.data());
  };
  return adaptive_integrate(g, simplices, tol, opts);
}

}  // namespace toric
