#include <cmath>

#include "toric/arakelov/arakelov.hpp"
#include "toric/kernels/kernels.hpp"

namespace toric {

namespace {

Estimate scaled(Estimate e, const Rational& f) {
  if (e.exact) *e.exact *= f;
  e.value *= f.to_double();
  e.error *= std::abs(f.to_double());
  return e;
}

Estimate exact_zero() {
  Estimate e;
  e.exact = LogRational(0);
  return e;
}

}  // namespace

std::string_view tri_name(Tri t) {
  switch (t) {
    case Tri::no: return "no";
    case Tri::yes: return "yes";
    case Tri::unknown: return "unknown";
  }
  return "?";
}

Rational geometric_volume(const ToricMetrizedRDivisor& d) {
  const auto& p = d.delta();
  if (!p.is_full_dimensional()) return 0;
  return factorial(d.dim()) * lattice_volume(p);
}

ArithmeticVolumes arithmetic_volumes(const ToricMetrizedRDivisor& d, const NumericOptions& opts) {
  ArithmeticVolumes v;
  if (!d.delta().is_full_dimensional()) {
    v.vol_hat = exact_zero();
    v.vol_chi = exact_zero();
    return v;
  }
  Roof r = global_roof(d);
  const Rational f = factorial(d.dim() + 1);
  v.vol_chi = scaled(roof_integral(r, opts), f);
  v.vol_hat = scaled(roof_positive_integral(r, opts), f);
  return v;
}

RationalPolytope face_of_cone(const ToricMetrizedRDivisor& d, const std::vector<std::size_t>& cone_rays) {
  const auto& fan = d.fan();
  for (auto j : cone_rays)
    if (j >= fan.rays().size()) fail(Errc::invalid_argument, "ray index out of range");
  if (!cone_rays.empty() && !fan.is_cone(cone_rays)) fail(Errc::invalid_argument, "rays do not span a cone of the fan");
  std::vector<LHalfspace> extra;
  for (auto j : cone_rays) {
    const QVec& r = fan.rays()[j];
    extra.push_back({Rational(-1) * r, LogRational(-d.psi().at_ray(j))});
  }
  if (d.delta().is_empty()) return d.delta();
  return extra.empty() ? d.delta() : intersect(d.delta(), extra);
}

Estimate height(const ToricMetrizedRDivisor& d, const std::vector<std::size_t>& cone_rays,
                const std::optional<std::string>& place, const NumericOptions& opts) {
  auto sp = semipositivity(d);
  if (!sp.holds) fail(Errc::not_semipositive, "height needs a semipositive divisor: " + sp.reason);
  if (!d.psi().is_concave()) fail(Errc::not_semipositive, "height needs a nef underlying divisor");
  RationalPolytope face = face_of_cone(d, cone_rays);
  if (face.is_empty()) return exact_zero();
  Roof r = place ? local_roof(d, *place) : global_roof(d);
  r = r.restricted(face);
  const std::size_t dim_face = face.affine_dimension();
  if (dim_face + cone_rays.size() < d.dim()) return exact_zero();
  return scaled(roof_integral(r, opts), factorial(dim_face + 1));
}

LatticeSum lattice_sum_oracle(const ToricMetrizedRDivisor& d, long ell, ExecPolicy policy) {
  if (ell <= 0) fail(Errc::invalid_argument, "ell must be positive");
  LatticeSum out;
  out.ell = ell;
  if (d.delta().is_empty()) return out;
  Roof r = global_roof(d);
  const std::size_t n = d.dim();
  auto pts = lattice_points(d.delta(), ell);
  out.points = pts.size();
  std::vector<double> flat;
  flat.reserve(pts.size() * n);
  const double inv = 1.0 / static_cast<double>(ell);
  for (const auto& m : pts)
    for (const auto& c : m) flat.push_back(c.to_double() * inv);
  const double scale = factorial(n + 1).to_double() / std::pow(static_cast<double>(ell), static_cast<double>(n));
  out.vol_hat = scale * kernels::lattice_sum([&](const double* x) { return std::max(0.0, r.value(x)); }, n, flat, policy);
  out.vol_chi = scale * kernels::lattice_sum([&](const double* x) { return r.value(x); }, n, flat, policy);
  return out;
}

OracleTable compare_oracle(const ToricMetrizedRDivisor& d, const std::vector<long>& ells, const NumericOptions& opts) {
  OracleTable t;
  auto v = arithmetic_volumes(d, opts);
  t.reference_exact = v.vol_hat.exact.has_value();
  for (long ell : ells) {
    auto s = lattice_sum_oracle(d, ell);
    OracleRow row{ell, s.vol_hat, v.vol_hat.value, std::abs(s.vol_hat - v.vol_hat.value)};
    t.fitted_c = std::max(t.fitted_c, row.gap * static_cast<double>(ell));
    t.rows.push_back(row);
  }
  return t;
}

LogRational fubini_study_chi_volume(const std::vector<Rational>& alpha) {
  LogRational s;
  Rational h = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i > 0) h += Rational(1, static_cast<long>(i));
    s += LogRational::log_of(alpha[i]) + LogRational(h);
  }
  return s * Rational(1, 2);
}

}  // namespace toric
