#include <cmath>

#include "toric/arakelov/arakelov.hpp"
#include "toric/numerics/certified.hpp"
#include "toric/numerics/lp.hpp"

namespace toric {

namespace {

Rational snap(double x, int bits = 24) {
  mpz_class num;
  mpz_set_d(num.get_mpz_t(), std::nearbyint(std::ldexp(x, bits)));
  mpz_class den = 1;
  den <<= bits;
  return Rational(num, den);
}

Rational norm1(const QVec& v) {
  Rational s;
  for (const auto& x : v) s += x.abs();
  return s;
}

// A polytope whose normal fan is the given simplicial fan: Ψ_h strictly concave on Σ, found by
// ⟨m_σ,ρ⟩ = h_ρ for ρ ∈ σ and ⟨m_σ,ρ⟩ ≥ h_ρ + 1 for ρ ∉ σ.
RationalPolytope fan_polytope(const RationalFan& fan) {
  const std::size_t n = fan.dim(), r = fan.rays().size(), k = fan.size();
  const std::size_t vars = r + k * n;
  QMat a;
  QVec b;
  auto row = [&] { return QVec(vars); };
  for (std::size_t s = 0; s < k; ++s) {
    const auto& cone = fan.maximal_cones()[s];
    if (cone.size() != n) fail(Errc::construction_error, "fan is not simplicial; no strictly concave Psi sought");
    for (std::size_t j = 0; j < r; ++j) {
      QVec c = row();
      for (std::size_t i = 0; i < n; ++i) c[r + s * n + i] = fan.rays()[j][i];
      c[j] = -1;
      bool in = std::find(cone.begin(), cone.end(), j) != cone.end();
      if (in) {
        a.push_back(c);
        b.push_back(0);
        a.push_back((-1) * c);
        b.push_back(0);
      } else {
        a.push_back((-1) * c);
        b.push_back(-1);
      }
    }
  }
  for (std::size_t j = 0; j < r; ++j) {
    QVec c = row();
    c[j] = 1;
    a.push_back(c);
    b.push_back(0);
    a.push_back((-1) * c);
    b.push_back(1000);
  }
  QVec obj = row();
  for (std::size_t j = 0; j < r; ++j) obj[j] = 1;
  auto res = lp_maximize(a, b, obj);
  if (res.status != LpStatus::optimal) fail(Errc::construction_error, "fan is not projective");
  QVec h(res.x.begin(), res.x.begin() + r);
  return VirtualSupportFunction::from_ray_values(fan, h).delta();
}

// Rational polytope inside Θ from boundary samples pulled towards the centre and rounded.
RationalPolytope inscribed(const ThetaRegion& th, const std::vector<double>& centre) {
  const std::size_t n = centre.size();
  std::vector<QVec> pts;
  // A coarse subset keeps the triangulation small; the shrink loop absorbs the lost volume.
  const std::size_t stride = std::max<std::size_t>(1, th.boundary.size() / (n == 2 ? 32 : 64));
  for (std::size_t k = 0; k < th.boundary.size(); k += stride) {
    const auto& b = th.boundary[k];
    for (double shrink : {1e-6, 1e-4, 1e-2}) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = centre[i] + (1 - shrink) * (b[i] - centre[i]);
      QVec q;
      for (double v : x) q.push_back(snap(v));
      if (!th.roof.domain().contains(q)) continue;
      if (auto e = th.roof.exact_value(q)) {
        if (certified_sign(*e) < 0) continue;
      } else if (th.roof.value(q) < 1e-9) {
        continue;
      }
      pts.push_back(q);
      break;
    }
  }
  auto q = RationalPolytope::from_vertices(n, pts);
  if (!q.is_full_dimensional()) fail(Errc::oracle_path_unsupported, "inscribed polytope in Theta_D is degenerate");
  return q;
}

// Lower bound for the Euclidean distance from an interior point to the boundary of q.
Rational inner_radius(const RationalPolytope& q, const QVec& p) {
  std::optional<Rational> r;
  for (const auto& h : q.rational_hrep()) {
    Rational d = (dot(h.normal, p) - h.offset) / norm1(h.normal);
    if (!r || d < *r) r = d;
  }
  return *r;
}

}  // namespace

FujitaApproximation fujita(const ToricMetrizedRDivisor& d, double epsilon, const NumericOptions& opts) {
  if (!(epsilon > 0)) fail(Errc::invalid_parameters, "epsilon must be positive");
  auto rep = classify(d, opts);
  if (rep.big.value != Tri::yes) fail(Errc::not_big, "D is not big: " + rep.big.witness);
  const std::size_t n = d.dim();
  auto th = theta_region(d, opts);

  RationalPolytope q = RationalPolytope::empty(n);
  std::vector<double> peak = rep.max->point;
  if (th.polytope && th.polytope->is_rational())
    q = *th.polytope;
  else
    q = inscribed(th, peak);

  QVec top;
  if (rep.max->exact_point) {
    top = *rep.max->exact_point;
  } else {
    for (double v : peak) top.push_back(snap(v));
  }
  QVec centre = q.relative_interior_point();
  QVec p = q.contains(top) ? Rational(1, 2) * (top + centre) : centre;

  std::optional<RationalPolytope> p_sigma;
  QVec c_sigma;
  Rational radius_sigma;
  if (!normal_fan(q).refines(d.fan())) {
    p_sigma = fan_polytope(d.fan());
    c_sigma = p_sigma->relative_interior_point();
    for (const auto& v : p_sigma->rational_vertices()) radius_sigma = std::max(radius_sigma, norm1(v - c_sigma));
  }
  const Rational r = inner_radius(q, p);

  FujitaApproximation f;
  f.epsilon = epsilon;
  f.vol_d = arithmetic_volumes(d, opts).vol_hat;
  // Concavity gives vol(A) >= (1-t)^{n+1} vol(D) when Q = Θ and no fan correction is needed,
  // so start from the largest dyadic t meeting the deficit bound.
  Rational t(1, 2);
  int it = 0;
  const double vd = f.vol_d.value + f.vol_d.error;
  while (it < 63 && vd * (1 - std::pow(1 - t.to_double(), double(n + 1))) > epsilon) {
    t /= 2;
    ++it;
  }
  for (; it < 64; ++it, t /= 2) {
    auto inner = homothety(q, p, 1 - t);
    Rational delta;
    if (p_sigma) {
      delta = t * r / (2 * radius_sigma);
      inner = minkowski_sum(inner, homothety(translate(*p_sigma, (-1) * c_sigma), QVec(n), delta));
    }
    auto fan = normal_fan(inner);
    auto a = restrict_to(d, inner, fan);
    auto vol = arithmetic_volumes(a, opts).vol_hat;
    double deficit = f.vol_d.value - vol.value;
    if (f.vol_d.exact && vol.exact) deficit = (*f.vol_d.exact - *vol.exact).to_double();
    if (deficit + vol.error + f.vol_d.error > epsilon && it + 1 < 64) continue;
    if (deficit + vol.error + f.vol_d.error > epsilon) break;
    f.refined_fan = fan;
    f.inner = inner;
    f.t = t;
    f.delta = delta;
    f.ample_part = a;
    f.vol_ample = vol;
    f.effective_part = DifferenceDivisor{pullback(d, fan), a};
    f.ample_verified = classify(a, opts).ample;
    f.effective_verified = effective_flag(*f.effective_part);
    f.volume_ok = vol.value + vol.error >= f.vol_d.value - f.vol_d.error - epsilon;
    return f;
  }
  fail(Errc::budget_exceeded, "no shrink parameter t >= 2^-64 meets the volume deficit");
}

}  // namespace toric
