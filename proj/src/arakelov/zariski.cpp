#include <cmath>

#include "toric/arakelov/arakelov.hpp"

namespace toric {

namespace {

bool same_volume(const Estimate& a, const Estimate& b) {
  if (a.exact && b.exact) return *a.exact == *b.exact;
  return std::abs(a.value - b.value) <= a.error + b.error + 1e-9;
}

}  // namespace

ToricMetrizedRDivisor restrict_to(const ToricMetrizedRDivisor& d, const RationalPolytope& q, const RationalFan& fan) {
  auto psi = support_function(q, fan);
  std::map<std::string, MetricSpec> metrics;
  for (const auto& [id, m] : d.metrics()) {
    Roof r = local_roof(d, id);
    if (r.is_zero()) continue;
    metrics[id] = MetricSpec::roof_mode(r.restricted(q));
  }
  return ToricMetrizedRDivisor::make(psi, d.places(), metrics);
}

ZariskiDecomposition zariski(const ToricMetrizedRDivisor& d, const NumericOptions& opts) {
  ZariskiDecomposition z;
  auto rep = classify(d, opts);
  if (rep.pseudo_effective.value != Tri::yes)
    fail(Errc::not_pseudo_effective, "D is not pseudo-effective (" + std::string(tri_name(rep.pseudo_effective.value)) +
                                         "): " + rep.pseudo_effective.witness);
  z.theta = theta_region(d, opts);
  z.vol_d = arithmetic_volumes(d, opts).vol_hat;

  std::optional<RationalPolytope> q;
  if (z.theta.quasi_rational == Tri::no) {
    if (rep.big.value == Tri::yes) {
      z.refused = true;
      z.reason = "Theta_D is not quasi-rational (" + z.theta.reason +
                 "); no toric model carries a Zariski decomposition";
      return z;
    }
    // Weak decomposition at a rational point of Theta_D.
    if (!rep.max || !rep.max->exact_point)
      fail(Errc::oracle_path_unsupported, "no rational point of Theta_D for the weak decomposition");
    z.strong = false;
    q = RationalPolytope::from_vertices(d.dim(), {*rep.max->exact_point});
  } else if (z.theta.quasi_rational == Tri::unknown) {
    fail(Errc::oracle_path_unsupported, "quasi-rationality of Theta_D undecided: " + z.theta.reason);
  } else {
    if (!z.theta.polytope) fail(Errc::oracle_path_unsupported, "Theta_D has no exact description: " + z.theta.reason);
    q = *z.theta.polytope;
  }
  if (q->is_empty()) fail(Errc::theta_empty, "Theta_D is empty");
  if (!q->is_rational()) fail(Errc::oracle_path_unsupported, "Theta_D has log-rational vertices");

  z.refined_fan = common_refinement(d.fan(), vertex_normal_cones(*q));
  auto p = restrict_to(d, *q, z.refined_fan);
  z.nef_part = p;
  z.effective_part = DifferenceDivisor{pullback(d, z.refined_fan), p};
  z.nef_verified = classify(p, opts).nef;
  z.effective_verified = effective_flag(*z.effective_part);
  z.vol_nef = arithmetic_volumes(p, opts).vol_hat;
  z.volumes_equal = same_volume(*z.vol_nef, *z.vol_d);
  return z;
}

}  // namespace toric
