#include "toric/io/examples.hpp"

namespace toric::examples {

VirtualSupportFunction pn_hyperplane(std::size_t n, long k) {
  QVec vals(n + 1);
  vals[n] = -k;
  return VirtualSupportFunction::from_ray_values(RationalFan::projective_space(n), vals);
}

ToricMetrizedRDivisor fubini_study(std::vector<Rational> alpha) {
  if (alpha.size() < 2) fail(Errc::invalid_argument, "Fubini-Study weights need n >= 1");
  const std::size_t n = alpha.size() - 1;
  return ToricMetrizedRDivisor::make(pn_hyperplane(n), PlaceTable::rationals(),
                                     {{"inf", MetricSpec::fubini_study(std::move(alpha))}});
}

ToricMetrizedRDivisor halfplane_theta() {
  ConcavePA th(2, {AffineForm{{-2, -2}, LogRational(1)}});
  return theta_divisor(pn_hyperplane(2), {{"inf", th}});
}

ToricMetrizedRDivisor canonical_pn(std::size_t n) { return ToricMetrizedRDivisor::canonical(pn_hyperplane(n)); }

ToricMetrizedRDivisor theta_divisor(const VirtualSupportFunction& psi, std::map<std::string, ConcavePA> thetas) {
  std::map<std::string, MetricSpec> metrics;
  for (auto& [id, th] : thetas) metrics[id] = MetricSpec::theta_mode(std::move(th));
  return ToricMetrizedRDivisor::make(psi, PlaceTable::rationals(), std::move(metrics));
}

}  // namespace toric::examples
