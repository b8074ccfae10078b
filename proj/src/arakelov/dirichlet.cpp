#include <cmath>

#include "toric/arakelov/arakelov.hpp"
#include "toric/numerics/certified.hpp"

namespace toric {

DirichletCertificate dirichlet_certificate(const ToricMetrizedRDivisor& d, const QVec& a) {
  if (!d.places().is_rational_field()) fail(Errc::unsupported_field, "Dirichlet certificates need K = Q");
  if (a.size() != d.dim()) fail(Errc::invalid_argument, "point has the wrong dimension");
  if (!d.delta().contains(a)) fail(Errc::point_not_in_theta, "a = " + str(a) + " is not in Delta_D");
  Roof total = global_roof(d);
  if (auto v = total.exact_value(a)) {
    if (certified_sign(*v) < 0) fail(Errc::point_not_in_theta, "theta(a) = " + v->str() + " < 0");
  } else {
    double x = total.value(a);
    if (x < 1e-9) fail(Errc::point_not_in_theta, "theta(a) = " + std::to_string(x) + " not certified >= 0");
  }

  DirichletCertificate c;
  c.a = a;
  LogRational finite_sum;
  for (const auto& [id, m] : d.metrics()) {
    const auto& place = d.places().at(id);
    if (place.archimedean) continue;
    auto g = local_roof(d, id).exact_value(a);
    if (!g) fail(Errc::oracle_path_unsupported, "theta_" + id + "(a) has no exact value");
    c.gamma[id] = *g;
    finite_sum += *g * place.weight;
    // log|α|_p = -β_p log p
    RealExponent beta;
    beta.value = -g->to_double() / std::log(double(place.prime));
    if (g->rational_part().is_zero() && g->log_terms().size() <= 1 &&
        (g->log_terms().empty() || g->log_terms().begin()->first == place.prime))
      beta.exact = -g->log_coefficient(place.prime);
    c.beta[place.prime] = beta;
  }
  const auto& inf = d.places().at("inf");
  c.gamma["inf"] = -finite_sum / inf.weight;

  std::vector<QVec> m;
  for (const auto& v : d.psi().defining_vectors()) m.push_back(v - a);
  VirtualSupportFunction psi(d.fan(), m);
  auto metrics = d.metrics();
  if (!metrics.count("inf")) metrics["inf"] = MetricSpec::canonical();
  for (auto& [id, spec] : metrics) {
    Twist tw{a, c.gamma.count(id) ? c.gamma[id] : LogRational()};
    if (spec.twist) {
      tw.shift = spec.twist->shift + a;
      tw.constant = spec.twist->constant + tw.constant;
    }
    spec.twist = tw;
  }
  c.shifted = ToricMetrizedRDivisor::make(psi, d.places(), metrics);
  c.effective = effective_flag(*c.shifted);
  return c;
}

LogRational arithmetic_multiplicity(const ToricMetrizedRDivisor& d, const QVec& u) {
  if (u.size() != d.dim()) fail(Errc::invalid_argument, "ray has the wrong dimension");
  auto th = theta_region(d);
  if (th.empty) fail(Errc::theta_empty, "Theta_D is empty");
  if (!th.polytope) fail(Errc::oracle_path_unsupported, "Theta_D has no exact description: " + th.reason);
  std::optional<LogRational> best;
  for (const auto& v : th.polytope->vertices()) {
    LogRational s;
    for (std::size_t i = 0; i < u.size(); ++i) s += v[i] * u[i];
    if (!best || certified_compare(s, *best) < 0) best = s;
  }
  return *best - LogRational(d.psi()(u));
}

}  // namespace toric
