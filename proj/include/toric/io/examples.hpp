#pragma once

#include "toric/divisor/divisor.hpp"

namespace toric::examples {

// k times the hyperplane divisor on P^n (Psi = k min(0, u_1, ..., u_n)).
VirtualSupportFunction pn_hyperplane(std::size_t n, long k = 1);

// Hyperplane divisor with the weighted Fubini-Study metric at infinity, canonical elsewhere.
ToricMetrizedRDivisor fubini_study(std::vector<Rational> alpha);

// Hyperplane divisor on P^2 with theta_inf(x) = 1 - 2(x_1 + x_2).
ToricMetrizedRDivisor halfplane_theta();

// Canonical metrics on the hyperplane divisor of P^n.
ToricMetrizedRDivisor canonical_pn(std::size_t n);

// Theta-mode metrics (local roofs given directly) on a concave Psi.
ToricMetrizedRDivisor theta_divisor(const VirtualSupportFunction& psi, std::map<std::string, ConcavePA> thetas);

}  // namespace toric::examples
