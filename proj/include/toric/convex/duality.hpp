#pragma once

#include <optional>

#include "toric/convex/pa.hpp"

namespace toric {

// Generators of a polyhedron { u : <u,a_j> >= b_j }: a basis of the lineality space L and the
// vertices and extreme rays of its pointed part P ∩ L^⊥.
struct PolyhedronGenerators {
  std::vector<QVec> lineality;
  std::vector<QVec> vertices;
  std::vector<QVec> rays;
};
PolyhedronGenerators polyhedron_generators(const std::vector<QHalfspace>& cs, std::size_t dim);

// { x : <x,u> >= rec(f)(u) for all u }; empty marker when infeasible.
RationalPolytope stability_set(const GeneralPA& f);
RationalPolytope stability_set(const ConcavePA& f);
RationalPolytope stability_set(const OracleFunction& f);

// Conic recession function: offsets dropped, cells replaced by their recession cones.
GeneralPA recession(const GeneralPA& f);

// f^∨ on stab(f) (or on the given domain, which must lie in stab(f)).
ConcaveOnPolytope legendre_dual(const GeneralPA& f);
ConcaveOnPolytope legendre_dual(const GeneralPA& f, const RationalPolytope& domain);
ConcaveOnPolytope legendre_dual(const ConcavePA& f);
// g^∨(u) = min_{x in P} <x,u> - g(x) as a concave function on N_R.
ConcavePA legendre_dual(const ConcaveOnPolytope& g);

// Value of a concave function on its domain; throws not_in_stability_set outside.
LogRational evaluate(const ConcaveOnPolytope& g, const QVec& x);
double evaluate(const ConcaveOnPolytope& g, const double* x);

struct OracleDualOptions {
  double tol = 1e-10;
  double box = 40;
};
// f^∨(x) by numerical minimisation of u -> <x,u> - f(u) (n <= 3).
double legendre_dual_at(const OracleFunction& f, const std::vector<double>& x, const OracleDualOptions& opts = {});

// Smallest concave function above f, from the upper hull of the lifted cell generators.
ConcavePA concave_envelope(const GeneralPA& f);
ConcavePA concave_envelope(const ConcavePA& f);

// (g ⊞ h)(x) = sup_{y+z=x} g(y) + h(z) on the Minkowski sum of the domains.
ConcaveOnPolytope sup_convolution(const ConcaveOnPolytope& g, const ConcaveOnPolytope& h);

struct ConcavityWitness {
  bool holds = true;
  std::size_t cell = 0;   // Λ
  std::size_t other = 0;  // Λ'
  QVec u;                 // interior point of Λ where the Λ'-form lies below the Λ-form
};
ConcavityWitness is_concave(const GeneralPA& f);

// Splits c = r + L where L is the log part shared by all offsets; nullopt if log parts differ.
std::optional<LogRational> common_log_part(const std::vector<AffineForm>& forms);

}  // namespace toric
