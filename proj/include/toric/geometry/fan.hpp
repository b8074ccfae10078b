#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toric/geometry/polytope.hpp"

namespace toric {

// Inner facet normals a of the cone generated by `gens` in R^dim: cone = { u : <a,u> >= 0 }.
// Works for cones with lineality (generators may come in opposite pairs); requires full dimension.
std::vector<QVec> cone_facets(const std::vector<QVec>& gens, std::size_t dim);
// Primitive extreme rays of the pointed cone { u : <a_j,u> >= 0 }.
std::vector<QVec> cone_rays(const std::vector<QVec>& normals, std::size_t dim);
// True if { u : <a_j,u> >= 0 } has nonempty interior.
bool cone_is_full_dimensional(const std::vector<QVec>& normals, std::size_t dim);

// Complete rational fan given by primitive rays and full-dimensional maximal cones.
class RationalFan {
 public:
  static RationalFan make(std::size_t dim, std::vector<QVec> rays, std::vector<std::vector<std::size_t>> cones);
  // Fan of P^n: rays e_1..e_n, -(e_1+...+e_n).
  static RationalFan projective_space(std::size_t n);

  std::size_t dim() const { return dim_; }
  const std::vector<QVec>& rays() const { return rays_; }
  const std::vector<std::vector<std::size_t>>& maximal_cones() const { return cones_; }
  std::size_t size() const { return cones_.size(); }
  const std::vector<QVec>& facets(std::size_t cone) const { return facets_[cone]; }
  std::vector<QVec> generators(std::size_t cone) const;
  QVec interior_point(std::size_t cone) const;

  bool cone_contains(std::size_t cone, const QVec& u) const;
  bool cone_contains(std::size_t cone, const double* u, double eps = 1e-12) const;
  std::size_t locate(const QVec& u) const;
  std::size_t locate(const double* u) const;

  // Is cone(rays[ids]) a cone of the fan (a face of some maximal cone)?
  bool is_cone(const std::vector<std::size_t>& ids) const;
  // Index of a maximal cone containing the face cone(rays[ids]).
  std::size_t containing_maximal_cone(const std::vector<std::size_t>& ids) const;
  bool refines(const RationalFan& coarser) const;
  std::optional<std::size_t> ray_index(const QVec& r) const;

 private:
  std::size_t dim_ = 0;
  std::vector<QVec> rays_;
  std::vector<std::vector<std::size_t>> cones_;
  std::vector<std::vector<QVec>> facets_;
};

bool operator==(const RationalFan& a, const RationalFan& b);

// Normal fan of a full-dimensional polytope (maximal cones = vertex normal cones).
RationalFan normal_fan(const RationalPolytope& p);
// Coarsest fan refining both.
RationalFan common_refinement(const RationalFan& a, const RationalFan& b);
// Refinement of `a` by a complete collection of full-dimensional cones given by facet normals.
RationalFan common_refinement(const RationalFan& a, const std::vector<std::vector<QVec>>& cones);
// Normal cones (as inner facet normals) at the vertices of a polytope; lower-dimensional allowed.
std::vector<std::vector<QVec>> vertex_normal_cones(const RationalPolytope& p);

// Piecewise linear function on a complete fan with defining vectors m_sigma: Psi(u) = <m_sigma,u> on sigma.
class VirtualSupportFunction {
 public:
  VirtualSupportFunction(RationalFan fan, std::vector<QVec> defining_vectors);
  // Psi from its values on the rays.
  static VirtualSupportFunction from_ray_values(RationalFan fan, const QVec& values);

  const RationalFan& fan() const { return fan_; }
  const std::vector<QVec>& defining_vectors() const { return m_; }
  std::size_t dim() const { return fan_.dim(); }

  Rational operator()(const QVec& u) const;
  double evaluate(const double* u) const;
  Rational at_ray(std::size_t j) const;

  struct ConcavityWitness {
    bool holds = true;
    std::size_t sigma = 0, tau = 0;
    QVec u;
  };
  ConcavityWitness concavity() const;
  ConcavityWitness strict_concavity() const;
  bool is_concave() const { return concavity().holds; }
  bool is_strictly_concave() const { return strict_concavity().holds; }

  // Stability set { x : <x,rho> >= Psi(rho) for each ray rho }.
  RationalPolytope delta() const;
  VirtualSupportFunction pullback(const RationalFan& finer) const;

  friend VirtualSupportFunction operator+(const VirtualSupportFunction& a, const VirtualSupportFunction& b);
  friend VirtualSupportFunction operator*(const Rational& s, const VirtualSupportFunction& a);

 private:
  RationalFan fan_;
  std::vector<QVec> m_;
};

bool operator==(const VirtualSupportFunction& a, const VirtualSupportFunction& b);

// Support function min_{x in P} <x,u> of a rational polytope on a fan refining its normal fan.
VirtualSupportFunction support_function(const RationalPolytope& p, const RationalFan& fan);

}  // namespace toric
