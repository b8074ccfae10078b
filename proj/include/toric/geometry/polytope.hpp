#pragma once

#include <optional>
#include <vector>

#include "toric/geometry/polyhedral.hpp"
#include "toric/numerics/log_rational.hpp"

namespace toric {

// Bounded polytope { x : <x,u_j> >= gamma_j } with rational normals and LogRational offsets,
// or the empty polytope. Both representations are computed at construction; the stored
// H-representation is irredundant (implicit equalities appear as opposite pairs).
class RationalPolytope {
 public:
  static RationalPolytope from_hrep(std::size_t dim, std::vector<LHalfspace> hs);
  static RationalPolytope from_hrep(std::size_t dim, const std::vector<QHalfspace>& hs);
  static RationalPolytope from_vertices(std::size_t dim, std::vector<QVec> points);
  static RationalPolytope empty(std::size_t dim);
  static RationalPolytope standard_simplex(std::size_t dim);
  static RationalPolytope box(const QVec& lo, const QVec& hi);

  std::size_t dim() const { return dim_; }
  bool is_empty() const { return vertices_.empty(); }
  std::size_t affine_dimension() const { return aff_dim_; }
  bool is_full_dimensional() const { return !is_empty() && aff_dim_ == dim_; }
  bool is_rational() const { return rational_; }

  const std::vector<LHalfspace>& hrep() const { return hrep_; }
  std::vector<QHalfspace> rational_hrep() const;
  const std::vector<std::vector<LogRational>>& vertices() const { return vertices_; }
  std::vector<QVec> rational_vertices() const;
  // Tight constraint indices (into hrep()) per vertex, sorted.
  const std::vector<std::vector<std::size_t>>& vertex_tight_sets() const { return tight_; }

  bool contains(const QVec& x) const;
  bool contains(const std::vector<LogRational>& x) const;
  bool contains(const RationalPolytope& other) const;

  // Rational interior point of the relative interior (vertex barycentre); rational polytopes only.
  QVec relative_interior_point() const;
  std::vector<std::vector<double>> double_vertices() const;

  // Faces given by the vertices tight on a set of constraints, as vertex-index lists.
  std::vector<std::size_t> face_vertices(const std::vector<std::size_t>& constraints) const;
  // Exact lattice triangulation of a rational polytope (vertex-index simplices).
  std::vector<std::vector<std::size_t>> triangulation() const;

  std::vector<DHalfspace> double_hrep() const;

 private:
  std::size_t dim_ = 0;
  std::size_t aff_dim_ = 0;
  bool rational_ = true;
  std::vector<LHalfspace> hrep_;
  std::vector<std::vector<LogRational>> vertices_;
  std::vector<std::vector<std::size_t>> tight_;
};

bool operator==(const RationalPolytope& a, const RationalPolytope& b);

// Lattice-normalised volume of P (full dimension: Lebesgue with covolume(Z^n)=1; otherwise with
// respect to the lattice of the affine hull's direction space). `face` selects the face cut out
// by the listed constraints of P.hrep().
Rational lattice_volume(const RationalPolytope& p, const std::optional<std::vector<std::size_t>>& face = std::nullopt);
double lattice_volume_numeric(const RationalPolytope& p);
// Lattice basis of the direction space of the affine hull of the given rational points.
QMat direction_lattice_basis(const std::vector<QVec>& pts, std::size_t dim);

// Integer points of l*P.
std::vector<QVec> lattice_points(const RationalPolytope& p, long scale);

RationalPolytope minkowski_sum(const RationalPolytope& a, const RationalPolytope& b);
RationalPolytope intersect(const RationalPolytope& a, const std::vector<LHalfspace>& extra);
RationalPolytope translate(const RationalPolytope& p, const QVec& shift);
// Image under x -> c + s (x - c).
RationalPolytope homothety(const RationalPolytope& p, const QVec& centre, const Rational& s);

// H-representation -> polytope with vertices; throws `unbounded`, returns empty marker if infeasible.
RationalPolytope dual_description(const RationalPolytope& p);

// LP helpers on rational H-representations.
bool is_bounded(const std::vector<QVec>& normals, std::size_t dim);
// Point maximising the minimum slack (Chebyshev-style centre with l_inf-normalised normals).
std::optional<std::pair<QVec, Rational>> chebyshev_center(const std::vector<QHalfspace>& hs, std::size_t dim);

}  // namespace toric
