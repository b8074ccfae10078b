#include "toric/geometry/fan.hpp"

#include <algorithm>
#include <set>

#include "toric/numerics/lp.hpp"

namespace toric {

std::vector<QVec> cone_facets(const std::vector<QVec>& gens, std::size_t dim) {
  std::vector<QVec> out;
  if (dim == 0) return out;
  if (rank(gens) < dim) fail(Errc::invalid_argument, "cone is not full-dimensional");
  std::set<QVec> seen;
  for_each_subset(gens.size(), dim - 1, [&](const std::vector<std::size_t>& sub) {
    QMat m;
    for (auto i : sub) m.push_back(gens[i]);
    if (rank(m) != dim - 1) return true;
    auto ns = nullspace(m, dim);
    QVec w = primitive(ns[0]);
    int side = 0;
    for (const auto& g : gens) {
      int s = dot(w, g).sign();
      if (s == 0) continue;
      if (side == 0) side = s;
      if (s != side) return true;
    }
    if (side == 0) return true;
    if (side < 0) w = Rational(-1) * w;
    if (seen.insert(w).second) out.push_back(w);
    return true;
  });
  return out;
}

std::vector<QVec> cone_rays(const std::vector<QVec>& normals, std::size_t dim) {
  std::vector<QVec> out;
  if (dim == 0) return out;
  std::set<QVec> seen;
  for_each_subset(normals.size(), dim - 1, [&](const std::vector<std::size_t>& sub) {
    QMat m;
    for (auto i : sub) m.push_back(normals[i]);
    if (rank(m) != dim - 1) return true;
    QVec w = primitive(nullspace(m, dim)[0]);
    for (int s : {1, -1}) {
      QVec c = Rational(s) * w;
      bool ok = true;
      for (const auto& a : normals) ok = ok && dot(a, c).sign() >= 0;
      if (ok && seen.insert(c).second) out.push_back(c);
    }
    return true;
  });
  return out;
}

bool cone_is_full_dimensional(const std::vector<QVec>& normals, std::size_t dim) {
  if (dim == 0) return true;
  // maximize t : -<a,u> + t <= 0, t <= 1, |u_i| <= 1
  QMat a;
  QVec b;
  for (const auto& n : normals) {
    QVec row(dim + 1);
    for (std::size_t i = 0; i < dim; ++i) row[i] = -n[i];
    row[dim] = 1;
    a.push_back(row);
    b.push_back(0);
  }
  for (std::size_t i = 0; i <= dim; ++i) {
    QVec e(dim + 1);
    e[i] = 1;
    a.push_back(e);
    b.push_back(1);
    if (i < dim) {
      a.push_back(Rational(-1) * e);
      b.push_back(1);
    }
  }
  QVec c(dim + 1);
  c[dim] = 1;
  auto r = lp_maximize(a, b, c);
  return r.status == LpStatus::optimal && r.value.sign() > 0;
}

namespace {

bool interiors_meet(const std::vector<QVec>& fa, const std::vector<QVec>& fb, std::size_t dim) {
  std::vector<QVec> all = fa;
  all.insert(all.end(), fb.begin(), fb.end());
  return cone_is_full_dimensional(all, dim);
}

// Rays of the smallest face of the cone (given by facets) containing all of `pts`.
std::vector<std::size_t> face_closure(const std::vector<QVec>& rays, const std::vector<std::size_t>& cone_rays_ids,
                                      const std::vector<QVec>& facets, const std::vector<QVec>& pts) {
  std::vector<QVec> on;
  for (const auto& a : facets) {
    bool all = true;
    for (const auto& p : pts) all = all && dot(a, p).is_zero();
    if (all) on.push_back(a);
  }
  std::vector<std::size_t> out;
  for (auto r : cone_rays_ids) {
    bool all = true;
    for (const auto& a : on) all = all && dot(a, rays[r]).is_zero();
    if (all) out.push_back(r);
  }
  return out;
}

}  // namespace

RationalFan RationalFan::make(std::size_t dim, std::vector<QVec> rays, std::vector<std::vector<std::size_t>> cones) {
  if (dim == 0) fail(Errc::construction_error, "fan dimension must be positive");
  for (const auto& r : rays) {
    if (r.size() != dim) fail(Errc::construction_error, "ray dimension mismatch");
    if (std::all_of(r.begin(), r.end(), [](const Rational& x) { return x.is_zero(); }))
      fail(Errc::construction_error, "zero ray");
    if (!is_integral(r) || primitive(r) != r) fail(Errc::construction_error, "ray " + str(r) + " is not primitive integral");
  }
  std::vector<bool> used(rays.size(), false);
  RationalFan f;
  f.dim_ = dim;
  for (auto& c : cones) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    std::vector<QVec> gens;
    for (auto i : c) {
      if (i >= rays.size()) fail(Errc::construction_error, "cone references missing ray " + std::to_string(i));
      used[i] = true;
      gens.push_back(rays[i]);
    }
    if (rank(gens) < dim) fail(Errc::construction_error, "maximal cone is not full-dimensional");
    auto facets = cone_facets(gens, dim);
    if (rank(facets) < dim) fail(Errc::construction_error, "maximal cone is not pointed");
    for (const auto& g : gens) {
      QMat tight;
      for (const auto& a : facets)
        if (dot(a, g).is_zero()) tight.push_back(a);
      if (rank(tight) + 1 != dim) fail(Errc::construction_error, "cone generator " + str(g) + " is not an extreme ray");
    }
    f.facets_.push_back(std::move(facets));
  }
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (!used[i]) fail(Errc::construction_error, "ray " + std::to_string(i) + " is in no cone");
  f.rays_ = std::move(rays);
  f.cones_ = std::move(cones);

  for (std::size_t s = 0; s < f.cones_.size(); ++s)
    for (std::size_t t = s + 1; t < f.cones_.size(); ++t) {
      if (interiors_meet(f.facets_[s], f.facets_[t], dim))
        fail(Errc::construction_error, "maximal cones " + std::to_string(s) + " and " + std::to_string(t) + " overlap");
      std::vector<std::size_t> common;
      std::set_intersection(f.cones_[s].begin(), f.cones_[s].end(), f.cones_[t].begin(), f.cones_[t].end(),
                            std::back_inserter(common));
      std::vector<QVec> both = f.facets_[s];
      both.insert(both.end(), f.facets_[t].begin(), f.facets_[t].end());
      for (const auto& r : cone_rays(both, dim)) {
        auto idx = f.ray_index(r);
        if (!idx || !std::binary_search(common.begin(), common.end(), *idx))
          fail(Errc::construction_error, "cones " + std::to_string(s) + ", " + std::to_string(t) +
                                             " do not meet in a common face");
      }
      std::vector<QVec> cp;
      for (auto i : common) cp.push_back(f.rays_[i]);
      if (face_closure(f.rays_, f.cones_[s], f.facets_[s], cp) != common ||
          face_closure(f.rays_, f.cones_[t], f.facets_[t], cp) != common)
        fail(Errc::construction_error, "cones " + std::to_string(s) + ", " + std::to_string(t) +
                                           " do not meet in a common face");
    }
  // Completeness: the cones tile the box [-1,1]^n.
  Rational total = 0;
  for (std::size_t s = 0; s < f.cones_.size(); ++s) {
    std::vector<QHalfspace> hs;
    for (const auto& a : f.facets_[s]) hs.push_back({a, 0});
    for (std::size_t i = 0; i < dim; ++i) {
      QVec e(dim);
      e[i] = 1;
      hs.push_back({e, -1});
      hs.push_back({Rational(-1) * e, -1});
    }
    total += lattice_volume(RationalPolytope::from_hrep(dim, hs));
  }
  Rational full = 1;
  for (std::size_t i = 0; i < dim; ++i) full *= 2;
  if (total != full) fail(Errc::construction_error, "fan is not complete");
  return f;
}

RationalFan RationalFan::projective_space(std::size_t n) {
  std::vector<QVec> rays;
  for (std::size_t i = 0; i < n; ++i) {
    QVec e(n);
    e[i] = 1;
    rays.push_back(e);
  }
  rays.push_back(QVec(n, Rational(-1)));
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) c.push_back(i);
    cones.push_back(c);
  }
  return make(n, rays, cones);
}

std::vector<QVec> RationalFan::generators(std::size_t cone) const {
  std::vector<QVec> g;
  for (auto i : cones_[cone]) g.push_back(rays_[i]);
  return g;
}

QVec RationalFan::interior_point(std::size_t cone) const {
  QVec u(dim_);
  for (auto i : cones_[cone]) u = u + rays_[i];
  return u;
}

bool RationalFan::cone_contains(std::size_t cone, const QVec& u) const {
  for (const auto& a : facets_[cone])
    if (dot(a, u).sign() < 0) return false;
  return true;
}

bool RationalFan::cone_contains(std::size_t cone, const double* u, double eps) const {
  for (const auto& a : facets_[cone]) {
    double s = 0;
    for (std::size_t i = 0; i < dim_; ++i) s += a[i].to_double() * u[i];
    if (s < -eps) return false;
  }
  return true;
}

std::size_t RationalFan::locate(const QVec& u) const {
  for (std::size_t c = 0; c < cones_.size(); ++c)
    if (cone_contains(c, u)) return c;
  fail(Errc::invalid_argument, "point not covered by fan");
}

std::size_t RationalFan::locate(const double* u) const {
  for (std::size_t c = 0; c < cones_.size(); ++c)
    if (cone_contains(c, u)) return c;
  for (std::size_t c = 0; c < cones_.size(); ++c)
    if (cone_contains(c, u, 1e-7)) return c;
  fail(Errc::invalid_argument, "point not covered by fan");
}

bool RationalFan::is_cone(const std::vector<std::size_t>& ids0) const {
  std::vector<std::size_t> ids = ids0;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (auto i : ids)
    if (i >= rays_.size()) return false;
  for (std::size_t c = 0; c < cones_.size(); ++c) {
    if (!std::includes(cones_[c].begin(), cones_[c].end(), ids.begin(), ids.end())) continue;
    std::vector<QVec> pts;
    for (auto i : ids) pts.push_back(rays_[i]);
    if (face_closure(rays_, cones_[c], facets_[c], pts) == ids) return true;
  }
  return false;
}

std::size_t RationalFan::containing_maximal_cone(const std::vector<std::size_t>& ids0) const {
  std::vector<std::size_t> ids = ids0;
  std::sort(ids.begin(), ids.end());
  for (std::size_t c = 0; c < cones_.size(); ++c)
    if (std::includes(cones_[c].begin(), cones_[c].end(), ids.begin(), ids.end())) return c;
  fail(Errc::invalid_argument, "rays do not lie in a common cone");
}

bool RationalFan::refines(const RationalFan& coarser) const {
  if (coarser.dim() != dim_) return false;
  for (std::size_t c = 0; c < cones_.size(); ++c) {
    bool found = false;
    for (std::size_t k = 0; k < coarser.size() && !found; ++k) {
      bool all = true;
      for (auto i : cones_[c]) all = all && coarser.cone_contains(k, rays_[i]);
      found = all;
    }
    if (!found) return false;
  }
  return true;
}

std::optional<std::size_t> RationalFan::ray_index(const QVec& r) const {
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (rays_[i] == r) return i;
  return std::nullopt;
}

bool operator==(const RationalFan& a, const RationalFan& b) {
  if (a.dim() != b.dim() || a.rays().size() != b.rays().size() || a.size() != b.size()) return false;
  auto cone_sets = [](const RationalFan& f) {
    std::set<std::set<QVec>> s;
    for (std::size_t c = 0; c < f.size(); ++c) {
      auto g = f.generators(c);
      s.insert(std::set<QVec>(g.begin(), g.end()));
    }
    return s;
  };
  return cone_sets(a) == cone_sets(b);
}

std::vector<std::vector<QVec>> vertex_normal_cones(const RationalPolytope& p) {
  std::vector<std::vector<QVec>> out;
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    std::vector<QVec> gens;
    for (auto j : p.vertex_tight_sets()[v]) gens.push_back(p.hrep()[j].normal);
    out.push_back(cone_facets(gens, p.dim()));
  }
  return out;
}

RationalFan normal_fan(const RationalPolytope& p) {
  if (!p.is_full_dimensional()) fail(Errc::not_full_dimensional, "normal fan needs a full-dimensional polytope");
  std::vector<QVec> rays;
  std::vector<std::size_t> ray_of(p.hrep().size());
  for (std::size_t j = 0; j < p.hrep().size(); ++j) {
    QVec r = primitive(p.hrep()[j].normal);
    auto it = std::find(rays.begin(), rays.end(), r);
    if (it == rays.end()) {
      ray_of[j] = rays.size();
      rays.push_back(r);
    } else {
      ray_of[j] = static_cast<std::size_t>(it - rays.begin());
    }
  }
  std::vector<std::vector<std::size_t>> cones;
  for (const auto& t : p.vertex_tight_sets()) {
    std::vector<std::size_t> c;
    for (auto j : t) c.push_back(ray_of[j]);
    cones.push_back(c);
  }
  return RationalFan::make(p.dim(), rays, cones);
}

RationalFan common_refinement(const RationalFan& a, const std::vector<std::vector<QVec>>& cones) {
  const std::size_t dim = a.dim();
  std::vector<QVec> rays;
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < a.size(); ++s)
    for (const auto& c : cones) {
      std::vector<QVec> normals = a.facets(s);
      normals.insert(normals.end(), c.begin(), c.end());
      if (!cone_is_full_dimensional(normals, dim)) continue;
      std::vector<std::size_t> ids;
      for (const auto& r : cone_rays(normals, dim)) {
        auto it = std::find(rays.begin(), rays.end(), r);
        if (it == rays.end()) {
          ids.push_back(rays.size());
          rays.push_back(r);
        } else {
          ids.push_back(static_cast<std::size_t>(it - rays.begin()));
        }
      }
      out.push_back(ids);
    }
  return RationalFan::make(dim, rays, out);
}

RationalFan common_refinement(const RationalFan& a, const RationalFan& b) {
  if (a.dim() != b.dim()) fail(Errc::invalid_argument, "fans of different dimension");
  std::vector<std::vector<QVec>> cones;
  for (std::size_t t = 0; t < b.size(); ++t) cones.push_back(b.facets(t));
  return common_refinement(a, cones);
}

VirtualSupportFunction::VirtualSupportFunction(RationalFan fan, std::vector<QVec> m) : fan_(std::move(fan)), m_(std::move(m)) {
  if (m_.size() != fan_.size()) fail(Errc::construction_error, "one defining vector per maximal cone required");
  for (const auto& v : m_)
    if (v.size() != fan_.dim()) fail(Errc::construction_error, "defining vector dimension mismatch");
  const auto& cones = fan_.maximal_cones();
  for (std::size_t s = 0; s < cones.size(); ++s)
    for (std::size_t t = s + 1; t < cones.size(); ++t) {
      std::vector<std::size_t> common;
      std::set_intersection(cones[s].begin(), cones[s].end(), cones[t].begin(), cones[t].end(),
                            std::back_inserter(common));
      for (auto r : common)
        if (dot(m_[s] - m_[t], fan_.rays()[r]) != 0)
          fail(Errc::construction_error, "defining vectors of cones " + std::to_string(s) + " and " +
                                             std::to_string(t) + " disagree on their common face");
    }
}

VirtualSupportFunction VirtualSupportFunction::from_ray_values(RationalFan fan, const QVec& values) {
  if (values.size() != fan.rays().size()) fail(Errc::construction_error, "one value per ray required");
  std::vector<QVec> m;
  for (std::size_t c = 0; c < fan.size(); ++c) {
    const auto& ids = fan.maximal_cones()[c];
    QMat a;
    QVec rhs;
    for (auto i : ids) {
      a.push_back(fan.rays()[i]);
      rhs.push_back(values[i]);
    }
    // Normal equations (A^T A) x = A^T b.
    const std::size_t n = fan.dim();
    QMat g(n, QVec(n));
    QVec r(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < a.size(); ++k) g[i][j] += a[k][i] * a[k][j];
      for (std::size_t k = 0; k < a.size(); ++k) r[i] += a[k][i] * rhs[k];
    }
    auto inv = inverse(g);
    QVec x(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) x[i] += (*inv)[i][j] * r[j];
    for (std::size_t k = 0; k < a.size(); ++k)
      if (dot(x, a[k]) != rhs[k]) fail(Errc::construction_error, "ray values are not linear on a cone");
    m.push_back(x);
  }
  return VirtualSupportFunction(std::move(fan), std::move(m));
}

Rational VirtualSupportFunction::operator()(const QVec& u) const { return dot(m_[fan_.locate(u)], u); }

double VirtualSupportFunction::evaluate(const double* u) const {
  std::size_t c = fan_.locate(u);
  double s = 0;
  for (std::size_t i = 0; i < dim(); ++i) s += m_[c][i].to_double() * u[i];
  return s;
}

Rational VirtualSupportFunction::at_ray(std::size_t j) const {
  const auto& r = fan_.rays()[j];
  for (std::size_t c = 0; c < fan_.size(); ++c)
    if (std::binary_search(fan_.maximal_cones()[c].begin(), fan_.maximal_cones()[c].end(), j)) return dot(m_[c], r);
  fail(Errc::invalid_argument, "ray not in fan");
}

VirtualSupportFunction::ConcavityWitness VirtualSupportFunction::concavity() const {
  for (std::size_t t = 0; t < fan_.size(); ++t)
    for (std::size_t s = 0; s < fan_.size(); ++s) {
      if (s == t) continue;
      for (auto r : fan_.maximal_cones()[t])
        if (dot(m_[s] - m_[t], fan_.rays()[r]).sign() < 0) return {false, s, t, fan_.rays()[r]};
    }
  return {};
}

VirtualSupportFunction::ConcavityWitness VirtualSupportFunction::strict_concavity() const {
  auto c = concavity();
  if (!c.holds) return c;
  for (std::size_t s = 0; s < fan_.size(); ++s) {
    QVec u = fan_.interior_point(s);
    for (std::size_t t = 0; t < fan_.size(); ++t)
      if (t != s && dot(m_[s] - m_[t], u).sign() >= 0) return {false, s, t, u};
  }
  return {};
}

RationalPolytope VirtualSupportFunction::delta() const {
  std::vector<QHalfspace> hs;
  for (std::size_t j = 0; j < fan_.rays().size(); ++j) hs.push_back({fan_.rays()[j], at_ray(j)});
  return RationalPolytope::from_hrep(dim(), hs);
}

VirtualSupportFunction VirtualSupportFunction::pullback(const RationalFan& finer) const {
  if (!finer.refines(fan_)) fail(Errc::not_a_refinement, "target fan does not refine the source fan");
  std::vector<QVec> m;
  for (std::size_t c = 0; c < finer.size(); ++c) {
    QVec u = finer.interior_point(c);
    m.push_back(m_[fan_.locate(u)]);
  }
  return VirtualSupportFunction(finer, std::move(m));
}

VirtualSupportFunction operator+(const VirtualSupportFunction& a, const VirtualSupportFunction& b) {
  if (!(a.fan() == b.fan())) fail(Errc::incomparable_fans, "sum of virtual support functions on different fans");
  std::vector<QVec> m;
  for (std::size_t c = 0; c < a.fan().size(); ++c) {
    QVec u = a.fan().interior_point(c);
    m.push_back(a.m_[c] + b.m_[b.fan().locate(u)]);
  }
  return VirtualSupportFunction(a.fan(), std::move(m));
}

VirtualSupportFunction operator*(const Rational& s, const VirtualSupportFunction& a) {
  std::vector<QVec> m;
  for (const auto& v : a.m_) m.push_back(s * v);
  return VirtualSupportFunction(a.fan(), std::move(m));
}

bool operator==(const VirtualSupportFunction& a, const VirtualSupportFunction& b) {
  if (!(a.fan() == b.fan())) return false;
  for (std::size_t j = 0; j < a.fan().rays().size(); ++j) {
    auto idx = b.fan().ray_index(a.fan().rays()[j]);
    if (!idx || a.at_ray(j) != b.at_ray(*idx)) return false;
  }
  return true;
}

VirtualSupportFunction support_function(const RationalPolytope& p, const RationalFan& fan) {
  if (p.is_empty()) fail(Errc::empty_polytope, "support function of an empty polytope");
  auto verts = p.rational_vertices();
  std::vector<QVec> m;
  for (std::size_t c = 0; c < fan.size(); ++c) {
    QVec u = fan.interior_point(c);
    std::size_t best = 0;
    Rational bv = dot(verts[0], u);
    bool unique = true;
    for (std::size_t k = 1; k < verts.size(); ++k) {
      Rational v = dot(verts[k], u);
      if (v < bv) {
        bv = v;
        best = k;
        unique = true;
      } else if (v == bv) {
        unique = false;
      }
    }
    if (!unique) fail(Errc::not_a_refinement, "fan does not refine the normal fan of the polytope");
    m.push_back(verts[best]);
  }
  return VirtualSupportFunction(fan, std::move(m));
}

}  // namespace toric
