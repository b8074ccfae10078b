#include "toric/geometry/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "toric/numerics/lp.hpp"

namespace toric {

namespace {

// Scale each normal so its first nonzero entry is +-1 and keep the tightest offset per direction.
std::vector<LHalfspace> dedupe(std::vector<LHalfspace> hs) {
  std::map<QVec, std::size_t> at;
  std::vector<LHalfspace> out;
  for (auto& h : hs) {
    auto it = std::find_if(h.normal.begin(), h.normal.end(), [](const Rational& x) { return !x.is_zero(); });
    if (it != h.normal.end()) {
      Rational s = it->abs();
      if (s != 1) {
        for (auto& x : h.normal) x /= s;
        h.offset = h.offset * (Rational(1) / s);
      }
    }
    auto [pos, fresh] = at.emplace(h.normal, out.size());
    if (fresh) out.push_back(std::move(h));
    else if (sign_of(h.offset - out[pos->second].offset) > 0) out[pos->second].offset = h.offset;
  }
  return out;
}

QMat normals_of(const std::vector<LHalfspace>& hs) {
  QMat n;
  for (const auto& h : hs) n.push_back(h.normal);
  return n;
}

bool all_rational(const std::vector<LHalfspace>& hs) {
  for (const auto& h : hs)
    if (!h.offset.is_rational()) return false;
  return true;
}

std::vector<VertexInfo<LogRational>> vertices_of(const std::vector<LHalfspace>& hs, std::size_t dim) {
  if (all_rational(hs)) {
    std::vector<QHalfspace> q;
    for (const auto& h : hs) q.push_back({h.normal, h.offset.rational_part()});
    auto vq = enumerate_vertices(q, dim);
    std::vector<VertexInfo<LogRational>> out;
    for (auto& v : vq) {
      VertexInfo<LogRational> w;
      for (auto& x : v.point) w.point.emplace_back(x);
      w.tight = std::move(v.tight);
      out.push_back(std::move(w));
    }
    return out;
  }
  return enumerate_vertices(hs, dim);
}

}  // namespace

bool is_bounded(const std::vector<QVec>& normals, std::size_t dim) {
  if (dim == 0) return true;
  if (rank(normals) < dim) return false;
  QMat a;
  QVec b;
  for (const auto& u : normals) {
    a.push_back(Rational(-1) * u);
    b.push_back(0);
  }
  for (std::size_t k = 0; k < dim; ++k) {
    QVec e(dim);
    e[k] = 1;
    a.push_back(e);
    b.push_back(1);
    a.push_back(Rational(-1) * e);
    b.push_back(1);
  }
  for (std::size_t i = 0; i < dim; ++i)
    for (int s : {1, -1}) {
      QVec c(dim);
      c[i] = s;
      auto r = lp_maximize(a, b, c);
      if (r.status == LpStatus::optimal && r.value.sign() > 0) return false;
    }
  return true;
}

RationalPolytope RationalPolytope::empty(std::size_t dim) {
  RationalPolytope p;
  p.dim_ = dim;
  return p;
}

RationalPolytope RationalPolytope::from_hrep(std::size_t dim, const std::vector<QHalfspace>& hs) {
  std::vector<LHalfspace> l;
  for (const auto& h : hs) l.push_back({h.normal, LogRational(h.offset)});
  return from_hrep(dim, std::move(l));
}

RationalPolytope RationalPolytope::from_hrep(std::size_t dim, std::vector<LHalfspace> hs) {
  for (const auto& h : hs)
    if (h.normal.size() != dim) fail(Errc::invalid_argument, "halfspace dimension mismatch");
  hs = dedupe(std::move(hs));
  QMat normals = normals_of(hs);
  if (!is_bounded(normals, dim)) {
    // Decide emptiness on the pointed part before reporting unboundedness.
    std::vector<LHalfspace> pointed = hs;
    for (const auto& l : nullspace(normals, dim)) {
      pointed.push_back({l, LogRational(0)});
      pointed.push_back({Rational(-1) * l, LogRational(0)});
    }
    if (vertices_of(pointed, dim).empty()) return empty(dim);
    fail(Errc::unbounded, "H-representation describes an unbounded polyhedron");
  }
  auto verts = vertices_of(hs, dim);
  if (verts.empty()) return empty(dim);

  // Implicit equalities: constraints tight at every vertex.
  std::vector<std::size_t> always;
  for (std::size_t j = 0; j < hs.size(); ++j) {
    bool all = true;
    for (const auto& v : verts) all = all && std::binary_search(v.tight.begin(), v.tight.end(), j);
    if (all) always.push_back(j);
  }
  QMat eq_normals;
  for (auto j : always) eq_normals.push_back(hs[j].normal);
  const std::size_t eq_rank = rank(eq_normals);

  RationalPolytope p;
  p.dim_ = dim;
  p.aff_dim_ = dim - eq_rank;
  std::vector<LHalfspace> kept;
  for (auto r : independent_rows(eq_normals)) {
    const auto& h = hs[always[r]];
    kept.push_back(h);
    kept.push_back({Rational(-1) * h.normal, -h.offset});
  }
  if (p.aff_dim_ > 0) {
    std::vector<std::vector<std::size_t>> seen;
    for (std::size_t j = 0; j < hs.size(); ++j) {
      if (std::binary_search(always.begin(), always.end(), j)) continue;
      std::vector<std::size_t> fv;
      for (std::size_t v = 0; v < verts.size(); ++v)
        if (std::binary_search(verts[v].tight.begin(), verts[v].tight.end(), j)) fv.push_back(v);
      if (fv.empty()) continue;
      if (std::find(seen.begin(), seen.end(), fv) != seen.end()) continue;
      // dim(face) = dim - rank(normals of constraints tight on the whole face)
      QMat face_normals;
      for (std::size_t k = 0; k < hs.size(); ++k) {
        bool all = true;
        for (auto v : fv) all = all && std::binary_search(verts[v].tight.begin(), verts[v].tight.end(), k);
        if (all) face_normals.push_back(hs[k].normal);
      }
      if (dim - rank(face_normals) + 1 != p.aff_dim_) continue;
      seen.push_back(fv);
      kept.push_back(hs[j]);
    }
  }
  p.hrep_ = std::move(kept);
  for (auto& h : p.hrep_) p.rational_ = p.rational_ && h.offset.is_rational();
  for (auto& v : verts) {
    std::vector<std::size_t> t;
    for (std::size_t j = 0; j < p.hrep_.size(); ++j)
      if (slack_sign(v.point, p.hrep_[j]) == 0) t.push_back(j);
    p.vertices_.push_back(std::move(v.point));
    p.tight_.push_back(std::move(t));
  }
  // Deterministic vertex order (lexicographic by value).
  std::vector<std::size_t> order(p.vertices_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    for (std::size_t k = 0; k < dim; ++k) {
      if (p.vertices_[a][k] == p.vertices_[b][k]) continue;
      return certified_compare(p.vertices_[a][k], p.vertices_[b][k]) < 0;
    }
    return false;
  });
  std::vector<std::vector<LogRational>> vs;
  std::vector<std::vector<std::size_t>> ts;
  for (auto i : order) {
    vs.push_back(std::move(p.vertices_[i]));
    ts.push_back(std::move(p.tight_[i]));
  }
  p.vertices_ = std::move(vs);
  p.tight_ = std::move(ts);
  return p;
}

RationalPolytope RationalPolytope::from_vertices(std::size_t dim, std::vector<QVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) return empty(dim);
  QMat diffs;
  for (std::size_t k = 1; k < pts.size(); ++k) diffs.push_back(pts[k] - pts[0]);
  const std::size_t d = rank(diffs);
  QMat eq = nullspace(diffs, dim);
  std::vector<QHalfspace> hs;
  for (const auto& w : eq) {
    QVec pw = primitive(w);
    hs.push_back({pw, dot(pw, pts[0])});
    hs.push_back({Rational(-1) * pw, -dot(pw, pts[0])});
  }
  if (d > 0) {
    std::vector<std::vector<std::size_t>> seen;
    for_each_subset(pts.size(), d, [&](const std::vector<std::size_t>& sub) {
      QMat sys = eq;
      for (std::size_t k = 1; k < sub.size(); ++k) sys.push_back(pts[sub[k]] - pts[sub[0]]);
      auto ns = nullspace(sys, dim);
      if (ns.size() != 1) return true;
      QVec nrm = primitive(ns[0]);
      Rational base = dot(nrm, pts[sub[0]]);
      int side = 0;
      std::vector<std::size_t> tight;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        int s = (dot(nrm, pts[i]) - base).sign();
        if (s == 0) {
          tight.push_back(i);
          continue;
        }
        if (side == 0) side = s;
        if (s != side) return true;
      }
      if (side == 0) return true;
      if (std::find(seen.begin(), seen.end(), tight) != seen.end()) return true;
      seen.push_back(tight);
      if (side < 0) {
        nrm = Rational(-1) * nrm;
        base = -base;
      }
      hs.push_back({nrm, base});
      return true;
    });
  }
  return from_hrep(dim, hs);
}

RationalPolytope RationalPolytope::standard_simplex(std::size_t dim) {
  std::vector<QVec> pts;
  pts.push_back(QVec(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    QVec e(dim);
    e[i] = 1;
    pts.push_back(e);
  }
  return from_vertices(dim, pts);
}

RationalPolytope RationalPolytope::box(const QVec& lo, const QVec& hi) {
  const std::size_t dim = lo.size();
  std::vector<QHalfspace> hs;
  for (std::size_t i = 0; i < dim; ++i) {
    QVec e(dim);
    e[i] = 1;
    hs.push_back({e, lo[i]});
    hs.push_back({Rational(-1) * e, -hi[i]});
  }
  return from_hrep(dim, hs);
}

std::vector<QHalfspace> RationalPolytope::rational_hrep() const {
  std::vector<QHalfspace> out;
  for (const auto& h : hrep_) {
    if (!h.offset.is_rational()) fail(Errc::invalid_argument, "polytope has irrational offsets");
    out.push_back({h.normal, h.offset.rational_part()});
  }
  return out;
}

std::vector<QVec> RationalPolytope::rational_vertices() const {
  std::vector<QVec> out;
  for (const auto& v : vertices_) {
    QVec q;
    for (const auto& x : v) {
      if (!x.is_rational()) fail(Errc::invalid_argument, "polytope has irrational vertices");
      q.push_back(x.rational_part());
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<std::vector<double>> RationalPolytope::double_vertices() const {
  std::vector<std::vector<double>> out;
  for (const auto& v : vertices_) {
    std::vector<double> d;
    for (const auto& x : v) d.push_back(x.to_double());
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<DHalfspace> RationalPolytope::double_hrep() const {
  std::vector<DHalfspace> out;
  for (const auto& h : hrep_) out.push_back({to_double(h.normal), h.offset.to_double()});
  return out;
}

bool RationalPolytope::contains(const QVec& x) const {
  if (is_empty()) return false;
  for (const auto& h : hrep_) {
    LogRational s = LogRational(dot(x, h.normal)) - h.offset;
    if (sign_of(s) < 0) return false;
  }
  return true;
}

bool RationalPolytope::contains(const std::vector<LogRational>& x) const {
  if (is_empty()) return false;
  for (const auto& h : hrep_)
    if (slack_sign(x, h) < 0) return false;
  return true;
}

bool RationalPolytope::contains(const RationalPolytope& other) const {
  if (other.is_empty()) return true;
  for (const auto& v : other.vertices())
    if (!contains(v)) return false;
  return true;
}

QVec RationalPolytope::relative_interior_point() const {
  if (is_empty()) fail(Errc::empty, "empty polytope has no interior point");
  auto vs = rational_vertices();
  QVec c(dim_);
  for (const auto& v : vs) c = c + v;
  return Rational(1, static_cast<long>(vs.size())) * c;
}

std::vector<std::size_t> RationalPolytope::face_vertices(const std::vector<std::size_t>& constraints) const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    bool all = true;
    for (auto c : constraints) all = all && std::binary_search(tight_[v].begin(), tight_[v].end(), c);
    if (all) out.push_back(v);
  }
  return out;
}

std::vector<std::vector<std::size_t>> RationalPolytope::triangulation() const {
  std::vector<std::vector<std::size_t>> out;
  if (is_empty()) return out;
  auto pts = rational_vertices();
  std::vector<std::size_t> ids(pts.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  pulling_triangulation(pts, tight_, hrep_.size(), ids, aff_dim_, out);
  return out;
}

bool operator==(const RationalPolytope& a, const RationalPolytope& b) {
  if (a.dim() != b.dim() || a.vertices().size() != b.vertices().size()) return false;
  if (a.vertices() == b.vertices()) return true;
  return a.contains(b) && b.contains(a);
}

QMat direction_lattice_basis(const std::vector<QVec>& pts, std::size_t dim) {
  QMat dirs;
  for (std::size_t k = 1; k < pts.size(); ++k) dirs.push_back(pts[k] - pts[0]);
  if (dirs.empty()) return {};
  if (rank(dirs) == dim) {
    QMat id(dim, QVec(dim));
    for (std::size_t i = 0; i < dim; ++i) id[i][i] = 1;
    return id;
  }
  return lattice_basis_of_span(dirs, dim);
}

Rational lattice_volume(const RationalPolytope& p, const std::optional<std::vector<std::size_t>>& face) {
  if (p.is_empty()) return 0;
  if (!p.is_rational()) fail(Errc::invalid_argument, "exact volume needs rational offsets; use the numeric path");
  auto pts = p.rational_vertices();
  std::vector<std::size_t> ids;
  if (face)
    ids = p.face_vertices(*face);
  else
    for (std::size_t i = 0; i < pts.size(); ++i) ids.push_back(i);
  if (ids.empty()) fail(Errc::invalid_argument, "face is empty");
  std::vector<QVec> fpts;
  for (auto i : ids) fpts.push_back(pts[i]);
  const std::size_t d = affine_dimension(pts, ids);
  QMat basis = direction_lattice_basis(fpts, p.dim());
  std::vector<std::vector<std::size_t>> simplices;
  pulling_triangulation(pts, p.vertex_tight_sets(), p.hrep().size(), ids, d, simplices);
  Rational vol = 0;
  for (const auto& s : simplices) {
    std::vector<QVec> vs;
    for (auto i : s) vs.push_back(pts[i]);
    vol += simplex_lattice_volume(vs, basis);
  }
  return vol;
}

double lattice_volume_numeric(const RationalPolytope& p) {
  if (p.is_rational()) return lattice_volume(p).to_double();
  auto hs = p.double_hrep();
  auto verts = enumerate_vertices(hs, p.dim());
  std::vector<std::vector<double>> pts;
  std::vector<std::vector<std::size_t>> tight;
  for (auto& v : verts) {
    pts.push_back(v.point);
    tight.push_back(v.tight);
  }
  if (pts.empty()) return 0;
  std::vector<std::size_t> ids(pts.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  if (p.affine_dimension() != p.dim()) fail(Errc::invalid_argument, "numeric volume only for full-dimensional polytopes");
  std::vector<std::vector<std::size_t>> simplices;
  pulling_triangulation(pts, tight, hs.size(), ids, p.dim(), simplices);
  double vol = 0;
  for (const auto& s : simplices) {
    std::vector<std::vector<double>> vs;
    for (auto i : s) vs.push_back(pts[i]);
    std::vector<std::vector<double>> m;
    for (std::size_t k = 1; k < vs.size(); ++k) {
      std::vector<double> r(p.dim());
      for (std::size_t i = 0; i < p.dim(); ++i) r[i] = vs[k][i] - vs[0][i];
      m.push_back(r);
    }
    // |det| / n!
    double det = 1;
    const std::size_t n = m.size();
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      for (std::size_t i = c + 1; i < n; ++i)
        if (std::abs(m[i][c]) > std::abs(m[piv][c])) piv = i;
      std::swap(m[piv], m[c]);
      if (m[c][c] == 0) {
        det = 0;
        break;
      }
      det *= m[c][c];
      for (std::size_t i = c + 1; i < n; ++i) {
        double f = m[i][c] / m[c][c];
        for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
      }
    }
    vol += std::abs(det) / factorial(n).to_double();
  }
  return vol;
}

std::vector<QVec> lattice_points(const RationalPolytope& p, long scale) {
  std::vector<QVec> out;
  if (p.is_empty()) return out;
  if (scale <= 0) fail(Errc::invalid_argument, "scale must be positive");
  const std::size_t n = p.dim();
  auto dv = p.double_vertices();
  std::vector<long> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    double a = dv[0][i], b = dv[0][i];
    for (const auto& v : dv) {
      a = std::min(a, v[i]);
      b = std::max(b, v[i]);
    }
    lo[i] = static_cast<long>(std::floor(a * static_cast<double>(scale))) - 1;
    hi[i] = static_cast<long>(std::ceil(b * static_cast<double>(scale))) + 1;
  }
  // Scaled constraints <x,u> >= scale * gamma.
  std::vector<LHalfspace> hs;
  bool rational = p.is_rational();
  std::vector<QHalfspace> qs;
  for (const auto& h : p.hrep()) {
    hs.push_back({h.normal, h.offset * Rational(scale)});
    if (rational) qs.push_back({h.normal, h.offset.rational_part() * Rational(scale)});
  }
  if (n == 0) return {QVec{}};
  std::vector<long> x = lo;
  QVec q(n);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) q[i] = Rational(x[i]);
    bool in = true;
    if (rational) {
      for (const auto& h : qs)
        if (dot(q, h.normal) < h.offset) {
          in = false;
          break;
        }
    } else {
      for (const auto& h : hs)
        if (sign_of(LogRational(dot(q, h.normal)) - h.offset) < 0) {
          in = false;
          break;
        }
    }
    if (in) out.push_back(q);
    std::size_t k = 0;
    while (k < n && x[k] == hi[k]) {
      x[k] = lo[k];
      ++k;
    }
    if (k == n) break;
    ++x[k];
  }
  std::sort(out.begin(), out.end());
  return out;
}

RationalPolytope minkowski_sum(const RationalPolytope& a, const RationalPolytope& b) {
  if (a.is_empty() || b.is_empty()) return RationalPolytope::empty(a.dim());
  std::vector<QVec> pts;
  for (const auto& x : a.rational_vertices())
    for (const auto& y : b.rational_vertices()) pts.push_back(x + y);
  return RationalPolytope::from_vertices(a.dim(), pts);
}

RationalPolytope intersect(const RationalPolytope& a, const std::vector<LHalfspace>& extra) {
  if (a.is_empty()) return a;
  auto hs = a.hrep();
  hs.insert(hs.end(), extra.begin(), extra.end());
  return RationalPolytope::from_hrep(a.dim(), hs);
}

RationalPolytope translate(const RationalPolytope& p, const QVec& shift) {
  if (p.is_empty()) return p;
  auto hs = p.hrep();
  for (auto& h : hs) h.offset += LogRational(dot(shift, h.normal));
  return RationalPolytope::from_hrep(p.dim(), hs);
}

RationalPolytope homothety(const RationalPolytope& p, const QVec& centre, const Rational& s) {
  if (s.sign() <= 0) fail(Errc::invalid_argument, "homothety factor must be positive");
  if (p.is_empty()) return p;
  auto hs = p.hrep();
  for (auto& h : hs) h.offset = h.offset * s + LogRational(dot(centre, h.normal) * (Rational(1) - s));
  return RationalPolytope::from_hrep(p.dim(), hs);
}

RationalPolytope dual_description(const RationalPolytope& p) { return p; }

std::optional<std::pair<QVec, Rational>> chebyshev_center(const std::vector<QHalfspace>& hs, std::size_t dim) {
  // maximize t : -<x,u_j> + t*|u_j|_1 <= -c_j, t <= 1
  QMat a;
  QVec b;
  for (const auto& h : hs) {
    QVec row(dim + 1);
    Rational w = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      row[i] = -h.normal[i];
      w += h.normal[i].abs();
    }
    row[dim] = w;
    a.push_back(row);
    b.push_back(-h.offset);
  }
  QVec tb(dim + 1);
  tb[dim] = 1;
  a.push_back(tb);
  b.push_back(1);
  QVec c(dim + 1);
  c[dim] = 1;
  auto r = lp_maximize(a, b, c);
  if (r.status != LpStatus::optimal) return std::nullopt;
  QVec x(r.x.begin(), r.x.begin() + static_cast<long>(dim));
  return std::make_pair(x, r.x[dim]);
}

}  // namespace toric
