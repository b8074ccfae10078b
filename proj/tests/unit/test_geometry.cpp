#include "doctest.h"
#include "toric/error.hpp"
#include "toric/geometry/fan.hpp"

using namespace toric;

namespace {

RationalPolytope half_simplex() {
  return RationalPolytope::from_hrep(2, std::vector<QHalfspace>{{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, Rational(-1, 2)}});
}

RationalFan p1xp1() {
  return RationalFan::make(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

}  // namespace

TEST_CASE("dual description") {
  auto d2 = RationalPolytope::standard_simplex(2);
  CHECK(d2.rational_vertices() == std::vector<QVec>{{0, 0}, {0, 1}, {1, 0}});
  CHECK(d2.hrep().size() == 3);
  auto sq = RationalPolytope::from_vertices(2, {{0, 0}, {2, 0}, {0, 2}, {2, 2}});
  CHECK(sq.hrep().size() == 4);
  CHECK(sq == RationalPolytope::box({0, 0}, {2, 2}));
  CHECK_THROWS_AS(RationalPolytope::from_hrep(2, std::vector<QHalfspace>{{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 3}}), Error);
  try {
    RationalPolytope::from_hrep(2, std::vector<QHalfspace>{{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 3}});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unbounded);
  }
  auto empty = RationalPolytope::from_hrep(1, std::vector<QHalfspace>{{{1}, 1}, {{-1}, 0}});
  CHECK(empty.is_empty());
  // Redundant constraint removed.
  auto red = RationalPolytope::from_hrep(2, std::vector<QHalfspace>{{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, -1}, {{-1, 0}, -5}});
  CHECK(red.hrep().size() == 3);
}

TEST_CASE("lower-dimensional polytopes") {
  auto seg = RationalPolytope::from_vertices(2, {{0, 0}, {1, 0}});
  CHECK(seg.affine_dimension() == 1);
  CHECK(lattice_volume(seg) == Rational(1));
  auto diag = RationalPolytope::from_vertices(2, {{1, 0}, {0, 1}});
  CHECK(lattice_volume(diag) == Rational(1));
  auto pt = RationalPolytope::from_vertices(3, {{Rational(1, 2), 0, 1}});
  CHECK(pt.affine_dimension() == 0);
  CHECK(lattice_volume(pt) == Rational(1));
}

TEST_CASE("lattice volumes") {
  auto d2 = RationalPolytope::standard_simplex(2);
  CHECK(lattice_volume(d2) == Rational(1, 2));
  // Edge from (1,0) to (0,1): the constraint x1 + x2 <= 1.
  std::size_t edge = 0;
  for (std::size_t j = 0; j < d2.hrep().size(); ++j)
    if (d2.hrep()[j].normal == QVec{-1, -1}) edge = j;
  CHECK(lattice_volume(d2, std::vector<std::size_t>{edge}) == Rational(1));
  CHECK(lattice_volume(RationalPolytope::box({0, 0}, {2, 3})) == Rational(6));
  CHECK(lattice_volume(RationalPolytope::standard_simplex(3)) == Rational(1, 6));
}

TEST_CASE("lattice points and Ehrhart counts") {
  auto d2 = RationalPolytope::standard_simplex(2);
  CHECK(lattice_points(d2, 1).size() == 3);
  CHECK(lattice_points(d2, 2).size() == 6);
  CHECK(lattice_points(half_simplex(), 4).size() == 6);
  for (long l = 1; l <= 50; ++l) CHECK(lattice_points(d2, l).size() == static_cast<std::size_t>((l + 1) * (l + 2) / 2));
}

TEST_CASE("fans") {
  auto p2 = RationalFan::projective_space(2);
  CHECK(p2.size() == 3);
  CHECK(normal_fan(RationalPolytope::standard_simplex(2)) == p2);
  CHECK(normal_fan(RationalPolytope::box({0, 0}, {1, 1})) == p1xp1());
  try {
    normal_fan(RationalPolytope::from_vertices(2, {{0, 0}, {1, 0}}));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_full_dimensional);
  }
  CHECK(common_refinement(p2, p2) == p2);
  auto r = common_refinement(p2, p1xp1());
  CHECK(r.rays().size() == 5);
  CHECK(r.size() == 5);
  CHECK(r.refines(p2));
  CHECK(r.refines(p1xp1()));
  CHECK(!p2.refines(r));
  // Overlapping cones rejected; incomplete fans rejected.
  CHECK_THROWS_AS(RationalFan::make(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}}), Error);
  CHECK_THROWS_AS(RationalFan::make(2, {{1, 0}, {0, 1}, {-1, -1}, {1, 1}}, {{0, 1}, {1, 2}, {2, 0}, {0, 3}}), Error);
  CHECK(p2.is_cone({0}));
  CHECK(p2.is_cone({}));
  CHECK(p2.is_cone({0, 1}));
}

TEST_CASE("virtual support functions") {
  auto p2 = RationalFan::projective_space(2);
  auto psi = VirtualSupportFunction::from_ray_values(p2, {0, 0, -1});
  CHECK(psi.is_concave());
  CHECK(psi.is_strictly_concave());
  CHECK(psi.delta() == RationalPolytope::standard_simplex(2));
  CHECK(psi(QVec{-1, 2}) == Rational(-1));
  auto p1 = RationalFan::projective_space(1);
  // min(u, 2u): value 1 at +1, -2 at -1.
  auto m = VirtualSupportFunction::from_ray_values(p1, {1, -2});
  CHECK(m.delta() == RationalPolytope::from_vertices(1, {{1}, {2}}));
  auto absu = VirtualSupportFunction::from_ray_values(p1, {1, 1});
  CHECK(absu.delta().is_empty());
  CHECK(!absu.is_concave());
  CHECK_THROWS_AS(VirtualSupportFunction(p2, {{0, 0}, {1, 0}, {0, 0}}), Error);
  // Linearity and compatibility.
  auto sum = psi + Rational(2) * psi;
  CHECK(sum == Rational(3) * psi);
}

TEST_CASE("support function round trip") {
  auto polys = {RationalPolytope::standard_simplex(2), RationalPolytope::box({0, 0}, {1, 2}), half_simplex(),
                RationalPolytope::from_vertices(2, {{0, 0}, {2, 0}, {0, 1}, {1, 1}})};
  for (const auto& p : polys) {
    auto f = normal_fan(p);
    auto psi = support_function(p, f);
    CHECK(psi.is_strictly_concave());
    CHECK(psi.delta() == p);
    // Pullback to a refinement does not change the stability set.
    auto r = common_refinement(f, RationalFan::projective_space(2));
    CHECK(psi.pullback(r).delta() == p);
  }
}

TEST_CASE("polytope operations") {
  auto d2 = RationalPolytope::standard_simplex(2);
  auto twice = minkowski_sum(d2, d2);
  CHECK(twice == RationalPolytope::from_vertices(2, {{0, 0}, {2, 0}, {0, 2}}));
  CHECK(homothety(d2, {0, 0}, Rational(1, 2)) == half_simplex());
  CHECK(translate(d2, {1, 1}).contains(QVec{2, 1}));
  auto c = chebyshev_center(d2.rational_hrep(), 2);
  REQUIRE(c);
  CHECK(c->second.sign() > 0);
  auto tri = d2.triangulation();
  CHECK(tri.size() == 1);
  CHECK(RationalPolytope::box({0, 0, 0}, {1, 1, 1}).triangulation().size() >= 5);
  // Quasi-rational polytope with log offsets.
  std::vector<LHalfspace> hs{{{1}, LogRational(0)}, {{-1}, -LogRational::log_prime(2)}};
  auto q = RationalPolytope::from_hrep(1, hs);
  CHECK(!q.is_rational());
  CHECK(q.contains(QVec{Rational(69, 100)}));
  CHECK(!q.contains(QVec{Rational(70, 100)}));
  CHECK(lattice_points(q, 10).size() == 7);
}
