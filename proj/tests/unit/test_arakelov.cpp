#include <doctest.h>

#include <cmath>

#include "toric/arakelov/arakelov.hpp"
#include "toric/io/examples.hpp"

using namespace toric;
using namespace toric::examples;

namespace {

LogRational half_log(long q) { return LogRational::log_of(q) * Rational(1, 2); }

ToricMetrizedRDivisor p1_theta(std::map<std::string, ConcavePA> th) {
  return theta_divisor(pn_hyperplane(1), std::move(th));
}

ConcavePA affine(const QVec& slope, Rational c) {
  return ConcavePA(slope.size(), {AffineForm{slope, LogRational(c)}});
}

// ϑ = (1/4 - x_1) + log 2 · ψ_2^∨: zero level crosses cells of slope direction irrational over Q.
ToricMetrizedRDivisor log_sloped() {
  ConcavePA f(2, {{{0, 0}, LogRational(0)},
                  {{1, 0}, LogRational(0)},
                  {{0, 1}, LogRational(0)},
                  {{Rational(1, 3), Rational(1, 3)}, LogRational(Rational(-1, 2))}});
  std::map<std::string, MetricSpec> m;
  m["2"] = MetricSpec::psi_mode(GeneralPA::from_concave(f));
  m["inf"] = MetricSpec::theta_mode(affine({-1, 0}, Rational(1, 4)));
  return ToricMetrizedRDivisor::make(pn_hyperplane(2), PlaceTable::rationals(), m);
}

}  // namespace

TEST_CASE("volumes") {
  auto can = canonical_pn(2);
  CHECK(geometric_volume(can) == Rational(1));
  auto v0 = arithmetic_volumes(can);
  CHECK(v0.vol_hat.exact == LogRational(0));
  CHECK(v0.vol_chi.exact == LogRational(0));

  auto hp = halfplane_theta();
  auto v = arithmetic_volumes(hp);
  REQUIRE(v.vol_hat.exact);
  CHECK(*v.vol_hat.exact == LogRational(Rational(1, 4)));
  // 3! ∫_Δ (1 - 2(x+y)) = -1
  CHECK(*v.vol_chi.exact == LogRational(-1));

  auto f11 = arithmetic_volumes(fubini_study({1, 1}));
  CHECK(std::abs(f11.vol_hat.value - 0.5) < 1e-8);
  CHECK(std::abs(f11.vol_chi.value - 0.5) < 1e-8);

  auto f234 = arithmetic_volumes(fubini_study({2, 3, 4}));
  double chi = 0.5 * (std::log(24.0) + 2.5);
  CHECK(std::abs(f234.vol_chi.value - chi) < 1e-5);
  CHECK(fubini_study_chi_volume({2, 3, 4}).to_double() == doctest::Approx(chi).epsilon(1e-14));
  CHECK(f234.vol_chi.value <= f234.vol_hat.value + 1e-9);

  // 2 x hyperplane on P^1: Delta = [0,2], geometric volume 2
  CHECK(geometric_volume(ToricMetrizedRDivisor::canonical(pn_hyperplane(1, 2))) == Rational(2));
}

TEST_CASE("heights of orbit closures") {
  auto f23 = fubini_study({2, 3});
  // fixed point of the cone spanned by e_1: F = {0}, height = ϑ(0) = 1/2 log 2
  auto h0 = height(f23, {0});
  REQUIRE(h0.exact);
  CHECK(*h0.exact == half_log(2));
  auto h1 = height(f23, {1});
  CHECK(*h1.exact == half_log(3));
  // whole variety: the χ-volume (semipositive)
  auto hx = height(f23, {});
  CHECK(std::abs(hx.value - arithmetic_volumes(f23).vol_chi.value) < 1e-8);
  CHECK(height(canonical_pn(2), {0}).exact == LogRational(0));
  auto hp = height(halfplane_theta(), {0, 1});
  CHECK(*hp.exact == LogRational(1));  // 1! ... 0-dim face (0,0): (0+1)! ϑ(0,0)
  CHECK(face_of_cone(halfplane_theta(), {0}).affine_dimension() == 1);
}

TEST_CASE("positivity classification") {
  auto f = classify(fubini_study({Rational(1, 2), 1, Rational(3, 2)}));
  CHECK(f.big.value == Tri::yes);
  CHECK(f.pseudo_effective.value == Tri::yes);
  CHECK(f.nef.value == Tri::no);
  CHECK(f.ample.value == Tri::no);
  CHECK(f.effective.value == Tri::no);
  CHECK(f.consistent());

  auto c = classify(canonical_pn(2));
  CHECK(c.nef.value == Tri::yes);
  CHECK(c.ample.value == Tri::no);
  CHECK(c.big.value == Tri::no);
  CHECK(c.pseudo_effective.value == Tri::yes);
  CHECK(c.effective.value == Tri::yes);

  auto h = classify(halfplane_theta());
  CHECK(h.nef.value == Tri::no);
  CHECK(h.big.value == Tri::yes);
  CHECK(h.effective.value == Tri::yes);

  auto a = classify(fubini_study({2, 2, 2}));
  CHECK(a.ample.value == Tri::yes);
  CHECK(a.nef.value == Tri::yes);

  // boundary: α = (1, 1) is nef, not ample, but big and effective
  auto b = classify(fubini_study({1, 1}));
  CHECK(b.nef.value == Tri::yes);
  CHECK(b.ample.value == Tri::no);
  CHECK(b.big.value == Tri::yes);
  CHECK(b.effective.value == Tri::yes);

  // Δ empty: every flag false
  auto e = ToricMetrizedRDivisor::canonical(
      VirtualSupportFunction::from_ray_values(RationalFan::projective_space(1), {1, 1}));
  auto er = classify(e);
  CHECK(er.pseudo_effective.value == Tri::no);
  CHECK(er.effective.value == Tri::no);
}

TEST_CASE("theta region") {
  auto can = theta_region(canonical_pn(2));
  CHECK(can.quasi_rational == Tri::yes);
  CHECK(*can.polytope == RationalPolytope::standard_simplex(2));

  auto hp = theta_region(halfplane_theta());
  CHECK(hp.quasi_rational == Tri::yes);
  CHECK(*hp.polytope == RationalPolytope::from_vertices(2, {{0, 0}, {Rational(1, 2), 0}, {0, Rational(1, 2)}}));
  CHECK(hp.contains({0.2, 0.2}));
  CHECK_FALSE(hp.contains({0.3, 0.3}));

  // All vertex values of fs(2,3,4) are positive, so Θ = Δ.
  auto f234 = theta_region(fubini_study({2, 3, 4}));
  CHECK(f234.quasi_rational == Tri::yes);
  CHECK(*f234.polytope == RationalPolytope::standard_simplex(2));

  auto half = theta_region(fubini_study({Rational(1, 2), Rational(1, 2), Rational(1, 2)}));
  CHECK(half.quasi_rational == Tri::no);
  CHECK(half.boundary.size() > 10);
  CHECK(half.contains({1.0 / 3, 1.0 / 3}));
  CHECK_FALSE(half.contains({0.0, 0.0}));

  auto ls = theta_region(log_sloped());
  CHECK(ls.quasi_rational == Tri::no);
  CHECK_FALSE(ls.polytope);

  auto one = theta_region(fubini_study({Rational(1, 2), Rational(1, 2)}));
  CHECK(one.quasi_rational == Tri::yes);

  // max < 0
  auto neg = theta_region(p1_theta({{"inf", affine({0}, -1)}}));
  CHECK(neg.empty);

}

TEST_CASE("zariski decomposition") {
  auto z = zariski(halfplane_theta());
  CHECK_FALSE(z.refused);
  CHECK(z.strong);
  CHECK(z.nef_verified.value == Tri::yes);
  CHECK(z.effective_verified.value == Tri::yes);
  REQUIRE(z.vol_nef->exact);
  CHECK(*z.vol_nef->exact == LogRational(Rational(1, 4)));
  CHECK(z.volumes_equal);
  CHECK(z.nef_part->delta() == *z.theta.polytope);

  auto can = canonical_pn(2);
  auto zc = zariski(can);
  CHECK(zc.nef_part->psi() == can.psi());
  CHECK(zc.volumes_equal);
  CHECK(zc.effective_verified.value == Tri::yes);

  auto zr = zariski(fubini_study({Rational(1, 2), Rational(1, 2), Rational(1, 2)}));
  CHECK(zr.refused);
  CHECK(zr.theta.quasi_rational == Tri::no);

  CHECK(zariski(log_sloped()).refused);

  CHECK_THROWS_AS(zariski(p1_theta({{"inf", affine({0}, -1)}})), Error);
}

TEST_CASE("fujita approximation") {
  for (double eps : {0.05, 0.01}) {
    auto f = fujita(halfplane_theta(), eps);
    CHECK(f.ample_verified.value == Tri::yes);
    CHECK(f.effective_verified.value == Tri::yes);
    CHECK(f.volume_ok);
    REQUIRE(f.vol_ample.exact);
    CHECK(f.vol_ample.exact->to_double() >= 0.25 - eps);
  }
  auto f = fujita(fubini_study({3, 3, 3}), 0.05);
  CHECK(f.ample_verified.value == Tri::yes);
  CHECK(f.effective_verified.value == Tri::yes);
  CHECK(f.volume_ok);
  // big but Θ curved: inscribed polygon
  auto g = fujita(fubini_study({Rational(1, 2), Rational(1, 2), Rational(1, 2)}), 0.05);
  CHECK(g.ample_verified.value == Tri::yes);
  CHECK(g.effective_verified.value == Tri::yes);
  auto h = fujita(log_sloped(), 0.05);
  CHECK(h.ample_verified.value == Tri::yes);
  CHECK(h.effective_verified.value == Tri::yes);
  CHECK(h.volume_ok);
  CHECK_THROWS_AS(fujita(canonical_pn(2), 0.1), Error);

  // On the blow-up of P^2 at a fixed point the shrunk Θ gets a small fan-polytope summand.
  auto blowup = RationalFan::make(2, {{1, 0}, {0, 1}, {-1, -1}, {1, 1}}, {{0, 3}, {3, 1}, {1, 2}, {2, 0}});
  auto b = fujita(pullback(halfplane_theta(), blowup), 0.01);
  CHECK(b.delta > 0);
  CHECK(b.refined_fan.refines(blowup));
  CHECK(b.ample_verified.value == Tri::yes);
  CHECK(b.effective_verified.value == Tri::yes);
  CHECK(b.volume_ok);
}

TEST_CASE("dirichlet certificates") {
  auto c0 = dirichlet_certificate(canonical_pn(2), {0, 0});
  CHECK(c0.beta.empty());
  CHECK(c0.effective.value == Tri::yes);

  auto d1 = p1_theta({{"inf", affine({1}, Rational(-1, 2))}});
  auto c1 = dirichlet_certificate(d1, {Rational(1, 2)});
  CHECK(c1.gamma.at("inf") == LogRational(0));
  CHECK(c1.effective.value == Tri::yes);
  CHECK(*local_roof(*c1.shifted, "inf").exact_value({0}) == LogRational(0));
  CHECK_THROWS_AS(dirichlet_certificate(d1, {0}), Error);

  auto d2 = p1_theta({{"2", affine({Rational(1, 2)}, 0)}, {"inf", affine({0}, Rational(-1, 8))}});
  auto c2 = dirichlet_certificate(d2, {Rational(1, 2)});
  CHECK(c2.gamma.at("2") == LogRational(Rational(1, 4)));
  CHECK(c2.gamma.at("inf") == LogRational(Rational(-1, 4)));
  CHECK_FALSE(c2.beta.at(2).exact);
  CHECK(c2.beta.at(2).value == doctest::Approx(-0.25 / std::log(2.0)));
  CHECK(*local_roof(*c2.shifted, "inf").exact_value({0}) == LogRational(Rational(1, 8)));
  CHECK(c2.effective.value == Tri::yes);
}

TEST_CASE("arithmetic multiplicity") {
  auto hp = halfplane_theta();
  CHECK(arithmetic_multiplicity(hp, {1, 1}) == LogRational(0));
  CHECK(arithmetic_multiplicity(hp, {-1, -1}) == LogRational(Rational(1, 2)));
  CHECK(arithmetic_multiplicity(canonical_pn(2), {-1, 2}) == LogRational(0));
  CHECK_THROWS_AS(arithmetic_multiplicity(p1_theta({{"inf", affine({0}, -1)}}), {1}), Error);
}

TEST_CASE("lattice-sum oracle") {
  auto s = lattice_sum_oracle(fubini_study({1, 1}), 400);
  CHECK(std::abs(s.vol_hat - 0.5) < 1e-2);
  auto t = lattice_sum_oracle(halfplane_theta(), 200);
  CHECK(std::abs(t.vol_hat - 0.25) < 2e-2);
  CHECK(lattice_sum_oracle(canonical_pn(2), 50).vol_hat == 0);
  auto tab = compare_oracle(fubini_study({1, 1}), {50, 100, 200});
  CHECK(tab.rows.size() == 3);
  CHECK(tab.rows[2].gap <= tab.rows[0].gap + 1e-12);
}
