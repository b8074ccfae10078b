#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "random_pa.hpp"
#include "toric/convex/integrate.hpp"
#include "toric/error.hpp"

using namespace toric;
using namespace toric::testing;

namespace {

ConcavePA min_form(std::size_t n, std::vector<std::pair<QVec, Rational>> f) {
  std::vector<AffineForm> forms;
  for (auto& [m, c] : f) forms.push_back({m, LogRational(c)});
  return ConcavePA(n, forms);
}

ConcavePA simplex_support(const Rational& tau) {
  return min_form(2, {{{0, 0}, 0}, {{1, 0}, -tau}, {{0, 1}, -tau}});
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::invalid_argument;
}

double max_violation(const RationalPolytope& outer, const RationalPolytope& inner) {
  double worst = 0;
  for (const auto& v : inner.double_vertices())
    for (const auto& h : outer.double_hrep()) {
      double s = -h.offset;
      for (std::size_t i = 0; i < v.size(); ++i) s += h.normal[i] * v[i];
      worst = std::max(worst, -s);
    }
  return worst;
}

}  // namespace

TEST_CASE("stability sets") {
  auto psi = GeneralPA::from_concave(min_form(2, {{{0, 0}, 0}, {{1, 0}, 0}, {{0, 1}, 0}}));
  CHECK(stability_set(psi) == RationalPolytope::standard_simplex(2));
  auto lin = GeneralPA::from_concave(ConcavePA::linear({2, -1}));
  auto pt = stability_set(lin);
  CHECK(pt.affine_dimension() == 0);
  CHECK(pt.rational_vertices() == std::vector<QVec>{{2, -1}});
  auto abs = GeneralPA::make(1, {{{{{-1}, 0}}, {-1}, 0}, {{{{1}, 0}}, {1}, 0}});
  CHECK(stability_set(abs).is_empty());
  // Independent check for |u|: x*u - |u| is unbounded below for every x on a grid.
  for (int k = -30; k <= 30; ++k) {
    double x = k / 10.0;
    CHECK(std::min(x * 1e6 - 1e6, -x * 1e6 - 1e6) < -1e5);
  }
}

TEST_CASE("legendre dual examples") {
  auto f = GeneralPA::from_concave(min_form(1, {{{0}, 0}, {{1}, 0}}));
  auto d = legendre_dual(f, RationalPolytope::box({0}, {1}));
  for (int k = 0; k <= 8; ++k) CHECK(evaluate(d, QVec{Rational(k, 8)}) == LogRational(0));
  CHECK(code_of([&] { evaluate(d, QVec{Rational(3, 2)}); }) == Errc::not_in_stability_set);
  CHECK(code_of([&] { legendre_dual(f, RationalPolytope::box({0}, {2})); }) == Errc::not_in_stability_set);

  auto tent = GeneralPA::from_concave(min_form(1, {{{0}, 1}, {{-1}, 1}, {{1}, 1}}));
  auto td = legendre_dual(tent);
  CHECK(td.domain == RationalPolytope::box({-1}, {1}));
  double brute = 1e300;
  for (int k = -10000; k <= 10000; ++k) {
    double u = k * 1e-3;
    brute = std::min(brute, -std::min({1.0, 1 - u, 1 + u}));
  }
  CHECK(evaluate(td, QVec{0}).to_double() == doctest::Approx(brute).epsilon(1e-12));
  CHECK(evaluate(td, QVec{0}) == LogRational(-1));

  // Fubini-Study potential on P^1 through the numerical path.
  OracleFunction fs{1, [](const double* u) { return -0.5 * std::log1p(std::exp(-2 * u[0])); },
                    GeneralPA::from_concave(min_form(1, {{{0}, 0}, {{1}, 0}})), true};
  CHECK(legendre_dual_at(fs, {0.5}) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-9));
  CHECK(legendre_dual_at(fs, {0.25}) ==
        doctest::Approx(-0.5 * (0.25 * std::log(0.25) + 0.75 * std::log(0.75))).epsilon(1e-9));
  CHECK(code_of([&] { legendre_dual_at(fs, {1.5}); }) == Errc::not_in_stability_set);

  // Two-dimensional oracle: sum of two one-dimensional potentials.
  OracleFunction fs2{2,
                     [](const double* u) {
                       return -0.5 * std::log1p(std::exp(-2 * u[0])) - 0.5 * std::log1p(std::exp(-2 * u[1]));
                     },
                     GeneralPA::from_concave(min_form(2, {{{0, 0}, 0}, {{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 0}})), true};
  CHECK(legendre_dual_at(fs2, {0.5, 0.5}) == doctest::Approx(std::log(2.0)).epsilon(1e-7));
}

TEST_CASE("simplex support dual") {
  for (Rational tau : {Rational(0), Rational(1, 3), Rational(2)}) {
    auto d = legendre_dual(simplex_support(tau));
    CHECK(d.domain == RationalPolytope::standard_simplex(2));
    for (const auto& x : std::vector<QVec>{{0, 0}, {Rational(1, 3), Rational(1, 5)}, {0, 1}})
      CHECK(evaluate(d, x) == LogRational(tau * (x[0] + x[1])));
    CHECK(Rational(6) * integrate_pa(d).rational_part() == Rational(2) * tau);
  }
}

TEST_CASE("recession") {
  auto aff = GeneralPA::from_concave(ConcavePA(1, {{{3}, LogRational(7)}}));
  auto r = recession(aff);
  CHECK(r(QVec{2}) == Rational(6));
  CHECK(r(QVec{0}) == Rational(0));
  auto shifted = GeneralPA::from_concave(min_form(1, {{{0}, 5}, {{1}, 5}}));
  auto rs = recession(shifted);
  for (int u = -3; u <= 3; ++u) CHECK(rs(QVec{u}) == std::min(Rational(0), Rational(u)));
  CHECK(code_of([] { GeneralPA::make(1, {{{{{-1}, 0}}, {1}, 0}, {{{{1}, 0}}, {2}, 1}}); }) == Errc::construction_error);
}

TEST_CASE("complex validation") {
  // Overlapping cells.
  CHECK(code_of([] { GeneralPA::make(1, {{{{{-1}, -1}}, {0}, 0}, {{{{1}, 0}}, {0}, 0}}); }) == Errc::construction_error);
  // Gap between cells.
  CHECK(code_of([] { GeneralPA::make(1, {{{{{-1}, 0}}, {0}, 0}, {{{{1}, 1}}, {0}, 0}}); }) == Errc::construction_error);
  // Lower-dimensional cell.
  CHECK(code_of([] { GeneralPA::make(1, {{{{{-1}, 0}, {{1}, 0}}, {0}, 0}, {{{{1}, 0}}, {0}, 0}}); }) ==
        Errc::construction_error);
  auto b = bump({1, 2});
  CHECK(b(QVec{0, 0}) == Rational(1));
  CHECK(b(QVec{1, 0}) == Rational(0));
  CHECK(b(QVec{Rational(1, 4), 0}) == Rational(3, 4));
}

TEST_CASE("concave envelope") {
  auto c = min_form(2, {{{0, 0}, 1}, {{1, 0}, 0}, {{0, 1}, -1}, {{1, 1}, 5}});
  CHECK(concave_envelope(GeneralPA::from_concave(c)) == c.canonical());
  // Notch: u on (-inf,0], -u on [0,1], u-2 on [1,2], 0 on [2,inf).
  auto notch = GeneralPA::make(1, {{{{{-1}, 0}}, {1}, 0},
                                   {{{{1}, 0}, {{-1}, -1}}, {-1}, 0},
                                   {{{{1}, 1}, {{-1}, -2}}, {1}, -2},
                                   {{{{1}, 2}}, {0}, 0}});
  auto env = concave_envelope(notch);
  CHECK(env == min_form(1, {{{0}, 0}, {{1}, 0}}).canonical());
  CHECK_FALSE(is_concave(notch).holds);
  // Upper hull of the sampled graph on [-5,5], step 1e-2.
  std::vector<std::pair<double, double>> pts, hull;
  for (int k = -500; k <= 500; ++k) {
    double u = k / 100.0;
    pts.push_back({u, notch.evaluate(&u)});
  }
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      auto [x1, y1] = hull[hull.size() - 2];
      auto [x2, y2] = hull.back();
      if ((x2 - x1) * (p.second - y1) - (y2 - y1) * (p.first - x1) >= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  for (int k = -400; k <= 400; k += 7) {
    double u = k / 100.0;
    std::size_t j = 1;
    while (hull[j].first < u) ++j;
    auto [x1, y1] = hull[j - 1];
    auto [x2, y2] = hull[j];
    double h = y1 + (y2 - y1) * (u - x1) / (x2 - x1);
    CHECK(env.evaluate(&u) == doctest::Approx(h).epsilon(1e-9));
  }
  auto strict = min_form(2, {{{0, 0}, 0}, {{1, 0}, 0}, {{0, 1}, 0}});
  CHECK(concave_envelope(GeneralPA::from_concave(strict)) == strict.canonical());
  auto abs = GeneralPA::make(1, {{{{{-1}, 0}}, {-1}, 0}, {{{{1}, 0}}, {1}, 0}});
  CHECK(code_of([&] { concave_envelope(abs); }) == Errc::empty_stability_set);
}

TEST_CASE("sup-convolution") {
  auto seg = ConcaveOnPolytope{RationalPolytope::box({0}, {1}), ConcavePA::constant(1, LogRational(0))};
  auto origin = ConcaveOnPolytope{RationalPolytope::from_vertices(1, {{0}}), ConcavePA::constant(1, LogRational(0))};
  auto g = ConcaveOnPolytope{RationalPolytope::box({0}, {1}), min_form(1, {{{2}, 0}, {{-1}, 1}})};
  auto gi = sup_convolution(g, origin);
  CHECK(gi.domain == g.domain);
  for (int k = 0; k <= 6; ++k) CHECK(evaluate(gi, QVec{Rational(k, 6)}) == evaluate(g, QVec{Rational(k, 6)}));
  auto two = sup_convolution(seg, seg);
  CHECK(two.domain == RationalPolytope::box({0}, {2}));
  CHECK(evaluate(two, QVec{Rational(3, 2)}) == LogRational(0));
  auto quarter = ConcaveOnPolytope{RationalPolytope::from_vertices(1, {{Rational(1, 4)}}), ConcavePA::constant(1, LogRational(0))};
  auto shifted = sup_convolution(g, quarter);
  CHECK(shifted.domain == RationalPolytope::box({Rational(1, 4)}, {Rational(5, 4)}));
  for (int k = 0; k <= 8; ++k) {
    Rational x = Rational(1, 4) + Rational(k, 8);
    CHECK(evaluate(shifted, QVec{x}) == evaluate(g, QVec{x - Rational(1, 4)}));
  }
}

TEST_CASE("concavity test") {
  auto psi = GeneralPA::from_concave(min_form(2, {{{0, 0}, 0}, {{1, 0}, 0}, {{0, 1}, 0}}));
  CHECK(is_concave(psi).holds);
  auto relu = GeneralPA::make(1, {{{{{-1}, 0}}, {0}, 0}, {{{{1}, 0}}, {1}, 0}});
  auto w = is_concave(relu);
  REQUIRE_FALSE(w.holds);
  const auto& a = relu.cells()[w.cell];
  const auto& b = relu.cells()[w.other];
  CHECK(dot(b.slope, w.u) + b.offset < dot(a.slope, w.u) + a.offset);
  auto g = GeneralPA::from_concave(simplex_support(0));
  auto diff = g - GeneralPA::from_concave(simplex_support(1));
  auto wd = is_concave(diff);
  REQUIRE_FALSE(wd.holds);
  // The witness is a genuine violation of f <= every piece.
  const auto& c = diff.cells()[wd.other];
  CHECK(dot(c.slope, wd.u) + c.offset < diff(wd.u));
}

TEST_CASE("biduality on random complexes") {
  std::mt19937 rng(20240611);
  int checked = 0;
  for (int trial = 0; trial < 24; ++trial) {
    std::size_t n = trial % 3 == 0 ? 1 : 2;
    auto f = random_dc(rng, n);
    auto dd = legendre_dual(legendre_dual(f));
    auto env = concave_envelope(f);
    CHECK(dd == env);
    // The envelope lies above f and is the smallest such: dual values agree.
    for (const auto& c : f.cells()) {
      auto u = cell_interior_point(c.constraints, n);
      CHECK(env(*u).rational_part() >= f(*u));
    }
    ++checked;
  }
  CHECK(checked == 24);
}

TEST_CASE("dual of sums and sup-convolution") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 8; ++trial) {
    std::size_t n = trial % 2 == 0 ? 1 : 2;
    auto f = random_dc(rng, n);
    auto g = random_dc(rng, n);
    auto sf = stability_set(f), sg = stability_set(g);
    auto sum = f + g;
    auto ssum = stability_set(sum);
    auto mink = minkowski_sum(sf, sg);
    CHECK(ssum.contains(mink));
    auto dsum = legendre_dual(sum, mink);
    auto conv = sup_convolution(legendre_dual(f), legendre_dual(g));
    CHECK(conv.domain == mink);
    for (int k = 0; k < 100; ++k) {
      QVec x = random_point(rng, mink);
      CHECK(evaluate(dsum, x).rational_part() >= evaluate(conv, x).rational_part());
    }
  }
}

TEST_CASE("perturbation of stability sets and duals") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 4; ++trial) {
    std::size_t n = trial % 2 == 0 ? 1 : 2;
    auto f = random_dc(rng, n);
    auto g = random_dc(rng, n);
    auto sf = stability_set(f);
    REQUIRE(stability_set(g).contains(QVec(n)));
    Rational g0 = evaluate(legendre_dual(g), QVec(n)).rational_part();
    std::vector<QVec> xs;
    for (int k = 0; k < 10; ++k) xs.push_back(random_point(rng, sf));
    RationalPolytope prev = stability_set(f + g);
    std::vector<Rational> prev_vals;
    auto d_f = legendre_dual(f);
    auto d1 = legendre_dual(f + g, sf);
    for (const auto& x : xs) prev_vals.push_back(evaluate(d1, x).rational_part());
    Rational eps = 1;
    for (int k = 1; k <= 10; ++k) {
      Rational e2 = eps / 2;
      auto fe = f + e2 * g;
      auto s = stability_set(fe);
      CHECK(prev.contains(s));
      CHECK(s.contains(sf));
      CHECK(max_violation(sf, s) <= 1e3 * e2.to_double());
      auto d = legendre_dual(fe, sf);
      for (std::size_t j = 0; j < xs.size(); ++j) {
        Rational v = evaluate(d, xs[j]).rational_part();
        // (f+eps g)^∨ >= (f+eps' g)^∨ + (eps-eps') g^∨(0)
        CHECK(prev_vals[j] >= v + (eps - e2) * g0);
        CHECK(std::abs((v - evaluate(d_f, xs[j]).rational_part()).to_double()) <= 1e3 * e2.to_double());
        prev_vals[j] = v;
      }
      prev = s;
      eps = e2;
    }
  }
}

TEST_CASE("duality reverses order") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t n = trial % 2 == 0 ? 1 : 2;
    auto f = random_dc(rng, n);
    QVec a(n);
    for (auto& x : a) x = rand_q(rng, 2, 1);
    if (std::all_of(a.begin(), a.end(), [](const Rational& x) { return x.is_zero(); })) a[0] = 1;
    auto g = f + bump(a);
    auto sg = stability_set(g);
    CHECK(sg == stability_set(f));
    auto df = legendre_dual(f), dg = legendre_dual(g);
    for (int k = 0; k < 30; ++k) {
      QVec x = random_point(rng, sg);
      CHECK(evaluate(df, x).rational_part() >= evaluate(dg, x).rational_part());
    }
  }
}

TEST_CASE("exact integration") {
  auto d2 = RationalPolytope::standard_simplex(2);
  auto tent = ConcaveOnPolytope{d2, min_form(2, {{{1, 0}, 0}, {{0, 1}, 0}})};
  // ∫ min(x1,x2) over the simplex: twice the integral of x2 over the half with x2 <= x1.
  CHECK(integrate_pa(tent) == LogRational(Rational(1, 12)));
  auto num = integrate_numeric(d2, [](const double* x) { return std::min(x[0], x[1]); }, 1e-10);
  CHECK(num.value == doctest::Approx(1.0 / 12).epsilon(1e-8));
  auto shifted = ConcaveOnPolytope{d2, min_form(2, {{{-2, -2}, 1}})};
  auto pos = integrate_positive_part(shifted);
  REQUIRE(pos.exact);
  CHECK(*pos.exact == LogRational(Rational(1, 24)));
  // Log offsets: the positive part is only available numerically.
  auto logc = ConcaveOnPolytope{RationalPolytope::box({0}, {1}), ConcavePA(1, {{{-1}, LogRational::log_of(2) - LogRational(Rational(1, 2))}})};
  CHECK(integrate_pa(logc) == LogRational::log_of(2) - LogRational(1));
  auto lp = integrate_positive_part(logc);
  CHECK_FALSE(lp.exact);
  double t = std::log(2.0) - 0.5;
  CHECK(lp.value == doctest::Approx(t * t / 2).epsilon(1e-12));
  // Lower-dimensional domain: the edge x1 + x2 = 1 has lattice length 1.
  auto edge = RationalPolytope::from_vertices(2, {{1, 0}, {0, 1}});
  auto on_edge = ConcaveOnPolytope{edge, min_form(2, {{{1, 0}, 0}})};
  CHECK(integrate_pa(on_edge) == LogRational(Rational(1, 2)));
  auto num_edge = integrate_numeric(edge, [](const double* x) { return x[0]; }, 1e-10);
  CHECK(num_edge.value == doctest::Approx(0.5).epsilon(1e-10));
}
