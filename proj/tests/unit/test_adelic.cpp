#include <cmath>
#include <random>

#include "doctest.h"
#include "toric/adelic/mk_divisor.hpp"
#include "toric/error.hpp"

using namespace toric;

namespace {

// Brute-force count of gamma in d*Z with |gamma| <= c_inf, where d = prod p^{k_p}.
long brute_count(const MKDivisor& c) {
  Rational d = 1;
  for (const auto& [p, k] : c.k)
    for (long i = 0; i < std::abs(k); ++i) d = k > 0 ? d * Rational(static_cast<long>(p)) : d / Rational(static_cast<long>(p));
  long n = 0;
  for (long t = -100000; t <= 100000; ++t)
    if ((Rational(t) * d).abs() <= c.c_inf) ++n;
  return n;
}

}  // namespace

TEST_CASE("small element counts") {
  auto q = PlaceTable::rationals({2, 3});
  auto c1 = MKDivisor::make(10, {});
  CHECK(lhat(c1, q).count == 21);
  CHECK(lhat(c1, q).value == doctest::Approx(std::log(21.0)));
  CHECK(brute_count(c1) == 21);
  auto c2 = MKDivisor::make(10, {{2, Rational(1, 2)}});
  CHECK(lhat(c2, q).count == 11);
  CHECK(brute_count(c2) == 11);
  auto c3 = MKDivisor::make(Rational(1, 2), {});
  CHECK(lhat(c3, q).count == 1);
  CHECK(lhat(c3, q).value == 0.0);
  CHECK_THROWS_AS(MKDivisor::make(1, {{3, Rational(1, 2)}}), Error);
  auto ff = PlaceTable::custom({{"t", false, 0, 1, 1}}, 1);
  try {
    lhat(c1, ff);
    FAIL("expected unsupported-field");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unsupported_field);
  }
}

TEST_CASE("adelic degree") {
  auto q = PlaceTable::rationals({2, 3});
  CHECK(deg_hat(MKDivisor::make(1, {}), q) == LogRational(0));
  CHECK(deg_hat(MKDivisor::make(10, {{2, Rational(1, 2)}}), q) == LogRational::log_of(5));
  CHECK(deg_hat(MKDivisor::make(1, {{3, Rational(1, 3)}}), q) == -LogRational::log_of(3));
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> ex(-4, 4);
  for (int t = 0; t < 50; ++t) {
    auto a = MKDivisor::make(Rational(1 + t, 3), {{2, Rational(1, 4)}, {5, Rational(5)}});
    MKDivisor b;
    b.c_inf = Rational(7, 2 + t);
    b.k[3] = ex(rng);
    b.k[5] = ex(rng);
    if (b.k[5] == 0) b.k.erase(5);
    if (b.k[3] == 0) b.k.erase(3);
    CHECK(deg_hat(a * b, q) == deg_hat(a, q) + deg_hat(b, q));
  }
}

TEST_CASE("gap bound") {
  auto q = PlaceTable::rationals();
  auto g1 = gap_check(MKDivisor::make(1, {}), q);
  CHECK(g1.ok);
  CHECK(g1.gap == doctest::Approx(std::log(3.0)));
  auto g2 = gap_check(MKDivisor::make(1000, {}), q);
  CHECK(g2.ok);
  CHECK(g2.gap == doctest::Approx(std::log(2.001)));
  auto g3 = gap_check(MKDivisor::make(Rational(1, 2), {}), q);
  CHECK(g3.ok);
  CHECK(g3.gap == 0.0);
  // Monotonicity of the count.
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> ex(-3, 3), num(1, 400);
  for (int t = 0; t < 200; ++t) {
    MKDivisor a;
    a.c_inf = Rational(num(rng), 7);
    a.k[2] = ex(rng);
    a.k[3] = ex(rng);
    MKDivisor b = a;
    b.c_inf += Rational(num(rng), 11);
    b.k[2] -= 1;
    CHECK(lhat(b, q).count >= lhat(a, q).count);
    CHECK(gap_check(a, q).ok);
  }
}

TEST_CASE("scaling lemma") {
  auto r1 = find_scaling({{0, Rational(1, 2)}}, {0}, 1, 1);
  CHECK(r1.verified);
  CHECK(r1.alpha == Rational(1));
  CHECK(r1.ell0 == 1);
  auto r2 = find_scaling({{0, 4}, {2, Rational(1, 16)}}, {0}, 1, 1);
  CHECK(r2.ell == 1);
  CHECK(r2.alpha == Rational(1, 16));
  CHECK(r2.verified);
  auto r3 = find_scaling({{0, Rational(11, 10)}, {3, Rational(1, 2)}}, {3}, Rational(1, 2));
  CHECK(r3.verified);
  // Independent re-evaluation of the returned witness.
  Rational a = r3.alpha;
  Rational g_inf = 1, g3 = 1;
  for (long i = 0; i < r3.ell; ++i) g_inf *= Rational(11, 10), g3 *= Rational(1, 2);
  CHECK(a.abs() * g_inf <= Rational(1));
  long e3 = r3.exponents.count(3) ? r3.exponents.at(3) : 0;
  Rational abs3 = 1;
  for (long i = 0; i < std::abs(e3); ++i) abs3 = e3 > 0 ? abs3 / Rational(3) : abs3 * Rational(3);
  CHECK(abs3 * g3 < Rational(1, 2));
  try {
    find_scaling({{0, 2}, {2, Rational(1, 2)}}, {0}, 1);
    FAIL("expected product-not-strictly-less");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::product_not_strictly_less);
  }
  for (long ell : {r3.ell0, r3.ell0 + 1, r3.ell0 + 7}) CHECK(find_scaling({{0, Rational(11, 10)}, {3, Rational(1, 2)}}, {3}, Rational(1, 2), ell).verified);
}
