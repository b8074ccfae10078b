#include <cmath>
#include <random>

#include <mpfr.h>

#include "doctest.h"
#include "toric/error.hpp"
#include "toric/numerics/certified.hpp"
#include "toric/numerics/cubature.hpp"
#include "toric/numerics/linalg.hpp"
#include "toric/numerics/lp.hpp"

using namespace toric;

TEST_CASE("rational parsing and arithmetic") {
  CHECK(Rational::parse("3/6") == Rational(1, 2));
  CHECK(Rational::parse("-0.25") == Rational(-1, 4));
  CHECK(Rational::parse("1e-3") == Rational(1, 1000));
  CHECK(Rational::parse("2.5E2") == Rational(250));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("abc"), Error);
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(primitive(QVec{Rational(2, 3), Rational(4, 3)}) == QVec{1, 2});
}

TEST_CASE("log-rational factorisation and algebra") {
  auto l6 = LogRational::log_of(Rational(6));
  CHECK(l6 == LogRational::log_prime(2) + LogRational::log_prime(3));
  auto lq = LogRational::log_of(Rational(8, 9));
  CHECK(lq.log_coefficient(2) == Rational(3));
  CHECK(lq.log_coefficient(3) == Rational(-2));
  CHECK((l6 - l6).is_zero());
  auto big = LogRational::log_of(Rational(mpz_class("1000000016000000063")));  // 1000000007 * 1000000009
  CHECK(big.log_terms().size() == 2);
}

TEST_CASE("certified comparison") {
  LogRational a = Rational(1, 2) + LogRational::log_prime(2);
  CHECK(certified_compare(a, a) == std::strong_ordering::equal);
  LogRational lhs = LogRational::log_prime(2) + LogRational::log_prime(3);
  LogRational rhs = LogRational::log_of(Rational(6)) - LogRational(Rational::parse("1e-9"));
  CHECK(certified_compare(lhs, rhs) == std::strong_ordering::greater);
  CHECK(certified_compare(LogRational::log_prime(2) * Rational(2), LogRational::log_prime(3)) ==
        std::strong_ordering::greater);
  // Nearly cancelling combination: 2^10 vs 1025 differ by log(1025/1024) ~ 9.8e-4.
  LogRational tiny = LogRational::log_prime(2) * Rational(10) - LogRational::log_of(Rational(1025));
  CHECK(certified_sign(tiny) < 0);
}

TEST_CASE("certified comparison agrees with 256-bit floats on random pairs") {
  std::mt19937_64 rng(17);
  const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  std::uniform_int_distribution<int> coef(-10, 10), pick(0, 24), cnt(0, 4);
  auto draw = [&]() {
    LogRational x(Rational(coef(rng), 1 + std::abs(coef(rng))));
    for (int k = cnt(rng); k > 0; --k)
      x += LogRational::log_prime(primes[pick(rng)]) * Rational(coef(rng), 1 + std::abs(coef(rng)));
    return x;
  };
  int checked = 0;
  for (int t = 0; t < 2000; ++t) {
    LogRational a = draw(), b = draw();
    auto iv = CertifiedInterval::enclose(a - b, 256);
    mpfr_t mid, gap;
    mpfr_inits2(256, mid, gap, static_cast<mpfr_ptr>(nullptr));
    mpfr_add(mid, iv.lower(), iv.upper(), MPFR_RNDN);
    mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
    mpfr_abs(gap, mid, MPFR_RNDN);
    if (mpfr_cmp_d(gap, std::ldexp(1.0, -200)) > 0) {
      auto c = certified_compare(a, b);
      CHECK((mpfr_sgn(mid) > 0) == (c == std::strong_ordering::greater));
      ++checked;
    }
    mpfr_clears(mid, gap, static_cast<mpfr_ptr>(nullptr));
  }
  CHECK(checked > 1500);
}

TEST_CASE("precision configuration") {
  long before = default_precision();
  set_default_precision(256);
  CHECK(default_precision() == 256);
  CHECK_THROWS_AS(set_default_precision(8), Error);
  set_default_precision(before);
}

TEST_CASE("linear algebra") {
  QMat a{{1, 2}, {2, 4}};
  CHECK(rank(a) == 1);
  CHECK(determinant(QMat{{2, 1}, {1, 1}}) == Rational(1));
  auto ker = integer_kernel_basis(QMat{{1, 1, 1}}, 3);
  CHECK(ker.size() == 2);
  for (const auto& k : ker) CHECK(dot(k, QVec{1, 1, 1}).is_zero());
  // Lattice of the line spanned by (2,2): basis (1,1) up to sign.
  auto b = lattice_basis_of_span(QMat{{2, 2}}, 2);
  REQUIRE(b.size() == 1);
  CHECK(b[0][0].abs() == Rational(1));
  CHECK(b[0][1] == b[0][0]);
}

TEST_CASE("exact LP") {
  // maximize x + y s.t. x <= 1, y <= 2, x + y <= 5/2
  QMat a{{1, 0}, {0, 1}, {1, 1}};
  QVec b{1, 2, Rational(5, 2)};
  auto r = lp_maximize(a, b, QVec{1, 1});
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.value == Rational(5, 2));
  auto inf = lp_maximize(QMat{{1}, {-1}}, QVec{-1, -1}, QVec{1});  // x <= -1, x >= 1
  CHECK(inf.status == LpStatus::infeasible);
  auto unb = lp_maximize(QMat{{-1}}, QVec{0}, QVec{1});
  CHECK(unb.status == LpStatus::unbounded);
}

TEST_CASE("adaptive cubature") {
  auto one = [](const double*) { return 1.0; };
  auto r1 = adaptive_integrate(one, std::vector<QVec>{{0, 0}, {1, 0}, {0, 1}}, 1e-12);
  CHECK(std::abs(r1.value - 0.5) < 1e-12);
  auto x1 = [](const double* x) { return x[0]; };
  auto r2 = adaptive_integrate(x1, std::vector<QVec>{{0, 0}, {1, 0}, {0, 1}}, 1e-10);
  CHECK(std::abs(r2.value - 1.0 / 6.0) < 1e-10);
  auto ent = [](const double* x) {
    double t = x[0];
    auto xl = [](double s) { return s <= 0 ? 0.0 : s * std::log(s); };
    return -0.5 * (xl(t) + xl(1 - t));
  };
  auto r3 = adaptive_integrate(ent, std::vector<QVec>{{0}, {1}}, 1e-9);
  CHECK(std::abs(r3.value - 0.25) < 1e-9);
}

TEST_CASE("cubature is exact for affine functions and additive under splitting") {
  auto f = [](const double* x) { return 3 * x[0] - 2 * x[1] + 0.5; };
  std::vector<QVec> s{{0, 0}, {2, 1}, {Rational(1, 2), 3}};
  auto r = adaptive_integrate(f, s, 1e-10);
  std::vector<std::vector<double>> dv{{0, 0}, {2, 1}, {0.5, 3}};
  double vol = simplex_volume(dv);
  double cx = (0 + 2 + 0.5) / 3, cy = (0 + 1 + 3) / 3.0;
  CHECK(std::abs(r.value - vol * f(std::vector<double>{cx, cy}.data())) < 1e-10);
  auto g = [](const double* x) { return std::exp(x[0]) * std::cos(x[1]); };
  auto whole = adaptive_integrate(g, s, 1e-8);
  std::vector<QVec> a{{0, 0}, {2, 1}, {Rational(5, 4), 2}}, b{{0, 0}, {Rational(5, 4), 2}, {Rational(1, 2), 3}};
  auto pa = adaptive_integrate(g, a, 1e-8), pb = adaptive_integrate(g, b, 1e-8);
  CHECK(std::abs(whole.value - pa.value - pb.value) <= 2e-8);
}

TEST_CASE("cubature is bit-identical across execution policies") {
  auto g = [](const double* x) { return std::sqrt(x[0] + x[1] + 1e-3) * std::log1p(x[0]); };
  std::vector<QVec> s{{0, 0}, {1, 0}, {0, 1}};
  CubatureOptions ser, par;
  ser.policy = ExecPolicy::serial;
  par.policy = ExecPolicy::parallel;
  auto a = adaptive_integrate(g, s, 1e-9, ser), b = adaptive_integrate(g, s, 1e-9, par);
  CHECK(a.value == b.value);
  CHECK(a.subdivisions == b.subdivisions);
}

TEST_CASE("cubature budget") {
  auto g = [](const double* x) { return 1.0 / std::sqrt(x[0] + 1e-12); };
  CubatureOptions o;
  o.max_subdivisions = 10;
  CHECK_THROWS_AS(adaptive_integrate(g, std::vector<QVec>{{0}, {1}}, 1e-12, o), Error);
}
