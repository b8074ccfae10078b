#include "toric/adelic/mk_divisor.hpp"

#include <cmath>

#include "toric/error.hpp"
#include "toric/numerics/certified.hpp"

namespace toric {

namespace {

Rational power(const Rational& b, long e) {
  Rational base = e < 0 ? b.inverse() : b;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), n);
  mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), n);
  return Rational(num, den);
}

double log_of(const mpz_class& z) {
  long ex = 0;
  double m = mpz_get_d_2exp(&ex, z.get_mpz_t());
  return std::log(m) + static_cast<double>(ex) * std::log(2.0);
}

double log_of(const Rational& q) { return log_of(q.numerator()) - log_of(q.denominator()); }

// Smallest e in Z with p^e >= t (strict: p^e > t), for t > 0.
long min_exponent(std::uint64_t p, const Rational& t, bool strict) {
  Rational pr(static_cast<long>(p));
  long e = static_cast<long>(std::floor(log_of(t) / std::log(static_cast<double>(p)))) - 1;
  auto ok = [&](long x) { return strict ? power(pr, x) > t : power(pr, x) >= t; };
  while (!ok(e)) ++e;
  while (ok(e - 1)) --e;
  return e;
}

void require_q(const PlaceTable& t) {
  if (!t.is_rational_field()) fail(Errc::unsupported_field, "counting is implemented for Q only");
}

}  // namespace

MKDivisor MKDivisor::make(const Rational& c_inf, const std::map<std::uint64_t, Rational>& c_p) {
  if (c_inf.sign() <= 0) fail(Errc::invalid_argument, "c_inf must be positive");
  MKDivisor d;
  d.c_inf = c_inf;
  for (const auto& [p, c] : c_p) {
    if (!is_prime(p)) fail(Errc::invalid_argument, std::to_string(p) + " is not prime");
    if (c.sign() <= 0) fail(Errc::invalid_argument, "c_p must be positive");
    // c = p^{-k}: numerator and denominator must be powers of p.
    mpz_class pz(static_cast<unsigned long>(p));
    long k = 0;
    mpz_class num = c.numerator(), den = c.denominator();
    while (num % pz == 0) num /= pz, --k;
    while (den % pz == 0) den /= pz, ++k;
    if (num != 1 || den != 1)
      fail(Errc::invalid_argument, "c_" + std::to_string(p) + " = " + c.str() + " is not in the value group");
    if (k != 0) d.k[p] = k;
  }
  return d;
}

Rational MKDivisor::c_at(std::uint64_t p) const {
  auto it = k.find(p);
  return it == k.end() ? Rational(1) : power(Rational(static_cast<long>(p)), -it->second);
}

Rational MKDivisor::volume_constant() const {
  Rational c = c_inf;
  for (const auto& [p, e] : k) c *= power(Rational(static_cast<long>(p)), -e);
  return c;
}

MKDivisor operator*(const MKDivisor& a, const MKDivisor& b) {
  MKDivisor d;
  d.c_inf = a.c_inf * b.c_inf;
  d.k = a.k;
  for (const auto& [p, e] : b.k) {
    d.k[p] += e;
    if (d.k[p] == 0) d.k.erase(p);
  }
  return d;
}

LhatResult lhat(const MKDivisor& c, const PlaceTable& table) {
  require_q(table);
  LhatResult r;
  r.count = 2 * c.volume_constant().floor() + 1;
  r.value = log_of(r.count);
  return r;
}

LogRational deg_hat(const MKDivisor& c, const PlaceTable& table) {
  LogRational s = table.degree() * LogRational::log_of(c.c_inf);
  for (const auto& [p, e] : c.k) s -= table.degree() * Rational(e) * LogRational::log_prime(p);
  return s;
}

GapReport gap_check(const MKDivisor& c, const PlaceTable& table) {
  require_q(table);
  auto l = lhat(c, table);
  Rational cc = c.volume_constant();
  Rational count(l.count);
  GapReport g;
  g.bound = std::log(3.0);
  double deg = log_of(cc);
  g.gap = std::abs(l.value - std::max(0.0, deg));
  // |log N - max(0, log C)| <= log 3  <=>  max(1,C)/3 <= N <= 3 max(1,C).
  Rational m = cc > Rational(1) ? cc : Rational(1);
  g.ok = count <= Rational(3) * m && Rational(3) * count >= m;
  return g;
}

ScalingResult find_scaling(const std::map<std::uint64_t, Rational>& gamma, const std::set<std::uint64_t>& s,
                           const Rational& eta, long requested_ell) {
  if (eta.sign() <= 0 || eta > Rational(1)) fail(Errc::invalid_argument, "eta must lie in (0,1]");
  Rational prod = 1;
  for (const auto& [p, g] : gamma) {
    if (g.sign() <= 0) fail(Errc::invalid_argument, "gamma values must be positive");
    if (p != 0 && !is_prime(p)) fail(Errc::invalid_argument, std::to_string(p) + " is not prime");
    prod *= g;
  }
  if (prod >= Rational(1))
    fail(Errc::product_not_strictly_less, "prod gamma_v = " + prod.str() + " is not < 1");
  auto gam = [&](std::uint64_t p) {
    auto it = gamma.find(p);
    return it == gamma.end() ? Rational(1) : it->second;
  };
  std::set<std::uint64_t> finite;
  for (const auto& [p, g] : gamma)
    if (p != 0 && g != Rational(1)) finite.insert(p);
  for (auto p : s)
    if (p != 0) finite.insert(p);
  // Sufficient bound: ell log(1/prod) > sum_{p in F} log p + |S| log(1/eta).
  double num = static_cast<double>(s.size()) * -log_of(eta);
  for (auto p : finite) num += std::log(static_cast<double>(p));
  double den = -log_of(prod);
  ScalingResult r;
  r.ell0 = std::max<long>(1, static_cast<long>(std::floor(num / den * (1 + 1e-12))) + 1);
  r.ell = std::max(r.ell0, requested_ell);
  auto attempt = [&](long ell) {
    ScalingResult w = r;
    w.ell = ell;
    w.exponents.clear();
    w.alpha = 1;
    for (auto p : finite) {
      Rational t = power(gam(p), ell);
      if (s.count(p)) t /= eta;
      long e = min_exponent(p, t, s.count(p) > 0);
      if (e != 0) w.exponents[p] = e;
      w.alpha *= power(Rational(static_cast<long>(p)), e);
    }
    // Direct verification at every place where |alpha|_v or gamma_v differ from 1.
    w.witness.clear();
    w.verified = true;
    std::set<std::uint64_t> places = finite;
    places.insert(0);
    for (auto p : places) {
      ScalingWitness sw;
      sw.place = PlaceTable::id_of(p);
      Rational abs_alpha = p == 0 ? w.alpha : power(Rational(static_cast<long>(p)), -(w.exponents.count(p) ? w.exponents.at(p) : 0));
      sw.value = abs_alpha * power(gam(p), ell);
      sw.bounded = sw.value <= Rational(1);
      sw.strict = !s.count(p) || sw.value < eta;
      w.verified = w.verified && sw.bounded && sw.strict;
      w.witness.push_back(sw);
    }
    return w;
  };
  auto w = attempt(r.ell);
  if (!w.verified)
    fail(Errc::construction_error, "scaling witness failed verification at ell = " + std::to_string(r.ell));
  return w;
}

}  // namespace toric
