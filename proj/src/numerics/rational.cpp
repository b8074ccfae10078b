#include "toric/numerics/rational.hpp"

#include <cmath>
#include <ostream>

#include "toric/error.hpp"

namespace toric {

Rational::Rational(long num, long den) : q_(num, den) {
  if (den == 0) fail(Errc::invalid_argument, "zero denominator");
  q_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
  if (den == 0) fail(Errc::invalid_argument, "zero denominator");
  q_.canonicalize();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) fail(Errc::parse_error, "empty rational");
  bool neg = false;
  std::string_view body = s;
  if (body.front() == '-' || body.front() == '+') {
    neg = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  if (slash != std::string_view::npos) {
    auto a = body.substr(0, slash), b = body.substr(slash + 1);
    if (!all_digits(a) || !all_digits(b)) fail(Errc::parse_error, "bad rational '" + std::string(text) + "'");
    mpz_class num(std::string(a), 10), den(std::string(b), 10);
    if (den == 0) fail(Errc::parse_error, "zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    return neg ? -r : r;
  }
  long exp10 = 0;
  auto epos = body.find_first_of("eE");
  if (epos != std::string_view::npos) {
    auto e = body.substr(epos + 1);
    bool eneg = false;
    if (!e.empty() && (e.front() == '-' || e.front() == '+')) {
      eneg = e.front() == '-';
      e.remove_prefix(1);
    }
    if (!all_digits(e) || e.size() > 6) fail(Errc::parse_error, "bad exponent in '" + std::string(text) + "'");
    exp10 = std::stol(std::string(e));
    if (eneg) exp10 = -exp10;
    body = body.substr(0, epos);
  }
  std::string digits;
  auto dot = body.find('.');
  if (dot != std::string_view::npos) {
    auto ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
      fail(Errc::parse_error, "bad decimal '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    exp10 -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(body)) fail(Errc::parse_error, "bad number '" + std::string(text) + "'");
    digits = std::string(body);
  }
  mpz_class num(digits, 10);
  Rational r = exp10 >= 0 ? Rational(mpz_class(num * pow10(exp10)))
                          : Rational(num, pow10(static_cast<unsigned long>(-exp10)));
  return neg ? -r : r;
}

Rational Rational::from_double(double d) {
  if (!std::isfinite(d)) fail(Errc::invalid_argument, "non-finite double");
  mpq_class q(d);
  return Rational(q);
}

std::string Rational::str() const { return q_.get_str(); }

mpz_class Rational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

mpz_class Rational::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) fail(Errc::invalid_argument, "division by zero");
  return Rational(mpq_class(mpq_class(1) / q_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(Errc::invalid_argument, "division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational dot(const QVec& a, const QVec& b) {
  mpq_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i].raw() * b[i].raw();
  return Rational(s);
}

QVec operator+(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec operator-(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVec operator*(const Rational& s, const QVec& a) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

std::vector<double> to_double(const QVec& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].to_double();
  return r;
}

std::string str(const QVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

QVec primitive(const QVec& v) {
  mpz_class l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.denominator().get_mpz_t());
  std::vector<mpz_class> ints(v.size());
  mpz_class g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    ints[i] = v[i].numerator() * (l / v[i].denominator());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  if (g == 0) fail(Errc::invalid_argument, "primitive of zero vector");
  QVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(mpz_class(ints[i] / g));
  return r;
}

bool is_integral(const QVec& v) {
  for (const auto& x : v)
    if (!x.is_integer()) return false;
  return true;
}

}  // namespace toric
