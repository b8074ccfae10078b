#include "toric/numerics/log_rational.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "toric/error.hpp"
#include "toric/numerics/certified.hpp"

namespace toric {

LogRational::LogRational(Rational r, LogTerms logs) : rat_(std::move(r)), logs_(std::move(logs)) {
  for (const auto& [p, c] : logs_) {
    if (mpz_probab_prime_p(mpz_class(static_cast<unsigned long>(p)).get_mpz_t(), 30) == 0)
      fail(Errc::invalid_argument, "log term with non-prime key " + std::to_string(p));
  }
  prune();
}

void LogRational::prune() {
  for (auto it = logs_.begin(); it != logs_.end();) {
    if (it->second.is_zero())
      it = logs_.erase(it);
    else
      ++it;
  }
}

namespace {

mpz_class pollard_rho(const mpz_class& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1;
    auto f = [&](const mpz_class& v) {
      mpz_class r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      mpz_class diff = x - y;
      diff = ::abs(diff);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_into(const mpz_class& n, std::map<mpz_class, unsigned long>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
    out[n] += 1;
    return;
  }
  mpz_class d = pollard_rho(n);
  factor_into(d, out);
  factor_into(mpz_class(n / d), out);
}

}  // namespace

std::vector<std::pair<mpz_class, unsigned long>> factorize(const mpz_class& n0) {
  if (n0 == 0) fail(Errc::invalid_argument, "factorize(0)");
  mpz_class n = ::abs(n0);
  std::map<mpz_class, unsigned long> out;
  for (unsigned long p = 2; p < 1000 && n > 1; ++p) {
    while (n % p == 0) {
      out[mpz_class(p)] += 1;
      n /= p;
    }
  }
  factor_into(n, out);
  return {out.begin(), out.end()};
}

LogRational LogRational::log_of(const Rational& q) {
  if (q.sign() <= 0) fail(Errc::invalid_argument, "log of non-positive rational " + q.str());
  LogTerms logs;
  auto add = [&](const mpz_class& z, long sgn) {
    if (z == 1) return;
    for (const auto& [p, e] : factorize(z)) {
      if (!p.fits_ulong_p()) fail(Errc::invalid_argument, "prime factor exceeds 64 bits");
      logs[p.get_ui()] += Rational(static_cast<long>(e) * sgn);
    }
  };
  add(q.numerator(), 1);
  add(q.denominator(), -1);
  LogRational r;
  r.logs_ = std::move(logs);
  r.prune();
  return r;
}

LogRational LogRational::log_prime(std::uint64_t p) { return LogRational(Rational(0), LogTerms{{p, Rational(1)}}); }

Rational LogRational::log_coefficient(std::uint64_t p) const {
  auto it = logs_.find(p);
  return it == logs_.end() ? Rational(0) : it->second;
}

double LogRational::to_double() const {
  double s = rat_.to_double();
  for (const auto& [p, c] : logs_) s += c.to_double() * std::log(static_cast<double>(p));
  return s;
}

LogRational LogRational::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s.empty()) fail(Errc::parse_error, "empty log-rational");
  // Split into signed terms at '+'/'-' that do not follow an operator or exponent marker.
  std::vector<std::string> terms;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    bool split = depth == 0 && (c == '+' || c == '-') && i > 0 && s[i - 1] != '+' && s[i - 1] != '-' &&
                 s[i - 1] != '*' && s[i - 1] != 'e' && s[i - 1] != 'E';
    if (split) {
      terms.push_back(cur);
      cur.clear();
    }
    cur += c;
  }
  terms.push_back(cur);
  LogRational r;
  for (auto t : terms) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    auto pos = t.find("log(");
    if (pos == std::string::npos) {
      r += LogRational(Rational::parse(t));
      continue;
    }
    if (t.back() != ')') fail(Errc::parse_error, "bad log term '" + t + "'");
    Rational arg = Rational::parse(t.substr(pos + 4, t.size() - pos - 5));
    if (arg.sign() <= 0) fail(Errc::parse_error, "log of a non-positive number in '" + t + "'");
    std::string coef = t.substr(0, pos);
    Rational c = 1;
    if (coef == "-" || coef == "-*") {
      c = -1;
    } else if (!coef.empty()) {
      if (coef.back() != '*') fail(Errc::parse_error, "bad log term '" + t + "'");
      coef.pop_back();
      c = Rational::parse(coef);
    }
    r += log_of(arg) * c;
  }
  return r;
}

std::string LogRational::str() const {
  std::string s = rat_.str();
  for (const auto& [p, c] : logs_) s += " + " + c.str() + "*log(" + std::to_string(p) + ")";
  return s;
}

LogRational LogRational::operator-() const {
  LogRational r = *this;
  r.rat_ = -r.rat_;
  for (auto& [p, c] : r.logs_) c = -c;
  return r;
}

LogRational& LogRational::operator+=(const LogRational& o) {
  rat_ += o.rat_;
  for (const auto& [p, c] : o.logs_) logs_[p] += c;
  prune();
  return *this;
}

LogRational& LogRational::operator-=(const LogRational& o) {
  rat_ -= o.rat_;
  for (const auto& [p, c] : o.logs_) logs_[p] -= c;
  prune();
  return *this;
}

LogRational& LogRational::operator*=(const Rational& s) {
  if (s.is_zero()) {
    rat_ = 0;
    logs_.clear();
    return *this;
  }
  rat_ *= s;
  for (auto& [p, c] : logs_) c *= s;
  return *this;
}

std::strong_ordering operator<=>(const LogRational& a, const LogRational& b) { return certified_compare(a, b); }

std::ostream& operator<<(std::ostream& os, const LogRational& r) { return os << r.str(); }

}  // namespace toric
