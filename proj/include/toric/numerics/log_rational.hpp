#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "toric/numerics/rational.hpp"

namespace toric {

// Element of Q + sum_p Q*log(p). Supports the additive structure and scaling by
// rationals; products of two log terms are deliberately not representable.
class LogRational {
 public:
  using LogTerms = std::map<std::uint64_t, Rational>;

  LogRational() = default;
  LogRational(Rational r) : rat_(std::move(r)) {}
  template <std::integral I>
  LogRational(I v) : rat_(v) {}
  LogRational(Rational r, LogTerms logs);

  // log(q) for a positive rational q, expanded over its prime factors.
  static LogRational log_of(const Rational& q);
  static LogRational log_prime(std::uint64_t p);
  // Sums of rationals and terms "c*log(q)" or "log(q)", e.g. "1/2 + -3/2*log(2)" (the str() form).
  static LogRational parse(std::string_view text);

  const Rational& rational_part() const { return rat_; }
  const LogTerms& log_terms() const { return logs_; }
  Rational log_coefficient(std::uint64_t p) const;

  bool is_rational() const { return logs_.empty(); }
  bool is_zero() const { return logs_.empty() && rat_.is_zero(); }
  double to_double() const;
  std::string str() const;

  LogRational operator-() const;
  LogRational& operator+=(const LogRational& o);
  LogRational& operator-=(const LogRational& o);
  LogRational& operator*=(const Rational& s);
  LogRational& operator/=(const Rational& s) { return *this *= s.inverse(); }

  friend LogRational operator+(LogRational a, const LogRational& b) { return a += b; }
  friend LogRational operator-(LogRational a, const LogRational& b) { return a -= b; }
  friend LogRational operator*(LogRational a, const Rational& s) { return a *= s; }
  friend LogRational operator*(const Rational& s, LogRational a) { return a *= s; }
  friend LogRational operator/(LogRational a, const Rational& s) { return a /= s; }

  // Symbolic equality (log p linearly independent over Q).
  friend bool operator==(const LogRational& a, const LogRational& b) {
    return a.rat_ == b.rat_ && a.logs_ == b.logs_;
  }
  // Certified order (delegates to certified_compare).
  friend std::strong_ordering operator<=>(const LogRational& a, const LogRational& b);

 private:
  void prune();
  Rational rat_;
  LogTerms logs_;
};

std::ostream& operator<<(std::ostream& os, const LogRational& r);

// Prime factorisation of |n| (n != 0) as (prime, exponent) pairs, increasing.
std::vector<std::pair<mpz_class, unsigned long>> factorize(const mpz_class& n);

}  // namespace toric
