#pragma once

#include <compare>
#include <string>

#include <mpfr.h>

#include "toric/numerics/log_rational.hpp"

namespace toric {

inline constexpr long kMaxPrecisionBits = 4096;

// Default working precision: 128 bits unless TORIC_ARAKELOV_PRECISION is set or
// set_default_precision was called.
long default_precision();
void set_default_precision(long bits);

// Closed interval [lower, upper] with MPFR endpoints rounded outward.
class CertifiedInterval {
 public:
  explicit CertifiedInterval(long precision_bits);
  CertifiedInterval(const CertifiedInterval& o);
  CertifiedInterval& operator=(const CertifiedInterval& o);
  ~CertifiedInterval();

  static CertifiedInterval enclose(const LogRational& x, long precision_bits);

  long precision() const { return prec_; }
  const mpfr_t& lower() const { return lo_; }
  const mpfr_t& upper() const { return hi_; }
  double lower_double() const;
  double upper_double() const;
  double width() const;
  // +1 / -1 if the interval excludes zero on that side, 0 if it straddles zero.
  int sign() const;
  std::string str() const;

 private:
  long prec_;
  mpfr_t lo_, hi_;
};

// Exact for symbolic equality, otherwise refines precision until separation.
std::strong_ordering certified_compare(const LogRational& a, const LogRational& b);
int certified_sign(const LogRational& a);

}  // namespace toric
