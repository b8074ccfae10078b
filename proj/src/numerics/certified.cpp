#include "toric/numerics/certified.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

#include "toric/error.hpp"

namespace toric {

namespace {

long initial_precision() {
  if (const char* env = std::getenv("TORIC_ARAKELOV_PRECISION")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 32 && v <= kMaxPrecisionBits) return v;
  }
  return 128;
}

std::atomic<long>& precision_slot() {
  static std::atomic<long> p{initial_precision()};
  return p;
}

}  // namespace

long default_precision() { return precision_slot().load(); }

void set_default_precision(long bits) {
  if (bits < 32 || bits > kMaxPrecisionBits)
    fail(Errc::invalid_argument, "precision must lie in [32, 4096] bits");
  precision_slot().store(bits);
}

CertifiedInterval::CertifiedInterval(long precision_bits) : prec_(precision_bits) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

CertifiedInterval::CertifiedInterval(const CertifiedInterval& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

CertifiedInterval& CertifiedInterval::operator=(const CertifiedInterval& o) {
  if (this != &o) {
    prec_ = o.prec_;
    mpfr_set_prec(lo_, prec_);
    mpfr_set_prec(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

CertifiedInterval::~CertifiedInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

CertifiedInterval CertifiedInterval::enclose(const LogRational& x, long prec) {
  CertifiedInterval r(prec);
  mpfr_set_q(r.lo_, x.rational_part().raw().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, x.rational_part().raw().get_mpq_t(), MPFR_RNDU);
  mpfr_t llo, lhi, tlo, thi;
  mpfr_inits2(prec, llo, lhi, tlo, thi, static_cast<mpfr_ptr>(nullptr));
  for (const auto& [p, c] : x.log_terms()) {
    mpfr_log_ui(llo, p, MPFR_RNDD);
    mpfr_log_ui(lhi, p, MPFR_RNDU);
    const mpq_srcptr q = c.raw().get_mpq_t();
    if (c.sign() > 0) {
      mpfr_mul_q(tlo, llo, q, MPFR_RNDD);
      mpfr_mul_q(thi, lhi, q, MPFR_RNDU);
    } else {
      mpfr_mul_q(tlo, lhi, q, MPFR_RNDD);
      mpfr_mul_q(thi, llo, q, MPFR_RNDU);
    }
    mpfr_add(r.lo_, r.lo_, tlo, MPFR_RNDD);
    mpfr_add(r.hi_, r.hi_, thi, MPFR_RNDU);
  }
  mpfr_clears(llo, lhi, tlo, thi, static_cast<mpfr_ptr>(nullptr));
  return r;
}

double CertifiedInterval::lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double CertifiedInterval::upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double CertifiedInterval::width() const {
  mpfr_t w;
  mpfr_init2(w, prec_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

int CertifiedInterval::sign() const {
  if (mpfr_sgn(lo_) > 0) return 1;
  if (mpfr_sgn(hi_) < 0) return -1;
  return 0;
}

std::string CertifiedInterval::str() const {
  char buf[128];
  mpfr_snprintf(buf, sizeof buf, "[%.20Rg, %.20Rg]", lo_, hi_);
  return buf;
}

int certified_sign(const LogRational& a) {
  if (a.is_rational()) return a.rational_part().sign();
  long prec = default_precision();
  for (;;) {
    int s = CertifiedInterval::enclose(a, prec).sign();
    if (s != 0) return s;
    if (prec >= kMaxPrecisionBits) break;
    prec = std::min(prec * 2, kMaxPrecisionBits);
  }
  // a is symbolically nonzero but smaller than 2^-4096 relative to its terms;
  // fall back to the sign of the midpoint at the cap.
  CertifiedInterval iv = CertifiedInterval::enclose(a, kMaxPrecisionBits);
  mpfr_t mid;
  mpfr_init2(mid, kMaxPrecisionBits + 1);
  mpfr_add(mid, iv.lower(), iv.upper(), MPFR_RNDN);
  int s = mpfr_sgn(mid);
  mpfr_clear(mid);
  return s >= 0 ? 1 : -1;
}

std::strong_ordering certified_compare(const LogRational& a, const LogRational& b) {
  if (a == b) return std::strong_ordering::equal;
  int s = certified_sign(a - b);
  return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

}  // namespace toric
