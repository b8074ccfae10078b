#pragma once

#include <gmpxx.h>

#include "toric/adelic/places.hpp"

namespace toric {

// M_Q-divisor: c_inf > 0 and c_p = p^{-k_p} at finitely many primes (c_v = 1 elsewhere).
struct MKDivisor {
  Rational c_inf = 1;
  std::map<std::uint64_t, long> k;

  // c_p, which must lie in the value group p^Z.
  static MKDivisor make(const Rational& c_inf, const std::map<std::uint64_t, Rational>& c_p);
  Rational c_at(std::uint64_t p) const;
  // C = c_inf * prod_p c_p; L(c) = { d t : t in Z, |t| <= C } with d = prod p^{k_p}.
  Rational volume_constant() const;
};

MKDivisor operator*(const MKDivisor& a, const MKDivisor& b);

struct LhatResult {
  mpz_class count;
  double value = 0;  // log(count)
};
LhatResult lhat(const MKDivisor& c, const PlaceTable& table);

LogRational deg_hat(const MKDivisor& c, const PlaceTable& table);

struct GapReport {
  double gap = 0;
  double bound = 0;  // kappa = log 3
  bool ok = false;   // decided exactly
};
GapReport gap_check(const MKDivisor& c, const PlaceTable& table);

struct ScalingWitness {
  std::string place;
  Rational value;  // |alpha|_v * gamma_v^ell
  bool bounded = false;
  bool strict = true;  // value < eta when v in S
};

struct ScalingResult {
  long ell0 = 0;
  long ell = 0;
  std::map<std::uint64_t, long> exponents;  // alpha = prod p^{e_p}
  Rational alpha = 1;
  std::vector<ScalingWitness> witness;
  bool verified = false;
};

// gamma: place prime (0 = infinity) -> positive rational, 1 off a finite set; S: set of primes
// (0 = infinity). Returns l0 and, for ell = max(requested, l0), alpha with
// |alpha|_v gamma_v^ell <= 1 for all v and < eta on S.
ScalingResult find_scaling(const std::map<std::uint64_t, Rational>& gamma, const std::set<std::uint64_t>& s,
                           const Rational& eta, long requested_ell = 0);

}  // namespace toric
