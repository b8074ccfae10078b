#pragma once

#include <cmath>

#include "toric/numerics/certified.hpp"
#include "toric/numerics/log_rational.hpp"
#include "toric/numerics/rational.hpp"

namespace toric {

// Tolerance for sign decisions on the floating path.
inline constexpr double kNumericEps = 1e-9;

inline int sign_of(const Rational& x) { return x.sign(); }
inline int sign_of(const LogRational& x) { return certified_sign(x); }
inline int sign_of(double x) { return x > kNumericEps ? 1 : (x < -kNumericEps ? -1 : 0); }

inline double as_double(const Rational& x) { return x.to_double(); }
inline double as_double(const LogRational& x) { return x.to_double(); }
inline double as_double(double x) { return x; }

inline bool is_exact_zero(const Rational& x) { return x.is_zero(); }
inline bool is_exact_zero(const LogRational& x) { return x.is_zero(); }
inline bool is_exact_zero(double x) { return std::abs(x) <= kNumericEps; }

template <class T, class N>
T dot_mixed(const std::vector<T>& x, const std::vector<N>& n) {
  T s{};
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * n[i];
  return s;
}

}  // namespace toric
