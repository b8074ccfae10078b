#pragma once

#include "toric/numerics/rational.hpp"

namespace toric {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  QVec x;
  Rational value;
};

// Exact LP: maximize <c,x> subject to a x <= b, x free. Two-phase dense simplex, Bland's rule.
LpResult lp_maximize(const QMat& a, const QVec& b, const QVec& c);

}  // namespace toric
