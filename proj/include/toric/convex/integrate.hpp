#pragma once

#include <optional>

#include "toric/convex/pa.hpp"
#include "toric/numerics/cubature.hpp"

namespace toric {

// Integral with an exact value when all pieces are rational-affine over rational cells;
// otherwise only the floating value is set.
struct PAIntegral {
  std::optional<LogRational> exact;
  double value = 0;
};

// ∫_P g in the lattice-normalised measure on aff(P). Each region is triangulated and the
// affine piece integrates to vol·(mean of vertex values).
LogRational integrate_pa(const ConcaveOnPolytope& g);
// ∫_P max(g, 0), i.e. the integral of g over {g >= 0}.
PAIntegral integrate_positive_part(const ConcaveOnPolytope& g);

// ∫_P f for a numeric integrand, in the lattice-normalised measure on aff(P).
CubatureResult integrate_numeric(const RationalPolytope& p, const Integrand& f, double tol,
                                 const CubatureOptions& opts = {});

}  // namespace toric
