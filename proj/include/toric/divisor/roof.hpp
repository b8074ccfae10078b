#pragma once

#include <optional>
#include <variant>

#include "toric/convex/duality.hpp"
#include "toric/convex/integrate.hpp"

namespace toric {

// x -> scale * g(x) + constant with g a rational concave function.
struct ExactRoofTerm {
  LogRational scale = 1;
  ConcavePA g;
  LogRational constant;
};

// -1/2 sum_{i=0}^n x_i log(x_i / alpha_i), x_0 = 1 - sum x_i, on the standard simplex.
struct FubiniStudyRoof {
  std::vector<Rational> alpha;
};

// lambda * psi^∨(x), evaluated numerically.
struct OracleRoof {
  OracleFunction psi;
  LogRational lambda = 1;
  OracleDualOptions opts;
};

// x -> weight * (base(x + shift) - constant).
struct NumericRoofTerm {
  std::variant<FubiniStudyRoof, OracleRoof> base;
  Rational weight = 1;
  QVec shift;
  LogRational constant;

  double evaluate(const double* x) const;
  // Exact value where a closed form exists (Fubini-Study at rational points).
  std::optional<LogRational> exact_at(const QVec& x) const;
  // Closed-form maximum over the domain and a maximiser, when available.
  std::optional<std::pair<LogRational, QVec>> closed_max(const RationalPolytope& domain) const;
  // Strictly concave in the interior of its natural domain (known for Fubini-Study).
  bool strictly_concave() const { return std::holds_alternative<FubiniStudyRoof>(base); }
};

// Concave function on a rational polytope, written as a sum of exact and numeric terms.
class Roof {
 public:
  Roof() = default;
  explicit Roof(RationalPolytope domain);
  static Roof exact(RationalPolytope domain, ExactRoofTerm t);
  static Roof numeric(RationalPolytope domain, NumericRoofTerm t);

  const RationalPolytope& domain() const { return domain_; }
  std::size_t dim() const { return domain_.dim(); }
  const std::vector<ExactRoofTerm>& exact_terms() const { return exact_; }
  const std::vector<NumericRoofTerm>& numeric_terms() const { return numeric_; }
  bool is_exact() const { return numeric_.empty(); }
  bool is_zero() const { return exact_.empty() && numeric_.empty(); }
  // Exact with rational scales: collapses to a single rational concave function plus a constant.
  bool is_rational() const;
  ConcaveOnPolytope as_concave() const;

  std::optional<LogRational> exact_value(const QVec& x) const;
  double value(const double* x) const;
  double value(const QVec& x) const;

  Roof scaled(const Rational& w) const;
  // x -> roof(x + a) - gamma on domain - a.
  Roof twisted(const QVec& a, const LogRational& gamma) const;
  Roof restricted(const RationalPolytope& sub) const;
  friend Roof operator+(const Roof& a, const Roof& b);

 private:
  RationalPolytope domain_ = RationalPolytope::empty(0);
  std::vector<ExactRoofTerm> exact_;
  std::vector<NumericRoofTerm> numeric_;
};

// Cell of the common refinement of the exact terms' domains of linearity: the roof is
// <slope,x> + offset there (log-rational data).
struct RoofCell {
  RationalPolytope cell;
  std::vector<LogRational> slope;
  LogRational offset;
  LogRational at(const QVec& x) const;
};
std::vector<RoofCell> roof_cells(const Roof& r);

// A value known exactly or to within `error`.
struct Estimate {
  std::optional<LogRational> exact;
  double value = 0;
  double error = 0;
  // Sign: +1, 0, -1, or nullopt when undecided at the error bound.
  std::optional<int> sign() const;
};

struct Extremum : Estimate {
  std::vector<double> point;
  std::optional<QVec> exact_point;
};

struct NumericOptions {
  double tol = 1e-9;
  CubatureOptions cubature;
};

Extremum roof_max(const Roof& r, const NumericOptions& opts = {});
Extremum roof_min(const Roof& r);
// ∫ over the domain (or over the face cut out by `face` constraints of the domain).
Estimate roof_integral(const Roof& r, const NumericOptions& opts = {});
// ∫ max(roof, 0).
Estimate roof_positive_integral(const Roof& r, const NumericOptions& opts = {});
// min over dom(b) of (a - b); requires dom(b) ⊆ dom(a).
Extremum min_difference(const Roof& a, const Roof& b, const NumericOptions& opts = {});

// Maximum of a concave evaluator on a polytope by nested golden-section search (dim <= 3).
Extremum concave_max_numeric(const RationalPolytope& p, const std::function<double(const double*)>& f, double tol);

}  // namespace toric
