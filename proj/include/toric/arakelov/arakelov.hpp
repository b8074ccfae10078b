#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toric/divisor/divisor.hpp"

namespace toric {

enum class Tri { no, yes, unknown };
std::string_view tri_name(Tri t);

// n! vol_M(Δ_D).
Rational geometric_volume(const ToricMetrizedRDivisor& d);

struct ArithmeticVolumes {
  Estimate vol_hat;  // (n+1)! ∫_Θ ϑ
  Estimate vol_chi;  // (n+1)! ∫_Δ ϑ
};
ArithmeticVolumes arithmetic_volumes(const ToricMetrizedRDivisor& d, const NumericOptions& opts = {});

// (d+1)! ∫_{F_σ} ϑ (or ϑ_v) for the cone spanned by the listed rays (empty: the whole variety).
Estimate height(const ToricMetrizedRDivisor& d, const std::vector<std::size_t>& cone_rays,
                const std::optional<std::string>& place = std::nullopt, const NumericOptions& opts = {});
// Face F_σ of Δ_D.
RationalPolytope face_of_cone(const ToricMetrizedRDivisor& d, const std::vector<std::size_t>& cone_rays);

struct Flag {
  Tri value = Tri::no;
  std::string witness;
};

struct PositivityReport {
  Flag ample, nef, big, pseudo_effective, effective;
  bool semipositive = false;
  std::optional<Extremum> max, min;  // of the global roof, when Δ_D is nonempty
  // ample ⇒ nef ⇒ pseudo-effective, big ⇒ pseudo-effective, effective ⇒ pseudo-effective
  bool consistent() const;
};
PositivityReport classify(const ToricMetrizedRDivisor& d, const NumericOptions& opts = {});

// ϑ_v(0) ≥ 0 for all v and 0 ∈ Δ_D.
Flag effective_flag(const ToricMetrizedRDivisor& d);

struct ThetaRegion {
  bool empty = false;
  Tri quasi_rational = Tri::unknown;
  // Exact polytope (rational normals, log-rational offsets) when representable.
  std::optional<RationalPolytope> polytope;
  std::string method;  // exact | closed-form | numeric
  std::string reason;
  Roof roof;  // {roof >= 0} is the region (sampler)
  // Boundary points of Θ found by bisection along rays from an interior point.
  std::vector<std::vector<double>> boundary;
  bool contains(const std::vector<double>& x, double tol = 1e-12) const;
};
ThetaRegion theta_region(const ToricMetrizedRDivisor& d, const NumericOptions& opts = {});

// Difference D1 - D2 of metrized divisors; effective iff D1 ≥ D2 (D2 semipositive).
struct DifferenceDivisor {
  ToricMetrizedRDivisor plus, minus;
};
Flag effective_flag(const DifferenceDivisor& e);

// Ψ = Ψ_q on `fan` (refining NF(q)) with the roofs of D restricted to q ⊆ Δ_D.
ToricMetrizedRDivisor restrict_to(const ToricMetrizedRDivisor& d, const RationalPolytope& q, const RationalFan& fan);

struct ZariskiDecomposition {
  bool refused = false;
  std::string reason;
  bool strong = true;  // false: the point-based weak decomposition
  ThetaRegion theta;
  RationalFan refined_fan = RationalFan::projective_space(1);
  std::optional<ToricMetrizedRDivisor> nef_part;
  std::optional<DifferenceDivisor> effective_part;
  Flag nef_verified, effective_verified;
  std::optional<Estimate> vol_nef, vol_d;
  bool volumes_equal = false;
};
ZariskiDecomposition zariski(const ToricMetrizedRDivisor& d, const NumericOptions& opts = {});

struct FujitaApproximation {
  RationalFan refined_fan = RationalFan::projective_space(1);
  RationalPolytope inner = RationalPolytope::empty(0);
  Rational t, delta;
  std::optional<ToricMetrizedRDivisor> ample_part;
  std::optional<DifferenceDivisor> effective_part;
  Flag ample_verified, effective_verified;
  Estimate vol_ample, vol_d;
  double epsilon = 0;
  bool volume_ok = false;
};
FujitaApproximation fujita(const ToricMetrizedRDivisor& d, double epsilon, const NumericOptions& opts = {});

struct RealExponent {
  std::optional<Rational> exact;
  double value = 0;
};

struct DirichletCertificate {
  QVec a;
  std::map<std::string, LogRational> gamma;      // log|α|_v
  std::map<std::uint64_t, RealExponent> beta;  // α = Π p^{β_p}
  std::optional<ToricMetrizedRDivisor> shifted;
  Flag effective;
};
DirichletCertificate dirichlet_certificate(const ToricMetrizedRDivisor& d, const QVec& a);

// μ(ν_u) = Ψ_Θ(u) − Ψ_D(u).
LogRational arithmetic_multiplicity(const ToricMetrizedRDivisor& d, const QVec& u);

struct LatticeSum {
  long ell = 0;
  double vol_hat = 0;
  double vol_chi = 0;
  std::size_t points = 0;
};
LatticeSum lattice_sum_oracle(const ToricMetrizedRDivisor& d, long ell, ExecPolicy policy = default_policy());

struct OracleRow {
  long ell = 0;
  double estimate = 0;
  double reference = 0;
  double gap = 0;
};
struct OracleTable {
  std::vector<OracleRow> rows;
  double fitted_c = 0;  // max ell * gap
  bool reference_exact = false;
};
OracleTable compare_oracle(const ToricMetrizedRDivisor& d, const std::vector<long>& ells, const NumericOptions& opts = {});

// 1/2 Σ_i (log α_i + Σ_{j≤i} 1/j): χ-volume of the weighted Fubini-Study metric on P^n.
LogRational fubini_study_chi_volume(const std::vector<Rational>& alpha);

}  // namespace toric
