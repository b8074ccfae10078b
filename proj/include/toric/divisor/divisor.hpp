#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "toric/adelic/places.hpp"
#include "toric/divisor/roof.hpp"
#include "toric/geometry/fan.hpp"

namespace toric {

// theta(x) -> theta(x + shift) - constant (the metric of D + div(alpha chi^shift) in roof form).
struct Twist {
  QVec shift;
  LogRational constant;
};

struct MetricSpec {
  enum class Kind { canonical, psi_pa, psi_oracle, theta, fubini_study, roof };
  Kind kind = Kind::canonical;
  GeneralPA psi;                // psi_pa
  OracleFunction oracle;        // psi_oracle
  ConcavePA theta;              // theta: the local roof itself, rational slopes
  std::vector<Rational> alpha;  // fubini_study: (alpha_0, ..., alpha_n)
  Roof local;                   // roof: local roof on Delta (+ shift), used for derived divisors
  std::optional<Twist> twist;

  static MetricSpec canonical() { return {}; }
  static MetricSpec psi_mode(GeneralPA f);
  static MetricSpec oracle_mode(OracleFunction f);
  static MetricSpec theta_mode(ConcavePA theta);
  static MetricSpec fubini_study(std::vector<Rational> alpha);
  static MetricSpec roof_mode(Roof r);
  bool is_twisted() const { return twist.has_value(); }
};

std::string_view kind_name(MetricSpec::Kind k);

class ToricMetrizedRDivisor {
 public:
  // Validates recessions, domains and quasi-algebraicity; adds metric places to the table.
  static ToricMetrizedRDivisor make(VirtualSupportFunction psi, PlaceTable places,
                                    std::map<std::string, MetricSpec> metrics = {});
  // All places canonical.
  static ToricMetrizedRDivisor canonical(VirtualSupportFunction psi, PlaceTable places = PlaceTable::rationals());

  std::size_t dim() const { return psi_.dim(); }
  const RationalFan& fan() const { return psi_.fan(); }
  const VirtualSupportFunction& psi() const { return psi_; }
  const PlaceTable& places() const { return places_; }
  // Non-canonical (or twisted) places.
  const std::map<std::string, MetricSpec>& metrics() const { return metrics_; }
  const MetricSpec& metric(const std::string& place) const;
  const RationalPolytope& delta() const { return delta_; }

 private:
  VirtualSupportFunction psi_{RationalFan::projective_space(1), {QVec{0}, QVec{0}}};
  PlaceTable places_;
  std::map<std::string, MetricSpec> metrics_;
  RationalPolytope delta_ = RationalPolytope::empty(0);
};

RationalPolytope delta_polytope(const ToricMetrizedRDivisor& d);
// ϑ_v = λ_v ψ_v^∨ on Δ_D.
Roof local_roof(const ToricMetrizedRDivisor& d, const std::string& place);
// Σ n_v ϑ_v.
Roof global_roof(const ToricMetrizedRDivisor& d);

// ψ_v evaluated at u (Archimedean or not); oracle_path_unsupported for roof-mode data.
double evaluate_psi(const ToricMetrizedRDivisor& d, const std::string& place, const double* u);

struct SemipositivityReport {
  bool holds = true;
  std::string place;  // first failing place
  std::string reason;
};
// Concavity of every ψ_v (and of Ψ_D for canonical places).
SemipositivityReport semipositivity(const ToricMetrizedRDivisor& d);

// −log ‖s_m‖_{v,sup} = ℓ ϑ_v(m/ℓ).
Estimate monomial_supnorm(const ToricMetrizedRDivisor& d, const QVec& m, long ell, const std::string& place);

struct OrthogonalityOptions {
  int trials = 100;
  std::uint64_t seed = 1;
  int u_points = 801;   // per coordinate, on [-u_box, u_box]
  int arg_points = 256;  // per angle; n = 2 caps the grid at 81 u-points and 64 angles
  double u_box = 25;
};

struct OrthogonalityTrial {
  double lower = 0;     // max_m ‖γ_m s_m‖
  double estimate = 0;  // grid estimate of ‖Σ γ_m s_m‖_sup
  double upper = 0;     // #(Δ∩M) · lower
  double slack = 0;     // declared grid-error bound
  bool ok = true;
};

struct OrthogonalityReport {
  std::vector<OrthogonalityTrial> trials;
  std::size_t monomials = 0;
  bool archimedean_ok = true;
  // places checked exactly via the ultrametric max formula
  std::vector<std::string> exact_places;
  bool nonarchimedean_ok = true;
  bool ok() const { return archimedean_ok && nonarchimedean_ok; }
};
OrthogonalityReport validate_orthogonality(const ToricMetrizedRDivisor& d, const OrthogonalityOptions& opts = {});

struct DominanceResult {
  std::optional<bool> holds;  // nullopt: undecided at the numeric tolerance
  std::string place;          // first place where domination fails
  Extremum gap;               // min over Δ_E of ϑ_{D,v} − ϑ_{E,v} at that place
};
// D ≥ E for E semipositive, in roof form: Δ_E ⊆ Δ_D and ϑ_{E,v} ≤ ϑ_{D,v} on Δ_E for all v.
DominanceResult dominates(const ToricMetrizedRDivisor& d, const ToricMetrizedRDivisor& e);

ToricMetrizedRDivisor pullback(const ToricMetrizedRDivisor& d, const RationalFan& finer);

// α D1 + β D2 on a common fan (canonical and piecewise affine psi-mode metrics).
ToricMetrizedRDivisor linear_combination(const Rational& a, const ToricMetrizedRDivisor& d1, const Rational& b,
                                         const ToricMetrizedRDivisor& d2);

// sup_u λ(ψ(u) − <m,u>) for a piecewise affine ψ, computed cell by cell; nullopt if unbounded.
std::optional<Rational> sup_minus_linear(const GeneralPA& psi, const QVec& m);

}  // namespace toric
