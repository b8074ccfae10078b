#include "toric/arakelov/arakelov.hpp"
#include "toric/numerics/certified.hpp"

namespace toric {

namespace {

std::string at_point(const Extremum& e) {
  if (e.exact_point) return " at x = " + str(*e.exact_point);
  std::string s = " at x ~ (";
  for (std::size_t i = 0; i < e.point.size(); ++i) s += (i ? ", " : "") + std::to_string(e.point[i]);
  return s + ")";
}

std::string value_str(const Estimate& e) {
  if (e.exact) return e.exact->str();
  return std::to_string(e.value) + " +- " + std::to_string(e.error);
}

// Tri-state sign test: want > 0 (strict) or >= 0.
Tri test_sign(const Estimate& e, bool strict) {
  auto s = e.sign();
  if (!s) return Tri::unknown;
  return (strict ? *s > 0 : *s >= 0) ? Tri::yes : Tri::no;
}

Flag flag(Tri t, std::string witness) { return {t, std::move(witness)}; }

}  // namespace

bool PositivityReport::consistent() const {
  auto implies = [](const Flag& a, const Flag& b) { return a.value != Tri::yes || b.value == Tri::yes; };
  return implies(ample, nef) && implies(nef, pseudo_effective) && implies(big, pseudo_effective) &&
         implies(effective, pseudo_effective);
}

Flag effective_flag(const ToricMetrizedRDivisor& d) {
  const std::size_t n = d.dim();
  const QVec zero(n);
  if (d.delta().is_empty() || !d.delta().contains(zero)) return flag(Tri::no, "0 is not in Delta_D");
  Tri t = Tri::yes;
  std::string witness = "theta_v(0) >= 0 at every place";
  for (const auto& [id, m] : d.metrics()) {
    Roof r = local_roof(d, id);
    Estimate e;
    if (auto v = r.exact_value(zero)) {
      e.exact = *v;
      e.value = v->to_double();
    } else {
      e.value = r.value(zero);
      e.error = 1e-9;
    }
    Tri s = test_sign(e, false);
    if (s == Tri::no) return flag(Tri::no, "theta_" + id + "(0) = " + value_str(e) + " < 0");
    if (s == Tri::unknown) {
      t = Tri::unknown;
      witness = "theta_" + id + "(0) = " + value_str(e) + " undecided";
    }
  }
  return flag(t, witness);
}

Flag effective_flag(const DifferenceDivisor& e) {
  auto r = dominates(e.plus, e.minus);
  if (!r.holds) return flag(Tri::unknown, "domination undecided at place " + r.place);
  if (*r.holds) return flag(Tri::yes, "plus part dominates the semipositive minus part");
  if (r.place.empty()) return flag(Tri::no, "Delta of the minus part is not contained in Delta of the plus part");
  return flag(Tri::no, "min of theta difference at place " + r.place + " is " + value_str(r.gap) + at_point(r.gap));
}

PositivityReport classify(const ToricMetrizedRDivisor& d, const NumericOptions& opts) {
  PositivityReport rep;
  auto sp = semipositivity(d);
  rep.semipositive = sp.holds && d.psi().is_concave();
  const auto& delta = d.delta();
  if (delta.is_empty()) {
    const std::string w = "Delta_D is empty";
    rep.ample = rep.nef = rep.big = rep.pseudo_effective = rep.effective = flag(Tri::no, w);
    return rep;
  }
  Roof r = global_roof(d);
  rep.max = roof_max(r, opts);
  rep.min = roof_min(r);
  const auto& mx = *rep.max;
  const auto& mn = *rep.min;

  auto concavity = d.psi().concavity();
  std::string not_sp;
  if (!concavity.holds)
    not_sp = "Psi_D not concave at u = " + str(concavity.u);
  else if (!sp.holds)
    not_sp = "place " + sp.place + ": " + sp.reason;

  if (!not_sp.empty()) {
    rep.nef = flag(Tri::no, not_sp);
  } else {
    Tri t = test_sign(mn, false);
    rep.nef = flag(t, "min theta = " + value_str(mn) + at_point(mn));
  }
  auto strict = d.psi().strict_concavity();
  if (!not_sp.empty()) {
    rep.ample = flag(Tri::no, not_sp);
  } else if (!strict.holds) {
    rep.ample = flag(Tri::no, "Psi_D not strictly concave: cones " + std::to_string(strict.sigma) + ", " +
                                  std::to_string(strict.tau) + " at u = " + str(strict.u));
  } else {
    rep.ample = flag(test_sign(mn, true), "min theta = " + value_str(mn) + at_point(mn));
  }
  if (!delta.is_full_dimensional()) {
    rep.big = flag(Tri::no, "dim Delta_D = " + std::to_string(delta.affine_dimension()) + " < n");
  } else {
    rep.big = flag(test_sign(mx, true), "max theta = " + value_str(mx) + at_point(mx));
  }
  rep.pseudo_effective = flag(test_sign(mx, false), "max theta = " + value_str(mx) + at_point(mx));
  rep.effective = effective_flag(d);
  if (!rep.consistent()) fail(Errc::construction_error, "positivity flags violate the implication lattice");
  return rep;
}

}  // namespace toric
