#include "toric/io/report.hpp"

namespace toric::io {

namespace {

json strs(const QVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

json strs(const std::vector<LogRational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

json optional_part(const std::optional<ToricMetrizedRDivisor>& d) { return d ? to_json(*d) : json(nullptr); }

}  // namespace

json to_json(const Estimate& e) {
  json j;
  j["value"] = e.value;
  if (e.exact) {
    j["exact"] = e.exact->str();
    j["provenance"] = "exact";
  } else {
    j["exact"] = nullptr;
    j["provenance"] = "numeric";
    j["tolerance"] = e.error;
  }
  return j;
}

json to_json(const Extremum& e) {
  json j = to_json(static_cast<const Estimate&>(e));
  j["point"] = e.point;
  j["exact_point"] = e.exact_point ? strs(*e.exact_point) : json(nullptr);
  return j;
}

json to_json(const RationalPolytope& p) {
  json j;
  j["dim"] = p.dim();
  j["empty"] = p.is_empty();
  j["affine_dimension"] = p.is_empty() ? json(nullptr) : json(p.affine_dimension());
  json v = json::array();
  for (const auto& x : p.vertices()) v.push_back(strs(x));
  j["vertices"] = v;
  json h = json::array();
  for (const auto& hs : p.hrep()) h.push_back({{"normal", strs(hs.normal)}, {"offset", hs.offset.str()}});
  j["hrep"] = h;
  return j;
}

json to_json(const RationalFan& f) {
  json rays = json::array();
  for (const auto& r : f.rays()) rays.push_back(strs(r));
  return {{"rays", rays}, {"cones", f.maximal_cones()}};
}

json to_json(const VirtualSupportFunction& psi) {
  json dv = json::array();
  for (const auto& m : psi.defining_vectors()) dv.push_back(strs(m));
  return {{"fan", to_json(psi.fan())}, {"defining_vectors", dv}};
}

json to_json(const Flag& f) { return {{"value", std::string(tri_name(f.value))}, {"witness", f.witness}}; }

json to_json(const PositivityReport& r) {
  json j{{"ample", to_json(r.ample)},
         {"nef", to_json(r.nef)},
         {"big", to_json(r.big)},
         {"pseudo_effective", to_json(r.pseudo_effective)},
         {"effective", to_json(r.effective)},
         {"semipositive", r.semipositive},
         {"consistent", r.consistent()}};
  j["theta_max"] = r.max ? to_json(*r.max) : json(nullptr);
  j["theta_min"] = r.min ? to_json(*r.min) : json(nullptr);
  return j;
}

json to_json(const ThetaRegion& t) {
  json j{{"empty", t.empty},
         {"quasi_rational", std::string(tri_name(t.quasi_rational))},
         {"method", t.method},
         {"reason", t.reason}};
  j["polytope"] = t.polytope ? to_json(*t.polytope) : json(nullptr);
  j["boundary_samples"] = t.boundary;
  return j;
}

json to_json(const ToricMetrizedRDivisor& d) {
  json metrics = json::object();
  for (const auto& [id, m] : d.metrics()) {
    json e{{"kind", std::string(kind_name(m.kind))}};
    if (m.twist) e["twist"] = {{"shift", strs(m.twist->shift)}, {"constant", m.twist->constant.str()}};
    if (m.kind == MetricSpec::Kind::fubini_study) e["alpha"] = strs(m.alpha);
    metrics[id] = e;
  }
  json places = json::array();
  for (const auto& p : d.places().places())
    places.push_back({{"id", p.id}, {"weight", p.weight.str()}, {"lambda", p.lambda.str()}});
  return {{"psi", to_json(d.psi())}, {"delta", to_json(d.delta())}, {"places", places}, {"metrics", metrics}};
}

json to_json(const ZariskiDecomposition& z) {
  json j{{"refused", z.refused}, {"reason", z.reason}, {"strong", z.strong}, {"theta", to_json(z.theta)}};
  if (z.refused) return j;
  j["refined_fan"] = to_json(z.refined_fan);
  j["nef_part"] = optional_part(z.nef_part);
  j["nef_verified"] = to_json(z.nef_verified);
  j["effective_verified"] = to_json(z.effective_verified);
  j["vol_hat_nef"] = z.vol_nef ? to_json(*z.vol_nef) : json(nullptr);
  j["vol_hat_d"] = z.vol_d ? to_json(*z.vol_d) : json(nullptr);
  j["volumes_equal"] = z.volumes_equal;
  return j;
}

json to_json(const FujitaApproximation& f) {
  return {{"refined_fan", to_json(f.refined_fan)},
          {"inner", to_json(f.inner)},
          {"t", f.t.str()},
          {"delta", f.delta.str()},
          {"ample_part", optional_part(f.ample_part)},
          {"ample_verified", to_json(f.ample_verified)},
          {"effective_verified", to_json(f.effective_verified)},
          {"vol_hat_ample", to_json(f.vol_ample)},
          {"vol_hat_d", to_json(f.vol_d)},
          {"epsilon", f.epsilon},
          {"volume_ok", f.volume_ok}};
}

json to_json(const DirichletCertificate& c) {
  json gamma = json::object();
  for (const auto& [id, g] : c.gamma) gamma[id] = g.str();
  json beta = json::object();
  for (const auto& [p, b] : c.beta)
    beta[std::to_string(p)] = {{"value", b.value}, {"exact", b.exact ? json(b.exact->str()) : json(nullptr)}};
  return {{"a", strs(c.a)},
          {"gamma", gamma},
          {"beta", beta},
          {"shifted", optional_part(c.shifted)},
          {"effective", to_json(c.effective)}};
}

json to_json(const OracleTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"ell", r.ell}, {"estimate", r.estimate}, {"reference", r.reference}, {"gap", r.gap}});
  return {{"rows", rows}, {"fitted_c", t.fitted_c}, {"reference_exact", t.reference_exact}};
}

json to_json(const OrthogonalityReport& r) {
  json trials = json::array();
  for (const auto& t : r.trials)
    trials.push_back({{"lower", t.lower}, {"estimate", t.estimate}, {"upper", t.upper}, {"slack", t.slack}, {"ok", t.ok}});
  return {{"monomials", r.monomials},
          {"archimedean_ok", r.archimedean_ok},
          {"nonarchimedean_ok", r.nonarchimedean_ok},
          {"exact_places", r.exact_places},
          {"ok", r.ok()},
          {"trials", trials}};
}

json to_json(const GapReport& g) { return {{"gap", g.gap}, {"bound", g.bound}, {"ok", g.ok}}; }

json to_json(const ScalingResult& s) {
  json ex = json::object();
  for (const auto& [p, e] : s.exponents) ex[std::to_string(p)] = e;
  json w = json::array();
  for (const auto& x : s.witness)
    w.push_back({{"place", x.place}, {"value", x.value.str()}, {"bounded", x.bounded}, {"strict", x.strict}});
  return {{"ell0", s.ell0}, {"ell", s.ell}, {"alpha", s.alpha.str()}, {"exponents", ex}, {"witness", w},
          {"verified", s.verified}};
}

Estimate estimate_from_json(const json& j) {
  Estimate e;
  e.value = j.at("value").get<double>();
  if (!j.at("exact").is_null()) e.exact = LogRational::parse(j["exact"].get<std::string>());
  if (j.contains("tolerance")) e.error = j["tolerance"].get<double>();
  return e;
}

RationalPolytope polytope_from_json(const json& j) {
  const std::size_t n = j.at("dim").get<std::size_t>();
  if (j.at("empty").get<bool>()) return RationalPolytope::empty(n);
  std::vector<LHalfspace> hs;
  for (const auto& h : j.at("hrep")) {
    QVec a;
    for (const auto& x : h.at("normal")) a.push_back(Rational::parse(x.get<std::string>()));
    hs.push_back({a, LogRational::parse(h.at("offset").get<std::string>())});
  }
  return RationalPolytope::from_hrep(n, hs);
}

std::string provenance_of(const json& results) {
  bool numeric = false;
  std::function<void(const json&)> walk = [&](const json& j) {
    if (j.is_object()) {
      auto it = j.find("provenance");
      if (it != j.end() && *it == "numeric") numeric = true;
      for (const auto& [k, v] : j.items()) walk(v);
    } else if (j.is_array()) {
      for (const auto& v : j) walk(v);
    }
  };
  walk(results);
  return numeric ? "numeric" : "exact";
}

}  // namespace toric::io
