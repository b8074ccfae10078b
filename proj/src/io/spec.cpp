#include "toric/io/spec.hpp"

#include <cstdio>

#include "toric/numerics/certified.hpp"

namespace toric::io {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) { fail(Errc::parse_error, path + ": " + msg); }

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) bad(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(path, "missing field '" + key + "'");
  return *it;
}

std::string text_of(const json& v, const std::string& path) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  // Decimal literals are read as written, not as their binary double value.
  if (v.is_number_float()) return v.dump();
  bad(path, "expected a number or a string");
}

std::vector<std::size_t> index_list(const json& v, const std::string& path) {
  if (!v.is_array()) bad(path, "expected an array of indices");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer() || v[i].get<long>() < 0) bad(path + "[" + std::to_string(i) + "]", "expected a non-negative integer");
    out.push_back(v[i].get<std::size_t>());
  }
  return out;
}

QVec sized_qvec(const json& v, std::size_t n, const std::string& path) {
  QVec q = qvec_at(v, path);
  if (q.size() != n) bad(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(q.size()));
  return q;
}

RationalFan parse_fan(const json& j, std::size_t n, const std::string& path) {
  if (j.is_object() && j.contains("projective_space")) {
    if (j["projective_space"] != n) bad(path + ".projective_space", "must equal the lattice rank");
    return RationalFan::projective_space(n);
  }
  const auto& rays = field(j, "rays", path);
  const auto& cones = field(j, "cones", path);
  if (!rays.is_array() || !cones.is_array()) bad(path, "rays and cones must be arrays");
  std::vector<QVec> rs;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    auto r = sized_qvec(rays[i], n, path + ".rays[" + std::to_string(i) + "]");
    for (const auto& x : r)
      if (!x.is_integer()) bad(path + ".rays[" + std::to_string(i) + "]", "rays must be integer vectors");
    rs.push_back(std::move(r));
  }
  std::vector<std::vector<std::size_t>> cs;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    auto c = index_list(cones[i], path + ".cones[" + std::to_string(i) + "]");
    for (auto k : c)
      if (k >= rs.size()) bad(path + ".cones[" + std::to_string(i) + "]", "ray index out of range");
    cs.push_back(std::move(c));
  }
  try {
    return RationalFan::make(n, std::move(rs), std::move(cs));
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

VirtualSupportFunction parse_psi(const json& j, const RationalFan& fan, const std::string& path) {
  if (j.contains("ray_values")) {
    const auto& v = j["ray_values"];
    return VirtualSupportFunction::from_ray_values(fan, sized_qvec(v, fan.rays().size(), path + ".ray_values"));
  }
  const auto& dv = field(j, "defining_vectors", path);
  if (!dv.is_array() || dv.size() != fan.size())
    bad(path + ".defining_vectors", "expected one vector per maximal cone (" + std::to_string(fan.size()) + ")");
  std::vector<QVec> m;
  for (std::size_t i = 0; i < dv.size(); ++i)
    m.push_back(sized_qvec(dv[i], fan.dim(), path + ".defining_vectors[" + std::to_string(i) + "]"));
  try {
    return VirtualSupportFunction(fan, std::move(m));
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

std::vector<AffineForm> parse_forms(const json& j, std::size_t n, const std::string& path) {
  if (!j.is_array() || j.empty()) bad(path, "expected a nonempty array of forms");
  std::vector<AffineForm> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string p = path + "[" + std::to_string(i) + "]";
    out.push_back({sized_qvec(field(j[i], "slope", p), n, p + ".slope"), log_rational_at(field(j[i], "offset", p), p + ".offset")});
  }
  return out;
}

GeneralPA parse_general_pa(const json& j, std::size_t n, const std::string& path) {
  if (j.contains("forms")) return GeneralPA::from_concave(ConcavePA(n, parse_forms(j["forms"], n, path + ".forms")));
  const auto& cells = field(j, "cells", path);
  if (!cells.is_array() || cells.empty()) bad(path + ".cells", "expected a nonempty array");
  std::vector<PACell> out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::string p = path + ".cells[" + std::to_string(i) + "]";
    PACell c;
    const auto& cs = field(cells[i], "constraints", p);
    if (!cs.is_array()) bad(p + ".constraints", "expected an array");
    for (std::size_t k = 0; k < cs.size(); ++k) {
      std::string q = p + ".constraints[" + std::to_string(k) + "]";
      c.constraints.push_back({sized_qvec(field(cs[k], "normal", q), n, q + ".normal"), rational_at(field(cs[k], "offset", q), q + ".offset")});
    }
    c.slope = sized_qvec(field(cells[i], "slope", p), n, p + ".slope");
    c.offset = rational_at(field(cells[i], "offset", p), p + ".offset");
    out.push_back(std::move(c));
  }
  try {
    return GeneralPA::make(n, std::move(out));
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

MetricSpec parse_metric(const json& j, std::size_t n, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() != "canonical") bad(path, "unknown metric '" + j.get<std::string>() + "'");
    return MetricSpec::canonical();
  }
  if (!j.is_object()) bad(path, "expected \"canonical\" or an object");
  MetricSpec m;
  int kinds = 0;
  if (j.contains("canonical")) {
    m = MetricSpec::canonical();
    ++kinds;
  }
  if (j.contains("fubini-study")) {
    const auto& a = j["fubini-study"];
    m = MetricSpec::fubini_study(qvec_at(a, path + ".fubini-study"));
    ++kinds;
  }
  if (j.contains("pa-theta")) {
    m = MetricSpec::theta_mode(ConcavePA(n, parse_forms(j["pa-theta"], n, path + ".pa-theta")));
    ++kinds;
  }
  if (j.contains("pa-psi")) {
    m = MetricSpec::psi_mode(parse_general_pa(j["pa-psi"], n, path + ".pa-psi"));
    ++kinds;
  }
  if (kinds != 1) bad(path, "exactly one of canonical, fubini-study, pa-theta, pa-psi is required");
  if (j.contains("twist")) {
    const auto& t = j["twist"];
    m.twist = Twist{sized_qvec(field(t, "shift", path + ".twist"), n, path + ".twist.shift"),
                    log_rational_at(field(t, "constant", path + ".twist"), path + ".twist.constant")};
  }
  return m;
}

PlaceTable parse_places(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of places");
  std::vector<std::uint64_t> primes;
  std::vector<Place> custom;
  bool rational = true;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string p = path + "[" + std::to_string(i) + "]";
    const auto& e = j[i];
    std::string id = e.is_string() ? e.get<std::string>() : text_of(field(e, "id", p), p + ".id");
    std::uint64_t prime;
    try {
      prime = PlaceTable::prime_of(id);
    } catch (const Error& err) {
      bad(p + ".id", err.what());
    }
    Place pl{id, prime == 0, prime, 1, prime == 0 ? LogRational(1) : LogRational::log_prime(prime)};
    if (e.is_object()) {
      if (e.contains("weight")) {
        auto w = rational_at(e["weight"], p + ".weight");
        if (w.sign() <= 0) bad(p + ".weight", "must be positive");
        rational = rational && w == pl.weight;
        pl.weight = w;
      }
      if (e.contains("lambda")) {
        auto l = log_rational_at(e["lambda"], p + ".lambda");
        if (certified_sign(l) <= 0) bad(p + ".lambda", "must be positive");
        rational = rational && l == pl.lambda;
        pl.lambda = l;
      }
    }
    if (prime != 0) primes.push_back(prime);
    custom.push_back(pl);
  }
  try {
    if (rational) return PlaceTable::rationals(primes);
  } catch (const Error& e) {
    bad(path, e.what());
  }
  if (std::none_of(custom.begin(), custom.end(), [](const Place& p) { return p.id == "inf"; }))
    custom.insert(custom.begin(), Place{"inf", true, 0, 1, 1});
  return PlaceTable::custom(std::move(custom), 1);
}

json rational_array(const std::vector<std::string>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(x);
  return a;
}

json pn_document(std::size_t n) {
  json rv = json::array();
  for (std::size_t i = 0; i < n; ++i) rv.push_back("0");
  rv.push_back("-1");
  return {{"rank", n}, {"fan", {{"projective_space", n}}}, {"divisor", {{"ray_values", rv}}}};
}

}  // namespace

Rational rational_at(const json& v, const std::string& path) {
  try {
    return Rational::parse(text_of(v, path));
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

LogRational log_rational_at(const json& v, const std::string& path) {
  try {
    return LogRational::parse(text_of(v, path));
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

QVec qvec_at(const json& v, const std::string& path) {
  if (!v.is_array()) bad(path, "expected an array");
  QVec q;
  for (std::size_t i = 0; i < v.size(); ++i) q.push_back(rational_at(v[i], path + "[" + std::to_string(i) + "]"));
  return q;
}

DivisorDocument parse_divisor(const json& j) {
  if (!j.is_object()) bad("$", "expected an object");
  const auto& rank = field(j, "rank", "$");
  if (!rank.is_number_integer() || rank.get<long>() < 1 || rank.get<std::size_t>() < 1 || rank.get<std::size_t>() > 3)
    bad("rank", "expected an integer in 1..3");
  const std::size_t n = rank.get<std::size_t>();
  auto fan = parse_fan(field(j, "fan", "$"), n, "fan");
  auto psi = parse_psi(field(j, "divisor", "$"), fan, "divisor");
  PlaceTable places = j.contains("places") ? parse_places(j["places"], "places") : PlaceTable::rationals();
  std::map<std::string, MetricSpec> metrics;
  if (j.contains("metrics")) {
    const auto& ms = j["metrics"];
    if (!ms.is_object()) bad("metrics", "expected an object keyed by place id");
    for (const auto& [id, m] : ms.items()) metrics[id] = parse_metric(m, n, "metrics." + id);
  }
  DivisorDocument doc{ToricMetrizedRDivisor::canonical(psi, places), {}, 600, 0, j};
  try {
    doc.divisor = ToricMetrizedRDivisor::make(psi, places, std::move(metrics));
  } catch (const Error& e) {
    if (e.code() == Errc::parse_error) throw;
    bad("metrics", std::string(errc_name(e.code())) + ": " + e.what());
  }
  if (j.contains("options")) {
    const auto& o = j["options"];
    if (!o.is_object()) bad("options", "expected an object");
    if (o.contains("tol")) {
      if (!o["tol"].is_number() || !(o["tol"].get<double>() > 0)) bad("options.tol", "expected a positive number");
      doc.numeric.tol = o["tol"].get<double>();
    }
    if (o.contains("ell")) {
      if (!o["ell"].is_number_integer() || o["ell"].get<long>() < 1) bad("options.ell", "expected a positive integer");
      doc.ell = o["ell"].get<long>();
    }
    if (o.contains("precision")) {
      if (!o["precision"].is_number_integer()) bad("options.precision", "expected a bit count");
      doc.precision = o["precision"].get<long>();
      if (doc.precision < 53 || doc.precision > kMaxPrecisionBits) bad("options.precision", "expected 53..4096 bits");
    }
    if (o.contains("cubature_max_subdivisions")) {
      if (!o["cubature_max_subdivisions"].is_number_integer() || o["cubature_max_subdivisions"].get<long>() < 1) bad("options.cubature_max_subdivisions", "expected a positive integer");
      doc.numeric.cubature.max_subdivisions = o["cubature_max_subdivisions"].get<long>();
    }
  }
  return doc;
}

std::vector<std::string> example_names() {
  return {"fubini-study", "halfplane-theta", "canonical-pn", "dirichlet-p1", "log-sloped"};
}

json example_spec(const std::string& name, const std::vector<std::string>& params) {
  if (name == "fubini-study") {
    if (params.size() < 2 || params.size() > 4) fail(Errc::invalid_argument, "fubini-study needs 2 to 4 weights");
    for (const auto& p : params) Rational::parse(p);
    json d = pn_document(params.size() - 1);
    d["metrics"] = {{"inf", {{"fubini-study", rational_array(params)}}}};
    return d;
  }
  if (name == "halfplane-theta") {
    json d = pn_document(2);
    d["metrics"] = {{"inf", {{"pa-theta", json::array({{{"slope", {"-2", "-2"}}, {"offset", "1"}}})}}}};
    d["options"] = {{"ell", 600}};
    return d;
  }
  if (name == "canonical-pn") {
    long n = params.empty() ? 2 : std::stol(params[0]);
    if (n < 1 || n > 3) fail(Errc::invalid_argument, "canonical-pn needs n in 1..3");
    json d = pn_document(n);
    d["places"] = json::array({"inf", "2", "3"});
    return d;
  }
  if (name == "dirichlet-p1") {
    // ϑ_2(x) = x/2, ϑ_inf = -1/8 on [0,1]
    json d = pn_document(1);
    d["places"] = json::array({"inf", "2"});
    d["metrics"] = {{"2", {{"pa-theta", json::array({{{"slope", {"1/2"}}, {"offset", "0"}}})}}},
                    {"inf", {{"pa-theta", json::array({{{"slope", {"0"}}, {"offset", "-1/8"}}})}}}};
    return d;
  }
  if (name == "log-sloped") {
    json d = pn_document(2);
    d["places"] = json::array({"inf", "2"});
    json forms = json::array({{{"slope", {"0", "0"}}, {"offset", "0"}},
                              {{"slope", {"1", "0"}}, {"offset", "0"}},
                              {{"slope", {"0", "1"}}, {"offset", "0"}},
                              {{"slope", {"1/3", "1/3"}}, {"offset", "-1/2"}}});
    d["metrics"] = {{"2", {{"pa-psi", {{"forms", forms}}}}},
                    {"inf", {{"pa-theta", json::array({{{"slope", {"-1", "0"}}, {"offset", "1/4"}}})}}}};
    return d;
  }
  fail(Errc::invalid_argument, "unknown example '" + name + "'");
}

std::string digest(const json& j) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace toric::io
