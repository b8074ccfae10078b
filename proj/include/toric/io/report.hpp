#pragma once

#include "toric/adelic/mk_divisor.hpp"
#include "toric/arakelov/arakelov.hpp"
#include "toric/io/spec.hpp"

namespace toric::io {

// Exact values are strings (LogRational::str form); numeric ones carry their tolerance.
json to_json(const Estimate& e);
json to_json(const Extremum& e);
json to_json(const RationalPolytope& p);
json to_json(const RationalFan& f);
json to_json(const VirtualSupportFunction& psi);
json to_json(const Flag& f);
json to_json(const PositivityReport& r);
json to_json(const ThetaRegion& t);
json to_json(const ToricMetrizedRDivisor& d);
json to_json(const ZariskiDecomposition& z);
json to_json(const FujitaApproximation& f);
json to_json(const DirichletCertificate& c);
json to_json(const OracleTable& t);
json to_json(const OrthogonalityReport& r);
json to_json(const GapReport& g);
json to_json(const ScalingResult& s);

Estimate estimate_from_json(const json& j);
RationalPolytope polytope_from_json(const json& j);

// "exact" if every estimate in the results is exact, otherwise "numeric".
std::string provenance_of(const json& results);

}  // namespace toric::io
