#pragma once

#include <json.hpp>

#include "toric/divisor/divisor.hpp"

namespace toric::io {

using json = nlohmann::json;

// Parsed divisor document with its run options.
struct DivisorDocument {
  ToricMetrizedRDivisor divisor;
  NumericOptions numeric;
  long ell = 600;
  long precision = 0;  // 0: library default
  json source;
};

// Throws Error(parse_error) with a field path ("metrics.inf.fubini-study[2]: ...").
DivisorDocument parse_divisor(const json& j);

// Field readers shared with the adelic documents.
Rational rational_at(const json& v, const std::string& path);
LogRational log_rational_at(const json& v, const std::string& path);
QVec qvec_at(const json& v, const std::string& path);

// Worked examples as documents: fubini-study a0 a1 ..., halfplane-theta, canonical-pn n,
// dirichlet-p1, log-sloped.
json example_spec(const std::string& name, const std::vector<std::string>& params);
std::vector<std::string> example_names();

// FNV-1a 64 of the canonical (sorted-key, compact) serialization.
std::string digest(const json& j);

}  // namespace toric::io
