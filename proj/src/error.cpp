#include "toric/error.hpp"

namespace toric {

std::string_view errc_name(Errc e) {
  switch (e) {
    case Errc::parse_error: return "parse-error";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::budget_exceeded: return "budget-exceeded";
    case Errc::not_in_stability_set: return "not-in-stability-set";
    case Errc::empty_stability_set: return "empty-stability-set";
    case Errc::not_full_dimensional: return "not-full-dimensional";
    case Errc::empty: return "empty";
    case Errc::unbounded: return "unbounded";
    case Errc::face_not_rational_direction: return "face-not-rational-direction";
    case Errc::unsupported_field: return "unsupported-field";
    case Errc::product_not_strictly_less: return "product-not-strictly-less";
    case Errc::point_outside_polytope: return "point-outside-polytope";
    case Errc::grid_too_coarse: return "grid-too-coarse";
    case Errc::incomparable_fans: return "incomparable-fans";
    case Errc::not_a_refinement: return "not-a-refinement";
    case Errc::empty_polytope: return "empty-polytope";
    case Errc::not_semipositive: return "not-semipositive";
    case Errc::not_pseudo_effective: return "not-pseudo-effective";
    case Errc::oracle_path_unsupported: return "oracle-path-unsupported";
    case Errc::not_big: return "not-big";
    case Errc::point_not_in_theta: return "point-not-in-theta";
    case Errc::theta_empty: return "theta-empty";
    case Errc::invalid_parameters: return "invalid-parameters";
    case Errc::construction_error: return "construction-error";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace toric
