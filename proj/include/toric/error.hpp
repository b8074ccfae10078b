#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toric {

enum class Errc {
  parse_error,
  invalid_argument,
  budget_exceeded,
  not_in_stability_set,
  empty_stability_set,
  not_full_dimensional,
  empty,
  unbounded,
  face_not_rational_direction,
  unsupported_field,
  product_not_strictly_less,
  point_outside_polytope,
  grid_too_coarse,
  incomparable_fans,
  not_a_refinement,
  empty_polytope,
  not_semipositive,
  not_pseudo_effective,
  oracle_path_unsupported,
  not_big,
  point_not_in_theta,
  theta_empty,
  invalid_parameters,
  construction_error,
};

std::string_view errc_name(Errc e);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace toric
