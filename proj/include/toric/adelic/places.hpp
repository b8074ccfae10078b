#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "toric/numerics/log_rational.hpp"

namespace toric {

// A place v with weight n_v and scale lambda_v. prime == 0 marks the Archimedean place.
struct Place {
  std::string id;
  bool archimedean = false;
  std::uint64_t prime = 0;
  Rational weight = 1;
  LogRational lambda = 1;
};

class PlaceTable {
 public:
  // Places of Q: infinity and the listed primes (n_v = 1, lambda_inf = 1, lambda_p = log p, d_K = 1).
  static PlaceTable rationals(const std::vector<std::uint64_t>& primes = {});
  // Arbitrary table (e.g. a function field); the counting operations reject it.
  static PlaceTable custom(std::vector<Place> places, Rational degree);

  static std::string id_of(std::uint64_t prime) { return prime == 0 ? "inf" : std::to_string(prime); }
  // Parses "inf" or a prime; throws parse_error otherwise.
  static std::uint64_t prime_of(const std::string& id);

  bool is_rational_field() const { return rational_field_; }
  const Rational& degree() const { return degree_; }
  const std::vector<Place>& places() const { return places_; }
  bool contains(const std::string& id) const;
  const Place& at(const std::string& id) const;
  // Table with the prime added (no-op for Q when already present).
  PlaceTable with_prime(std::uint64_t p) const;

 private:
  std::vector<Place> places_;
  Rational degree_ = 1;
  bool rational_field_ = true;
};

bool is_prime(std::uint64_t n);

}  // namespace toric
