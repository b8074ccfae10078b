#include "toric/adelic/places.hpp"

#include <algorithm>

#include "toric/error.hpp"

namespace toric {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PlaceTable PlaceTable::rationals(const std::vector<std::uint64_t>& primes) {
  PlaceTable t;
  t.places_.push_back({"inf", true, 0, 1, 1});
  std::vector<std::uint64_t> ps = primes;
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  for (auto p : ps) {
    if (!is_prime(p)) fail(Errc::invalid_argument, std::to_string(p) + " is not prime");
    t.places_.push_back({id_of(p), false, p, 1, LogRational::log_prime(p)});
  }
  return t;
}

PlaceTable PlaceTable::custom(std::vector<Place> places, Rational degree) {
  PlaceTable t;
  t.places_ = std::move(places);
  t.degree_ = std::move(degree);
  t.rational_field_ = false;
  return t;
}

std::uint64_t PlaceTable::prime_of(const std::string& id) {
  if (id == "inf") return 0;
  std::uint64_t p = 0;
  for (char ch : id) {
    if (ch < '0' || ch > '9' || p > (1ull << 40)) fail(Errc::parse_error, "bad place id '" + id + "'");
    p = p * 10 + static_cast<std::uint64_t>(ch - '0');
  }
  if (id.empty() || !is_prime(p)) fail(Errc::parse_error, "place id '" + id + "' is neither inf nor a prime");
  return p;
}

bool PlaceTable::contains(const std::string& id) const {
  return std::any_of(places_.begin(), places_.end(), [&](const Place& p) { return p.id == id; });
}

const Place& PlaceTable::at(const std::string& id) const {
  for (const auto& p : places_)
    if (p.id == id) return p;
  fail(Errc::invalid_argument, "unknown place '" + id + "'");
}

PlaceTable PlaceTable::with_prime(std::uint64_t p) const {
  if (contains(id_of(p))) return *this;
  if (!rational_field_) fail(Errc::unsupported_field, "cannot add primes to a custom place table");
  std::vector<std::uint64_t> ps{p};
  for (const auto& pl : places_)
    if (!pl.archimedean) ps.push_back(pl.prime);
  return rationals(ps);
}

}  // namespace toric
