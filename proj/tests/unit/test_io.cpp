#include <doctest.h>

#include "toric/io/examples.hpp"
#include "toric/io/report.hpp"

using namespace toric;
using namespace toric::io;

TEST_CASE("log-rational text form") {
  for (const auto& s : {"0", "-3/2", "1/2 + -3/2*log(2)", "0 + 1*log(3) + -2*log(5)"}) {
    auto x = LogRational::parse(s);
    CHECK(LogRational::parse(x.str()) == x);
  }
  CHECK(LogRational::parse("log(6)") == LogRational::log_of(6));
  CHECK(LogRational::parse("1/2*log(9) - 1") == LogRational::log_prime(3) - LogRational(1));
  CHECK(LogRational::parse("-log(2)") == -LogRational::log_prime(2));
  CHECK(LogRational::parse("2.5e-1") == LogRational(Rational(1, 4)));
  CHECK_THROWS_AS(LogRational::parse("log(-2)"), Error);
  CHECK_THROWS_AS(LogRational::parse("1 + x"), Error);
}

TEST_CASE("example documents parse to the library examples") {
  auto hp = parse_divisor(example_spec("halfplane-theta", {}));
  CHECK(arithmetic_volumes(hp.divisor).vol_hat.exact == arithmetic_volumes(examples::halfplane_theta()).vol_hat.exact);
  CHECK(hp.ell == 600);
  auto fs = parse_divisor(example_spec("fubini-study", {"2", "3", "4"}));
  CHECK(fs.divisor.metric("inf").alpha == std::vector<Rational>{2, 3, 4});
  auto can = parse_divisor(example_spec("canonical-pn", {"3"}));
  CHECK(can.divisor.dim() == 3);
  CHECK(can.divisor.places().contains("3"));
  for (const auto& name : example_names()) {
    std::vector<std::string> params;
    if (name == "fubini-study") params = {"1", "1"};
    auto doc = parse_divisor(example_spec(name, params));
    CHECK(digest(doc.source) == digest(json::parse(example_spec(name, params).dump())));
  }
  CHECK_THROWS_AS(example_spec("nope", {}), Error);
}

TEST_CASE("field diagnostics") {
  auto d = example_spec("halfplane-theta", {});
  auto expect_path = [](const json& j, const std::string& path) {
    try {
      parse_divisor(j);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::parse_error);
      CHECK(std::string(e.what()).find(path) != std::string::npos);
    }
  };
  auto a = d;
  a["metrics"]["inf"]["pa-theta"][0]["slope"] = {"1"};
  expect_path(a, "metrics.inf.pa-theta[0].slope");
  auto b = d;
  b["rank"] = 5;
  expect_path(b, "rank");
  auto c = d;
  c["fan"] = {{"rays", {{1, 0}, {0, 1}}}, {"cones", {{0, 1}}}};
  expect_path(c, "fan");
  auto e = d;
  e["metrics"]["inf"] = {{"fubini-study", {"1", "x"}}};
  expect_path(e, "metrics.inf.fubini-study[1]");
  auto f = d;
  f["places"] = {"inf", "4"};
  expect_path(f, "places");
  auto g = d;
  g["options"]["tol"] = -1;
  expect_path(g, "options.tol");
  // decimal literals are read as written
  auto h = d;
  h["metrics"]["inf"]["pa-theta"][0]["offset"] = 0.1;
  auto doc = parse_divisor(h);
  CHECK(local_roof(doc.divisor, "inf").exact_value({0, 0}) == LogRational(Rational(1, 10)));
  // constructor invariants (recession) surface as parse errors
  auto k = example_spec("log-sloped", {});
  k["metrics"]["2"]["pa-psi"]["forms"][0]["slope"] = {"-1", "0"};
  expect_path(k, "metrics");
}

TEST_CASE("reports round-trip") {
  auto d = examples::halfplane_theta();
  auto v = arithmetic_volumes(d);
  for (const auto& e : {v.vol_hat, v.vol_chi, arithmetic_volumes(examples::fubini_study({1, 1})).vol_hat}) {
    auto j = to_json(e);
    auto back = estimate_from_json(json::parse(j.dump()));
    CHECK(to_json(back) == j);
  }
  auto th = theta_region(d);
  auto pj = to_json(*th.polytope);
  CHECK(polytope_from_json(json::parse(pj.dump())) == *th.polytope);
  auto z = to_json(zariski(d));
  CHECK(json::parse(z.dump()) == z);
  CHECK(provenance_of(z) == "exact");
  CHECK(provenance_of(to_json(classify(examples::fubini_study({Rational(1, 2), 1, 1})))) == "exact");
  CHECK(provenance_of(to_json(arithmetic_volumes(examples::fubini_study({1, 1})).vol_chi)) == "numeric");
}
