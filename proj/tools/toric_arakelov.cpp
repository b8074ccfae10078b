// toric-arakelov: command-line front end over the library.
#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "toric/io/report.hpp"
#include "toric/numerics/certified.hpp"

using namespace toric;
using io::json;

namespace {

enum Exit { ok = 0, parse = 2, precondition = 3, budget = 4 };

int exit_code(const Error& e) {
  switch (e.code()) {
    case Errc::parse_error: return parse;
    case Errc::budget_exceeded: return budget;
    default: return precondition;
  }
}

json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) fail(Errc::parse_error, path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> line:column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(Errc::parse_error, path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

QVec parse_point(const std::string& s, const std::string& what) {
  QVec q;
  for (const auto& x : split(s, ',')) {
    try {
      q.push_back(Rational::parse(x));
    } catch (const Error& e) {
      fail(Errc::parse_error, what + ": " + e.what());
    }
  }
  return q;
}

struct Options {
  std::string command;
  std::string spec;
  std::string output;
  bool pretty = false;
  std::string cone;
  std::string place;
  double eps = 0.05;
  std::string point;
  std::string ray;
  std::string ells;
  std::string adelic_mode;
  std::string example;
  std::vector<std::string> example_params;
  int trials = 100;
  std::uint64_t seed = 1;
};

io::DivisorDocument load_divisor(const Options& o) {
  auto doc = io::parse_divisor(read_json(o.spec));
  if (doc.precision) set_default_precision(doc.precision);
  return doc;
}

json run_adelic(const Options& o, json& input) {
  input = read_json(o.spec);
  const auto& j = input;
  if (o.adelic_mode == "scaling") {
    std::map<std::uint64_t, Rational> gamma;
    for (const auto& [id, v] : j.at("gamma").items()) gamma[PlaceTable::prime_of(id)] = io::rational_at(v, "gamma." + id);
    std::set<std::uint64_t> s;
    if (j.contains("S"))
      for (const auto& id : j["S"]) s.insert(PlaceTable::prime_of(id.get<std::string>()));
    Rational eta = j.contains("eta") ? io::rational_at(j["eta"], "eta") : Rational(1, 2);
    long ell = j.value("ell", 0L);
    return io::to_json(find_scaling(gamma, s, eta, ell));
  }
  std::map<std::uint64_t, Rational> cp;
  if (j.contains("c_p"))
    for (const auto& [id, v] : j["c_p"].items()) cp[PlaceTable::prime_of(id)] = io::rational_at(v, "c_p." + id);
  auto c = MKDivisor::make(io::rational_at(j.at("c_inf"), "c_inf"), cp);
  std::vector<std::uint64_t> primes;
  for (const auto& [p, k] : c.k) primes.push_back(p);
  auto table = PlaceTable::rationals(primes);
  if (o.adelic_mode == "lhat") {
    auto l = lhat(c, table);
    return {{"count", l.count.get_str()}, {"lhat", l.value}, {"deg_hat", io::to_json(Estimate{deg_hat(c, table), deg_hat(c, table).to_double(), 0})}};
  }
  if (o.adelic_mode == "gap") return io::to_json(gap_check(c, table));
  fail(Errc::parse_error, "adelic mode must be lhat, gap or scaling");
}

json run(const Options& o, json& input) {
  const auto& c = o.command;
  if (c == "generate-example") {
    input = json{{"example", o.example}, {"params", o.example_params}};
    return io::example_spec(o.example, o.example_params);
  }
  if (c == "adelic") return run_adelic(o, input);

  auto doc = load_divisor(o);
  input = doc.source;
  const auto& d = doc.divisor;
  const auto& num = doc.numeric;
  if (c == "classify") return io::to_json(classify(d, num));
  if (c == "volume") {
    auto v = arithmetic_volumes(d, num);
    return {{"vol_geometric", geometric_volume(d).str()}, {"vol_hat", io::to_json(v.vol_hat)}, {"vol_chi", io::to_json(v.vol_chi)}};
  }
  if (c == "height") {
    std::vector<std::size_t> rays;
    if (!o.cone.empty())
      for (const auto& x : split(o.cone, ',')) {
        try {
          rays.push_back(std::stoul(x));
        } catch (...) {
          fail(Errc::parse_error, "--cone: bad ray index '" + x + "'");
        }
      }
    for (auto r : rays)
      if (r >= d.fan().rays().size()) fail(Errc::parse_error, "--cone: ray index out of range");
    std::optional<std::string> place;
    if (!o.place.empty()) place = o.place;
    return {{"cone", rays}, {"face", io::to_json(face_of_cone(d, rays))}, {"height", io::to_json(height(d, rays, place, num))}};
  }
  if (c == "theta") return io::to_json(theta_region(d, num));
  if (c == "zariski") return io::to_json(zariski(d, num));
  if (c == "fujita") return io::to_json(fujita(d, o.eps, num));
  if (c == "dirichlet") return io::to_json(dirichlet_certificate(d, parse_point(o.point, "--point")));
  if (c == "multiplicity") {
    auto u = parse_point(o.ray, "--ray");
    auto mu = arithmetic_multiplicity(d, u);
    return {{"ray", o.ray}, {"multiplicity", io::to_json(Estimate{mu, mu.to_double(), 0})}};
  }
  if (c == "oracle") {
    std::vector<long> ells;
    if (o.ells.empty()) ells.push_back(doc.ell);
    for (const auto& x : split(o.ells, ',')) {
      try {
        ells.push_back(std::stol(x));
      } catch (...) {
        fail(Errc::parse_error, "--ell: bad value '" + x + "'");
      }
    }
    for (long l : ells)
      if (l < 1) fail(Errc::parse_error, "--ell: values must be positive");
    json sums = json::array();
    for (long l : ells) {
      auto s = lattice_sum_oracle(d, l);
      sums.push_back({{"ell", l}, {"vol_hat", s.vol_hat}, {"vol_chi", s.vol_chi}, {"points", s.points}});
    }
    return {{"sums", sums}, {"comparison", io::to_json(compare_oracle(d, ells, num))}};
  }
  if (c == "validate-orthogonality") {
    OrthogonalityOptions oo;
    oo.trials = o.trials;
    oo.seed = o.seed;
    return io::to_json(validate_orthogonality(d, oo));
  }
  fail(Errc::parse_error, "unknown command '" + c + "'");
}

void emit(const Options& o, const json& j) {
  std::string text = o.pretty ? j.dump(2) : j.dump();
  if (o.output.empty() || o.output == "-") {
    std::cout << text << "\n";
  } else {
    std::ofstream out(o.output);
    if (!out) fail(Errc::parse_error, o.output + ": cannot write");
    out << text << "\n";
  }
}

int execute(const Options& o, const std::vector<std::string>& argv) {
  auto t0 = std::chrono::steady_clock::now();
  json input;
  try {
    json results = run(o, input);
    if (o.command == "generate-example") {
      emit(o, results);
      return ok;
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json report{{"command", {{"name", o.command}, {"argv", argv}}},
                {"input_digest", io::digest(input)},
                {"results", results},
                {"provenance", io::provenance_of(results)},
                {"timing_ms", ms}};
    emit(o, report);
    return ok;
  } catch (const Error& e) {
    std::cerr << "toric-arakelov: " << e.what() << "\n";
    return exit_code(e);
  } catch (const json::exception& e) {
    std::cerr << "toric-arakelov: parse-error: " << e.what() << "\n";
    return parse;
  }
}

void add_spec(CLI::App* sub, Options& o) { sub->add_option("spec", o.spec, "divisor specification (JSON, '-' for stdin)")->required(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arithmetic invariants of toric metrized R-divisors over Q"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("-o,--output", o.output, "write the report here instead of stdout");
  app.add_flag("--pretty", o.pretty, "indent the JSON report");

  std::vector<std::pair<CLI::App*, std::string>> subs;
  auto sub = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    subs.push_back({s, name});
    return s;
  };
  add_spec(sub("classify", "ample/nef/big/pseudo-effective/effective with witnesses"), o);
  add_spec(sub("volume", "geometric, arithmetic and chi volumes"), o);
  auto* h = sub("height", "height of an orbit closure");
  add_spec(h, o);
  h->add_option("--cone", o.cone, "comma-separated ray indices (empty: the whole variety)");
  h->add_option("--place", o.place, "local height at one place");
  add_spec(sub("theta", "the region where the roof function is nonnegative"), o);
  add_spec(sub("zariski", "toric Zariski decomposition or refusal"), o);
  auto* f = sub("fujita", "ample approximation losing at most eps volume");
  add_spec(f, o);
  f->add_option("--eps", o.eps, "volume loss")->check(CLI::PositiveNumber);
  auto* dr = sub("dirichlet", "Dirichlet certificate at a rational point of Theta");
  add_spec(dr, o);
  dr->add_option("--point", o.point, "comma-separated rationals")->required();
  auto* mu = sub("multiplicity", "arithmetic multiplicity along a primitive ray");
  add_spec(mu, o);
  mu->add_option("--ray", o.ray, "comma-separated integers")->required();
  auto* orc = sub("oracle", "lattice-sum estimates of the volumes");
  add_spec(orc, o);
  orc->add_option("--ell", o.ells, "comma-separated list (default: options.ell)");
  auto* ad = sub("adelic", "M_Q-divisor operations");
  ad->add_option("mode", o.adelic_mode, "lhat | gap | scaling")->required()->check(CLI::IsMember({"lhat", "gap", "scaling"}));
  ad->add_option("spec", o.spec, "adelic document (JSON)")->required();
  auto* vo = sub("validate-orthogonality", "sup-norm sandwich for random sections");
  add_spec(vo, o);
  vo->add_option("--trials", o.trials, "random sections")->check(CLI::PositiveNumber);
  vo->add_option("--seed", o.seed, "RNG seed");
  auto* ge = sub("generate-example", "print a worked example as a divisor specification");
  ge->add_option("name", o.example, "fubini-study | halfplane-theta | canonical-pn | dirichlet-p1 | log-sloped")->required();
  ge->add_option("params", o.example_params, "weights for fubini-study, n for canonical-pn");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return parse;
  }
  for (const auto& [s, name] : subs)
    if (s->parsed()) o.command = name;
  std::vector<std::string> args(argv + 1, argv + argc);
  return execute(o, args);
}
