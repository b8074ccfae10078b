#include "toric/divisor/divisor.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "toric/numerics/certified.hpp"

namespace toric {

MetricSpec MetricSpec::psi_mode(GeneralPA f) {
  MetricSpec m;
  m.kind = Kind::psi_pa;
  m.psi = std::move(f);
  return m;
}

MetricSpec MetricSpec::oracle_mode(OracleFunction f) {
  MetricSpec m;
  m.kind = Kind::psi_oracle;
  m.oracle = std::move(f);
  return m;
}

MetricSpec MetricSpec::theta_mode(ConcavePA theta) {
  MetricSpec m;
  m.kind = Kind::theta;
  m.theta = std::move(theta);
  return m;
}

MetricSpec MetricSpec::fubini_study(std::vector<Rational> alpha) {
  MetricSpec m;
  m.kind = Kind::fubini_study;
  m.alpha = std::move(alpha);
  return m;
}

MetricSpec MetricSpec::roof_mode(Roof r) {
  MetricSpec m;
  m.kind = Kind::roof;
  m.local = std::move(r);
  return m;
}

std::string_view kind_name(MetricSpec::Kind k) {
  switch (k) {
    case MetricSpec::Kind::canonical: return "canonical";
    case MetricSpec::Kind::psi_pa: return "pa-psi";
    case MetricSpec::Kind::psi_oracle: return "oracle-psi";
    case MetricSpec::Kind::theta: return "pa-theta";
    case MetricSpec::Kind::fubini_study: return "fubini-study";
    case MetricSpec::Kind::roof: return "roof";
  }
  return "?";
}

namespace {

QVec shift_of(const MetricSpec& m, std::size_t n) { return m.twist ? m.twist->shift : QVec(n); }

// rec == Ψ + <a,.> checked on every full-dimensional intersection of a cell with a fan cone.
void check_recession(const GeneralPA& rec, const VirtualSupportFunction& psi, const QVec& a, const std::string& place) {
  const std::size_t n = psi.dim();
  const auto& fan = psi.fan();
  for (const auto& cell : rec.cells()) {
    for (std::size_t s = 0; s < fan.size(); ++s) {
      std::vector<QHalfspace> cs = cell.constraints;
      for (auto& h : cs) h.offset = 0;
      for (const auto& f : fan.facets(s)) cs.push_back({f, Rational(0)});
      if (!cell_is_full_dimensional(cs, n)) continue;
      auto g = polyhedron_generators(cs, n);
      std::vector<QVec> dirs = g.rays;
      for (const auto& l : g.lineality) {
        dirs.push_back(l);
        dirs.push_back(Rational(-1) * l);
      }
      const QVec& m = psi.defining_vectors()[s];
      for (const auto& r : dirs)
        if (dot(cell.slope, r) != dot(m, r) + dot(a, r))
          fail(Errc::invalid_argument, "metric at place " + place + ": recession differs from Psi_D along " + str(r));
    }
  }
}

void check_oracle_growth(const OracleFunction& f, const RationalFan& fan, const std::string& place) {
  std::vector<std::vector<double>> dirs;
  for (const auto& r : fan.rays()) dirs.push_back(to_double(r));
  for (std::size_t i = 0; i < f.dim; ++i) {
    std::vector<double> e(f.dim, 0.0);
    e[i] = 1;
    dirs.push_back(e);
    e[i] = -1;
    dirs.push_back(e);
  }
  for (const auto& d : dirs) {
    double diff[3];
    const double radius[3] = {4, 16, 64};
    for (int k = 0; k < 3; ++k) {
      std::vector<double> u(d.size());
      for (std::size_t i = 0; i < u.size(); ++i) u[i] = radius[k] * d[i];
      diff[k] = std::abs(f.eval(u.data()) - f.recession.evaluate(u.data()));
      if (!std::isfinite(diff[k])) fail(Errc::invalid_argument, "oracle metric at " + place + " is not finite");
    }
    if (diff[2] > 2 * std::max(diff[0], diff[1]) + 1)
      fail(Errc::invalid_argument, "oracle metric at " + place + ": psi - Psi_D does not look bounded");
  }
}

}  // namespace

ToricMetrizedRDivisor ToricMetrizedRDivisor::make(VirtualSupportFunction psi, PlaceTable places,
                                                  std::map<std::string, MetricSpec> metrics) {
  ToricMetrizedRDivisor d;
  const std::size_t n = psi.dim();
  d.delta_ = psi.delta();
  const bool concave = psi.is_concave();
  for (auto it = metrics.begin(); it != metrics.end();) {
    const std::string& id = it->first;
    MetricSpec& m = it->second;
    if (!places.contains(id)) {
      if (!places.is_rational_field()) fail(Errc::invalid_argument, "unknown place " + id);
      auto p = PlaceTable::prime_of(id);
      if (p != 0 && !is_prime(p)) fail(Errc::invalid_argument, "place " + id + " is not a prime");
      places = places.with_prime(p);
    }
    if (m.twist && m.twist->shift.size() != n) fail(Errc::invalid_argument, "twist dimension mismatch at " + id);
    const QVec a = shift_of(m, n);
    RationalPolytope base = d.delta_.is_empty() ? d.delta_ : translate(d.delta_, a);
    switch (m.kind) {
      case MetricSpec::Kind::canonical:
        break;
      case MetricSpec::Kind::psi_pa:
        if (m.psi.dim() != n) fail(Errc::invalid_argument, "metric dimension mismatch at " + id);
        check_recession(recession(m.psi), psi, a, id);
        break;
      case MetricSpec::Kind::psi_oracle:
        if (m.oracle.dim != n || !m.oracle.eval) fail(Errc::invalid_argument, "bad oracle metric at " + id);
        check_recession(m.oracle.recession, psi, a, id);
        check_oracle_growth(m.oracle, psi.fan(), id);
        break;
      case MetricSpec::Kind::theta:
        if (m.theta.dim() != n || m.theta.forms().empty()) fail(Errc::invalid_argument, "bad theta data at " + id);
        if (!concave) fail(Errc::invalid_argument, "theta-mode metric at " + id + " needs a concave Psi_D");
        break;
      case MetricSpec::Kind::fubini_study: {
        if (!places.at(id).archimedean) fail(Errc::invalid_argument, "Fubini-Study metric at a finite place " + id);
        if (m.alpha.size() != n + 1) fail(Errc::invalid_argument, "Fubini-Study needs n+1 weights");
        for (const auto& x : m.alpha)
          if (x.sign() <= 0) fail(Errc::invalid_argument, "Fubini-Study weights must be positive");
        if (!concave || !(base == RationalPolytope::standard_simplex(n)))
          fail(Errc::invalid_argument, "Fubini-Study metric needs Delta_D = standard simplex");
        break;
      }
      case MetricSpec::Kind::roof:
        if (!concave) fail(Errc::invalid_argument, "roof-mode metric at " + id + " needs a concave Psi_D");
        if (!(m.local.domain() == base)) fail(Errc::invalid_argument, "roof domain differs from Delta_D at " + id);
        break;
    }
    if (m.kind == MetricSpec::Kind::canonical && !m.twist)
      it = metrics.erase(it);
    else
      ++it;
  }
  if (!places.contains("inf")) fail(Errc::invalid_argument, "place table lacks the Archimedean place");
  d.psi_ = std::move(psi);
  d.places_ = std::move(places);
  d.metrics_ = std::move(metrics);
  return d;
}

ToricMetrizedRDivisor ToricMetrizedRDivisor::canonical(VirtualSupportFunction psi, PlaceTable places) {
  return make(std::move(psi), std::move(places), {});
}

const MetricSpec& ToricMetrizedRDivisor::metric(const std::string& place) const {
  static const MetricSpec canonical_spec;
  auto it = metrics_.find(place);
  return it == metrics_.end() ? canonical_spec : it->second;
}

RationalPolytope delta_polytope(const ToricMetrizedRDivisor& d) { return d.delta(); }

Roof local_roof(const ToricMetrizedRDivisor& d, const std::string& place) {
  const auto& delta = d.delta();
  if (delta.is_empty()) fail(Errc::empty_polytope, "Delta_D is empty");
  const MetricSpec& m = d.metric(place);
  const std::size_t n = d.dim();
  const QVec a = shift_of(m, n);
  RationalPolytope base = translate(delta, a);
  const LogRational lambda = d.places().contains(place) ? d.places().at(place).lambda : LogRational(1);
  Roof r(base);
  switch (m.kind) {
    case MetricSpec::Kind::canonical:
      break;
    case MetricSpec::Kind::psi_pa: {
      auto g = legendre_dual(m.psi, base);
      r = Roof::exact(base, {lambda, g.f, LogRational(0)});
      break;
    }
    case MetricSpec::Kind::psi_oracle:
      r = Roof::numeric(base, {OracleRoof{m.oracle, lambda, {}}, Rational(1), QVec(n), LogRational(0)});
      break;
    case MetricSpec::Kind::theta:
      r = Roof::exact(base, {LogRational(1), m.theta, LogRational(0)});
      break;
    case MetricSpec::Kind::fubini_study:
      r = Roof::numeric(base, {FubiniStudyRoof{m.alpha}, Rational(1), QVec(n), LogRational(0)});
      break;
    case MetricSpec::Kind::roof:
      r = m.local;
      break;
  }
  if (m.twist) r = r.twisted(a, m.twist->constant);
  return r;
}

Roof global_roof(const ToricMetrizedRDivisor& d) {
  if (d.delta().is_empty()) fail(Errc::empty_polytope, "Delta_D is empty");
  Roof r(d.delta());
  for (const auto& [id, m] : d.metrics()) r = r + local_roof(d, id).scaled(d.places().at(id).weight);
  return r;
}

double evaluate_psi(const ToricMetrizedRDivisor& d, const std::string& place, const double* u) {
  const MetricSpec& m = d.metric(place);
  const std::size_t n = d.dim();
  const double lambda = d.places().at(place).lambda.to_double();
  double v = 0;
  switch (m.kind) {
    case MetricSpec::Kind::canonical: {
      // canonical metric of the untwisted divisor Psi_D + <a,.>
      v = d.psi().evaluate(u);
      if (m.twist)
        for (std::size_t i = 0; i < n; ++i) v += m.twist->shift[i].to_double() * u[i];
      break;
    }
    case MetricSpec::Kind::psi_pa:
      v = m.psi.evaluate(u);
      break;
    case MetricSpec::Kind::psi_oracle:
      v = m.oracle.eval(u);
      break;
    case MetricSpec::Kind::fubini_study: {
      double s = m.alpha[0].to_double();
      for (std::size_t i = 0; i < n; ++i) s += m.alpha[i + 1].to_double() * std::exp(-2 * u[i]);
      v = -0.5 * std::log(s);
      break;
    }
    case MetricSpec::Kind::theta:
    case MetricSpec::Kind::roof: {
      Roof base = m.kind == MetricSpec::Kind::theta
                      ? Roof::exact(translate(d.delta(), shift_of(m, n)), {LogRational(1), m.theta, LogRational(0)})
                      : m.local;
      auto dual = legendre_dual(base.as_concave());
      std::vector<double> lu(n);
      for (std::size_t i = 0; i < n; ++i) lu[i] = lambda * u[i];
      v = dual.evaluate(lu.data()) / lambda;
      break;
    }
  }
  if (m.twist) {
    for (std::size_t i = 0; i < n; ++i) v -= m.twist->shift[i].to_double() * u[i];
    v += m.twist->constant.to_double() / lambda;
  }
  return v;
}

SemipositivityReport semipositivity(const ToricMetrizedRDivisor& d) {
  SemipositivityReport rep;
  auto fail_at = [&](const std::string& place, const std::string& why) {
    rep.holds = false;
    rep.place = place;
    rep.reason = why;
    return rep;
  };
  auto w = d.psi().concavity();
  for (const auto& [id, m] : d.metrics()) {
    if (m.kind == MetricSpec::Kind::psi_pa) {
      auto c = is_concave(m.psi);
      if (!c.holds) return fail_at(id, "psi not concave at u = " + str(c.u));
    } else if (m.kind == MetricSpec::Kind::psi_oracle) {
      if (!m.oracle.concave) return fail_at(id, "oracle psi declared non-concave");
    }
  }
  if (!w.holds) {
    // canonical places inherit Psi_D; every place not listed is canonical
    for (const auto& pl : d.places().places()) {
      const auto& m = d.metric(pl.id);
      if (m.kind == MetricSpec::Kind::canonical) return fail_at(pl.id, "Psi_D not concave at u = " + str(w.u));
    }
    return fail_at("", "Psi_D not concave at u = " + str(w.u));
  }
  return rep;
}

Estimate monomial_supnorm(const ToricMetrizedRDivisor& d, const QVec& m, long ell, const std::string& place) {
  if (ell <= 0) fail(Errc::invalid_argument, "ell must be positive");
  if (m.size() != d.dim()) fail(Errc::invalid_argument, "dimension mismatch");
  QVec x = Rational(1, ell) * m;
  if (d.delta().is_empty() || !d.delta().contains(x)) fail(Errc::point_outside_polytope, str(m) + " not in ell*Delta");
  Roof r = local_roof(d, place);
  Estimate e;
  if (auto v = r.exact_value(x)) {
    e.exact = *v * Rational(ell);
    e.value = e.exact->to_double();
  } else {
    e.value = static_cast<double>(ell) * r.value(x);
    e.error = static_cast<double>(ell) * 1e-9;
  }
  return e;
}

std::optional<Rational> sup_minus_linear(const GeneralPA& psi, const QVec& m) {
  std::optional<Rational> best;
  for (const auto& c : psi.cells()) {
    auto g = polyhedron_generators(c.constraints, psi.dim());
    QVec s = c.slope - m;
    for (const auto& l : g.lineality)
      if (!dot(s, l).is_zero()) return std::nullopt;
    for (const auto& r : g.rays)
      if (dot(s, r).sign() > 0) return std::nullopt;
    for (const auto& v : g.vertices) {
      Rational val = dot(s, v) + c.offset;
      if (!best || val > *best) best = val;
    }
  }
  return best;
}

namespace {

long padic_valuation(const Rational& q, std::uint64_t p) {
  long v = 0;
  mpz_class num = q.numerator(), den = q.denominator(), pp = static_cast<unsigned long>(p);
  if (num < 0) num = -num;
  while (num % pp == 0) {
    num /= pp;
    ++v;
  }
  while (den % pp == 0) {
    den /= pp;
    --v;
  }
  return v;
}

bool check_ultrametric(const ToricMetrizedRDivisor& d, const std::string& id, std::uint64_t p, const std::vector<QVec>& ms,
                       std::mt19937_64& rng, int trials) {
  const MetricSpec& m = d.metric(id);
  GeneralPA psi = m.kind == MetricSpec::Kind::psi_pa ? m.psi : GeneralPA::from_support_function(d.psi());
  PlaceTable table = d.places().contains(id) ? d.places() : d.places().with_prime(p);
  auto dd = ToricMetrizedRDivisor::make(d.psi(), table, d.metrics());
  Roof roof = local_roof(dd, id);
  const LogRational logp = LogRational::log_prime(p);
  std::uniform_int_distribution<long> small(1, 1000), expo(-3, 3);
  for (int t = 0; t < trials; ++t) {
    std::optional<LogRational> lhs, rhs;
    for (const auto& mm : ms) {
      long e = expo(rng);
      Rational g(small(rng), small(rng));
      for (long k = 0; k < std::abs(e); ++k) g = e > 0 ? g * Rational(static_cast<long>(p)) : g / Rational(static_cast<long>(p));
      const LogRational log_abs = logp * Rational(-padic_valuation(g, p));
      auto sup = sup_minus_linear(psi, mm);
      if (!sup) return false;
      LogRational l = log_abs + logp * *sup;
      auto th = roof.exact_value(mm);
      if (!th) return false;
      LogRational r = log_abs - *th;
      if (!lhs || certified_compare(l, *lhs) > 0) lhs = l;
      if (!rhs || certified_compare(r, *rhs) > 0) rhs = r;
    }
    if (!(*lhs == *rhs)) return false;
  }
  return true;
}

}  // namespace

OrthogonalityReport validate_orthogonality(const ToricMetrizedRDivisor& d, const OrthogonalityOptions& opts) {
  const std::size_t n = d.dim();
  if (n > 2) fail(Errc::invalid_argument, "orthogonality check supports n <= 2");
  for (const auto& mv : d.psi().defining_vectors())
    if (!is_integral(mv)) fail(Errc::invalid_argument, "orthogonality check needs an integral divisor");
  const auto& inf = d.metric("inf");
  if (inf.kind == MetricSpec::Kind::roof || inf.is_twisted())
    fail(Errc::invalid_argument, "Archimedean metric must be given in psi-mode or builtin form");
  if (d.delta().is_empty()) fail(Errc::empty_polytope, "Delta_D is empty");
  auto ms = lattice_points(d.delta(), 1);
  OrthogonalityReport rep;
  rep.monomials = ms.size();
  if (ms.empty()) return rep;
  Roof roof = local_roof(d, "inf");
  std::vector<double> theta_m;
  for (const auto& m : ms) theta_m.push_back(roof.value(m));
  std::vector<std::vector<double>> md;
  double max_m1 = 0, lip = 0;
  for (const auto& m : ms) {
    md.push_back(to_double(m));
    double s = 0;
    for (double x : md.back()) s += std::abs(x);
    max_m1 = std::max(max_m1, s);
  }
  for (const auto& v : d.delta().double_vertices()) {
    double s = 0;
    for (double x : v) s += std::abs(x);
    lip = std::max(lip, s);
  }
  if (inf.kind == MetricSpec::Kind::psi_pa)
    for (const auto& c : inf.psi.cells()) {
      double s = 0;
      for (const auto& x : c.slope) s += std::abs(x.to_double());
      lip = std::max(lip, s);
    }

  const int nu = n == 1 ? opts.u_points : std::min(opts.u_points, 81);
  const int na = n == 1 ? opts.arg_points : std::min(opts.arg_points, 64);
  const double hu = 2 * opts.u_box / (nu - 1);
  const double ha = 2 * M_PI / na;
  std::size_t count_u = 1, count_a = 1;
  for (std::size_t i = 0; i < n; ++i) {
    count_u *= static_cast<std::size_t>(nu);
    count_a *= static_cast<std::size_t>(na);
  }
  // psi on the u grid does not depend on the trial
  std::vector<double> psi_grid(count_u);
  auto u_of = [&](std::size_t idx, double* u) {
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = -opts.u_box + hu * static_cast<double>(idx % static_cast<std::size_t>(nu));
      idx /= static_cast<std::size_t>(nu);
    }
  };
  auto a_of = [&](std::size_t idx, double* a) {
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = ha * static_cast<double>(idx % static_cast<std::size_t>(na));
      idx /= static_cast<std::size_t>(na);
    }
  };
  for_each_index(count_u, default_policy(), [&](std::size_t k) {
    double u[2];
    u_of(k, u);
    psi_grid[k] = evaluate_psi(d, "inf", u);
  });

  // e^{i<m,arg>} on the angle grid
  std::vector<std::complex<double>> phase(count_a * ms.size());
  for (std::size_t ia = 0; ia < count_a; ++ia) {
    double a[2];
    a_of(ia, a);
    for (std::size_t k = 0; k < ms.size(); ++k) {
      double ma = 0;
      for (std::size_t i = 0; i < n; ++i) ma += md[k][i] * a[i];
      phase[ia * ms.size() + k] = std::polar(1.0, ma);
    }
  }

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int t = 0; t < opts.trials; ++t) {
    std::vector<std::complex<double>> gamma;
    for (std::size_t k = 0; k < ms.size(); ++k) gamma.emplace_back(unif(rng), unif(rng));
    auto value = [&](const double* u, double psi_u, const double* a) {
      std::complex<double> s = 0;
      for (std::size_t k = 0; k < ms.size(); ++k) {
        double mu = 0, ma = 0;
        for (std::size_t i = 0; i < n; ++i) {
          mu += md[k][i] * u[i];
          ma += md[k][i] * a[i];
        }
        s += gamma[k] * std::polar(std::exp(psi_u - mu), ma);
      }
      return std::abs(s);
    };
    // best angle per u row, then the overall argmax in a fixed order
    std::vector<double> row_best(count_u);
    std::vector<std::size_t> row_arg(count_u);
    for_each_index(count_u, default_policy(), [&](std::size_t iu) {
      double u[2];
      u_of(iu, u);
      std::vector<std::complex<double>> c(ms.size());
      for (std::size_t k = 0; k < ms.size(); ++k) {
        double mu = 0;
        for (std::size_t i = 0; i < n; ++i) mu += md[k][i] * u[i];
        c[k] = gamma[k] * std::exp(psi_grid[iu] - mu);
      }
      double b = -1;
      std::size_t arg = 0;
      for (std::size_t ia = 0; ia < count_a; ++ia) {
        std::complex<double> s = 0;
        const auto* ph = &phase[ia * ms.size()];
        for (std::size_t k = 0; k < ms.size(); ++k) s += c[k] * ph[k];
        double v = std::norm(s);
        if (v > b) {
          b = v;
          arg = ia;
        }
      }
      row_best[iu] = std::sqrt(b);
      row_arg[iu] = arg;
    });
    std::size_t best_u = 0;
    for (std::size_t iu = 1; iu < count_u; ++iu)
      if (row_best[iu] > row_best[best_u]) best_u = iu;
    const double grid_best = row_best[best_u];
    std::vector<double> x(2 * n);
    {
      double u[2], a[2];
      u_of(best_u, u);
      a_of(row_arg[best_u], a);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = u[i];
        x[n + i] = a[i];
      }
    }
    auto full = [&](const std::vector<double>& y) {
      std::vector<double> u(y.begin(), y.begin() + static_cast<long>(n));
      for (auto& c : u) c = std::clamp(c, -opts.u_box, opts.u_box);
      return value(u.data(), evaluate_psi(d, "inf", u.data()), y.data() + n);
    };
    double est = std::max(grid_best, full(x));
    for (double step = std::max(hu, ha); step > 1e-10; step *= 0.5) {
      bool moved = true;
      while (moved) {
        moved = false;
        for (std::size_t i = 0; i < 2 * n; ++i)
          for (double sgn : {-1.0, 1.0}) {
            auto y = x;
            y[i] += sgn * step;
            double v = full(y);
            if (v > est) {
              est = v;
              x = y;
              moved = true;
            }
          }
      }
    }
    OrthogonalityTrial tr;
    double weighted = 0, weighted_m = 0;
    for (std::size_t k = 0; k < ms.size(); ++k) {
      double norm = std::abs(gamma[k]) * std::exp(-theta_m[k]);
      tr.lower = std::max(tr.lower, norm);
      double m1 = 0;
      for (double c : md[k]) m1 += std::abs(c);
      weighted += norm * (m1 + static_cast<double>(n) * lip);
      weighted_m += norm * m1;
    }
    tr.upper = static_cast<double>(ms.size()) * tr.lower;
    tr.estimate = est;
    tr.slack = 0.5 * hu * weighted + 0.5 * ha * weighted_m + std::exp(-opts.u_box) * tr.upper;
    const double rounding = 1e-12 * (1 + tr.upper);
    const bool lower_ok = est >= tr.lower - rounding;
    const bool upper_ok = est <= tr.upper + rounding;
    if (!lower_ok && est + tr.slack >= tr.lower)
      fail(Errc::grid_too_coarse, "sandwich lower bound missed by less than the grid-error bound");
    tr.ok = lower_ok && upper_ok;
    rep.archimedean_ok = rep.archimedean_ok && tr.ok;
    rep.trials.push_back(tr);
  }

  // finite places: the listed ones, or 2 and 3 when none is listed
  std::vector<std::pair<std::string, std::uint64_t>> finite;
  for (const auto& pl : d.places().places())
    if (!pl.archimedean) finite.emplace_back(pl.id, pl.prime);
  if (finite.empty() && d.places().is_rational_field()) finite = {{"2", 2}, {"3", 3}};
  for (const auto& [id, p] : finite) {
    const auto& m = d.metric(id);
    if (m.is_twisted() || (m.kind != MetricSpec::Kind::canonical && m.kind != MetricSpec::Kind::psi_pa)) continue;
    rep.exact_places.push_back(id);
    if (!check_ultrametric(d, id, p, ms, rng, std::max(1, opts.trials))) rep.nonarchimedean_ok = false;
  }
  return rep;
}

ToricMetrizedRDivisor pullback(const ToricMetrizedRDivisor& d, const RationalFan& finer) {
  if (!finer.refines(d.fan())) fail(Errc::not_a_refinement, "target fan does not refine the fan of D");
  return ToricMetrizedRDivisor::make(d.psi().pullback(finer), d.places(), d.metrics());
}

DominanceResult dominates(const ToricMetrizedRDivisor& d0, const ToricMetrizedRDivisor& e0) {
  ToricMetrizedRDivisor d = d0, e = e0;
  if (!(d.fan() == e.fan())) {
    if (d.fan().refines(e.fan()))
      e = pullback(e, d.fan());
    else if (e.fan().refines(d.fan()))
      d = pullback(d, e.fan());
    else
      fail(Errc::incomparable_fans, "fans are not comparable by refinement");
  }
  auto sp = semipositivity(e);
  if (!sp.holds) fail(Errc::not_semipositive, "dominated divisor is not semipositive: " + sp.reason);
  DominanceResult res;
  if (!d.delta().contains(e.delta())) {
    res.holds = false;
    res.place = "";
    return res;
  }
  std::vector<std::string> ids;
  for (const auto& [id, m] : d.metrics()) ids.push_back(id);
  for (const auto& [id, m] : e.metrics())
    if (!d.metrics().count(id)) ids.push_back(id);
  res.holds = true;
  for (const auto& id : ids) {
    Roof a = local_roof(d, id);
    Roof b = local_roof(e, id);
    auto gap = min_difference(a, b);
    auto s = gap.sign();
    if (!s) {
      if (gap.value < -gap.error) s = -1;
    }
    if (s && *s < 0) {
      res.holds = false;
      res.place = id;
      res.gap = gap;
      return res;
    }
    if (!s) {
      res.holds = std::nullopt;
      res.place = id;
      res.gap = gap;
    }
  }
  return res;
}

ToricMetrizedRDivisor linear_combination(const Rational& a, const ToricMetrizedRDivisor& d1, const Rational& b,
                                         const ToricMetrizedRDivisor& d2) {
  if (!(d1.fan() == d2.fan())) fail(Errc::incomparable_fans, "linear combinations need a common fan");
  auto psi_of = [](const ToricMetrizedRDivisor& d, const std::string& id) {
    const auto& m = d.metric(id);
    if (m.is_twisted()) fail(Errc::oracle_path_unsupported, "twisted metrics are not combined");
    if (m.kind == MetricSpec::Kind::canonical) return GeneralPA::from_support_function(d.psi());
    if (m.kind == MetricSpec::Kind::psi_pa) return m.psi;
    fail(Errc::oracle_path_unsupported, "linear combinations need piecewise affine psi data");
  };
  PlaceTable table = d1.places();
  for (const auto& pl : d2.places().places())
    if (!table.contains(pl.id)) table = table.with_prime(pl.prime);
  std::map<std::string, MetricSpec> ms;
  std::vector<std::string> ids;
  for (const auto& [id, m] : d1.metrics()) ids.push_back(id);
  for (const auto& [id, m] : d2.metrics())
    if (!d1.metrics().count(id)) ids.push_back(id);
  for (const auto& id : ids) ms[id] = MetricSpec::psi_mode(a * psi_of(d1, id) + b * psi_of(d2, id));
  return ToricMetrizedRDivisor::make(a * d1.psi() + b * d2.psi(), table, ms);
}

}  // namespace toric
