#include "revzeta/speczeta.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "revzeta/error.hpp"
#include "revzeta/parallel.hpp"
#include "revzeta/wkb.hpp"

namespace revzeta {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kDetOrder = 3;
constexpr int kEnergyOrder = 4;
// Terms are computed this many at a time (in parallel) but consumed one by
// one, so the stopping index never depends on the worker count.
constexpr int kBlock = 8;

struct Local {
  double f, fp, fpp, arc;  // arc = 1 + f'^2
};

Local local(const ProfileSpec& p, double x) {
  Local l{p.f(x), p.f_prime(x), p.f_double_prime(x), 0.0};
  l.arc = 1.0 + l.fp * l.fp;
  return l;
}

QuadResult over_profile(const ProfileSpec& p, const std::function<double(const Local&)>& fn,
                        const QuadratureSpec& quad) {
  const std::vector<double> pts = p.partition();
  return adaptive_quad([&](double x) { return fn(local(p, x)); }, pts, quad);
}

struct BumpLocal {
  Local l;
  double g, gp, gpp;
};

QuadResult over_bump(const ProfileSpec& p, const BumpSpec& bump, const std::function<double(const BumpLocal&)>& fn,
                     const QuadratureSpec& quad) {
  const std::vector<double> pts = bump.knots();
  return adaptive_quad(
      [&](double x) {
        const BumpLocal b{local(p, x), bump.g(x), bump.g_prime(x), bump.g_double_prime(x)};
        if (b.g == 0.0 && b.gp == 0.0 && b.gpp == 0.0) return 0.0;
        return fn(b);
      },
      pts, quad);
}

void check_inside(const ProfileSpec& p, const BumpSpec& bump) {
  if (!(bump.lo() > p.a && bump.hi() < p.b))
    throw Error(ErrorKind::ConfigError, "bump support must lie strictly inside (a, b)");
}

double log_X(const ProfileSpec& p, double k, double lambda, const OdeOptions& ode) {
  const LogScaledValue v = solve_X(RadialProblem{p, k, lambda}, ode);
  if (v.sign <= 0) throw Error(ErrorKind::StiffnessFailure, "radial solution not positive at b");
  return v.log_magnitude;
}

// Asymptotic data reused across spectral points.
struct Subtraction {
  std::vector<double> at_a;      // c_i(a)
  std::vector<double> integrals;  // int c_i
  double integral_error = 0.0;
};

Subtraction subtraction(const ProfileSpec& p, SeriesKind kind, int N, double u, const QuadratureSpec& quad) {
  Subtraction s;
  s.at_a = wkb_values(p, kind, N, u, p.a);
  const VecQuadResult q = wkb_integrals(p, kind, N, u, quad);
  s.integrals = q.value;
  for (double e : q.error) s.integral_error += e;
  return s;
}

// sum_{i=-1}^{N-2} t^{-i} c_i
double power_sum(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) v += c[j] * std::pow(t, 1.0 - double(j));
  return v;
}

struct Capped {
  double value = 0.0;
  double error = 0.0;
};

// int_lo^cap R plus a power-law continuation past cap fitted on R(cap/2),
// R(cap). The fitted tail is also booked as its own uncertainty.
Capped capped_integral(const RealFn& R, double lo, double cap, const QuadratureSpec& quad) {
  std::vector<double> pts{lo};
  if (lo > 0.0) {
    for (double x = 2.0 * lo; x < cap; x *= 2.0) pts.push_back(x);
  } else {
    for (int j = 6; j >= 1; --j) pts.push_back(cap * std::ldexp(1.0, -j));
  }
  pts.push_back(cap);
  const QuadResult q = adaptive_quad(R, pts, quad);
  const double r1 = R(0.5 * cap), r2 = R(cap);
  double tail = 0.0;
  if (r2 != 0.0) {
    double order = 3.0;
    if (r1 != 0.0 && (r1 > 0) == (r2 > 0) && std::abs(r1) > std::abs(r2)) {
      const double fitted = std::log2(r1 / r2);
      if (fitted > 1.5) order = fitted;
    }
    tail = r2 * cap / (order - 1.0);
  }
  return {q.value + tail, q.error + std::abs(tail)};
}

// Accumulated relative error of the radial solver shows up as an absolute
// error in log X (or in the ratio) that grows with its size.
double ode_noise(const OdeOptions& ode, double magnitude) { return 10.0 * ode.rel_tol * (1.0 + std::abs(magnitude)); }

// Summands indistinguishable from solver noise count as zero in tail
// estimates; the noise itself is booked with the term's error.
double above_noise(const std::pair<double, double>& term) {
  return std::abs(term.first) <= term.second ? 0.0 : term.first;
}

// k-series with block-parallel term evaluation. `term` and `quad_err` are
// indexed by k; continuous_term(kappa) feeds the integral tail estimate.
struct SeriesRun {
  SeriesResult series;
  double quad_error = 0.0;
};

SeriesRun k_series(const std::function<std::pair<double, double>(int)>& term,
                   const std::function<double(double)>& continuous_term, const SpecZetaOptions& opts) {
  std::unordered_map<int, std::pair<double, double>> cache;
  const int cap = opts.K_fixed > 0 ? opts.K_fixed : opts.K_cap;
  auto fill = [&](int k0, int n) {
    n = std::min(n, cap - k0 + 1);
    std::vector<std::pair<double, double>> out(n);
    parallel_for(n, opts.jobs, [&](int i) { out[i] = term(k0 + i); });
    for (int i = 0; i < n; ++i) cache[k0 + i] = out[i];
  };
  SeriesRun run;
  if (opts.K_fixed > 0) {
    fill(1, opts.K_fixed);
    CompensatedSum s;
    for (int k = 1; k <= opts.K_fixed; ++k) {
      s.add(cache[k].first);
      run.quad_error += cache[k].second;
    }
    // Power-law estimate from the last terms; reported, not enforced.
    const int K = opts.K_fixed;
    double tail = 0.0;
    if (K >= 4) {
      const double t1 = cache[K / 2].first, t2 = cache[K].first;
      if (t2 != 0.0 && t1 != 0.0 && (t1 > 0) == (t2 > 0) && std::abs(t1) > std::abs(t2)) {
        const double order = std::log(t1 / t2) / std::log(double(K) / (K / 2));
        tail = order > 1.0 ? std::abs(t2) * K / (order - 1.0) : std::numeric_limits<double>::infinity();
      } else {
        tail = std::abs(t2) * K;
      }
    }
    run.series = {s.value(), K, tail};
    return run;
  }
  SeriesOptions so;
  so.target_tol = 0.1 * opts.target_tol;
  so.K_cap = opts.K_cap;
  auto cached = [&](int k) {
    if (!cache.count(k)) fill(k, kBlock);
    run.quad_error += cache[k].second;
    return cache[k].first;
  };
  TailOptions to;
  to.abs_floor = 1e-3 * so.target_tol;
  auto tail = [&](int K) { return tail_integral_estimate(continuous_term, K, to); };
  run.series = series_with_tail(cached, tail, so);
  return run;
}

}  // namespace

void SpecZetaOptions::validate() const {
  quad.validate();
  if (!(target_tol > 0.0)) throw Error(ErrorKind::ConfigError, "target tolerance must be positive");
  if (K_cap < 1) throw Error(ErrorKind::ConfigError, "K_cap must be at least 1");
  if (K_fixed < 0) throw Error(ErrorKind::ConfigError, "K_fixed must be non-negative");
  if (!(lambda_max >= 4.0)) throw Error(ErrorKind::ConfigError, "lambda_max must be at least 4");
  if (jobs < 1) throw Error(ErrorKind::ConfigError, "jobs must be at least 1");
}

double ATerms::finite_sum() const {
  double s = 0.0;
  for (const auto& [i, t] : A0) s += t.finite_part;
  for (const auto& [i, t] : Aneq) s += t.finite_part;
  return s;
}

double ATerms::residue_sum() const {
  double s = 0.0;
  for (const auto& [i, t] : A0) s += t.residue;
  for (const auto& [i, t] : Aneq) s += t.residue;
  return s;
}

double EnergyChangeResult::error_estimate() const {
  double e = tail_bound;
  for (double q : quadrature_errors) e += q;
  return e;
}

// ---------------------------------------------------------------- s = 0

ATerms a_terms_det(const ProfileSpec& p, const QuadratureSpec& quad) {
  ATerms t;
  t.A0[-1].finite_part = -over_profile(p, [](const Local& l) { return std::sqrt(l.arc); }, quad).value;
  t.A0[0].finite_part = 0.0;
  t.A0[1].finite_part = -over_profile(
                             p,
                             [](const Local& l) {
                               return l.fp * l.fp / (8.0 * l.f * l.f * std::sqrt(l.arc)) +
                                      l.fpp / (4.0 * l.f * std::pow(l.arc, 1.5));
                             },
                             quad)
                             .value;
  t.Aneq[-1].finite_part =
      over_profile(p, [](const Local& l) { return std::sqrt(l.arc) / l.f; }, quad).value / 6.0;
  const double fa = p.f(p.a), fb = p.f(p.b);
  t.Aneq[0].finite_part = 0.5 * std::log(2.0 * kPi * (fa * fa + fb * fb));
  t.Aneq[1].finite_part =
      over_profile(p, [](const Local& l) { return l.fp * l.fp / std::sqrt(l.arc); }, quad).value / 6.0 +
      0.5 * over_profile(p, [](const Local& l) { return l.f * l.fpp / std::sqrt(l.arc); }, quad).value;
  return t;
}

double z0_prime_zero(const ProfileSpec& p, const SpecZetaOptions& opts) {
  const Subtraction s = subtraction(p, SeriesKind::S, kDetOrder, 0.0, opts.quad.scaled(0.01));
  double v = -log_X(p, 0.0, 0.0, opts.ode) - std::log(2.0 * s.at_a[0]);
  for (double c : s.integrals) v += c;
  return v;
}

SeriesResult zneq_prime_zero(const ProfileSpec& p, const SpecZetaOptions& opts) {
  opts.validate();
  const Subtraction w = subtraction(p, SeriesKind::W, kDetOrder, 0.0, opts.quad.scaled(0.01));
  auto summand = [&](double k) {
    const double lx = log_X(p, k, 0.0, opts.ode);
    const double v = -2.0 * (lx + std::log(2.0 * k * w.at_a[0]) - power_sum(w.integrals, k));
    return std::make_pair(v, ode_noise(opts.ode, lx));
  };
  return k_series([&](int k) { return summand(k); }, [&](double k) { return above_noise(summand(k)); }, opts)
      .series;
}

ZetaDecomposition functional_determinant(const ProfileSpec& p, const SpecZetaOptions& opts) {
  ZetaDecomposition d;
  d.at = EvalPoint::Determinant;
  d.a_terms = a_terms_det(p, opts.quad);
  d.Z0 = z0_prime_zero(p, opts);
  const SeriesResult zn = zneq_prime_zero(p, opts);
  d.Zneq = zn.sum;
  d.K_used = zn.K_used;
  d.tail_bound = zn.tail_bound;
  d.error_budget["Zneq_tail"] = zn.tail_bound;
  return d;
}

// ---------------------------------------------------------------- s = -1/2

ATerms a_terms_energy(const ProfileSpec& p, const QuadratureSpec& quad) {
  ATerms t;
  t.A0[-1].finite_part = over_profile(p, [](const Local& l) { return std::sqrt(l.arc); }, quad).value / (2.0 * kPi);
  t.A0[0].finite_part = -1.0 / kPi;
  t.A0[1].residue = over_profile(
                        p,
                        [](const Local& l) {
                          return -l.fp * l.fp / (8.0 * l.f * l.f * std::sqrt(l.arc)) +
                                 l.fpp / (4.0 * l.f * std::pow(l.arc, 1.5));
                        },
                        quad)
                        .value /
                    (2.0 * kPi);
  double ends = 0.0;
  for (double x : {p.a, p.b}) {
    const Local l = local(p, x);
    ends += (l.fp * l.fp + std::pow(l.fp, 4) - 2.0 * l.f * l.fpp) / (l.f * l.f * l.arc * l.arc);
  }
  t.A0[2].finite_part = -ends / (8.0 * kPi);

  t.Aneq[-1].finite_part =
      kZetaPrimeMinus2 / kPi * over_profile(p, [](const Local& l) { return std::sqrt(l.arc) / (l.f * l.f); }, quad).value;
  t.Aneq[0].finite_part = (1.0 / p.f(p.a) + 1.0 / p.f(p.b)) / 24.0;
  t.Aneq[1].residue =
      over_profile(p, [](const Local& l) { return l.fp * l.fp / (l.f * l.f * std::sqrt(l.arc)); }, quad).value /
          (16.0 * kPi) -
      over_profile(p, [](const Local& l) { return l.fpp / (l.f * std::pow(l.arc, 1.5)); }, quad).value / (8.0 * kPi);
  t.Aneq[2].residue = residue_at_minus_half(p);
  t.Aneq[2].finite_part =
      over_profile(p, [](const Local& l) { return l.fp * l.fpp / (l.f * std::pow(l.arc, 4)); }, quad).value / 16.0;
  return t;
}

double residue_at_minus_half(const ProfileSpec& p) {
  double r = 0.0;
  for (double x : {p.a, p.b}) {
    const Local l = local(p, x);
    r -= l.fp * l.fp / (l.f * l.arc) / 256.0;
    r -= l.fpp / (l.arc * l.arc) / 32.0;
  }
  return r;
}

double z0_subtracted_integrand(const ProfileSpec& p, double lambda, const QuadratureSpec& quad, const OdeOptions& ode) {
  const Subtraction s = subtraction(p, SeriesKind::S, kEnergyOrder, 0.0, quad);
  return log_X(p, 0.0, lambda, ode) - boundary_subtraction(s.at_a, lambda, kEnergyOrder) - power_sum(s.integrals, lambda);
}

double zneq_subtracted_integrand(const ProfileSpec& p, double k, double u, const QuadratureSpec& quad,
                                 const OdeOptions& ode) {
  const Subtraction w = subtraction(p, SeriesKind::W, kEnergyOrder, u, quad);
  return log_X(p, k, u * k, ode) - boundary_subtraction(w.at_a, k, kEnergyOrder) - power_sum(w.integrals, k);
}

QuadResult z0_minus_half(const ProfileSpec& p, const SpecZetaOptions& opts) {
  opts.validate();
  const QuadratureSpec inner = opts.quad.scaled(0.01);
  const Subtraction s = subtraction(p, SeriesKind::S, kEnergyOrder, 0.0, inner);
  auto logx = [&](double lam) { return log_X(p, 0.0, lam, opts.ode); };
  auto R = [&](double lam) {
    return logx(lam) - boundary_subtraction(s.at_a, lam, kEnergyOrder) - power_sum(s.integrals, lam);
  };
  const QuadResult low = adaptive_quad(logx, 0.0, 1.0, opts.quad);
  const Capped high = capped_integral(R, 1.0, opts.lambda_max, opts.quad);
  const double v = -(logx(1.0) - low.value) / kPi + (R(1.0) + high.value) / kPi;
  return {v, (low.error + high.error + s.integral_error) / kPi};
}

namespace {

SeriesRun zneq_energy_run(const ProfileSpec& p, const SpecZetaOptions& opts) {
  const QuadratureSpec inner = opts.quad.scaled(0.01);
  auto integral = [&](double k) {
    double peak = 0.0;
    auto R = [&](double u) {
      const Subtraction w = subtraction(p, SeriesKind::W, kEnergyOrder, u, inner);
      const double lx = log_X(p, k, u * k, opts.ode);
      peak = std::max(peak, std::abs(lx));
      return lx - boundary_subtraction(w.at_a, k, kEnergyOrder) - power_sum(w.integrals, k);
    };
    const double cap = opts.lambda_max / k;
    const Capped c = capped_integral(R, 0.0, cap, opts.quad);
    const double noise = 2.0 / kPi * k * cap * ode_noise(opts.ode, peak);
    return std::make_pair(2.0 / kPi * k * c.value, 2.0 / kPi * k * c.error + noise);
  };
  return k_series([&](int k) { return integral(k); }, [&](double k) { return above_noise(integral(k)); }, opts);
}

}  // namespace

SeriesResult zneq_minus_half(const ProfileSpec& p, const SpecZetaOptions& opts) {
  opts.validate();
  return zneq_energy_run(p, opts).series;
}

ZetaDecomposition casimir_energy(const ProfileSpec& p, const SpecZetaOptions& opts) {
  opts.validate();
  ZetaDecomposition d;
  d.at = EvalPoint::Energy;
  d.a_terms = a_terms_energy(p, opts.quad);
  const QuadResult z0 = z0_minus_half(p, opts);
  d.Z0 = z0.value;
  d.error_budget["Z0_quadrature"] = z0.error;
  const SeriesRun zn = zneq_energy_run(p, opts);
  d.Zneq = zn.series.sum;
  d.K_used = zn.series.K_used;
  d.tail_bound = zn.series.tail_bound;
  d.error_budget["Zneq_quadrature"] = zn.quad_error;
  d.error_budget["Zneq_tail"] = zn.series.tail_bound;
  return d;
}

// ---------------------------------------------------------------- d/d(eps)

std::map<std::string, double> delta_a_terms(const ProfileSpec& p, const BumpSpec& bump, const QuadratureSpec& quad) {
  check_inside(p, bump);
  std::map<std::string, double> m;
  const double zp = kZetaPrimeMinus2;
  m["A0_-1"] = over_bump(p, bump, [](const BumpLocal& b) { return b.l.fp / std::sqrt(b.l.arc) * b.gp; }, quad).value /
               (2.0 * kPi);
  m["A0_0"] = 0.0;
  const double res1 = over_bump(
                          p, bump,
                          [](const BumpLocal& b) {
                            const double f = b.l.f, fp = b.l.fp, fpp = b.l.fpp, arc = b.l.arc;
                            return fp * fp / (4.0 * f * f * f * std::sqrt(arc)) * b.g -
                                   fp * (2.0 + fp * fp) / (8.0 * f * f * std::pow(arc, 1.5)) * b.gp -
                                   fpp / (4.0 * f * f * std::pow(arc, 1.5)) * b.g -
                                   3.0 * fp * fpp / (4.0 * f * std::pow(arc, 2.5)) * b.gp +
                                   1.0 / (4.0 * f * std::pow(arc, 1.5)) * b.gpp;
                          },
                          quad)
                          .value /
                      (2.0 * kPi);
  m["ResA0_1"] = res1;
  m["A0_2"] = 0.0;
  m["Aneq_-1"] =
      -2.0 * zp / kPi *
          over_bump(p, bump, [](const BumpLocal& b) { return std::sqrt(b.l.arc) / std::pow(b.l.f, 3) * b.g; }, quad)
              .value +
      zp / kPi *
          over_bump(p, bump, [](const BumpLocal& b) { return b.l.fp / (b.l.f * b.l.f * std::sqrt(b.l.arc)) * b.gp; },
                    quad)
              .value;
  m["Aneq_0"] = 0.0;
  m["ResAneq_1"] = -res1;
  m["ResAneq_2"] = 0.0;
  m["FPAneq_2"] = over_bump(
                      p, bump,
                      [](const BumpLocal& b) {
                        const double f = b.l.f, fp = b.l.fp, fpp = b.l.fpp, arc = b.l.arc;
                        return -fp * fpp / (f * f * std::pow(arc, 4)) * b.g +
                               fpp * (1.0 - 7.0 * fp * fp) / (f * std::pow(arc, 5)) * b.gp +
                               fp / (f * std::pow(arc, 4)) * b.gpp;
                      },
                      quad)
                      .value /
                  16.0;
  return m;
}

ConsolidatedIntegrals consolidated_integrals(const ProfileSpec& p, const BumpSpec& bump, const QuadratureSpec& quad) {
  check_inside(p, bump);
  ConsolidatedIntegrals c;
  c.arclength =
      -over_bump(p, bump, [](const BumpLocal& b) { return b.l.fpp / std::pow(b.l.arc, 1.5) * b.g; }, quad).value /
      (2.0 * kPi);
  c.zeta_prime = -kZetaPrimeMinus2 / kPi *
                 over_bump(
                     p, bump,
                     [](const BumpLocal& b) {
                       const double f = b.l.f, fp = b.l.fp;
                       return (f * b.l.fpp + 2.0 * fp * fp + 2.0) / (f * f * f * std::pow(b.l.arc, 1.5)) * b.g;
                     },
                     quad)
                     .value;
  c.finite_part = over_bump(
                      p, bump,
                      [](const BumpLocal& b) {
                        const double f = b.l.f, fp = b.l.fp, fpp = b.l.fpp, arc = b.l.arc;
                        return (2.0 * fp * fp * fp * arc + f * fp * (5.0 * fp * fp - 3.0) * fpp) /
                               (f * f * f * std::pow(arc, 5)) * b.g;
                      },
                      quad)
                      .value /
                  16.0;
  return c;
}

namespace {

void add_a_terms(EnergyChangeResult& r, const std::map<std::string, double>& a) {
  for (const auto& [name, v] : a) r.term_breakdown["d" + name] = v;
}

double sum_breakdown(const EnergyChangeResult& r) {
  CompensatedSum s;
  for (const auto& [name, v] : r.term_breakdown) s.add(v);
  return s.value();
}

}  // namespace

EnergyChangeResult delta_energy(const ProfileSpec& p, const BumpSpec& bump, const SpecZetaOptions& opts) {
  opts.validate();
  check_inside(p, bump);
  EnergyChangeResult r;
  add_a_terms(r, delta_a_terms(p, bump, opts.quad));

  const QuadratureSpec inner = opts.quad.scaled(0.01);
  auto ratio = [&](double k, double lambda) {
    return solve_perturbation_ratio(RadialProblem{p, k, lambda}, bump, opts.ode).ratio;
  };

  // k = 0
  const VecQuadResult ds = wkb_epsilon_integrals(p, bump, SeriesKind::S, kEnergyOrder, 0.0, inner);
  auto rho0 = [&](double lam) { return ratio(0.0, lam); };
  auto Rd = [&](double lam) { return rho0(lam) - power_sum(ds.value, lam); };
  const QuadResult low = adaptive_quad(rho0, 0.0, 1.0, opts.quad);
  const Capped high = capped_integral(Rd, 1.0, opts.lambda_max, opts.quad);
  r.term_breakdown["dZ0"] = -(rho0(1.0) - low.value) / kPi + (Rd(1.0) + high.value) / kPi;
  r.quadrature_errors.push_back((low.error + high.error) / kPi);

  // k != 0
  auto integral = [&](double k) {
    double peak = 0.0;
    auto R = [&](double u) {
      const VecQuadResult dw = wkb_epsilon_integrals(p, bump, SeriesKind::W, kEnergyOrder, u, inner);
      const double rho = ratio(k, u * k);
      peak = std::max(peak, std::abs(rho));
      return rho - power_sum(dw.value, k);
    };
    const double cap = opts.lambda_max / k;
    const Capped c = capped_integral(R, 0.0, cap, opts.quad);
    const double noise = 2.0 / kPi * k * cap * ode_noise(opts.ode, peak);
    return std::make_pair(2.0 / kPi * k * c.value, 2.0 / kPi * k * c.error + noise);
  };
  const SeriesRun zn =
      k_series([&](int k) { return integral(k); }, [&](double k) { return above_noise(integral(k)); }, opts);
  r.term_breakdown["dZneq"] = zn.series.sum;
  r.quadrature_errors.push_back(zn.quad_error);
  r.K_used = zn.series.K_used;
  r.tail_bound = zn.series.tail_bound;
  r.delta_E = sum_breakdown(r);
  return r;
}

EnergyChangeResult delta_energy_cylinder(const CylinderConfig& cfg, const BumpSpec& bump,
                                         const SpecZetaOptions& opts) {
  opts.validate();
  cfg.validate();
  const ProfileSpec p = cfg.profile();
  check_inside(p, bump);
  EnergyChangeResult r;
  add_a_terms(r, delta_a_terms(p, bump, opts.quad));

  const QuadratureSpec inner = opts.quad.scaled(0.01);
  const double L = cfg.length();
  // Integrands decay like exp(-2 (rate) dist) with dist the gap between the
  // bump support and the nearer end.
  const double dist = std::max(std::min(bump.lo() - cfg.a, cfg.b - bump.hi()), 1e-3 * L);

  ImproperOptions io;
  io.scale = 1.0 / (2.0 * dist);
  const QuadResult z0 = improper_quad([&](double lam) { return ratio0(cfg, bump, lam, inner); }, opts.quad, io);
  r.term_breakdown["dZ0"] = z0.value / kPi;
  r.quadrature_errors.push_back(z0.error / kPi);

  auto integral = [&](double k) {
    ImproperOptions iu;
    iu.scale = 1.0 / (2.0 * k * dist);
    iu.check_decay = false;
    const QuadResult q =
        improper_quad([&](double u) { return ratiok_subtracted(cfg, bump, k, u, inner); }, opts.quad, iu);
    return std::make_pair(2.0 / kPi * k * q.value, 2.0 / kPi * k * q.error);
  };
  const SeriesRun zn =
      k_series([&](int k) { return integral(k); }, [&](double k) { return integral(k).first; }, opts);
  r.term_breakdown["dZneq"] = zn.series.sum;
  r.quadrature_errors.push_back(zn.quad_error);
  r.K_used = zn.series.K_used;
  r.tail_bound = zn.series.tail_bound;
  r.delta_E = sum_breakdown(r);
  return r;
}

FiniteDifferenceResult finite_difference_energy_derivative(const CylinderConfig& cfg, const BumpSpec& bump,
                                                           const std::vector<double>& epsilons,
                                                           const SpecZetaOptions& opts) {
  if (epsilons.size() < 2) throw Error(ErrorKind::ConfigError, "finite differences need at least two epsilons");
  if (opts.K_fixed <= 0)
    throw Error(ErrorKind::ConfigError, "finite differences need a fixed K so both signs truncate alike");
  for (std::size_t i = 1; i < epsilons.size(); ++i)
    if (std::abs(epsilons[i] - 0.5 * epsilons[i - 1]) > 1e-12 * epsilons[i - 1])
      throw Error(ErrorKind::ConfigError, "finite-difference epsilons must halve successively");
  const ProfileSpec base = cfg.profile();
  FiniteDifferenceResult r;
  r.epsilons = epsilons;
  for (double eps : epsilons) {
    const double ep = casimir_energy(perturbed_profile(base, bump, eps), opts).value();
    const double em = casimir_energy(perturbed_profile(base, bump, -eps), opts).value();
    r.central.push_back((ep - em) / (2.0 * eps));
  }
  // Tableau: column j removes eps^{2j}.
  std::vector<double> col = r.central;
  double factor = 4.0;
  while (col.size() > 1) {
    std::vector<double> next;
    for (std::size_t i = 1; i < col.size(); ++i) next.push_back((factor * col[i] - col[i - 1]) / (factor - 1.0));
    r.richardson.insert(r.richardson.end(), next.begin(), next.end());
    col = next;
    factor *= 4.0;
  }
  r.estimate = col.front();
  if (r.central.size() >= 3) {
    const double d1 = r.central[0] - r.central[1], d2 = r.central[1] - r.central[2];
    r.observed_order = (d1 != 0.0 && d2 != 0.0) ? std::log2(std::abs(d1 / d2)) : 0.0;
  }
  return r;
}

}  // namespace revzeta
