#include "revzeta/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include "revzeta/error.hpp"
#include "revzeta/jet.hpp"

namespace revzeta {

LogScaledValue LogScaledValue::from(double v) {
  if (v == 0.0) return {0.0, 0};
  return {std::log(std::abs(v)), v > 0.0 ? 1 : -1};
}

double LogScaledValue::value() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }

namespace {

// p and q on the imaginary axis as functions of (f, f', f''); T = Dual
// carries the eps-derivative along.
template <class T>
void pq(const T& f, const T& fp, const T& fpp, double k, double lambda, T& p, T& q) {
  const T arc = fp * fp + T(1.0);
  p = fp / f - fp * fpp / arc;
  q = -(arc * (T(lambda * lambda) + T(k * k) / (f * f)));
}

struct Coefficients {
  const ProfileSpec* prof;
  const BumpSpec* bump;  // may be null
  double k, lambda;

  void base(double x, double& p, double& q) const {
    pq(prof->f(x), prof->f_prime(x), prof->f_double_prime(x), k, lambda, p, q);
  }

  // p, q and the source coefficients dp, dq (zero off the bump support).
  void with_source(double x, double& p, double& q, double& dp, double& dq) const {
    if (!bump || !(x > bump->lo() && x < bump->hi())) {
      base(x, p, q);
      dp = dq = 0.0;
      return;
    }
    const Dual f(prof->f(x), bump->g(x));
    const Dual fp(prof->f_prime(x), bump->g_prime(x));
    const Dual fpp(prof->f_double_prime(x), bump->g_double_prime(x));
    Dual P, Q;
    pq(f, fp, fpp, k, lambda, P, Q);
    p = P.v;
    q = Q.v;
    dp = P.d;
    dq = Q.d;
  }
};

// Adaptive RKF7(8) with an error norm per (Y, Y') pair, scaled by the local
// rate omega, and common rescaling of the whole state when pair 0 grows.
template <class State, class Rhs, class Rate>
void integrate(State& y, const Rhs& rhs, const Rate& rate, const std::vector<double>& pts, const OdeOptions& opts,
               double floor_rel, double& log_scale) {
  namespace ode = boost::numeric::odeint;
  ode::runge_kutta_fehlberg78<State> stepper;
  const std::size_t pairs = y.size() / 2;
  const double L = pts.back() - pts.front();
  const double big = std::ldexp(1.0, OdeOptions::kRescaleBits);
  const double shrink = std::ldexp(1.0, -OdeOptions::kRescaleBits);
  State trial = y, err = y;
  long steps = 0;
  double dt = 0.0;
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    double t = pts[s];
    const double end = pts[s + 1];
    if (!(end > t)) continue;
    // The 7(8) embedded estimate vanishes identically on pure quadratures
    // (stage weights cancel when the rhs ignores the state), which is what
    // the source term becomes when X is polynomial. A floor of 64 steps per
    // segment keeps such stretches accurate to roughly 1e-15.
    const double dt_max = (end - t) / 64.0;
    {
      const double w = rate(t);
      const double guess = 0.05 / w;
      dt = dt > 0.0 ? std::min(dt, end - t) : std::min(guess, end - t);
    }
    while (t < end) {
      if (++steps > opts.max_steps) {
        std::ostringstream os;
        os << "radial solve exceeded " << opts.max_steps << " steps at x = " << t;
        throw Error(ErrorKind::ToleranceUnmet, os.str());
      }
      bool last = false;
      dt = std::min(dt, dt_max);
      if (t + dt >= end - 1e-14 * L) {
        dt = end - t;
        last = true;
      }
      const double w = rate(t);
      trial = y;
      stepper.do_step(rhs, trial, t, dt, err);
      double sc0 = std::abs(y[0]) + std::abs(y[1]) / w;
      sc0 = std::max(sc0, std::abs(trial[0]) + std::abs(trial[1]) / w);
      double norm = 0.0;
      for (std::size_t j = 0; j < pairs; ++j) {
        const double sc = std::max(std::abs(y[2 * j]) + std::abs(y[2 * j + 1]) / w,
                                   std::abs(trial[2 * j]) + std::abs(trial[2 * j + 1]) / w) +
                          (j == 0 ? 0.0 : floor_rel * sc0);
        const double e = std::max(std::abs(err[2 * j]), std::abs(err[2 * j + 1]) / w);
        if (e == 0.0) continue;
        norm = std::max(norm, sc > 0.0 ? e / (opts.rel_tol * sc) : std::numeric_limits<double>::infinity());
      }
      if (!std::isfinite(norm)) norm = 1e10;
      if (norm <= 1.0) {
        y = trial;
        t = last ? end : t + dt;
        const double grow = norm > 0.0 ? 0.9 * std::pow(norm, -1.0 / 8.0) : 5.0;
        dt *= std::clamp(grow, 0.2, 5.0);
        if (std::abs(y[0]) + std::abs(y[1]) / w > big) {
          for (auto& v : y) v *= shrink;
          log_scale += OdeOptions::kRescaleBits * std::log(2.0);
        }
      } else {
        dt *= std::max(0.2, 0.9 * std::pow(norm, -1.0 / 8.0));
        if (dt < 1e-13 * L) {
          std::ostringstream os;
          os << "step size underflow at x = " << t;
          throw Error(ErrorKind::StiffnessFailure, os.str());
        }
      }
    }
  }
}

std::vector<double> segments(const ProfileSpec& p, const BumpSpec* bump) {
  std::vector<double> pts = p.partition();
  if (bump)
    for (double k : bump->knots())
      if (k > p.a && k < p.b) pts.push_back(k);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double rate_floor(const ProfileSpec& p) { return 1.0 / p.length(); }

}  // namespace

double RadialProblem::p_coeff(double x) const {
  double p, q;
  pq(profile.f(x), profile.f_prime(x), profile.f_double_prime(x), k, lambda, p, q);
  return p;
}

double RadialProblem::q_coeff(double x) const {
  double p, q;
  pq(profile.f(x), profile.f_prime(x), profile.f_double_prime(x), k, lambda, p, q);
  return q;
}

LogScaledValue solve_X(const RadialProblem& rp, const OdeOptions& opts) {
  using State = std::array<double, 2>;
  const Coefficients co{&rp.profile, nullptr, rp.k, rp.lambda};
  auto rhs = [&](const State& y, State& dy, double x) {
    double p, q;
    co.base(x, p, q);
    dy[0] = y[1];
    dy[1] = -p * y[1] - q * y[0];
  };
  const double fl = rate_floor(rp.profile);
  auto rate = [&](double x) {
    double p, q;
    co.base(x, p, q);
    return std::sqrt(std::abs(q)) + fl;
  };
  State y{0.0, 1.0};
  double log_scale = 0.0;
  integrate(y, rhs, rate, segments(rp.profile, nullptr), opts, 0.0, log_scale);
  LogScaledValue v = LogScaledValue::from(y[0]);
  v.log_magnitude += log_scale;
  return v;
}

SourceCoefficients derive_G(const ProfileSpec& p, const BumpSpec& bump, double k, double lambda) {
  auto coef = [p, bump, k, lambda](double x, bool want_dX) {
    const Coefficients co{&p, &bump, k, lambda};
    double pp, q, dp, dq;
    co.with_source(x, pp, q, dp, dq);
    return want_dX ? dp : dq;
  };
  return {[coef](double x) { return coef(x, true); }, [coef](double x) { return coef(x, false); }};
}

PerturbationSolution solve_perturbation_ratio(const RadialProblem& rp, const BumpSpec& bump, const OdeOptions& opts,
                                              double initial_scale) {
  using State = std::array<double, 4>;
  const Coefficients co{&rp.profile, &bump, rp.k, rp.lambda};
  auto rhs = [&](const State& y, State& dy, double x) {
    double p, q, dp, dq;
    co.with_source(x, p, q, dp, dq);
    dy[0] = y[1];
    dy[1] = -p * y[1] - q * y[0];
    dy[2] = y[3];
    dy[3] = -p * y[3] - q * y[2] - (dp * y[1] + dq * y[0]);
  };
  const double fl = rate_floor(rp.profile);
  auto rate = [&](double x) {
    double p, q;
    co.base(x, p, q);
    return std::sqrt(std::abs(q)) + fl;
  };
  State y{0.0, initial_scale, 0.0, 0.0};
  double log_scale = 0.0;
  integrate(y, rhs, rate, segments(rp.profile, &bump), opts, 1e-6, log_scale);
  PerturbationSolution out;
  out.X = LogScaledValue::from(y[0]);
  out.X.log_magnitude += log_scale - std::log(initial_scale);
  out.ratio = y[2] / y[0];
  return out;
}

MuSeries solve_mu_series(const ProfileSpec& prof, int k, int order, const OdeOptions& opts) {
  if (order < 1) throw Error(ErrorKind::ConfigError, "mu series needs order >= 1");
  using State = std::vector<double>;
  const int n = order + 1;
  const double kk = double(k) * k;
  auto coeffs = [&](double x, double& p, double& arc, double& pot) {
    const double f = prof.f(x), fp = prof.f_prime(x), fpp = prof.f_double_prime(x);
    arc = 1.0 + fp * fp;
    p = fp / f - fp * fpp / arc;
    pot = arc * kk / (f * f);
  };
  // Y_j'' + p Y_j' - (1+f'^2) k^2/f^2 Y_j + (1+f'^2) Y_{j-1} = 0
  auto rhs = [&](const State& y, State& dy, double x) {
    double p, arc, pot;
    coeffs(x, p, arc, pot);
    for (int j = 0; j < n; ++j) {
      dy[2 * j] = y[2 * j + 1];
      dy[2 * j + 1] = -p * y[2 * j + 1] + pot * y[2 * j] - (j > 0 ? arc * y[2 * j - 2] : 0.0);
    }
  };
  const double fl = rate_floor(prof);
  auto rate = [&](double x) {
    double p, arc, pot;
    coeffs(x, p, arc, pot);
    return std::sqrt(pot) + fl;
  };
  State y(2 * n, 0.0);
  y[1] = 1.0;
  double log_scale = 0.0;
  integrate(y, rhs, rate, segments(prof, nullptr), opts, 1e-20, log_scale);
  MuSeries out;
  out.log_Y0 = std::log(y[0]) + log_scale;
  for (int j = 1; j < n; ++j) out.ratios.push_back(y[2 * j] / y[0]);
  return out;
}

}  // namespace revzeta
