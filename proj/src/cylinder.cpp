#include "revzeta/cylinder.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "revzeta/error.hpp"
#include "revzeta/parallel.hpp"

namespace revzeta {

void CylinderConfig::validate() const {
  if (!(alpha > 0.0)) throw Error(ErrorKind::ConfigError, "cylinder radius must be positive");
  if (!(b > a)) throw Error(ErrorKind::ConfigError, "interval needs b > a");
}

namespace {

// log(sinh(z)) for z > 0 without overflow.
double log_sinh(double z) {
  if (z > 20.0) return z - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * z));
  return std::log(std::sinh(z));
}

// cosh(A) / sinh(B) for B > 0, |A| <= B.
double cosh_csch(double A, double B) {
  const double a = std::abs(A);
  return std::exp(a - B) * (1.0 + std::exp(-2.0 * a)) / -std::expm1(-2.0 * B);
}

double beta_of(const CylinderConfig& cfg, double u) { return std::sqrt(1.0 + u * u * cfg.alpha * cfg.alpha); }

void check_bump(const CylinderConfig& cfg, const BumpSpec& bump) {
  if (!(bump.lo() >= cfg.a && bump.hi() <= cfg.b)) {
    std::ostringstream os;
    os << "bump support (" << bump.lo() << ", " << bump.hi() << ") not inside [" << cfg.a << ", " << cfg.b << "]";
    throw Error(ErrorKind::ConfigError, os.str());
  }
}

double bump_integral(const BumpSpec& bump, const QuadratureSpec& spec) {
  const std::vector<double> pts = bump.knots();
  return adaptive_quad([&](double t) { return bump.g(t); }, pts, spec).value;
}

// int g(t) cosh(rate (a + b - 2t)) csch(rate L) dt
double kernel_integral(const CylinderConfig& cfg, const BumpSpec& bump, double rate, const QuadratureSpec& spec) {
  const std::vector<double> pts = bump.knots();
  const double B = rate * cfg.length();
  return adaptive_quad(
             [&](double t) {
               const double g = bump.g(t);
               if (g == 0.0) return 0.0;
               return g * cosh_csch(rate * (cfg.a + cfg.b - 2.0 * t), B);
             },
             pts, spec)
      .value;
}

}  // namespace

double closed_X0(const CylinderConfig& cfg, double lambda) {
  if (lambda == 0.0) return cfg.length();
  return std::sinh(cfg.length() * lambda) / lambda;
}

double log_closed_X0(const CylinderConfig& cfg, double lambda) {
  if (lambda == 0.0) return std::log(cfg.length());
  return log_sinh(cfg.length() * lambda) - std::log(lambda);
}

double closed_Xk(const CylinderConfig& cfg, double k, double u) {
  const double beta = beta_of(cfg, u);
  return cfg.alpha * std::sinh(k * cfg.length() * beta / cfg.alpha) / (k * beta);
}

double log_closed_Xk(const CylinderConfig& cfg, double k, double u) {
  const double beta = beta_of(cfg, u);
  return std::log(cfg.alpha) + log_sinh(k * cfg.length() * beta / cfg.alpha) - std::log(k * beta);
}

double ratio0(const CylinderConfig& cfg, const BumpSpec& bump, double lambda, const QuadratureSpec& spec) {
  check_bump(cfg, bump);
  if (lambda == 0.0) return -bump_integral(bump, spec) / (cfg.alpha * cfg.length());
  return -(lambda / cfg.alpha) * kernel_integral(cfg, bump, lambda, spec);
}

double ratiok(const CylinderConfig& cfg, const BumpSpec& bump, double k, double u, const QuadratureSpec& spec) {
  check_bump(cfg, bump);
  const double beta = beta_of(cfg, u);
  const double rate = k * beta / cfg.alpha;
  const double B = rate * cfg.length();
  const double coth = 1.0 + 2.0 / std::expm1(2.0 * B);
  const double ua2 = u * u * cfg.alpha * cfg.alpha;
  const double inner = coth * bump_integral(bump, spec) + (ua2 > 0.0 ? ua2 * kernel_integral(cfg, bump, rate, spec) : 0.0);
  return -(k / (cfg.alpha * cfg.alpha * beta)) * inner;
}

double ratiok_subtracted(const CylinderConfig& cfg, const BumpSpec& bump, double k, double u,
                         const QuadratureSpec& spec) {
  check_bump(cfg, bump);
  const double beta = beta_of(cfg, u);
  const double rate = k * beta / cfg.alpha;
  const double B = rate * cfg.length();
  const double coth_m1 = 2.0 / std::expm1(2.0 * B);
  const double ua2 = u * u * cfg.alpha * cfg.alpha;
  double inner = 0.0;
  if (coth_m1 > 0.0) inner += coth_m1 * bump_integral(bump, spec);
  if (ua2 > 0.0) inner += ua2 * kernel_integral(cfg, bump, rate, spec);
  return -(k / (cfg.alpha * cfg.alpha * beta)) * inner;
}

double VariationOfParametersReport::abs_difference() const { return std::abs(ratio_vop - ratio_closed); }

VariationOfParametersReport variation_of_parameters_check(const CylinderConfig& cfg, const BumpSpec& bump, int k,
                                                          double spectral, const QuadratureSpec& spec) {
  check_bump(cfg, bump);
  const double al = cfg.alpha;
  const double beta = k == 0 ? 1.0 : beta_of(cfg, spectral);
  const double rate = k == 0 ? spectral : k * beta / al;
  if (!(rate > 0.0)) throw Error(ErrorKind::ConfigError, "variation of parameters needs a positive rate");
  // Shifted exponentials keep magnitudes near one; the shift cancels in the
  // products X2 X1(b) and X1 X2(b).
  const double a = cfg.a, b = cfg.b;
  auto X1 = [&](double x) { return std::exp(rate * (x - b)); };
  auto X2 = [&](double x) { return std::exp(-rate * (x - a)); };
  auto dX1 = [&](double x) { return rate * X1(x); };
  auto dX2 = [&](double x) { return -rate * X2(x); };
  VariationOfParametersReport r;
  const double xm = 0.5 * (a + b);
  // W is measured on the shifted pair and rescaled back.
  r.wronskian = (X1(xm) * dX2(xm) - dX1(xm) * X2(xm)) * std::exp(rate * (b - a));
  r.wronskian_expected = -2.0 * rate;
  const double W = r.wronskian_expected;
  // X(t) and X'(t) scaled by exp(-rate (b - a)) for the same reason.
  const double damp = std::exp(-rate * (b - a));
  auto X = [&](double t) {
    const double s = 0.5 * (std::exp(rate * (t - a)) - std::exp(-rate * (t - a)));
    return (k == 0 ? s / rate : al * s / (k * beta)) * damp;
  };
  auto dX = [&](double t) {
    const double c = 0.5 * (std::exp(rate * (t - a)) + std::exp(-rate * (t - a)));
    return (k == 0 ? c : c * rate * al / (k * beta)) * damp;
  };
  auto G = [&](double t) {
    double v = bump.g_prime(t) / al * dX(t);
    if (k != 0) v += 2.0 * k * k * bump.g(t) / (al * al * al) * X(t);
    return v;
  };
  const std::vector<double> pts = bump.knots();
  // v1(b) X1(b) and v2(b) X2(b) with the shifts folded in.
  const double v1X1 = adaptive_quad([&](double t) { return X2(t) * G(t) / W; }, pts, spec).value * X1(b) *
                      std::exp(rate * (b - a));
  const double v2X2 = -adaptive_quad([&](double t) { return X1(t) * G(t) / W; }, pts, spec).value * X2(b) *
                      std::exp(rate * (b - a));
  const double Xb = X(b);
  r.ratio_vop = (v1X1 + v2X2) / Xb;
  r.ratio_closed = k == 0 ? ratio0(cfg, bump, spectral, spec) : ratiok(cfg, bump, k, spectral, spec);
  return r;
}

namespace {

double ipow(double v, int s) {
  double r = 1.0;
  for (int i = 0; i < s; ++i) r *= v;
  return r;
}

}  // namespace

DirectZetaResult eigenvalue_zeta_direct(const CylinderConfig& cfg, double s, double target, long n_cutoff,
                                        long k_cutoff, int jobs) {
  cfg.validate();
  if (!(s >= 2.0)) throw Error(ErrorKind::ConfigError, "direct eigenvalue sum needs s >= 2");
  const double L = cfg.length(), al = cfg.alpha;
  const bool integer_s = s == std::floor(s) && s <= 16.0;
  const int si = static_cast<int>(s);
  auto h = [&](double A, double k) {
    const double v = A + (k / al) * (k / al);
    return integer_s ? 1.0 / ipow(v, si) : std::pow(v, -s);
  };
  // int_{(0, theta0)} of cos^{2s-2}: the k-tail after y = tan(theta).
  auto k_tail = [&](double A, double K) {
    // int_K^inf (A + k^2/al^2)^{-s} dk = al A^{1/2-s} int_{atan(K/(al sqrt A))}^{pi/2} cos^{2s-2}
    const double th0 = std::atan(K / (al * std::sqrt(A)));
    const double v = gauss_legendre([&](double th) { return std::pow(std::cos(th), 2.0 * s - 2.0); }, th0,
                                    0.5 * std::numbers::pi, 32);
    return al * std::pow(A, 0.5 - s) * v;
  };
  DirectZetaResult out;
  const long N = n_cutoff > 0 ? n_cutoff : 4000;
  const long K = k_cutoff > 0 ? k_cutoff : 4000;
  out.n_cutoff = N;
  out.k_cutoff = K;
  std::vector<double> rows(N), errs(N);
  const int chunks = 64;
  parallel_for(chunks, jobs, [&](int c) {
    for (long n = 1 + c; n <= N; n += chunks) {
      const double A = (n * std::numbers::pi / L) * (n * std::numbers::pi / L);
      CompensatedSum row;
      for (long k = K; k >= 1; --k) row.add(2.0 * h(A, double(k)));
      row.add(h(A, 0.0));
      // Sum_{k > K} by the midpoint integral; Euler-Maclaurin error ~ |h'|/24.
      row.add(2.0 * k_tail(A, K + 0.5));
      const double Kp = K + 0.5;
      const double dh = 2.0 * s * (Kp / (al * al)) * std::pow(A + (Kp / al) * (Kp / al), -s - 1.0);
      rows[n - 1] = row.value();
      errs[n - 1] = 2.0 * dh / 24.0;
    }
  });
  CompensatedSum total, err;
  for (long n = N; n >= 1; --n) {
    total.add(rows[n - 1]);
    err.add(errs[n - 1]);
  }
  // n > N: the full k-sum equals its integral up to exp(-2 pi^2 n alpha / L)
  // (Poisson), leaving a Hurwitz zeta in n.
  const double Is = std::sqrt(std::numbers::pi) * std::tgamma(s - 0.5) / (2.0 * std::tgamma(s));
  const double n_tail = 2.0 * al * Is * std::pow(std::numbers::pi / L, 1.0 - 2.0 * s) * hurwitz_zeta(2.0 * s - 1.0, N + 1.0);
  total.add(n_tail);
  const double poisson = n_tail * std::exp(-2.0 * std::numbers::pi * std::numbers::pi * (N + 1.0) * al / L);
  out.value = total.value();
  // Safety factor on the midpoint estimate plus summation rounding.
  out.error_bound = 10.0 * err.value() + poisson + 1e-15 * std::abs(out.value) * std::sqrt(double(N));
  if (out.error_bound > target) {
    std::ostringstream os;
    os << "direct sum error bound " << out.error_bound << " above " << target << " (N = " << N << ", K = " << K << ")";
    throw Error(ErrorKind::TailBoundUnmet, os.str());
  }
  return out;
}

double zeta_k_at_integer_s(const ProfileSpec& p, int k, int s, const OdeOptions& ode) {
  if (s < 1) throw Error(ErrorKind::ConfigError, "integer s must be positive");
  const MuSeries ms = solve_mu_series(p, k, s, ode);
  // log(1 + sum r_j mu^j) coefficients
  std::vector<double> l(s + 1, 0.0);
  for (int n = 1; n <= s; ++n) {
    double acc = 0.0;
    for (int j = 1; j < n; ++j) acc += j * l[j] * ms.ratios[n - j - 1];
    l[n] = ms.ratios[n - 1] - acc / n;
  }
  return -s * l[s];
}

namespace {

// Least squares fit of values v(k) on columns (k/K)^{e_j}; returns the
// coefficients of k^{e_j}.
std::array<double, 3> fit_powers(const std::vector<int>& ks, const std::vector<double>& vs,
                                 const std::array<double, 3>& e, double K) {
  double M[3][4] = {};
  for (std::size_t i = 0; i < ks.size(); ++i) {
    double col[3];
    for (int j = 0; j < 3; ++j) col[j] = std::pow(ks[i] / K, e[j]);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) M[r][c] += col[r] * col[c];
      M[r][3] += col[r] * vs[i];
    }
  }
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
    for (int j = 0; j < 4; ++j) std::swap(M[c][j], M[piv][j]);
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const double f = M[r][c] / M[c][c];
      for (int j = c; j < 4; ++j) M[r][j] -= f * M[c][j];
    }
  }
  std::array<double, 3> out;
  for (int j = 0; j < 3; ++j) out[j] = M[j][3] / M[j][j] * std::pow(K, -e[j]);
  return out;
}

}  // namespace

PipelineZetaResult zeta_pipeline_at_integer_s(const ProfileSpec& p, int s, int K, const OdeOptions& ode, int jobs) {
  if (s < 2) throw Error(ErrorKind::ConfigError, "pipeline comparison needs integer s >= 2");
  if (K < 30) throw Error(ErrorKind::ConfigError, "pipeline comparison needs K >= 30 for the tail fit");
  std::vector<double> zk(K + 1);
  parallel_for(K + 1, jobs, [&](int k) { zk[k] = zeta_k_at_integer_s(p, k, s, ode); });
  CompensatedSum sum;
  for (int k = K; k >= 1; --k) sum.add(2.0 * zk[k]);
  sum.add(zk[0]);
  const std::array<double, 3> e{1.0 - 2.0 * s, -2.0 * s, -2.0 * s - 1.0};
  auto tail_from = [&](int hi) {
    std::vector<int> ks;
    std::vector<double> vs;
    for (int k = hi - 11; k <= hi; ++k) {
      ks.push_back(k);
      vs.push_back(zk[k]);
    }
    const std::array<double, 3> c = fit_powers(ks, vs, e, hi);
    // Terms between hi and K are summed exactly; the fit covers k > K.
    double t = 0.0;
    for (int j = 0; j < 3; ++j) t += c[j] * hurwitz_zeta(-e[j], K + 1.0);
    return 2.0 * t;
  };
  PipelineZetaResult r;
  r.K = K;
  r.tail = tail_from(K);
  r.tail_spread = std::abs(r.tail - tail_from(K - 12));
  r.value = sum.value() + r.tail;
  return r;
}

}  // namespace revzeta
