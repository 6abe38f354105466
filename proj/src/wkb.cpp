#include "revzeta/wkb.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "revzeta/error.hpp"
#include "revzeta/jet.hpp"

namespace revzeta {

namespace {

void check_order(int N) {
  if (N < 1 || N > kMaxWkbOrder) {
    std::ostringstream os;
    os << "WKB order " << N << " outside 1.." << kMaxWkbOrder;
    throw Error(ErrorKind::ConfigError, os.str());
  }
}

// Riccati recursion on jets. F is the Taylor jet of f about x with order
// N + 1; out receives the values of c_{-1}..c_{N-2}.
template <class T>
void recursion(const Jet<T>& F, SeriesKind kind, int N, double u, std::vector<T>& out) {
  const Jet<T> fp = F.derivative();
  const Jet<T> fpp = fp.derivative();
  const T one(1.0);
  const Jet<T> arc = fp * fp + one;  // 1 + f'^2
  Jet<T> lead;
  if (kind == SeriesKind::S) {
    lead = sqrt(arc);
  } else {
    lead = sqrt((F * F * T(u * u) + one) * arc) / F;
  }
  const Jet<T> p = fp / F - fp * fpp / arc;

  std::vector<Jet<T>> c;
  c.reserve(N + 1);
  c.push_back(lead);
  const Jet<T> two_lead = lead * T(2.0);
  for (int i = -1; i <= N - 3; ++i) {
    const Jet<T>& ci = c[i + 1];
    Jet<T> tot = ci.derivative() + p * ci;
    for (int j = 0; j <= i; ++j) tot += c[j + 1] * c[i - j + 1];
    c.push_back(-(tot / two_lead));
  }
  out.resize(N);
  for (int i = 0; i < N; ++i) out[i] = c[i].value();
}

}  // namespace

std::vector<double> wkb_values(const ProfileSpec& p, SeriesKind kind, int N, double u, double x) {
  check_order(N);
  const Jet<double> X = Jet<double>::variable(N + 1, x);
  const Jet<double> F = p.f.eval(X);
  std::vector<double> out;
  recursion(F, kind, N, u, out);
  return out;
}

std::vector<double> wkb_epsilon_values(const ProfileSpec& p, const BumpSpec& bump, SeriesKind kind, int N,
                                       double u, double x) {
  check_order(N);
  if (!(x > bump.lo() && x < bump.hi())) return std::vector<double>(N, 0.0);
  using J = Jet<Dual>;
  const J X = J::variable(N + 1, Dual(x));
  const J F = p.f.eval(X) + bump.g.eval(X) * Dual(0.0, 1.0);
  std::vector<Dual> vals;
  recursion(F, kind, N, u, vals);
  std::vector<double> out(N);
  for (int i = 0; i < N; ++i) out[i] = vals[i].d;
  return out;
}

VecQuadResult wkb_integrals(const ProfileSpec& p, SeriesKind kind, int N, double u,
                            const QuadratureSpec& spec) {
  check_order(N);
  const std::vector<double> pts = p.partition();
  return adaptive_quad_vec(
      [&](double x, std::span<double> out) {
        const std::vector<double> v = wkb_values(p, kind, N, u, x);
        std::copy(v.begin(), v.end(), out.begin());
      },
      N, pts, spec);
}

VecQuadResult wkb_epsilon_integrals(const ProfileSpec& p, const BumpSpec& bump, SeriesKind kind, int N,
                                    double u, const QuadratureSpec& spec) {
  check_order(N);
  const std::vector<double> pts = bump.knots();
  return adaptive_quad_vec(
      [&](double x, std::span<double> out) {
        const std::vector<double> v = wkb_epsilon_values(p, bump, kind, N, u, x);
        std::copy(v.begin(), v.end(), out.begin());
      },
      N, pts, spec);
}

namespace {

CoefficientTable make_table(SeriesKind kind, int N, std::optional<double> u, bool eps,
                            std::function<std::vector<double>(double)> values, const VecQuadResult& q) {
  CoefficientTable t;
  t.kind = kind;
  t.order = N;
  t.u = u;
  t.epsilon_derivative = eps;
  for (int i = 0; i < N; ++i) t.coefficients.push_back([values, i](double x) { return values(x)[i]; });
  t.integrals = q.value;
  t.integral_errors = q.error;
  return t;
}

}  // namespace

CoefficientTable s_coefficients(const ProfileSpec& p, int N, const QuadratureSpec& spec) {
  const VecQuadResult q = wkb_integrals(p, SeriesKind::S, N, 0.0, spec);
  return make_table(SeriesKind::S, N, std::nullopt, false,
                    [p, N](double x) { return wkb_values(p, SeriesKind::S, N, 0.0, x); }, q);
}

CoefficientTable w_coefficients(const ProfileSpec& p, int N, double u, const QuadratureSpec& spec) {
  if (!(u >= 0.0)) throw Error(ErrorKind::ConfigError, "w coefficients need u >= 0");
  const VecQuadResult q = wkb_integrals(p, SeriesKind::W, N, u, spec);
  return make_table(SeriesKind::W, N, u, false,
                    [p, N, u](double x) { return wkb_values(p, SeriesKind::W, N, u, x); }, q);
}

CoefficientTable epsilon_derivative_tables(const ProfileSpec& p, const BumpSpec& bump, int N,
                                           std::optional<double> u, const QuadratureSpec& spec) {
  const SeriesKind kind = u ? SeriesKind::W : SeriesKind::S;
  const double uu = u.value_or(0.0);
  const VecQuadResult q = wkb_epsilon_integrals(p, bump, kind, N, uu, spec);
  return make_table(kind, N, u, true,
                    [p, bump, kind, N, uu](double x) { return wkb_epsilon_values(p, bump, kind, N, uu, x); },
                    q);
}

namespace {

double boundary_log(const std::vector<double>& c, double t, int N) {
  double corr = 0.0;
  for (int j = 1; 2 * j <= N - 2; ++j) corr += c[2 * j] / c[0] * std::pow(t, -2.0 * j);
  return -std::log(2.0 * t * c[0]) - std::log1p(corr);
}

}  // namespace

double log_A_plus(const ProfileSpec& p, double lambda, int N) {
  return boundary_log(wkb_values(p, SeriesKind::S, N, 0.0, p.a), lambda, N);
}

double log_B_plus(const ProfileSpec& p, int k, double u, int N) {
  return boundary_log(wkb_values(p, SeriesKind::W, N, u, p.a), static_cast<double>(k), N);
}

double boundary_subtraction(const std::vector<double>& c, double t, int N) {
  double v = -std::log(2.0 * t * c[0]);
  for (int j = 1; 2 * j <= N - 2; ++j) v -= c[2 * j] / c[0] * std::pow(t, -2.0 * j);
  return v;
}

}  // namespace revzeta
