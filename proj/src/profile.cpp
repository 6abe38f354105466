#include "revzeta/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "revzeta/error.hpp"
#include "revzeta/numerics.hpp"

namespace revzeta {

std::vector<double> ProfileSpec::partition() const {
  std::vector<double> pts{a};
  for (double x : breakpoints)
    if (x > a && x < b) pts.push_back(x);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<double> BumpSpec::knots() const {
  if (mixed) return {lo(), c, hi()};
  return {lo(), hi()};
}

ProfileSpec make_constant_profile(double alpha, double a, double b) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::ConfigError, "cylinder radius must be positive");
  if (!(b > a)) throw Error(ErrorKind::ConfigError, "interval needs b > a");
  return {a, b, Expr::constant(alpha), Expr::constant(0.0), Expr::constant(0.0), {}};
}

ProfileSpec make_expression_profile(const Expr& f, double a, double b) {
  const Expr fp = f.derivative();
  return make_expression_profile(f, fp, fp.derivative(), a, b);
}

ProfileSpec make_expression_profile(const Expr& f, const Expr& fp, const Expr& fpp, double a, double b) {
  if (!(b > a)) throw Error(ErrorKind::ConfigError, "interval needs b > a");
  return {a, b, f, fp, fpp, {}};
}

namespace {

Expr lobe(double center, double half) {
  const Expr x = Expr::variable();
  const Expr d = x - Expr::constant(center);
  const Expr r = d / (d * d - Expr::constant(half * half));
  return exp(-(r * r));
}

void check_width(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw Error(ErrorKind::ConfigError, "bump half-width must be positive");
}

}  // namespace

BumpSpec make_gaussian_bump(double c, double delta) {
  check_width(delta);
  const Expr g = Expr::cutoff(c - delta, c + delta, lobe(c, delta));
  const Expr gp = g.derivative();
  return {c, delta, g, gp, gp.derivative(), false};
}

BumpSpec make_mixed_gaussian_bump(double c, double delta) {
  check_width(delta);
  const double h = 0.5 * delta;
  const Expr g = Expr::cutoff(c - delta, c, lobe(c - h, h)) - Expr::cutoff(c, c + delta, lobe(c + h, h));
  const Expr gp = g.derivative();
  return {c, delta, g, gp, gp.derivative(), true};
}

BumpSpec make_zero_bump(double c, double delta) {
  check_width(delta);
  const Expr z = Expr::constant(0.0);
  return {c, delta, z, z, z, false};
}

std::vector<double> validation_grid(double a, double b, int n) {
  std::vector<double> grid;
  grid.reserve(n + 40);
  for (int i = 0; i < n; ++i) grid.push_back(a + (b - a) * i / (n - 1));
  for (int j = 1; j <= 20; ++j) {
    const double off = (b - a) * std::pow(10.0, -0.5 * j - 3.0);
    grid.push_back(a + off);
    grid.push_back(b - off);
  }
  std::sort(grid.begin(), grid.end());
  return grid;
}

ProfileSpec perturbed_profile(const ProfileSpec& p, const BumpSpec& bump, double epsilon) {
  if (!(bump.lo() > p.a && bump.hi() < p.b)) {
    std::ostringstream os;
    os << "bump support (" << bump.lo() << ", " << bump.hi() << ") not inside (" << p.a << ", " << p.b << ")";
    throw Error(ErrorKind::ConfigError, os.str());
  }
  if (epsilon == 0.0) return p;
  const Expr e = Expr::constant(epsilon);
  ProfileSpec out{p.a, p.b, p.f + e * bump.g, p.f_prime + e * bump.g_prime,
                  p.f_double_prime + e * bump.g_double_prime, p.breakpoints};
  for (double k : bump.knots()) out.breakpoints.push_back(k);
  // The bump peaks off-grid in general; check its extremal points too.
  std::vector<double> grid = validation_grid(p.a, p.b);
  grid.push_back(bump.c);
  if (bump.mixed) {
    grid.push_back(bump.c - 0.5 * bump.delta);
    grid.push_back(bump.c + 0.5 * bump.delta);
  }
  for (double x : grid) {
    const double v = out.f(x);
    if (!(v > 0.0)) {
      std::ostringstream os;
      os << "f + " << epsilon << " g = " << v << " at x = " << x;
      throw Error(ErrorKind::PositivityViolation, os.str());
    }
  }
  return out;
}

namespace {

// Central difference with one Richardson step; O(h^4).
double richardson_diff(const Expr& fn, double x, double h) {
  const double d1 = (fn(x + h) - fn(x - h)) / (2.0 * h);
  const double d2 = (fn(x + 0.5 * h) - fn(x - 0.5 * h)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

ProfileReport validate_profile(const ProfileSpec& p, double rel_tol) {
  ProfileReport r;
  const std::vector<double> grid = validation_grid(p.a, p.b);
  r.grid_points = static_cast<int>(grid.size());
  r.min_f = std::numeric_limits<double>::infinity();
  const double h = 1e-4 * (p.b - p.a);
  for (double x : grid) {
    const double v = p.f(x);
    if (!(v >= r.min_f)) {
      r.min_f = v;
      r.min_f_at = x;
    }
    const double fp = p.f_prime(x);
    const double fpp = p.f_double_prime(x);
    const double d1 = richardson_diff(p.f, x, h);
    const double d2 = richardson_diff(p.f_prime, x, h);
    const double r1 = std::abs(d1 - fp) / std::max({std::abs(fp), std::abs(d1), 1.0});
    const double r2 = std::abs(d2 - fpp) / std::max({std::abs(fpp), std::abs(d2), 1.0});
    if (!(r1 <= r.max_fp_residual)) {
      r.max_fp_residual = std::isnan(r1) ? std::numeric_limits<double>::infinity() : r1;
      r.max_fp_residual_at = x;
    }
    if (!(r2 <= r.max_fpp_residual)) {
      r.max_fpp_residual = std::isnan(r2) ? std::numeric_limits<double>::infinity() : r2;
      r.max_fpp_residual_at = x;
    }
  }
  r.positive = r.min_f > 0.0;
  r.derivatives_consistent = r.max_fp_residual <= rel_tol && r.max_fpp_residual <= rel_tol;
  return r;
}

std::string ProfileReport::summary() const {
  std::ostringstream os;
  os.precision(6);
  os << "positivity: " << (positive ? "ok" : "FAIL") << " (min f = " << min_f << " at x = " << min_f_at
     << ")\n";
  os << "f' consistency: max rel residual " << max_fp_residual << " at x = " << max_fp_residual_at << '\n';
  os << "f'' consistency: max rel residual " << max_fpp_residual << " at x = " << max_fpp_residual_at
     << '\n';
  os << "derivatives: " << (derivatives_consistent ? "ok" : "FAIL") << ", grid " << grid_points
     << " points";
  return os.str();
}

BumpReport validate_bump(const BumpSpec& bump, double a, double b) {
  BumpReport r;
  r.inside = bump.lo() > a && bump.hi() < b;
  std::vector<double> probes{bump.lo(), bump.hi(), bump.lo() - 1e-9, bump.hi() + 1e-9, a, b};
  for (int i = 1; i <= 8; ++i) {
    probes.push_back(bump.lo() - 0.1 * i * bump.delta);
    probes.push_back(bump.hi() + 0.1 * i * bump.delta);
  }
  for (double x : probes) {
    for (const Expr* e : {&bump.g, &bump.g_prime, &bump.g_double_prime})
      r.max_edge_value = std::max(r.max_edge_value, std::abs((*e)(x)));
  }
  r.edges_vanish = r.max_edge_value < 1e-12;
  const std::vector<double> pts = bump.knots();
  QuadratureSpec spec{1e-14, 1e-12, 4000};
  r.integral_of_derivative = adaptive_quad([&](double x) { return bump.g_prime(x); }, pts, spec).value;
  return r;
}

}  // namespace revzeta
