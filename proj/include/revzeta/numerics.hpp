#pragma once

// Shared numerical engine: adaptive Gauss-Kronrod quadrature, the
// t/(1-t) map for half-infinite ranges, and k-series truncation with
// integral tail bounds.

#include <functional>
#include <span>
#include <vector>

namespace revzeta {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;

  /// Throws Error(ConfigError) when a tolerance is not positive.
  void validate() const;
  QuadratureSpec scaled(double factor) const {
    return {abs_tol * factor, rel_tol * factor, max_subdivisions};
  }
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

struct SeriesResult {
  double sum = 0.0;
  int K_used = 0;
  double tail_bound = 0.0;
};

using RealFn = std::function<double(double)>;

/// Global adaptive 7/15-point Gauss-Kronrod; panel error |K15 - G7|.
/// Throws Error(QuadratureFailure) when max_subdivisions is exhausted.
QuadResult adaptive_quad(const RealFn& fn, double lo, double hi, const QuadratureSpec& spec);

/// Same, with the initial partition taken from `points` (sorted, first and
/// last are the integration limits). Useful when the integrand has kinks or
/// compact support inside the range.
QuadResult adaptive_quad(const RealFn& fn, std::span<const double> points,
                         const QuadratureSpec& spec);

/// Vector-valued adaptive quadrature; fn writes `dim` values into its span.
/// Converges when every component meets the tolerance.
struct VecQuadResult {
  std::vector<double> value;
  std::vector<double> error;
};
using VecFn = std::function<void(double, std::span<double>)>;
VecQuadResult adaptive_quad_vec(const VecFn& fn, int dim, std::span<const double> points,
                                const QuadratureSpec& spec);

struct ImproperOptions {
  double lo = 0.0;
  /// u = lo + scale * t / (1 - t)
  double scale = 1.0;
  /// Sample |fn| at lo + 1e3, 1e4, 1e5 and throw Error(NonDecayDetected)
  /// when it is not decreasing.
  bool check_decay = true;
};

/// Integral over [lo, inf) through the t/(1-t) transform; the open GK rule
/// never evaluates t = 1.
QuadResult improper_quad(const RealFn& fn, const QuadratureSpec& spec,
                         const ImproperOptions& opts = {});

/// n-point Gauss-Legendre on [lo, hi]; used for reference values.
double gauss_legendre(const RealFn& fn, double lo, double hi, int n);

struct SeriesOptions {
  double target_tol = 1e-7;
  int K_cap = 200;
  int K_min = 1;
  /// The tail callback is only consulted once |term(k)| falls below
  /// gate * target_tol (and at K_cap).
  double gate = 10.0;
};

/// Sums term(1) + term(2) + ... in ascending order and stops at the first K
/// whose tail(K) (a bound on sum_{k>K}) is at most target_tol.
/// Throws Error(TailBoundUnmet) when K_cap is reached first.
SeriesResult series_with_tail(const std::function<double(int)>& term,
                              const std::function<double(int)>& tail,
                              const SeriesOptions& opts);

struct TailOptions {
  /// Largest kappa at which the summand is evaluated, as a multiple of K.
  double max_factor = 64.0;
  /// Relative contribution below which the doubling sweep stops.
  double rel_stop = 1e-3;
  /// Panels below this are treated as converged (summands that have sunk
  /// into cancellation noise); the floor itself is added to the estimate.
  double abs_floor = 0.0;
};

/// Estimate of the integral of |h(kappa)| over [K, inf) with h treated as a
/// function of continuous kappa: 8-point Gauss-Legendre panels on [K, 2K],
/// [2K, 4K], ... and a geometric extrapolation past the last panel. Returns
/// +inf when the panels do not decrease.
double tail_integral_estimate(const RealFn& h, double K, const TailOptions& opts = {});

/// Hurwitz zeta sum_{n>=0} (n + a)^{-s} for s > 1, a > 0 (Euler-Maclaurin).
double hurwitz_zeta(double s, double a);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace revzeta
