#pragma once

// Radial initial value problem on the imaginary spectral axis,
//
//   X'' + p X' + q X = 0,   X(a) = 0, X'(a) = 1,
//   p = f'/f - f' f'' / (1 + f'^2),   q = -(1 + f'^2)(lambda^2 + k^2 / f^2),
//
// and its first-order response X^ to f -> f + eps g, which solves the same
// operator with source -G and zero initial data.

#include <functional>
#include <vector>

#include "revzeta/profile.hpp"

namespace revzeta {

/// v = sign * exp(log_magnitude); sign 0 is an exact zero.
struct LogScaledValue {
  double log_magnitude = 0.0;
  int sign = 0;

  static LogScaledValue from(double v);
  double value() const;
};

struct RadialProblem {
  ProfileSpec profile;
  double k = 0.0;  // continuous k is allowed (tail estimates)
  double lambda = 0.0;

  double p_coeff(double x) const;
  double q_coeff(double x) const;
};

struct OdeOptions {
  double rel_tol = 1e-12;
  long max_steps = 5'000'000;
  /// Components are rescaled by 2^-kRescaleBits once they exceed 2^kRescaleBits.
  static constexpr int kRescaleBits = 332;
};

/// X_k(b; i lambda). Throws Error(StiffnessFailure) on step-size underflow and
/// Error(ToleranceUnmet) when max_steps is exhausted.
LogScaledValue solve_X(const RadialProblem& rp, const OdeOptions& opts = {});

/// G(X'', X', X, x) = coef_dX(x) X' + coef_X(x) X, the eps-coefficient of the
/// perturbed operator (derived by forward differentiation, not transcribed).
struct SourceCoefficients {
  std::function<double(double)> coef_dX;
  std::function<double(double)> coef_X;
};
SourceCoefficients derive_G(const ProfileSpec& p, const BumpSpec& bump, double k, double lambda);

struct PerturbationSolution {
  LogScaledValue X;   // X(b)
  double ratio = 0.0; // X^(b) / X(b)
};

/// Integrates (X, X', X^, X^') with common rescaling; the ratio is invariant.
/// `initial_scale` multiplies the initial data of X (for invariance tests).
PerturbationSolution solve_perturbation_ratio(const RadialProblem& rp, const BumpSpec& bump,
                                              const OdeOptions& opts = {}, double initial_scale = 1.0);

/// Taylor coefficients in mu of X_k(b; mu) on the real axis,
/// X = sum_j mu^j Y_j. Returns log Y_0(b) and the ratios Y_j(b) / Y_0(b)
/// for j = 1..order.
struct MuSeries {
  double log_Y0 = 0.0;
  std::vector<double> ratios;
};
MuSeries solve_mu_series(const ProfileSpec& p, int k, int order, const OdeOptions& opts = {});

}  // namespace revzeta
