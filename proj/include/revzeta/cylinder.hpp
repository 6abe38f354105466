#pragma once

// Constant profile f = alpha: closed-form radial solutions, perturbation
// ratios, and independent oracles for the general pipeline.

#include <vector>

#include "revzeta/numerics.hpp"
#include "revzeta/profile.hpp"
#include "revzeta/radial.hpp"

namespace revzeta {

struct CylinderConfig {
  double alpha = 1.0;
  double a = 0.0;
  double b = 1.0;

  double length() const { return b - a; }
  void validate() const;
  ProfileSpec profile() const { return make_constant_profile(alpha, a, b); }
};

/// X_0(b; i lambda) = sinh(L lambda) / lambda (L at lambda = 0).
double closed_X0(const CylinderConfig& cfg, double lambda);
double log_closed_X0(const CylinderConfig& cfg, double lambda);

/// X_k(b; i u k) = alpha sinh(k L beta / alpha) / (k beta), beta = sqrt(1 + u^2 alpha^2).
double closed_Xk(const CylinderConfig& cfg, double k, double u);
double log_closed_Xk(const CylinderConfig& cfg, double k, double u);

/// Closed-form ratios X^/X; the t-integrals are done by adaptive quadrature
/// with cosh/csch products formed in log space.
double ratio0(const CylinderConfig& cfg, const BumpSpec& bump, double lambda, const QuadratureSpec& spec = {});
double ratiok(const CylinderConfig& cfg, const BumpSpec& bump, double k, double u, const QuadratureSpec& spec = {});

/// ratiok + k / (alpha^2 beta) * int g: the k != 0 integrand of the cylinder
/// energy change with its large-k part cancelled analytically.
double ratiok_subtracted(const CylinderConfig& cfg, const BumpSpec& bump, double k, double u,
                         const QuadratureSpec& spec = {});

struct VariationOfParametersReport {
  double wronskian = 0.0;           // measured from the fundamental pair
  double wronskian_expected = 0.0;  // -2 lambda or -2 k beta / alpha
  double ratio_vop = 0.0;           // (v1 X1 + v2 X2)(b) / X(b)
  double ratio_closed = 0.0;        // ratio0 / ratiok
  double abs_difference() const;
};

/// Rebuilds X^(b) from the exponential pair and the Wronskian, integrating
/// the source with g' directly (no integration by parts), and compares
/// against the closed ratio. k = 0 uses `spectral` as lambda, k > 0 as u.
VariationOfParametersReport variation_of_parameters_check(const CylinderConfig& cfg, const BumpSpec& bump,
                                                          int k, double spectral,
                                                          const QuadratureSpec& spec = {});

struct DirectZetaResult {
  double value = 0.0;
  double error_bound = 0.0;
  long n_cutoff = 0;
  long k_cutoff = 0;
};

/// sum_{n >= 1} sum_{k in Z} ((n pi / L)^2 + (k / alpha)^2)^{-s}, s >= 2, by
/// brute force with integral bounds on both tails. Cutoffs grow until the
/// bound is below `target` (or are fixed when n_cutoff/k_cutoff > 0).
DirectZetaResult eigenvalue_zeta_direct(const CylinderConfig& cfg, double s, double target = 1e-9,
                                        long n_cutoff = 0, long k_cutoff = 0, int jobs = 1);

struct PipelineZetaResult {
  double value = 0.0;
  double tail = 0.0;      // fitted k-tail beyond K
  double tail_spread = 0.0;  // change of the tail under a shifted fit window
  int K = 0;
};

/// Contour representation at integer s >= 2 in its limit form: for each k the
/// residue at the origin reduces to -s [mu^s] log X_k(b; mu), with the
/// mu-Taylor coefficients integrated by the generic radial solver. The k-sum
/// runs to K and a three-power tail fit (k^{1-2s}, k^{-2s}, k^{-2s-1}) is
/// summed with Hurwitz zeta.
PipelineZetaResult zeta_pipeline_at_integer_s(const ProfileSpec& p, int s, int K, const OdeOptions& ode = {},
                                              int jobs = 1);
inline PipelineZetaResult zeta_pipeline_at_integer_s(const CylinderConfig& cfg, int s, int K,
                                                     const OdeOptions& ode = {}, int jobs = 1) {
  return zeta_pipeline_at_integer_s(cfg.profile(), s, K, ode, jobs);
}

/// Per-k contribution -s [mu^s] log X_k(b; mu) (k = 0 included once).
double zeta_k_at_integer_s(const ProfileSpec& p, int k, int s, const OdeOptions& ode = {});

}  // namespace revzeta
