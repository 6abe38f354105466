#pragma once

// Zeta-function ledger for the Dirichlet Laplacian on a surface of
// revolution: asymptotic A-terms and finite Z-terms at s = 0 (functional
// determinant) and s = -1/2 (Casimir energy and its residue), plus the
// first-order change of the energy under f -> f + eps g.

#include <map>
#include <string>
#include <vector>

#include "revzeta/cylinder.hpp"
#include "revzeta/numerics.hpp"
#include "revzeta/profile.hpp"
#include "revzeta/radial.hpp"

namespace revzeta {

/// zeta_R'(-2) = -zeta(3) / (4 pi^2)
inline constexpr double kZetaPrimeMinus2 = -0.030448457058393270780;

enum class EvalPoint { Determinant, Energy };

struct TermValue {
  double finite_part = 0.0;
  double residue = 0.0;
};

/// A-terms keyed by WKB index (-1, 0, 1, 2).
struct ATerms {
  std::map<int, TermValue> A0;
  std::map<int, TermValue> Aneq;
  double finite_sum() const;
  double residue_sum() const;
};

struct ZetaDecomposition {
  EvalPoint at = EvalPoint::Energy;
  ATerms a_terms;
  double Z0 = 0.0;
  double Zneq = 0.0;
  int K_used = 0;
  double tail_bound = 0.0;
  std::map<std::string, double> error_budget;

  /// zeta'(0) at the determinant point, the finite part of zeta(-1/2) at the
  /// energy point.
  double value() const { return Z0 + Zneq + a_terms.finite_sum(); }
  double residue() const { return a_terms.residue_sum(); }
};

struct SpecZetaOptions {
  QuadratureSpec quad{1e-9, 1e-9, 4000};
  OdeOptions ode;
  /// Absolute target for k-series tails.
  double target_tol = 1e-6;
  int K_cap = 200;
  /// > 0: sum exactly this many k-terms (tail is estimated, never enforced).
  int K_fixed = 0;
  /// Spectral cap for the generic route: lambda-integrals stop at
  /// lambda_max, the k-th u-integral at lambda_max / k, and a power-law fit
  /// of the last stretch supplies the rest.
  double lambda_max = 100.0;
  int jobs = 1;

  void validate() const;
};

// --- s = 0 ---------------------------------------------------------------

ATerms a_terms_det(const ProfileSpec& p, const QuadratureSpec& quad = {});
double z0_prime_zero(const ProfileSpec& p, const SpecZetaOptions& opts = {});
SeriesResult zneq_prime_zero(const ProfileSpec& p, const SpecZetaOptions& opts = {});
/// value() is zeta'(0); the log-determinant is its negative.
ZetaDecomposition functional_determinant(const ProfileSpec& p, const SpecZetaOptions& opts = {});

// --- s = -1/2 ------------------------------------------------------------

ATerms a_terms_energy(const ProfileSpec& p, const QuadratureSpec& quad = {});
/// Boundary-only residue of zeta(-1/2) (the A1 residues cancel identically).
double residue_at_minus_half(const ProfileSpec& p);

/// log X_0(b; i lambda) minus its N = 4 asymptotics, lambda >= 1.
double z0_subtracted_integrand(const ProfileSpec& p, double lambda, const QuadratureSpec& quad = {},
                               const OdeOptions& ode = {});
/// log X_k(b; i u k) minus its N = 4 uniform asymptotics.
double zneq_subtracted_integrand(const ProfileSpec& p, double k, double u, const QuadratureSpec& quad = {},
                                 const OdeOptions& ode = {});

QuadResult z0_minus_half(const ProfileSpec& p, const SpecZetaOptions& opts = {});
SeriesResult zneq_minus_half(const ProfileSpec& p, const SpecZetaOptions& opts = {});
ZetaDecomposition casimir_energy(const ProfileSpec& p, const SpecZetaOptions& opts = {});

// --- d/d(eps) at eps = 0 -------------------------------------------------

/// Keys: A0_-1, A0_0, ResA0_1, A0_2, Aneq_-1, Aneq_0, ResAneq_1, ResAneq_2,
/// FPAneq_2.
std::map<std::string, double> delta_a_terms(const ProfileSpec& p, const BumpSpec& bump,
                                            const QuadratureSpec& quad = {});

/// The three g-weighted integrals that the A-term derivatives collapse to
/// once every g' and g'' is moved onto g.
struct ConsolidatedIntegrals {
  double arclength = 0.0;  // -(1/2pi) int f'' (1+f'^2)^{-3/2} g
  double zeta_prime = 0.0;  // -(zeta'(-2)/pi) int (f f'' + 2 f'^2 + 2) / (f^3 (1+f'^2)^{3/2}) g
  double finite_part = 0.0;  // (1/16) int (2 f'^3 (1+f'^2) + f f' (5 f'^2 - 3) f'') / (f^3 (1+f'^2)^5) g
  double total() const { return arclength + zeta_prime + finite_part; }
};
ConsolidatedIntegrals consolidated_integrals(const ProfileSpec& p, const BumpSpec& bump,
                                             const QuadratureSpec& quad = {});

struct EnergyChangeResult {
  double delta_E = 0.0;
  std::map<std::string, double> term_breakdown;
  int K_used = 0;
  double tail_bound = 0.0;
  std::vector<double> quadrature_errors;
  /// Sum of quadrature errors and the tail bound.
  double error_estimate() const;
};

/// Generic route: perturbation ratios from the augmented radial system.
EnergyChangeResult delta_energy(const ProfileSpec& p, const BumpSpec& bump, const SpecZetaOptions& opts = {});

/// Constant profile: closed-form ratios, exact large-k cancellation.
EnergyChangeResult delta_energy_cylinder(const CylinderConfig& cfg, const BumpSpec& bump,
                                         const SpecZetaOptions& opts = {});

struct FiniteDifferenceResult {
  std::vector<double> epsilons;
  std::vector<double> central;     // (E(eps) - E(-eps)) / (2 eps)
  std::vector<double> richardson;  // successive eliminations of the eps^2 term
  double estimate = 0.0;
  double observed_order = 0.0;
};

/// Central differences of casimir_energy on f = alpha + eps g with fixed K and
/// spectral caps (identical for +eps and -eps), Richardson-extrapolated.
/// epsilons must halve successively.
FiniteDifferenceResult finite_difference_energy_derivative(const CylinderConfig& cfg, const BumpSpec& bump,
                                                           const std::vector<double>& epsilons,
                                                           const SpecZetaOptions& opts);

}  // namespace revzeta
