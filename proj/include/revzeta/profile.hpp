#pragma once

// Profile functions f on [a, b] and compactly supported bumps g.

#include <string>
#include <vector>

#include "revzeta/expr.hpp"

namespace revzeta {

struct ProfileSpec {
  double a = 0.0;
  double b = 1.0;
  Expr f;
  Expr f_prime;
  Expr f_double_prime;
  /// Interior points where some derivative of f is not smooth (bump support
  /// edges). Quadrature over [a, b] starts from this partition.
  std::vector<double> breakpoints;

  double length() const { return b - a; }
  /// [a, breakpoints..., b], sorted and clipped to the open interval.
  std::vector<double> partition() const;
};

struct BumpSpec {
  double c = 0.5;
  double delta = 0.1;
  Expr g;
  Expr g_prime;
  Expr g_double_prime;

  double lo() const { return c - delta; }
  double hi() const { return c + delta; }
  /// Support edges plus internal seams (the mixed bump has one at c).
  std::vector<double> knots() const;

  bool mixed = false;
};

/// f = alpha on [a, b].
ProfileSpec make_constant_profile(double alpha, double a, double b);

/// Profile from an expression for f; derivatives are generated symbolically.
ProfileSpec make_expression_profile(const Expr& f, double a, double b);

/// Profile from three user-supplied expressions (not cross-checked here;
/// see validate_profile).
ProfileSpec make_expression_profile(const Expr& f, const Expr& fp, const Expr& fpp, double a,
                                    double b);

/// exp(-((x-c)/((x-c)^2-delta^2))^2) on (c-delta, c+delta), zero elsewhere.
BumpSpec make_gaussian_bump(double c, double delta);

/// Positive half-width lobe on (c-delta, c), negative one on (c, c+delta).
BumpSpec make_mixed_gaussian_bump(double c, double delta);

/// g = 0 with a nominal support; handy for identity checks.
BumpSpec make_zero_bump(double c, double delta);

/// f + epsilon g. Throws Error(PositivityViolation) when the result is not
/// strictly positive on the validation grid, ConfigError when the bump
/// support is not strictly inside (a, b).
ProfileSpec perturbed_profile(const ProfileSpec& p, const BumpSpec& bump, double epsilon);

struct ProfileReport {
  bool positive = true;
  double min_f = 0.0;
  double min_f_at = 0.0;
  bool derivatives_consistent = true;
  double max_fp_residual = 0.0;  // relative
  double max_fp_residual_at = 0.0;
  double max_fpp_residual = 0.0;
  double max_fpp_residual_at = 0.0;
  int grid_points = 0;
  bool ok() const { return positive && derivatives_consistent; }
  std::string summary() const;
};

/// Positivity and derivative consistency on 2048 uniform points plus
/// clusters near both endpoints. Never throws for a well-formed spec.
ProfileReport validate_profile(const ProfileSpec& p, double rel_tol = 1e-6);

struct BumpReport {
  bool inside = true;
  bool edges_vanish = true;
  double max_edge_value = 0.0;
  double integral_of_derivative = 0.0;
  bool ok() const { return inside && edges_vanish; }
};

/// Support containment, vanishing of g, g', g'' at and beyond the edges,
/// and the integral of g'.
BumpReport validate_bump(const BumpSpec& bump, double a, double b);

/// Sample grid used by both validators: uniform points plus geometric
/// clusters approaching a and b.
std::vector<double> validation_grid(double a, double b, int n = 2048);

}  // namespace revzeta
