#pragma once

// WKB coefficients of the logarithmic derivative of the radial solution.
//
//   k = 0 :  S(x; lambda) ~ sum_{i>=-1} s_i(x) lambda^{-i}
//   k != 0:  W(x; k)      ~ sum_{i>=-1} w_i(x) k^{-i},  lambda = u k
//
// Each s_i, w_i is computed pointwise by running the Riccati recursion on
// truncated Taylor jets of f, so the x-derivatives the recursion needs are
// exact. Evaluating on Jet<Dual> with f + eps g gives d/d(eps) at eps = 0.

#include <functional>
#include <optional>
#include <vector>

#include "revzeta/numerics.hpp"
#include "revzeta/profile.hpp"

namespace revzeta {

enum class SeriesKind { S, W };

/// Largest supported truncation order (jets carry N + 1 x-derivatives).
inline constexpr int kMaxWkbOrder = 7;

struct CoefficientTable {
  SeriesKind kind = SeriesKind::S;
  int order = 0;              // N; coefficients i = -1 .. N-2
  std::optional<double> u;    // set iff kind == W
  bool epsilon_derivative = false;
  std::vector<std::function<double(double)>> coefficients;  // index i + 1
  std::vector<double> integrals;                            // over [a, b]
  std::vector<double> integral_errors;

  double at(int i, double x) const { return coefficients.at(i + 1)(x); }
  double integral(int i) const { return integrals.at(i + 1); }
  int count() const { return order; }
};

/// s_{-1..N-2}(x) (kind S) or w_{-1..N-2}(x) at the given u (kind W).
std::vector<double> wkb_values(const ProfileSpec& p, SeriesKind kind, int N, double u, double x);

/// d/d(eps) of the same values for f + eps g at eps = 0.
std::vector<double> wkb_epsilon_values(const ProfileSpec& p, const BumpSpec& bump, SeriesKind kind,
                                       int N, double u, double x);

/// Integrals over [a, b] of all N coefficients at once.
VecQuadResult wkb_integrals(const ProfileSpec& p, SeriesKind kind, int N, double u,
                            const QuadratureSpec& spec);

/// Integrals of the eps-derivatives; only the bump support contributes.
VecQuadResult wkb_epsilon_integrals(const ProfileSpec& p, const BumpSpec& bump, SeriesKind kind,
                                    int N, double u, const QuadratureSpec& spec);

CoefficientTable s_coefficients(const ProfileSpec& p, int N, const QuadratureSpec& spec = {});
CoefficientTable w_coefficients(const ProfileSpec& p, int N, double u, const QuadratureSpec& spec = {});

/// Kind follows `u`: S when empty, W otherwise.
CoefficientTable epsilon_derivative_tables(const ProfileSpec& p, const BumpSpec& bump, int N,
                                           std::optional<double> u, const QuadratureSpec& spec = {});

/// log A+ = -log(2 lambda s_{-1}(a)) - log(1 + sum_j s_{2j-1}(a)/s_{-1}(a) lambda^{-2j}),
/// terms with 2j <= N - 2.
double log_A_plus(const ProfileSpec& p, double lambda, int N);

/// Same with w_i at the given u and powers of k.
double log_B_plus(const ProfileSpec& p, int k, double u, int N);

/// Boundary constant with the logarithm expanded to first order,
/// -log(2 t c_{-1}(a)) - sum_j c_{2j-1}(a)/c_{-1}(a) t^{-2j}. This is the form
/// whose powers of t feed the asymptotic A-terms, so it is what the finite
/// Z-terms subtract. t is lambda (kind S) or k (kind W).
double boundary_subtraction(const std::vector<double>& coeffs_at_a, double t, int N);

}  // namespace revzeta
