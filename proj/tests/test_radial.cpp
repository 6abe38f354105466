#include <cmath>

#include "doctest.h"
#include "revzeta/cylinder.hpp"
#include "revzeta/radial.hpp"

using namespace revzeta;

TEST_CASE("cylinder solutions") {
  const ProfileSpec p = make_constant_profile(1.0, 0.0, 1.0);
  const LogScaledValue x = solve_X(RadialProblem{p, 0.0, 1.0});
  CHECK(x.sign == 1);
  CHECK(std::exp(x.log_magnitude) == doctest::Approx(1.1752011936438014569).epsilon(1e-11));
  // lambda = 0, k = 0: X = x - a
  CHECK(solve_X(RadialProblem{p, 0.0, 0.0}).value() == doctest::Approx(1.0).epsilon(1e-13));

  const ProfileSpec p2 = make_constant_profile(2.0, 0.0, 1.0);
  // alpha sinh(k L beta / alpha) / (k beta), alpha = 2, k = 3, u = 1
  CHECK(solve_X(RadialProblem{p2, 3.0, 3.0}).value() == doctest::Approx(4.26119279800173421168).epsilon(1e-11));
}

TEST_CASE("large rates stay accurate in log space") {
  const CylinderConfig cfg{1.0, 0.0, 1.0};
  const double lx = solve_X(RadialProblem{cfg.profile(), 20.0, 50.0}).log_magnitude;
  CHECK(std::abs(lx - log_closed_Xk(cfg, 20.0, 2.5)) < 1e-9);
  // forces several rescalings
  const double big = solve_X(RadialProblem{cfg.profile(), 0.0, 600.0}).log_magnitude;
  CHECK(std::abs(big - log_closed_X0(cfg, 600.0)) < 1e-8 * big);
}

TEST_CASE("perturbation ratio is invariant under initial scaling") {
  const ProfileSpec p = make_expression_profile(parse_expr("1 + x/4"), 0.0, 1.0);
  const BumpSpec g = make_gaussian_bump(0.5, 0.3);
  const RadialProblem rp{p, 2.0, 3.0};
  const PerturbationSolution a = solve_perturbation_ratio(rp, g);
  const PerturbationSolution b = solve_perturbation_ratio(rp, g, {}, 1e-150);
  CHECK(a.ratio == doctest::Approx(b.ratio).epsilon(1e-10));
  CHECK(a.X.log_magnitude == doctest::Approx(b.X.log_magnitude).epsilon(1e-12));
}

TEST_CASE("perturbation ratio matches the closed cylinder ratio") {
  const CylinderConfig cfg{1.0, 0.0, 1.0};
  const BumpSpec g = make_gaussian_bump(0.5, 0.3);
  for (double lam : {0.0, 1.0, 7.0}) {
    const double ode = solve_perturbation_ratio(RadialProblem{cfg.profile(), 0.0, lam}, g).ratio;
    CHECK(std::abs(ode - ratio0(cfg, g, lam)) < 1e-8 * std::max(1.0, std::abs(ode)));
  }
}

TEST_CASE("perturbation ratio matches finite differences of log X") {
  const ProfileSpec p = make_expression_profile(parse_expr("cosh(x - 0.5)"), 0.0, 1.0);
  const BumpSpec g = make_gaussian_bump(0.4, 0.2);
  const double h = 1e-5;
  const double lp = solve_X(RadialProblem{perturbed_profile(p, g, h), 1.0, 2.0}).log_magnitude;
  const double lm = solve_X(RadialProblem{perturbed_profile(p, g, -h), 1.0, 2.0}).log_magnitude;
  const double ratio = solve_perturbation_ratio(RadialProblem{p, 1.0, 2.0}, g).ratio;
  CHECK(ratio == doctest::Approx((lp - lm) / (2 * h)).epsilon(1e-6));
}

TEST_CASE("derived source reduces to the cylinder specialisation") {
  const double alpha = 1.5;
  const ProfileSpec p = make_constant_profile(alpha, 0.0, 2.0);
  const BumpSpec g = make_gaussian_bump(1.0, 0.4);
  const SourceCoefficients G = derive_G(p, g, 3.0, 2.0);
  for (double x : {0.8, 1.1, 1.3}) {
    CHECK(G.coef_dX(x) == doctest::Approx(g.g_prime(x) / alpha).epsilon(1e-13));
    CHECK(G.coef_X(x) == doctest::Approx(2.0 * 9.0 * g.g(x) / std::pow(alpha, 3)).epsilon(1e-13));
  }
}

TEST_CASE("mu series of the cylinder k = 0 mode") {
  // X = sinh(sqrt(-mu) L)/sqrt(-mu) on the real axis = L + L^3 mu / 6 ... with
  // mu -> -mu sign: sin(sqrt(mu) L)/sqrt(mu) = L - L^3 mu/6 + L^5 mu^2/120
  const ProfileSpec p = make_constant_profile(1.0, 0.0, 1.0);
  const MuSeries ms = solve_mu_series(p, 0, 2);
  CHECK(std::exp(ms.log_Y0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ms.ratios[0] == doctest::Approx(-1.0 / 6.0).epsilon(1e-11));
  CHECK(ms.ratios[1] == doctest::Approx(1.0 / 120.0).epsilon(1e-10));
}
