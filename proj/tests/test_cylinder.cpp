#include <cmath>

#include "doctest.h"
#include "revzeta/cylinder.hpp"
#include "revzeta/error.hpp"

using namespace revzeta;

TEST_CASE("closed forms") {
  const CylinderConfig c1{1.0, 0.0, 1.0};
  CHECK(closed_X0(c1, 0.0) == 1.0);
  CHECK(closed_X0(c1, 1e-9) == doctest::Approx(1.0));
  CHECK(closed_X0(c1, 1.0) == doctest::Approx(1.1752011936438014569).epsilon(1e-15));
  const CylinderConfig c2{2.0, 0.0, 3.0};
  CHECK(closed_Xk(c2, 1.0, 0.0) == doctest::Approx(2.0 * std::sinh(1.5)).epsilon(1e-15));
  CHECK(log_closed_Xk(c2, 40.0, 3.0) == doctest::Approx(std::log(closed_Xk(c2, 40.0, 3.0))).epsilon(1e-14));
  CHECK(std::isfinite(log_closed_X0(c1, 5000.0)));
}

TEST_CASE("closed ratios") {
  const CylinderConfig cfg{1.0, 0.0, 1.0};
  const BumpSpec zero = make_zero_bump(0.5, 0.3);
  CHECK(ratio0(cfg, zero, 1.0) == 0.0);
  CHECK(ratiok(cfg, zero, 2.0, 0.5) == 0.0);
  // reflection about the midpoint
  const BumpSpec l = make_gaussian_bump(0.3, 0.1), r = make_gaussian_bump(0.7, 0.1);
  CHECK(ratio0(cfg, l, 3.0) == doctest::Approx(ratio0(cfg, r, 3.0)).epsilon(1e-10));
  CHECK(ratiok(cfg, l, 2.0, 0.7) == doctest::Approx(ratiok(cfg, r, 2.0, 0.7)).epsilon(1e-10));
  // subtracted form
  const BumpSpec g = make_gaussian_bump(0.5, 0.3);
  const double sub = ratiok_subtracted(cfg, g, 3.0, 0.4);
  const double beta = std::sqrt(1.0 + 0.16);
  const double intg = -ratio0(cfg, g, 0.0);  // int g / (alpha L)
  CHECK(sub == doctest::Approx(ratiok(cfg, g, 3.0, 0.4) + 3.0 * intg / beta).epsilon(1e-10));
  // large arguments stay finite
  CHECK(std::isfinite(ratiok(cfg, g, 200.0, 5.0)));
  CHECK_THROWS_AS(ratio0(cfg, make_gaussian_bump(0.9, 0.3), 1.0), Error);
}

TEST_CASE("variation of parameters reproduces the closed ratios") {
  const CylinderConfig cfg{1.0, 0.0, 1.0};
  const BumpSpec g = make_gaussian_bump(0.5, 0.3);
  const VariationOfParametersReport r0 = variation_of_parameters_check(cfg, g, 0, 2.0);
  CHECK(r0.wronskian_expected == -4.0);
  CHECK(r0.wronskian == doctest::Approx(-4.0).epsilon(1e-14));
  const std::pair<int, double> grid[] = {{0, 0.5}, {1, 0.0}, {1, 0.7}, {3, 0.2}, {5, 1.5}};
  for (const auto& [k, s] : grid) {
    const VariationOfParametersReport r = variation_of_parameters_check(cfg, g, k, s);
    CAPTURE(k);
    CAPTURE(s);
    if (k > 0) CHECK(r.wronskian_expected == doctest::Approx(-2.0 * k * std::sqrt(1.0 + s * s)));
    CHECK(r.wronskian == doctest::Approx(r.wronskian_expected).epsilon(1e-13));
    CHECK(r.abs_difference() < 1e-9);
  }
}

TEST_CASE("direct eigenvalue sum") {
  const CylinderConfig cfg{1.0, 0.0, 1.0};
  const DirectZetaResult s2 = eigenvalue_zeta_direct(cfg, 2.0);
  CHECK(s2.error_bound < 1e-8);
  const DirectZetaResult s3 = eigenvalue_zeta_direct(cfg, 3.0);
  CHECK(s3.value < s2.value);  // lambda^2_min = pi^2 > 1
  // the reported bound is honest under doubling
  const DirectZetaResult small = eigenvalue_zeta_direct(cfg, 2.0, 1e-6, 500, 500);
  const DirectZetaResult big = eigenvalue_zeta_direct(cfg, 2.0, 1e-6, 1000, 1000);
  CHECK(std::abs(small.value - big.value) < small.error_bound);
  // longer cylinders have a denser spectrum
  CHECK(eigenvalue_zeta_direct({1.0, 0.0, 2.0}, 2.0).value > s2.value);
}

TEST_CASE("pipeline at integer s") {
  const CylinderConfig cfg{1.0, 0.0, 1.0};
  // k = 0 slice: sum_n (n pi)^-4 = 1/90
  CHECK(zeta_k_at_integer_s(cfg.profile(), 0, 2) == doctest::Approx(1.0 / 90.0).epsilon(1e-10));
  const PipelineZetaResult p = zeta_pipeline_at_integer_s(cfg, 2, 40);
  CHECK(std::abs(p.value - eigenvalue_zeta_direct(cfg, 2.0).value) < 1e-6);
  CHECK(p.tail_spread < 1e-8);
}
