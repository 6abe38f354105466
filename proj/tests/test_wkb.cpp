#include <cmath>

#include "doctest.h"
#include "revzeta/wkb.hpp"

using namespace revzeta;

// Reference values: symbolic recursion (sympy) for f(x) = x at x = 1.5.
TEST_CASE("s coefficients for a linear profile") {
  const ProfileSpec p = make_expression_profile(parse_expr("x"), 1.0, 2.0);
  const std::vector<double> s = wkb_values(p, SeriesKind::S, 4, 0.0, 1.5);
  REQUIRE(s.size() == 4);
  CHECK(s[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(s[1] == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  CHECK(s[2] == doctest::Approx(-0.039283710065919307).epsilon(1e-13));
  CHECK(s[3] == doctest::Approx(-0.018518518518518519).epsilon(1e-13));
}

TEST_CASE("w coefficients for a linear profile") {
  const ProfileSpec p = make_expression_profile(parse_expr("x"), 1.0, 2.0);
  const std::vector<double> w1 = wkb_values(p, SeriesKind::W, 4, 1.0, 1.5);
  CHECK(w1[0] == doctest::Approx(1.6996731711975949).epsilon(1e-14));
  CHECK(w1[1] == doctest::Approx(-0.23076923076923077).epsilon(1e-14));
  CHECK(w1[2] == doctest::Approx(0.012184730289650487).epsilon(1e-12));
  CHECK(w1[3] == doctest::Approx(0.011291621441826267).epsilon(1e-12));
  const std::vector<double> wh = wkb_values(p, SeriesKind::W, 4, 0.5, 1.5);
  CHECK(wh[0] == doctest::Approx(1.1785113019775792).epsilon(1e-14));
  CHECK(wh[1] == doctest::Approx(-0.12).epsilon(1e-14));
  CHECK(wh[2] == doctest::Approx(0.037335238046649709).epsilon(1e-12));
  CHECK(wh[3] == doctest::Approx(0.0051456).epsilon(1e-12));
}

TEST_CASE("boundary logarithms") {
  const ProfileSpec p = make_expression_profile(parse_expr("x"), 1.0, 2.0);
  CHECK(log_A_plus(p, 5.0, 4) == doctest::Approx(-2.6466555530558998).epsilon(1e-13));
  CHECK(log_B_plus(p, 2, 0.5, 4) == doctest::Approx(-1.8519117418956691).epsilon(1e-13));
}

TEST_CASE("constant profile: only the leading coefficient survives") {
  const ProfileSpec p = make_constant_profile(2.0, 0.0, 3.0);
  const std::vector<double> s = wkb_values(p, SeriesKind::S, 5, 0.0, 1.0);
  CHECK(s[0] == doctest::Approx(1.0));
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] == doctest::Approx(0.0));
  const std::vector<double> w = wkb_values(p, SeriesKind::W, 5, 0.7, 1.0);
  CHECK(w[0] == doctest::Approx(std::sqrt(1.0 + 0.49 * 4.0) / 2.0));
  for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i] == doctest::Approx(0.0));
  const CoefficientTable t = s_coefficients(p, 4);
  CHECK(t.count() == 4);
  CHECK(t.integral(-1) == doctest::Approx(3.0));
}

TEST_CASE("epsilon derivatives agree with central differences") {
  const ProfileSpec p = make_expression_profile(parse_expr("1 + x/4"), 0.0, 1.0);
  const BumpSpec g = make_gaussian_bump(0.5, 0.3);
  const double h = 1e-5;
  const ProfileSpec pp = perturbed_profile(p, g, h), pm = perturbed_profile(p, g, -h);
  for (SeriesKind kind : {SeriesKind::S, SeriesKind::W}) {
    for (double x : {0.35, 0.5, 0.62}) {
      const std::vector<double> d = wkb_epsilon_values(p, g, kind, 4, 0.8, x);
      const std::vector<double> vp = wkb_values(pp, kind, 4, 0.8, x), vm = wkb_values(pm, kind, 4, 0.8, x);
      for (int i = 0; i < 4; ++i) CHECK(d[i] == doctest::Approx((vp[i] - vm[i]) / (2 * h)).epsilon(1e-6));
    }
  }
  // zero outside the support
  for (double v : wkb_epsilon_values(p, g, SeriesKind::S, 4, 0.0, 0.1)) CHECK(v == 0.0);
}

TEST_CASE("order limits") {
  const ProfileSpec p = make_constant_profile(1.0, 0.0, 1.0);
  CHECK_THROWS(wkb_values(p, SeriesKind::S, 0, 0.0, 0.5));
  CHECK_THROWS(wkb_values(p, SeriesKind::S, kMaxWkbOrder + 1, 0.0, 0.5));
}
