#include <cmath>

#include "doctest.h"
#include "revzeta/error.hpp"
#include "revzeta/profile.hpp"

using namespace revzeta;

TEST_CASE("gaussian bump values") {
  const BumpSpec g = make_gaussian_bump(0.5, 0.1);
  // exp(-(0.05 / (0.0025 - 0.01))^2) to 18 digits
  CHECK(g.g(0.55) == doctest::Approx(4.98910939279501067e-20).epsilon(1e-13));
  CHECK(g.g(0.5) == 1.0);
  CHECK(g.g(0.4) == 0.0);
  CHECK(g.g(0.65) == 0.0);
  CHECK(g.g_prime(0.5) == doctest::Approx(0.0));
}

TEST_CASE("mixed bump is odd about its centre") {
  const BumpSpec m = make_mixed_gaussian_bump(0.5, 0.2);
  for (double t : {0.01, 0.05, 0.1, 0.15}) CHECK(m.g(0.5 + t) == doctest::Approx(-m.g(0.5 - t)).epsilon(1e-14));
  CHECK(m.g(0.4) > 0.0);
}

TEST_CASE("profile validation") {
  const ProfileSpec lin = make_expression_profile(parse_expr("1 + x/4"), 0.0, 1.0);
  const ProfileReport r = validate_profile(lin);
  CHECK(r.ok());
  CHECK(r.min_f == doctest::Approx(1.0));

  const ProfileSpec neg = make_expression_profile(parse_expr("x - 0.5"), 0.0, 1.0);
  CHECK_FALSE(validate_profile(neg).positive);

  // wrong user-supplied derivative
  const ProfileSpec wrong =
      make_expression_profile(parse_expr("cosh(x)"), parse_expr("cosh(x)"), parse_expr("cosh(x)"), 0.0, 1.0);
  CHECK_FALSE(validate_profile(wrong).derivatives_consistent);
}

TEST_CASE("bump validation") {
  const BumpReport r = validate_bump(make_gaussian_bump(0.5, 0.3), 0.0, 1.0);
  CHECK(r.ok());
  CHECK(std::abs(r.integral_of_derivative) < 1e-12);
  CHECK_FALSE(validate_bump(make_gaussian_bump(0.1, 0.3), 0.0, 1.0).inside);
}

TEST_CASE("perturbed profiles") {
  const ProfileSpec base = make_constant_profile(1.0, 0.0, 1.0);
  const BumpSpec g = make_gaussian_bump(0.5, 0.2);
  const ProfileSpec same = perturbed_profile(base, g, 0.0);
  CHECK(same.f(0.5) == 1.0);
  const ProfileSpec p = perturbed_profile(base, g, 0.1);
  CHECK(p.f(0.5) == doctest::Approx(1.1));
  CHECK(p.f_prime(0.45) == doctest::Approx(0.1 * g.g_prime(0.45)));
  try {
    perturbed_profile(base, g, -2.0);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PositivityViolation);
  }
  try {
    perturbed_profile(base, make_gaussian_bump(0.9, 0.2), 0.1);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigError);
  }
}
