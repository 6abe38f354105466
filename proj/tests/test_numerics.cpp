#include <cmath>
#include <numbers>

#include "doctest.h"
#include "revzeta/error.hpp"
#include "revzeta/numerics.hpp"
#include "revzeta/profile.hpp"

using namespace revzeta;
using std::numbers::pi;

TEST_CASE("adaptive quadrature on smooth integrands") {
  const QuadratureSpec q{1e-13, 1e-13, 100};
  CHECK(adaptive_quad([](double x) { return x * x; }, 0.0, 1.0, q).value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(adaptive_quad([](double x) { return std::sin(x); }, 0.0, pi, q).value == doctest::Approx(2.0).epsilon(1e-14));
  // degree 22 is exact for the 15-point Kronrod rule on one panel
  const QuadResult r = adaptive_quad([](double x) { return std::pow(x, 20); }, 0.0, 1.0, q);
  CHECK(r.value == doctest::Approx(1.0 / 21.0).epsilon(1e-15));
}

TEST_CASE("bump integral against a refined Gauss-Legendre reference") {
  const BumpSpec g = make_gaussian_bump(0.5, 0.3);
  double ref = 0.0;
  const int panels = 2000;
  for (int i = 0; i < panels; ++i)
    ref += gauss_legendre([&](double x) { return g.g(x); }, 0.2 + 0.6 * i / panels, 0.2 + 0.6 * (i + 1) / panels, 20);
  const std::vector<double> pts = g.knots();
  const QuadResult r = adaptive_quad([&](double x) { return g.g(x); }, pts, QuadratureSpec{1e-12, 1e-12, 1000});
  CHECK(std::abs(r.value - ref) < 1e-12);
}

TEST_CASE("improper quadrature") {
  const QuadratureSpec q{1e-12, 1e-12, 2000};
  CHECK(improper_quad([](double u) { return std::exp(-u); }, q).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(improper_quad([](double u) { return 1.0 / (1.0 + u * u); }, q).value == doctest::Approx(pi / 2).epsilon(1e-11));
  CHECK(improper_quad([](double u) { return u * std::exp(-u * u); }, q).value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("improper quadrature equals a finite piece plus an analytic tail") {
  const QuadratureSpec q{1e-12, 1e-12, 2000};
  auto f = [](double u) { return 1.0 / ((1.0 + u) * (1.0 + u)); };
  const double head = adaptive_quad(f, 0.0, 10.0, q).value;
  const double tail = 1.0 / 11.0;
  CHECK(improper_quad(f, q).value == doctest::Approx(head + tail).epsilon(1e-11));
}

TEST_CASE("non-decaying integrands are rejected") {
  try {
    improper_quad([](double) { return 1.0; }, QuadratureSpec{});
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonDecayDetected);
  }
}

TEST_CASE("subdivision limit surfaces as a quadrature failure") {
  try {
    adaptive_quad([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, QuadratureSpec{1e-14, 1e-14, 3});
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::QuadratureFailure);
  }
}

TEST_CASE("tolerances must be positive") {
  CHECK_THROWS_AS(QuadratureSpec({0.0, 1e-8, 10}).validate(), Error);
  CHECK_THROWS_AS(QuadratureSpec({1e-8, 1e-8, 0}).validate(), Error);
}

TEST_CASE("series with tails") {
  SeriesOptions o;
  o.target_tol = 1e-10;
  SeriesResult r = series_with_tail([](int k) { return std::ldexp(1.0, -k); },
                                    [](int K) { return std::ldexp(1.0, -K); }, o);
  CHECK(r.sum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.tail_bound <= o.target_tol);

  o.target_tol = 1e-6;
  o.K_cap = 1000;
  r = series_with_tail([](int k) { return std::pow(k, -4.0); }, [](int K) { return std::pow(K, -3.0) / 3.0; }, o);
  CHECK(std::abs(r.sum - std::pow(pi, 4) / 90.0) < 1e-6);

  o.K_cap = 5;
  CHECK_THROWS_AS(series_with_tail([](int k) { return 1.0 / k; }, [](int) { return 1.0; }, o), Error);
}

TEST_CASE("integral tail estimate follows the continuous summand") {
  const double est = tail_integral_estimate([](double k) { return std::pow(k, -3.0); }, 10.0);
  CHECK(est == doctest::Approx(0.005).epsilon(1e-3));
}

TEST_CASE("Hurwitz zeta") {
  CHECK(hurwitz_zeta(2.0, 1.0) == doctest::Approx(pi * pi / 6.0).epsilon(1e-15));
  CHECK(hurwitz_zeta(4.0, 1.0) == doctest::Approx(std::pow(pi, 4) / 90.0).epsilon(1e-15));
  CHECK(hurwitz_zeta(3.0, 11.0) == doctest::Approx(1.2020569031595942854 - [] {
          double s = 0;
          for (int n = 1; n <= 10; ++n) s += std::pow(n, -3.0);
          return s;
        }()).epsilon(1e-12));
}
