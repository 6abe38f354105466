#include <cmath>

#include "doctest.h"
#include "revzeta/error.hpp"
#include "revzeta/expr.hpp"
#include "revzeta/jet.hpp"

using namespace revzeta;

TEST_CASE("parsed expressions evaluate") {
  CHECK(parse_expr("1 + x/4")(2.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(parse_expr("x^2")(3.0) == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(parse_expr("2*(x - 1)")(4.0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(parse_expr("sqrt(x) + exp(0) + log(e)")(4.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(parse_expr("sin(pi/2) * cosh(0) - sinh(0) + cos(0)")(0.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(parse_expr("-x")(2.0) == doctest::Approx(-2.0));
}

TEST_CASE("malformed expressions are config errors") {
  for (const char* bad : {"1 +", "foo(x)", "(x", "x y", ""}) {
    CAPTURE(bad);
    try {
      parse_expr(bad);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ConfigError);
    }
  }
}

TEST_CASE("symbolic derivative matches the analytic one") {
  const Expr f = parse_expr("cosh(x - 0.5)");
  const Expr fp = f.derivative();
  const Expr fpp = fp.derivative();
  for (double x : {0.0, 0.3, 1.0}) {
    CHECK(fp(x) == doctest::Approx(std::sinh(x - 0.5)).epsilon(1e-14));
    CHECK(fpp(x) == doctest::Approx(std::cosh(x - 0.5)).epsilon(1e-14));
  }
}

TEST_CASE("jets carry exact higher derivatives") {
  const Expr f = parse_expr("exp(2*x)");
  const Jet<double> J = f.eval(Jet<double>::variable(6, 0.3));
  for (int i = 0; i <= 6; ++i) CHECK(J.derivative_value(i) == doctest::Approx(std::pow(2.0, i) * std::exp(0.6)).epsilon(1e-13));
}

TEST_CASE("dual numbers track the epsilon derivative through jets") {
  // (x + eps x^2)^2 at x = 0.5: d/deps at 0 is 2 x^3.
  const Jet<Dual> X = Jet<Dual>::variable(3, Dual(0.5));
  const Jet<Dual> F = X + X * X * Dual(0.0, 1.0);
  const Jet<Dual> G = F * F;
  CHECK(G.value().v == doctest::Approx(0.25));
  CHECK(G.value().d == doctest::Approx(0.25));
  // d/dx of the eps-part 2 x^3 is 6 x^2
  CHECK(G.derivative_value(1).d == doctest::Approx(1.5));
}

TEST_CASE("cutoff vanishes outside and at the edges") {
  const Expr body = exp(-pow(Expr::variable() / (Expr::variable() * Expr::variable() - Expr::constant(1.0)), Expr::constant(2.0)));
  const Expr g = Expr::cutoff(-1.0, 1.0, body);
  CHECK(g(-1.0) == 0.0);
  CHECK(g(1.0) == 0.0);
  CHECK(g(2.0) == 0.0);
  CHECK(g(0.0) == doctest::Approx(1.0));
}
