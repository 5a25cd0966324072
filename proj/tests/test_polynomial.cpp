#include <doctest.h>

#include "carnot/errors.hpp"
#include "carnot/polynomial.hpp"
#include "support.hpp"

using namespace carnot;
using carnot::testing::random_point;
using carnot::testing::random_polynomial;

TEST_SUITE("poly_ring") {
  TEST_CASE("format and parse round trip") {
    const auto alg = build_algebra(2, 3);
    const auto f = parse_polynomial(alg, "x1*x212 - x2*x112 + 1/2*x12^2");
    CHECK(format_polynomial(f) == "x1*x212 - x2*x112 + 1/2*x12^2");
    CHECK(parse_polynomial(alg, format_polynomial(f)) == f);
    CHECK(format_polynomial(parse_polynomial(alg, "0")) == "0");
    CHECK(format_polynomial(parse_polynomial(alg, "-(x1 - 2)^2")) == "-x1^2 + 4*x1 - 4");
    CHECK(parse_polynomial(alg, "x1 − x2") == parse_polynomial(alg, "x1 - x2"));
    std::mt19937_64 rng(7);
    for (int t = 0; t < 30; ++t) {
      const auto g = random_polynomial(alg, rng, 6, 3);
      CHECK(parse_polynomial(alg, format_polynomial(g)) == g);
    }
  }

  TEST_CASE("parser resolves bracket symbols and reports positions") {
    const auto alg = build_algebra(3, 3);
    CHECK(parse_polynomial(alg, "x312") == parse_polynomial(alg, "x213 - x123"));
    CHECK(parse_polynomial(alg, "x21") == -Polynomial::variable(alg, "x12"));
    try {
      (void)parse_polynomial(alg, "x1 + x9");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.position() == 5);
      CHECK(std::string(e.what()).find("x9") != std::string::npos);
    }
    CHECK_THROWS_AS((void)parse_polynomial(alg, "x1 +"), ParseError);
    CHECK_THROWS_AS((void)parse_polynomial(alg, "(x1"), ParseError);
    CHECK_THROWS_AS((void)parse_polynomial(alg, "x1 x2"), ParseError);
  }

  TEST_CASE("ring axioms and evaluation homomorphism on random data") {
    const auto alg = build_algebra(3, 3);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 25; ++t) {
      const auto f = random_polynomial(alg, rng, 5, 3), g = random_polynomial(alg, rng, 5, 3),
                 h = random_polynomial(alg, rng, 4, 2);
      CHECK(f * (g + h) == f * g + f * h);
      CHECK((f * g) * h == f * (g * h));
      CHECK(f * g == g * f);
      CHECK((f - f).is_zero());
      const Point p = random_point(alg, rng);
      CHECK(evaluate(f * g, p) == evaluate(f, p) * evaluate(g, p));
      CHECK(evaluate(f + g, p) == evaluate(f, p) + evaluate(g, p));
    }
  }

  TEST_CASE("grlex order puts the leading term first") {
    const auto alg = build_algebra(2, 3);
    const auto f = parse_polynomial(alg, "x2 + x1^2 + x1*x2 + 3");
    CHECK(format_polynomial(f) == "x1^2 + x1*x2 + x2 + 3");
    CHECK(f.total_degree() == 2);
    CHECK(f.constant() == 3);
  }

  TEST_CASE("derivatives, gradients and substitution") {
    const auto alg = build_algebra(2, 3);
    const auto f = parse_polynomial(alg, "x1^3*x12 - 2*x2*x112");
    const auto x1 = *alg.find("x1");
    CHECK(f.derivative(x1) == parse_polynomial(alg, "3*x1^2*x12"));
    Point p(alg);
    p.set("x1", 2);
    p.set("x12", 5);
    const auto grad = gradient_at(f, p);
    CHECK(grad[x1] == 60);
    CHECK(grad[*alg.find("x12")] == 8);
    const auto g = substitute(f, {{x1, parse_polynomial(alg, "x2 + 1")}});
    CHECK(g == parse_polynomial(alg, "(x2 + 1)^3*x12 - 2*x2*x112"));
  }

  TEST_CASE("canonical scaling is primitive with positive leading coefficient") {
    const auto alg = build_algebra(2, 3);
    const auto f = parse_polynomial(alg, "-1/2*x12^2 - x1*x212 + x2*x112");
    CHECK(format_polynomial(canonicalize(f)) == "2*x1*x212 - 2*x2*x112 + x12^2");
    CHECK(canonicalize(Rational(-3, 4) * f) == canonicalize(f));
    CHECK(canonicalize(Polynomial()).is_zero());
  }

  TEST_CASE("gcd and exact division") {
    const auto alg = build_algebra(3, 3);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 15; ++t) {
      const auto a = random_polynomial(alg, rng, 3, 2), b = random_polynomial(alg, rng, 3, 2),
                 c = random_polynomial(alg, rng, 3, 2);
      if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
      const auto g = gcd(a * c, b * c);
      CHECK(exact_quotient(a * c, g) * g == a * c);
      CHECK(exact_quotient(b * c, g) * g == b * c);
      CHECK(exact_quotient(g, canonicalize(c)) * canonicalize(c) == g);
    }
    const auto x = Polynomial::variable(alg, "x1"), y = Polynomial::variable(alg, "x2");
    CHECK(gcd(x * x - y * y, x * y - y * y) == canonicalize(x - y));
    CHECK(gcd(Polynomial(), Polynomial()).is_zero());
    CHECK_THROWS_AS((void)exact_quotient(x + y, x), std::domain_error);
  }

  TEST_CASE("content over a subset of variables") {
    const auto alg = build_algebra(2, 3);
    const auto f = parse_polynomial(alg, "x12*x112*x1 - x12*x212*x2 + x12^2*x112");
    std::vector<bool> main(alg.dimension(), false);
    main[*alg.find("x112")] = main[*alg.find("x212")] = true;
    CHECK(content_over(f, main) == canonicalize(parse_polynomial(alg, "x12")));
  }

  TEST_CASE("Poisson bracket of coordinates is the Lie bracket") {
    const auto alg = build_algebra(2, 3);
    const auto x1 = Polynomial::variable(alg, "x1"), x2 = Polynomial::variable(alg, "x2");
    CHECK(poisson_bracket(alg, x1, x2) == Polynomial::variable(alg, "x12"));
    CHECK(poisson_bracket(alg, x2, x1 * x1) == Rational(-2) * x1 * Polynomial::variable(alg, "x12"));
  }
}
