#include "doctest.h"

#include "bracketlab/polyjet.hpp"
#include "support/gen.hpp"

using namespace bracketlab;

namespace {
Poly P(const std::string& s, int n) { return parse_poly(s, n); }
}

TEST_CASE("rational literals stay reduced") {
  Rational q = parse_rational("6/4");
  CHECK(q.get_num() == 3);
  CHECK(q.get_den() == 2);
  CHECK(parse_rational("-2/-4") == Rational(1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
}

TEST_CASE("poly_arith examples") {
  CHECK(poly_arith(P("x0", 1), P("x0", 1), PolyOp::mul) == P("x0^2", 1));
  CHECK(poly_arith(P("x0+1", 1), P("-x0-1", 1), PolyOp::add).is_zero());
  CHECK(poly_arith(P("1/2 x0 x1", 2), P("2 x1", 2), PolyOp::mul) == P("x0 x1^2", 2));
  CHECK(poly_arith(P("x0", 2), P("3", 2), PolyOp::scale) == P("3x0", 2));
  CHECK_THROWS(poly_arith(P("x0", 1), P("x0", 2), PolyOp::add));
}

TEST_CASE("translate examples") {
  CHECK(translate(P("x0^2", 1), {1}) == P("x0^2 + 2x0 + 1", 1));
  CHECK(translate(P("x0", 1), {0}) == P("x0", 1));
  CHECK(translate(P("x0 x1", 2), {1, -1}) == P("x0 x1 - x0 + x1 - 1", 2));
  CHECK_THROWS(translate(P("x0", 1), {1, 2}));
}

TEST_CASE("jet_project examples") {
  auto j = jet_project(P("x0^2 + x1", 2), {0, 0}, 1);
  CHECK(j.rep == P("x1", 2));
  auto k = jet_project(P("x0^2", 1), {1}, 1);
  CHECK(k.rep == P("1 + 2 x0", 1));  // in the shifted variable x0 - 1
  CHECK(jet_lift(k) == P("2x0 - 1", 1));
  // anything in I_p^{k+1} projects to zero
  CHECK(jet_project(P("(x0-1)^2 (x1+2)", 2), {1, -2}, 2).rep.is_zero());
  CHECK(in_ideal_power(P("(x0-1)^2 x1", 2), {1, 0}, 3));
  CHECK(!in_ideal_power(P("(x0-1)^2 x1", 2), {1, 3}, 3));
  CHECK(vanishing_order(P("x0 x1^2", 2), {0, 0}, 9) == 3);
}

TEST_CASE("partial_derivative examples") {
  CHECK(partial_derivative(P("x0^2", 1), 0) == P("2x0", 1));
  CHECK(partial_derivative(P("x1", 2), 0).is_zero());
  CHECK(partial_derivative(P("x0^2 x1", 2), 1) == P("x0^2", 2));
  CHECK_THROWS(partial_derivative(P("x0", 1), 1));
}

TEST_CASE("literal grammar") {
  CHECK(P("3/2 x0^2 x1 - x2", 3).coeff({2, 1, 0}) == Rational(3, 2));
  CHECK(P(" 3/2x0^2x1-x2 ", 3) == P("3/2 x0^2 x1 - x2", 3));
  CHECK(P("(x1-1)*x0", 2) == P("x0 x1 - x0", 2));
  CHECK(P("-x0", 1) == -P("x0", 1));
  CHECK_THROWS_AS(P("x3", 2), ParseError);
  CHECK_THROWS_AS(P("0.5 x0", 1), ParseError);
  CHECK_THROWS_AS(P("x0 +", 1), ParseError);
  CHECK_THROWS_AS(P("", 1), ParseError);
  CHECK(P("x0^2 - 3/4", 1).str() == "x0^2 - 3/4");
}

TEST_CASE("grlex enumeration") {
  auto e = exponents_of_degree(2, 2);
  REQUIRE(e.size() == 3);
  CHECK(e.front() == Exponent{0, 2});
  CHECK(e.back() == Exponent{2, 0});
  CHECK(exponents_up_to(3, 2).size() == 10);
}

TEST_CASE("ring axioms on random polynomials") {
  testgen::Rng r(11);
  for (int it = 0; it < 100; ++it) {
    Poly a = testgen::random_poly(r, 3, 3, 4), b = testgen::random_poly(r, 3, 3, 4),
         c = testgen::random_poly(r, 3, 3, 4);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("translation group law and chain rule") {
  testgen::Rng r(12);
  for (int it = 0; it < 100; ++it) {
    Poly a = testgen::random_poly(r, 2, 4, 5);
    RVec v = testgen::random_point(r, 2), w = testgen::random_point(r, 2);
    RVec vw{v[0] + w[0], v[1] + w[1]};
    CHECK(translate(translate(a, v), w) == translate(a, vw));
    for (int i = 0; i < 2; ++i) CHECK(partial_derivative(translate(a, v), i) == translate(partial_derivative(a, i), v));
  }
}

TEST_CASE("jet projection is multiplicative modulo truncation") {
  testgen::Rng r(13);
  for (int it = 0; it < 100; ++it) {
    Poly a = testgen::random_poly(r, 2, 3, 4), b = testgen::random_poly(r, 2, 3, 4);
    RVec p = testgen::random_point(r, 2);
    int k = r.uniform(0, 3);
    auto lhs = jet_project(a * b, p, k);
    auto rhs = jet_project(jet_lift(jet_project(a, p, k)) * jet_lift(jet_project(b, p, k)), p, k);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("parameters ride along in translate and jets") {
  // x0 geometric, x1 a parameter
  Poly a = P("x0^2 x1 + x1^2", 2);
  auto j = jet_project(a, {1}, 1);
  CHECK(j.rep == P("x1 + x1^2 + 2 x0 x1", 2));
}
