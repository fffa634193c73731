#include <random>

#include "doctest.h"
#include "ppl/parse.hpp"
#include "ppl/poly.hpp"

using namespace ppl;

namespace {

Poly random_poly(std::mt19937_64& gen, int fields) {
  std::uniform_int_distribution<int> coef(-4, 4), field(0, fields - 1), order(0, 2), eps(-1, 2), count(1, 4);
  Poly out;
  int n = count(gen);
  for (int t = 0; t < n; ++t) {
    Poly term(coef(gen));
    term *= Poly::eps(eps(gen));
    term *= Poly::w(field(gen), order(gen));
    if (coef(gen) > 0) term *= Poly::w(field(gen), order(gen));
    if (coef(gen) > 2) term *= Poly::lambda();
    out += term;
  }
  return out;
}

}  // namespace

TEST_CASE("total x-derivative") {
  Poly u = Poly::w(0);
  CHECK(total_x_derivative(u) == Poly::w(0, 1));
  CHECK(total_x_derivative(u * u) == Poly(2) * u * Poly::w(0, 1));
  Poly f = Poly::eps(-1) * Poly::w(1) * Poly::w(2, 1);
  Poly expected = Poly::eps(-1) * (Poly::w(1, 1) * Poly::w(2, 1) + Poly::w(1) * Poly::w(2, 2));
  CHECK(total_x_derivative(f) == expected);
  // raises the differential degree of homogeneous input by one
  Poly dd = total_x_derivative(Poly::w(0, 2) * Poly::w(1, 1));
  for (const auto& [m, c] : dd.terms())
    CHECK(m.differential_degree() == 4);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 40; ++trial) {
    Poly a = random_poly(gen, 3), b = random_poly(gen, 3), c = random_poly(gen, 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - a == Poly());
    // Leibniz rule for the total derivative
    CHECK(total_x_derivative(a * b) == total_x_derivative(a) * b + a * total_x_derivative(b));
  }
}

TEST_CASE("parse and print round trip") {
  FieldNames names{{"u"}};
  Poly p = parse_poly("-2*(u - lam)*eps^-1 + 1/2*u_xx*u^2 - 3/4", names);
  CHECK(parse_poly(p.str(names), names) == p);
  CHECK(p.coefficient(kLambda, 1) == Poly::eps(-1) * Poly(2));
  CHECK(parse_poly("0.25*u", names) == Poly::w(0) * Rational(1, 4));
  CHECK(parse_poly("w2*w1_x", {}) == Poly::w(1) * Poly::w(0, 1));
  CHECK_THROWS(parse_poly("u^", names));
  CHECK_THROWS(parse_poly("(u", names));
}

TEST_CASE("exact division") {
  Poly x = Poly::w(0), y = Poly::w(1);
  Poly a = (x + y) * (x - Poly(2) * y) * (x * x + Poly::lambda());
  auto q = divide_exact(a, x + y);
  REQUIRE(q.has_value());
  CHECK(*q * (x + y) == a);
  CHECK_FALSE(divide_exact(x * x + Poly(1), x + y).has_value());
}

TEST_CASE("substitution and evaluation") {
  Poly x = Poly::w(0), y = Poly::w(1);
  Poly f = x * x * y + Poly::eps(-1) * y;
  Poly g = f.substitute({{jet(1, 0), Poly(3)}});
  CHECK(g == Poly(3) * x * x + Poly(3) * Poly::eps(-1));
  double v = f.evaluate<double>([](VarCode c) { return c == kEps ? 2.0 : (c == jet(0, 0) ? 1.5 : -1.0); });
  CHECK(v == doctest::Approx(1.5 * 1.5 * -1.0 - 0.5));
}
