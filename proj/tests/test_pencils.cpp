#include "doctest.h"
#include "ppl/error.hpp"
#include "ppl/parse.hpp"
#include "ppl/pencils.hpp"
#include "ppl/reference.hpp"

using namespace ppl;

TEST_CASE("sl2 DS pencil display") {
  auto b = builtin("kdv");
  CHECK(b.pencil.op == ref::sl2_pencil());
  CHECK(b.pencil.variant == Variant::DS);
  CHECK(is_skew_adjoint(b.pencil.op));
  validate_pencil(b.pencil.op);
  // Z = A = X, and <X, Y> = 1
  REQUIRE(b.pencil.liouville.characteristic.size() == 3);
  CHECK(b.pencil.liouville.characteristic[0] == Poly(1));
  CHECK(b.pencil.liouville.characteristic[1].is_zero());
  CHECK(b.pencil.liouville.characteristic[2].is_zero());
}

TEST_CASE("builtin pencils are valid Poisson pencil candidates") {
  for (const char* n : {"kdv", "so5", "sl3-frac", "camassa-holm", "scalar", "scalar:c=u", "ds:A2", "ds:C3"}) {
    CAPTURE(n);
    auto b = builtin(n);
    CHECK_NOTHROW(validate_pencil(b.pencil.op));
    CHECK(lambda_degree(b.pencil.op) == 1);
    CHECK_NOTHROW(b.gauge.validate(b.pencil.fields()));
  }
  CHECK_THROWS_AS(builtin("nope"), Error);
  try {
    builtin("nope");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Lookup);
    CHECK(std::string(e.what()).find("so5") != std::string::npos);
  }
}

TEST_CASE("DS pencils are exact with Z = A") {
  for (const char* n : {"kdv", "so5", "sl3-frac", "ds:A2", "ds:B3"}) {
    CAPTURE(n);
    auto b = builtin(n);
    auto r = check_exact(b.pencil);
    CHECK(r.p1_ok());
    CHECK(r.p2_ok());
  }
}

TEST_CASE("Camassa-Holm Liouville candidates") {
  auto p = ch_pencil();
  // Z = A: L_Z P2 vanishes, so L_Z P2 = P1 fails
  auto za = check_exact(p);
  CHECK(za.residual2 == -split_pencil(p.op).p1);
  CHECK_FALSE(za.ok());
  // Z = w is an Euler field: L_Z P1 = -P1, L_Z P2 = -2 P2
  EvolutionaryField zw;
  for (int i = 0; i < 3; ++i) zw.characteristic.push_back(Poly::w(i));
  auto pair = split_pencil(p.op);
  CHECK(lie_derivative(zw, pair.p1) == -pair.p1);
  CHECK(lie_derivative(zw, pair.p2) == pair.p2 * Rational(-2));
}

TEST_CASE("field coordinates") {
  auto b = builtin("kdv");
  const LieAlg& g = *b.pencil.algebra;
  RVec x = g.unit(g.index_of("X"));
  RVec w = field_coordinates(b.pencil, x);
  CHECK(w == RVec{1, 0, 0});
  RVec h = g.unit(g.index_of("H"));
  CHECK(field_coordinates(b.pencil, h) == RVec{0, 2, 0});
}

TEST_CASE("scalar deformation") {
  auto p = scalar_deformation_pencil(Poly(1));
  CHECK(p.op.at(0, 0) == parse_op("2*(u - lam)*D + u_x + 2*eps^2*D^3", ref::u_names()));
  auto q = builtin("scalar:c=u^2").pencil;
  CHECK(q.op.at(0, 0) ==
        parse_op("2*(u - lam)*D + u_x + eps^2*(2*u^2*D^3 + 6*u*u_x*D^2 + (2*u_x^2 + 2*u*u_xx)*D)", ref::u_names()));
  CHECK(is_skew_adjoint(q.op));
  CHECK_THROWS_AS(scalar_deformation_pencil(Poly::w(0, 1)), Error);
  CHECK_THROWS_AS(builtin("scalar:q=u"), Error);
}

TEST_CASE("validation errors name the entries") {
  MatDiffOp m(2, 2);
  m.at(0, 1) = DiffOp::d();
  try {
    validate_pencil(m);
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
    CHECK(std::string(e.what()).find("(1,2)") != std::string::npos);
  }
  MatDiffOp g(1, 1);
  g.at(0, 0) = parse_op("u*D^2", ref::u_names()) - adjoint(parse_op("u*D^2", ref::u_names()));
  CHECK_THROWS_AS(validate_pencil(g), Error);
}

TEST_CASE("gauge validation") {
  GaugeSpec q;
  q.retained = {0};
  q.fixed = {{1, Rational(0)}};
  CHECK_THROWS_AS(q.validate(3), Error);
  q.fixed[2] = Rational(1);
  CHECK_NOTHROW(q.validate(3));
  q.fixed[0] = Rational(1);
  CHECK_THROWS_AS(q.validate(3), Error);
}
