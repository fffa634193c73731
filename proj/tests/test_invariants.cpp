#include <cmath>

#include "doctest.h"
#include "ppl/error.hpp"
#include "ppl/invariants.hpp"
#include "ppl/parse.hpp"
#include "ppl/reduction.hpp"
#include "ppl/reference.hpp"

using namespace ppl;

namespace {

MatDiffOp reduced(const char* name) {
  auto b = builtin(name);
  return dirac_reduce(b.pencil, b.gauge).op;
}

MatDiffOp kdv_pencil() { return join_pencil({ref::kdv_p1(), ref::kdv_p2()}); }

double to_double(const Real& x) { return x.convert_to<double>(); }

}  // namespace

TEST_CASE("symbol and characteristic polynomial of KdV") {
  PolyMatrix s = symbol(kdv_pencil());
  REQUIRE(s.size() == 1);
  CHECK(s[0][0] == ref::kdv_charpoly());
  auto c = char_poly(kdv_pencil());
  CHECK(c.poly == ref::kdv_charpoly());
  CHECK(c.lambda_degree == 1);
}

TEST_CASE("symbol rejects a grading violation") {
  auto bad = ref::matrix({{"u*D^2"}}, ref::u_names());
  CHECK_THROWS_AS(symbol(bad), Error);
}

TEST_CASE("hydrodynamic limit of KdV") {
  auto h = hydro_limit(kdv_pencil());
  CHECK(h.g1[0][0] == Poly(-2));
  CHECK(h.g2[0][0] == parse_poly("-2*u", ref::u_names()));
  CHECK(h.gamma2[0][0][0] == Poly(-1));
}

TEST_CASE("KdV central invariant") {
  SampleOptions opt;
  auto rep = central_invariants(kdv_pencil(), opt);
  REQUIRE(rep.samples.size() == 5);
  for (const auto& s : rep.samples) {
    REQUIRE(s.roots.size() == 1);
    CHECK(s.roots[0].exact);
    CHECK(s.roots[0].c_exact == Rational(1, 24));
  }
  CHECK(rep.constant);
}

TEST_CASE("so5 central invariants") {
  SampleOptions opt;
  auto rep = central_invariants(reduced("so5"), opt);
  auto predicted = ds_predicted_ci(*builtin("so5").pencil.algebra);
  std::sort(predicted.begin(), predicted.end());
  CHECK(predicted == std::vector<Rational>{Rational(1, 24), Rational(1, 12)});
  for (const auto& s : rep.samples) {
    std::vector<double> cs;
    for (const auto& r : s.roots) cs.push_back(to_double(r.c));
    std::sort(cs.begin(), cs.end());
    REQUIRE(cs.size() == 2);
    CHECK(std::abs(cs[0] - 1.0 / 24) < 1e-9);
    CHECK(std::abs(cs[1] - 1.0 / 12) < 1e-9);
  }
  CHECK(rep.constant);
  for (const auto& sp : rep.spread) CHECK(to_double(sp) < 1e-9);
}

TEST_CASE("DS prediction formula") {
  auto a1 = build_algebra("A1");
  CHECK(ds_predicted_ci(a1) == std::vector<Rational>{Rational(1, 24)});
  // simply-laced: all <H_i,H_i> = 2
  for (const auto& c : ds_predicted_ci(build_algebra("A3"))) CHECK(c == Rational(1, 24));
}

TEST_CASE("scalar family central invariants") {
  SampleOptions opt;
  auto one = central_invariants(builtin("scalar").pencil.op, opt);
  CHECK(one.constant);
  for (const auto& s : one.samples) CHECK(s.roots[0].c_exact == Rational(1, 6));

  auto lin = central_invariants(builtin("scalar:c=u").pencil.op, opt);
  CHECK_FALSE(lin.constant);
  for (const auto& s : lin.samples) {
    Rational u = s.point[0];
    CHECK(std::abs(to_double(s.roots[0].c) - u.get_d() / 6) < 1e-9);
  }
}

TEST_CASE("camassa-holm central invariant is not constant") {
  SampleOptions opt;
  auto rep = central_invariants(reduced("camassa-holm"), opt);
  CHECK_FALSE(rep.constant);
  for (const auto& s : rep.samples) {
    Rational u = s.point[0];
    CHECK(s.roots[0].c_exact == u * u / 24);
  }
}

TEST_CASE("root expansions are even") {
  for (const char* n : {"kdv", "so5", "camassa-holm"}) {
    CAPTURE(n);
    SampleOptions opt;
    opt.order = 6;
    auto rep = central_invariants(reduced(n), opt);
    for (const auto& s : rep.samples) CHECK(to_double(s.max_odd) < 1e-25);
  }
}

TEST_CASE("lambda roots of KdV") {
  auto c = char_poly(kdv_pencil());
  auto e = lambda_roots(c, {Rational(3)}, 4);
  REQUIRE(e.roots.size() == 1);
  // lambda = u - p^2/4
  REQUIRE(e.roots[0].exact);
  CHECK(e.roots[0].exact_coeffs[0] == Rational(3));
  CHECK(e.roots[0].exact_coeffs[2] == Rational(-1, 4));
  CHECK(e.roots[0].exact_coeffs[4] == Rational(0));
}

TEST_CASE("semisimplicity failure") {
  // g2 - lambda g1 with a repeated root
  auto p = ref::matrix({{"2*(u1 - lam)*D", "0"}, {"0", "2*(u1 - lam)*D"}}, FieldNames{{"u1", "u2"}});
  auto c = char_poly(p);
  CHECK_THROWS_AS(lambda_roots(c, {Rational(1), Rational(2)}, 2), Error);
}

TEST_CASE("miura invariance of KdV roots") {
  Poly u = Poly::w(0);
  std::vector<MiuraMap> maps;
  maps.emplace_back(std::vector<std::vector<Poly>>{{u, Poly::w(0, 1)}});
  for (int alpha : {0, 1}) {
    Poly f2 = Poly::w(0, 2) + Poly::w(0, 1) * Poly::w(0, 1) * Rational(alpha);
    maps.emplace_back(std::vector<std::vector<Poly>>{{u, Poly(), f2}});
  }
  auto base = char_poly(kdv_pencil());
  for (const auto& m : maps) {
    auto t = miura_apply(kdv_pencil(), m, 8);
    CHECK(is_skew_adjoint(t.op));
    auto c = char_poly(t.op);
    for (int k : {-3, 1, 5}) {
      std::vector<Rational> w0{Rational(k)};
      auto a = lambda_roots(base, w0, 4);
      auto b = lambda_roots(c, w0, 4);
      REQUIRE(a.roots.size() == b.roots.size());
      for (std::size_t i = 0; i <= 4; ++i)
        CHECK(to_double(abs(a.roots[0].coeffs[i] - b.roots[0].coeffs[i])) < 1e-9);
    }
  }
}

TEST_CASE("characteristic polynomial ratio") {
  Poly rm = parse_poly("2*p^3 - 8*p*u", ref::u_names());
  auto r = charpoly_ratio(rm, rm * Rational(1, 4));
  CHECK(r.f == Poly(Rational(1, 4)));
  CHECK(r.constant);
  CHECK(r.lambda_free);
  CHECK_THROWS_AS(charpoly_ratio(rm, parse_poly("p + lam")), Error);
}

TEST_CASE("eigenvalue scaling") {
  for (const char* n : {"A2", "B2"}) {
    CAPTURE(n);
    auto rep = eigen_scaling_check(build_algebra(n), {2.0, 3.0});
    CHECK(rep.ok(1e-8));
    for (const auto& s : rep.samples) CHECK(s.zero_modes == rep.rank);
  }
}

TEST_CASE("working precision") {
  int d = working_digits();
  set_working_digits(80);
  CHECK(working_digits() == 80);
  set_working_digits(d);
}
