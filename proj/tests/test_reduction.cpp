#include "doctest.h"
#include "ppl/error.hpp"
#include "ppl/invariants.hpp"
#include "ppl/parse.hpp"
#include "ppl/reduction.hpp"
#include "ppl/reference.hpp"

using namespace ppl;

namespace {

ReducedPencil reduce_builtin(const char* name) {
  auto b = builtin(name);
  return dirac_reduce(b.pencil, b.gauge);
}

}  // namespace

TEST_CASE("kdv blocks and D inverse") {
  auto b = builtin("kdv");
  auto bl = adapted_blocks(b.pencil.op, b.gauge);
  CHECK(bl.a == MatDiffOp(1, 1));
  CHECK(bl.d == ref::matrix({{"-2*D", "-2*eps^-1"}, {"2*eps^-1", "0"}}));
  auto inv = invert_d(bl.d);
  CHECK(inv.inverse == ref::matrix({{"0", "eps/2"}, {"-eps/2", "-1/2*eps^2*D"}}));
  CHECK(bl.d * inv.inverse == MatDiffOp::identity(2));
  CHECK(inv.inverse * bl.d == MatDiffOp::identity(2));
}

TEST_CASE("D inverse edge cases") {
  // purely algebraic block: inverse at step 0
  auto d = ref::matrix({{"0", "3"}, {"-3", "0"}});
  auto inv = invert_d(d);
  CHECK(inv.order == 0);
  CHECK(inv.inverse == ref::matrix({{"0", "-1/3"}, {"1/3", "0"}}));

  auto singular = ref::matrix({{"D", "0"}, {"0", "D"}});
  try {
    invert_d(singular);
    FAIL("expected a singular error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Singular);
    CHECK(std::string(e.what()).find("kernel intersection") != std::string::npos);
  }
  // 1 + D is not nilpotent-terminating
  auto tail = ref::matrix({{"1 + eps*D"}});
  try {
    invert_d(tail, 6);
    FAIL("expected a non-termination error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonTermination);
  }
  CHECK_THROWS_AS(invert_d(ref::matrix({{"u"}}, ref::u_names())), Error);
}

TEST_CASE("kdv reduction") {
  auto r = reduce_builtin("kdv");
  auto pair = split_pencil(r.op);
  CHECK(pair.p1 == ref::kdv_p1());
  CHECK(pair.p2 == ref::kdv_p2());
  CHECK(r.names.names == std::vector<std::string>{"u"});
  CHECK(reassembly_check(r));
  REQUIRE(r.liouville);
  CHECK(r.liouville->characteristic == std::vector<Poly>{Poly(1)});
  CHECK(check_exact(r.op, *r.liouville).ok());
}

TEST_CASE("camassa-holm reduction") {
  auto r = reduce_builtin("camassa-holm");
  auto pair = split_pencil(r.op);
  CHECK(pair.p1 == ref::ch_p1());
  CHECK(pair.p2 == ref::ch_p2());
  CHECK(reassembly_check(r));
  auto s = schur_check(r);
  CHECK(s.factorizes);
  CHECK(s.lambda_free);
  CHECK(s.det_delta == Poly(4));
  // R_Q = 1/4 R_M(u, 0, 0)
  auto ratio = charpoly_ratio(char_poly(r.blocks.substituted).poly, char_poly(r.op).poly);
  CHECK(ratio.f == Poly(Rational(1, 4)));
}

TEST_CASE("so5 reduction matches the reference operators") {
  auto r = reduce_builtin("so5");
  auto pair = split_pencil(r.op);
  CHECK(-pair.p1 == ref::so5_p1_ref());
  auto want = ref::so5_p2_ref();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(-pair.p2.at(i, j) == want.at(i, j));
    }
  CHECK(r.d_inverse_order > 0);
  CHECK(r.blocks.d * r.d_inverse == MatDiffOp::identity(8));
  CHECK(reassembly_check(r));
  REQUIRE(r.liouville);
  CHECK(check_exact(r.op, *r.liouville).ok());
}

TEST_CASE("so5 characteristic identity") {
  auto r = reduce_builtin("so5");
  Poly rq = char_poly(r.op).poly;
  CHECK(rq * Rational(256) == ref::so5_charpoly_256());
  auto s = schur_check(r);
  CHECK(s.factorizes);
  CHECK(s.constant);
  CHECK(s.det_delta == Poly(Rational(1, 16)));
}

TEST_CASE("sl3 fractional reduction matches the reference pencil") {
  auto r = reduce_builtin("sl3-frac");
  auto want = ref::sl3_pencil_ref();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(-r.op.at(i, j) == want.at(i, j));
    }
  CHECK(reassembly_check(r));
  REQUIRE(r.liouville);
  CHECK(check_exact(r.op, *r.liouville).ok());
  CHECK_THROWS_AS(hydro_limit(r.op), Error);
  auto s = schur_check(r);
  CHECK(s.factorizes);
  CHECK(s.lambda_free);
  // R_Q = 4 R_M on the slice in frame coordinates; positive in every real basis
  CHECK(s.det_delta == Poly(Rational(1, 4)));
}

TEST_CASE("schur factorization for every builtin reduction") {
  for (const char* n : {"kdv", "so5", "sl3-frac", "camassa-holm"}) {
    CAPTURE(n);
    auto s = schur_check(reduce_builtin(n));
    CHECK(s.factorizes);
    CHECK(s.lambda_free);
  }
  auto s = schur_check(reduce_builtin("kdv"));
  CHECK(s.det_delta == Poly(4));
  auto ratio = charpoly_ratio(s.det_full, s.det_reduced);
  CHECK(ratio.f == Poly(Rational(1, 4)));
}

TEST_CASE("trivial gauge keeps the pencil") {
  auto b = builtin("ds:A2");
  auto r = dirac_reduce(b.pencil, b.gauge);
  CHECK(r.op == b.pencil.op);
  CHECK(r.blocks.d.rows() == 0);
}

TEST_CASE("restriction to the slice") {
  GaugeSpec q;
  q.retained = {2};
  q.fixed = {{0, Rational(3)}, {1, Rational(0)}};
  Poly f = parse_poly("w1*w3 + w1_x + w2 + w3_x");
  CHECK(restrict_to_slice(f, q) == parse_poly("3*w1 + w1_x"));
}

TEST_CASE("kernel intersection") {
  for (const char* n : {"kdv", "so5", "sl3-frac"}) {
    CAPTURE(n);
    auto b = builtin(n);
    auto rep = kernel_intersection_check(b.pencil, b.gauge, 3, 7);
    CHECK(rep.samples.size() == 6);
    CHECK(rep.trivial());
  }
  // w = A: ker P1 and ker P2 share the centralizer of A at p = 0
  auto b = builtin("so5");
  RVec a = field_coordinates(b.pencil, b.pencil.a_vector);
  CHECK(kernel_intersection_dim(b.pencil, a, Rational(0)) > 0);
}

TEST_CASE("lambda degree on the leaf") {
  for (const char* n : {"A1", "A2", "B2", "A3", "C3"}) {
    CAPTURE(n);
    auto b = builtin(std::string("ds:") + n);
    auto l = leaf_char_poly(b.pencil);
    CHECK(lambda_degree_check(l.charpoly, b.pencil.algebra->rank));
    CHECK(l.leaf_dim == static_cast<std::size_t>(2 * b.pencil.algebra->h_vee - 2));
  }
  CHECK(leaf_char_poly(builtin("so5").pencil).charpoly.lambda_degree == 2);
  // sl2 at w3 = 1 in the dual (Y, H, X) coordinates
  auto kdv = builtin("kdv").pencil;
  GaugeSpec leaf;
  leaf.retained = {0, 1};
  leaf.fixed = {{2, Rational(1)}};
  PolyMatrix s = symbol(kdv.op);
  for (auto& row : s)
    for (Poly& c : row) c = restrict_to_slice(c, leaf);
  CHECK(char_poly(s).poly == ref::sl2_leaf_charpoly());
}
