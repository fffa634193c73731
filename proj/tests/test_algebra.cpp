#include <algorithm>

#include "doctest.h"
#include "ppl/algebra.hpp"
#include "ppl/error.hpp"

using namespace ppl;

namespace {

RMatrix mat(int d, std::initializer_list<std::tuple<int, int, int>> entries) {
  RMatrix m(d, d);
  for (auto [i, j, v] : entries) m.at(i - 1, j - 1) = v;
  return m;
}

RVec vec(const LieAlg& alg, const char* label) {
  int i = alg.index_of(label);
  REQUIRE(i >= 0);
  return alg.unit(i);
}

// tr(ad x ad y)/(2 h_vee) by brute force over the adjoint matrices.
Rational brute_form(const LieAlg& alg, const RVec& x, const RVec& y) {
  return (alg.ad(x) * alg.ad(y)).trace() / (2 * alg.h_vee);
}

}  // namespace

TEST_CASE("sl2") {
  LieAlg a = build_algebra("A1");
  CHECK(a.dim == 3);
  CHECK(a.h == 2);
  CHECK(a.h_vee == 2);
  CHECK(a.basis_labels == std::vector<std::string>{"Y", "H", "X"});
  RVec X = vec(a, "X"), Y = vec(a, "Y"), H = vec(a, "H");
  CHECK(a.bracket(X, Y) == H);
  CHECK(a.bracket(H, X) == scale(X, 2));
  CHECK(a.e_theta == X);
  CHECK(a.theta_vee == H);
  CHECK(check_algebra(a).empty());
  CHECK(kernel_ad(a, X).dim() == 1);
  Subspace s{3, {X}};
  Subspace o = orth_complement(a, s);
  CHECK(o.dim() == 2);
  CHECK(o.contains(X));
  CHECK(o.contains(H));
  Subspace all{3, {X, Y, H}};
  CHECK(orth_complement(a, all).dim() == 0);
  CHECK_THROWS_AS(kernel_ad(a, RVec(3)), Error);
}

TEST_CASE("so5 matches the explicit matrices") {
  LieAlg b = build_algebra("B2");
  CHECK(b.dim == 10);
  CHECK(b.h == 4);
  CHECK(b.h_vee == 3);
  CHECK(check_algebra(b).empty());
  CHECK(b.matrix(vec(b, "X1")) == mat(5, {{2, 1, 1}, {5, 4, 1}}));
  CHECK(b.matrix(vec(b, "X2")) == mat(5, {{3, 2, 1}, {4, 3, 1}}));
  CHECK(b.matrix(vec(b, "H1")) == mat(5, {{1, 1, -1}, {2, 2, 1}, {4, 4, -1}, {5, 5, 1}}));
  CHECK(b.matrix(vec(b, "H2")) == mat(5, {{4, 4, 2}, {2, 2, -2}}));
  CHECK(b.matrix(vec(b, "X3")) == mat(5, {{3, 1, -1}, {5, 3, 1}}));
  CHECK(b.matrix(vec(b, "X4")) == mat(5, {{4, 1, 1}, {5, 2, 1}}));
  CHECK(b.matrix(vec(b, "Y1")) == b.matrix(vec(b, "X1")).transpose());
  CHECK(b.matrix(vec(b, "Y2")) == Rational(2) * b.matrix(vec(b, "X2")).transpose());
  CHECK(b.matrix(vec(b, "Y3")) == Rational(-2) * b.matrix(vec(b, "X3")).transpose());
  CHECK(b.matrix(vec(b, "Y4")) == Rational(4) * b.matrix(vec(b, "X4")).transpose());
  // E_theta proportional to X4
  CHECK(b.e_theta == vec(b, "X4"));

  // isotropy algebra of X4
  Subspace k = kernel_ad(b, vec(b, "X4"));
  CHECK(k.dim() == 6);
  for (const char* l : {"X1", "X2", "X3", "X4", "H1", "Y1"}) CHECK(k.contains(vec(b, l)));
  Subspace o = orth_complement(b, k);
  CHECK(o.dim() == 4);
  for (const char* l : {"X4", "X2", "X3"}) CHECK(o.contains(vec(b, l)));
  CHECK(o.contains(add(vec(b, "H1"), vec(b, "H2"))));

  // trace-form oracle: <x,y> = 1/2 tr(xy) in the defining representation
  for (int i = 0; i < b.dim; ++i)
    for (int j = 0; j < b.dim; ++j)
      CHECK(b.form.at(i, j) == (b.matrices[i] * b.matrices[j]).trace() / 2);
  CHECK(b.pairing(vec(b, "H1"), vec(b, "H1")) == 2);
  CHECK(b.pairing(vec(b, "H2"), vec(b, "H2")) == 4);
}

TEST_CASE("sl3") {
  LieAlg a = build_algebra("A2");
  CHECK(a.dim == 8);
  CHECK(check_algebra(a).empty());
  for (int i : a.H) CHECK(brute_form(a, a.unit(i), a.unit(i)) == 2);
  CHECK(std::count(a.theta_degree.begin(), a.theta_degree.end(), 1) == 2);
  CHECK(kernel_ad(a, a.e_theta).dim() == 4);
  // trace form oracle for sl_n
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) CHECK(a.form.at(i, j) == (a.matrices[i] * a.matrices[j]).trace());
}

TEST_CASE("structural invariants across series") {
  for (auto [s, n] : std::vector<std::pair<char, int>>{{'A', 3}, {'B', 3}, {'C', 2}, {'C', 3}, {'D', 4}}) {
    LieAlg g = build_algebra(s, n);
    INFO(g.name);
    CHECK(check_algebra(g).empty());
    for (int i = 0; i < g.dim; i += 3)
      for (int j = 0; j < g.dim; j += 2) CHECK(g.form.at(i, j) == brute_form(g, g.unit(i), g.unit(j)));
    for (int d : g.theta_degree) CHECK((d >= -2 && d <= 2));
    CHECK(std::count(g.theta_degree.begin(), g.theta_degree.end(), 2) == 1);
    CHECK(std::count(g.theta_degree.begin(), g.theta_degree.end(), -2) == 1);
    for (int d : g.principal_degree) CHECK(std::abs(d) <= g.h - 1);
    if (s == 'A')
      for (int i : g.H) CHECK(g.form.at(i, i) == 2);
  }
}

TEST_CASE("coxeter data rows") {
  for (auto [s, n] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 4}, {'B', 2}, {'B', 4}, {'C', 3}, {'D', 4}, {'D', 5}}) {
    LieAlg g = build_algebra(s, n);
    Table1Row got = table1_report(g);
    Table1Row want = table1_expected(s, n);
    INFO(g.name);
    CHECK(got.h == want.h);
    CHECK(got.h_vee == want.h_vee);
    CHECK(got.dim_leaf == want.dim_leaf);
    CHECK(got.dim_g1 == want.dim_g1);
  }
  CHECK(table1_exceptional().size() == 5);
}

TEST_CASE("rank validation") {
  CHECK_THROWS_AS(build_algebra('B', 1), Error);
  CHECK_THROWS_AS(build_algebra('D', 2), Error);
  CHECK_THROWS_AS(build_algebra("E6"), Error);
  CHECK_THROWS_AS(build_algebra('A', 0), Error);
  try {
    build_algebra('D', 2);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("rank >= 3") != std::string::npos);
  }
}

TEST_CASE("rebase and dual basis") {
  LieAlg a = build_algebra("A1");
  std::vector<RVec> frame{a.unit(2), scale(a.unit(1), Rational(1, 2)), a.unit(0)};  // (X, H/2, Y)
  auto e = dual_basis(a, frame);
  for (int l = 0; l < 3; ++l)
    for (int m = 0; m < 3; ++m) CHECK(a.pairing(e[l], frame[m]) == (l == m ? 1 : 0));
  CHECK(e[0] == a.unit(0));
  CHECK(e[1] == a.unit(1));
  CHECK(e[2] == a.unit(2));
  BasisData bd = rebase(a, frame);
  // [X, Y] = H = 2 * (H/2)
  CHECK(bd.structure(0, 2) == SparseVec{{1, Rational(2)}});
}
