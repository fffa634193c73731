#pragma once

// Reference operators and polynomials used as oracles by the verify suites,
// the unit tests and the acceptance binary. The so5 and sl3 displays carry the
// opposite overall sign to the operators produced by the DS construction;
// callers negate.

#include <string>
#include <vector>

#include "ppl/diffop.hpp"
#include "ppl/parse.hpp"

namespace ppl::ref {

using ppl::DiffOp;
using ppl::FieldNames;
using ppl::MatDiffOp;

inline MatDiffOp matrix(const std::vector<std::vector<std::string>>& rows, const FieldNames& names = {}) {
  MatDiffOp m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = ppl::parse_op(rows[i][j], names);
  return m;
}

// Upper triangle given; the lower one follows from skew-adjointness.
inline MatDiffOp skew_from_upper(const std::vector<std::vector<std::string>>& upper, const FieldNames& names) {
  std::size_t n = upper.size();
  MatDiffOp m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      m.at(i, j) = ppl::parse_op(upper[i][j - i], names);
      if (j != i) m.at(j, i) = -ppl::adjoint(m.at(i, j));
    }
  return m;
}

inline const FieldNames& u_names() {
  static const FieldNames n{{"u"}};
  return n;
}

inline MatDiffOp kdv_p1() { return matrix({{"-2*D"}}, u_names()); }
inline MatDiffOp kdv_p2() { return matrix({{"-u_x - 2*u*D + 1/2*eps^2*D^3"}}, u_names()); }
inline MatDiffOp ch_p1() { return matrix({{"-u_x - 2*u*D"}}, u_names()); }
inline MatDiffOp ch_p2() { return matrix({{"-2*D + 1/2*eps^2*D^3"}}, u_names()); }

// sl2 DS pencil in the coordinates (w1, w2, w3) dual to (Y, H, X).
inline MatDiffOp sl2_pencil() {
  return matrix({{"0", "-2*eps^-1*(w1 - lam)", "eps^-1*w2 - D"},
                 {"2*eps^-1*(w1 - lam)", "-2*D", "-2*eps^-1*w3"},
                 {"-eps^-1*w2 - D", "2*eps^-1*w3", "0"}});
}

inline ppl::Poly kdv_charpoly() { return ppl::parse_poly("-2*u*p + 1/2*p^3 + 2*lam*p", u_names()); }
// sl2 unreduced characteristic polynomial with w3 = 1.
inline ppl::Poly sl2_leaf_charpoly() { return ppl::parse_poly("2*p^3 - 8*(w1 + 1/4*w2^2 - lam)*p"); }

inline MatDiffOp so5_p1_ref() {
  return matrix({{"1/2*eps^2*D^3 - 2*w2*D - w2_x", "2*D"}, {"2*D", "0"}});
}

inline MatDiffOp so5_p2_ref() {
  return matrix(
      {{"-1/16*eps^6*D^7 + 1/2*eps^4*w2*D^5 + 5/4*eps^4*w2_x*D^4"
        " + eps^2*(1/2*w1 - w2^2 + 2*eps^2*w2_xx)*D^3"
        " + eps^2*(3/4*w1_x - 3*w2*w2_x + 7/4*eps^2*w2_xxx)*D^2"
        " + (-2*w1*w2 + eps^2*(-3/4*w2_x^2 + 3/4*w1_xx - 2*w2*w2_xx) + 3/4*eps^4*w2_xxxx)*D"
        " - w1_x*w2 - w1*w2_x + eps^2*(-1/4*w2_x*w2_xx + 1/4*w1_xxx - 1/2*w2*w2_xxx) + 1/8*eps^4*w2_xxxxx",
        "-1/4*eps^4*D^5 + eps^2*w2*D^3 + 1/2*eps^2*w2_x*D^2 + 2*w1*D + 1/2*w1_x"},
       {"-1/4*eps^4*D^5 + eps^2*w2*D^3 + 5/2*eps^2*w2_x*D^2 + (2*w1 + 2*eps^2*w2_xx)*D + 3/2*w1_x"
        " + 1/2*eps^2*w2_xxx",
        "-5/4*eps^2*D^3 + w2*D + 1/2*w2_x"}});
}

// 256 R_Q for the so5 slice.
inline ppl::Poly so5_charpoly_256() {
  return ppl::parse_poly(
      "4*p^2*(-32*lam + p^4 - 8*p^2*w2 + 32*w1 + 16*w2^2)*(8*lam + p^4 - 4*p^2*w2 - 8*w1)");
}

inline const FieldNames& sl3_names() {
  static const FieldNames n{{"u0", "u1", "u2", "u3"}};
  return n;
}

inline MatDiffOp sl3_pencil_ref() {
  return skew_from_upper(
      {{"2/3*D", "eps^-1*(u1 - lam)", "eps^-1*(-u2 + lam)", "-1/3*(eps*D^2 + u0*D + u0_x)"},
       {"0", "eps*D^2 + 3*u0*D + 2*u0_x + eps^-1*(2*u0^2 - u3)",
        "2*(u1 - lam)*D + u1_x + 2*eps^-1*u0*(u1 - lam)"},
       {"0", "(u2 - lam)*D + u2_x - 2*eps^-1*u0*(u2 - lam)"},
       {"-2/3*eps^2*D^3 - 4/3*eps*u0_x*D + 2*(u3 + 1/3*u0^2)*D - 2/3*eps*u0_xx + 2/3*u0*u0_x + u3_x"}},
      sl3_names());
}

}  // namespace ppl::ref
