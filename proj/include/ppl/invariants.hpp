#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "ppl/algebra.hpp"
#include "ppl/diffop.hpp"
#include "ppl/polymatrix.hpp"

namespace ppl {

using Real = boost::multiprecision::mpfr_float;

// Working precision (significant digits) for the numeric root layer; the
// initial value comes from PPL_DIGITS when set, otherwise 50.
int working_digits();
void set_working_digits(int digits);

// Derivative-free coefficient terms with eps^k d^{k+1} -> p^{k+1}. Terms with
// p-power above p_order are dropped when p_order >= 0.
PolyMatrix symbol(const MatDiffOp& op, int p_order = -1);

struct CharPoly {
  Poly poly;  // polynomial in p, lambda and the fields
  int lambda_degree = 0;
};
CharPoly char_poly(const PolyMatrix& s);
inline CharPoly char_poly(const MatDiffOp& pencil) { return char_poly(symbol(pencil)); }
inline bool lambda_degree_check(const CharPoly& c, int rank) { return c.lambda_degree == rank; }

struct HydroData {
  PolyMatrix g1, g2;
  // gamma[k][i][j]: coefficient of w^k_x in the eps^0 d^0 part of P^{ij}.
  std::vector<PolyMatrix> gamma1, gamma2;
};
// Requires the eps >= 0 class; otherwise a NoDispersionlessLimit error.
HydroData hydro_limit(const MatDiffOp& pencil);

struct RootSeries {
  std::vector<Real> coeffs;  // lambda(p) = sum_k coeffs[k] p^k
  bool exact = false;
  std::vector<Rational> exact_coeffs;  // filled when exact
  Real max_odd;                        // largest |odd coefficient|
};

struct RootExpansion {
  std::vector<Rational> base_point;
  int p_shift = 0;  // n, with R = p^n R~
  std::vector<RootSeries> roots;
};
// Series solutions lambda^i(p) of R(p, lambda; w0) = 0 through order `order`.
// Real simple roots of the p-lowest factor only; non-real or repeated roots
// raise a semisimplicity error.
RootExpansion lambda_roots(const CharPoly& c, const std::vector<Rational>& w0, int order);

struct CanonicalPoint {
  Real u;
  Real f;
  bool exact = false;
  Rational u_exact, f_exact;
};
std::vector<CanonicalPoint> canonical_data(const HydroData& h, const std::vector<Rational>& w0);

struct CentralRecord {
  Real u, lambda2, f, c;
  bool exact = false;
  Rational c_exact, u_exact, lambda2_exact, f_exact;
};
struct CentralSample {
  std::vector<Rational> point;
  std::vector<CentralRecord> roots;  // sorted by u
  Real max_odd;
};
struct CentralInvariantReport {
  std::vector<CentralSample> samples;
  unsigned long long seed = 0;
  std::vector<Real> spread;  // per root index, max - min of c across samples
  bool constant = false;
  Real tolerance;
  int order = 4;
};

struct SampleOptions {
  int samples = 5;
  unsigned long long seed = 20240601;
  int order = 4;
  double tol = 1e-9;
};
// Random rational sample points; points where the spectrum is not real and
// simple are rejected and redrawn.
CentralInvariantReport central_invariants(const MatDiffOp& pencil, const SampleOptions& opt);
CentralInvariantReport central_invariants_at(const MatDiffOp& pencil, const std::vector<std::vector<Rational>>& points,
                                             int order, double tol);

// <H_i, H_i>/48.
std::vector<Rational> ds_predicted_ci(const LieAlg& alg);

struct CharPolyRatio {
  Poly f;              // F_Q = rq / rm when it is a polynomial
  bool inverted = false;  // true when f = rm / rq instead
  bool lambda_free = false;
  bool constant = false;
};
// Exact division; throws an integrity error when neither divides the other.
CharPolyRatio charpoly_ratio(const Poly& rm, const Poly& rq);

struct EigenScalingSample {
  double lambda = 0;
  double distance = 0;
  int zero_modes = 0;
};
struct EigenScalingReport {
  std::vector<EigenScalingSample> samples;
  int rank = 0;
  bool ok(double tol) const;
};
// Eigenvalues of ad(I - lambda E_theta), I = sum Y_i, against lambda^{1/h}
// times those of ad(I - E_theta).
EigenScalingReport eigen_scaling_check(const LieAlg& alg, const std::vector<double>& lambdas, double tol = 1e-8);

std::string to_string(const Real& x, int digits = 20);

}  // namespace ppl
