#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppl/poly.hpp"

namespace ppl {

// Scalar differential operator sum_m a_m d^m, normal ordered (all d to the
// right of the coefficients).
class DiffOp {
 public:
  using Coeffs = std::map<int, Poly>;

  DiffOp() = default;
  DiffOp(const Poly& multiplier);  // NOLINT(google-explicit-constructor)
  DiffOp(int c) : DiffOp(Poly(c)) {}  // NOLINT(google-explicit-constructor)

  static DiffOp d(int m = 1) { return term(m, Poly(1)); }
  static DiffOp term(int m, const Poly& c);

  const Coeffs& coeffs() const { return coeffs_; }
  Poly coeff(int m) const;
  void add(int m, const Poly& c);
  int order() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }
  bool is_zero() const { return coeffs_.empty(); }

  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  DiffOp& operator*=(const Rational& c);

  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator-(DiffOp a) { return a *= Rational(-1); }
  friend DiffOp operator*(DiffOp a, const Rational& c) { return a *= c; }
  friend DiffOp operator*(const Rational& c, DiffOp a) { return a *= c; }
  // Composition.
  friend DiffOp operator*(const DiffOp& a, const DiffOp& b);
  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

  template <class F>
  DiffOp map_coeffs(F&& f) const {
    DiffOp out;
    for (const auto& [m, c] : coeffs_) out.add(m, f(c));
    return out;
  }

  // Parseable text form, e.g. "-w1_x - 2*w1*D + 1/2*eps^2*D^3".
  std::string str(const FieldNames& names = {}) const;

 private:
  Coeffs coeffs_;
};

DiffOp adjoint(const DiffOp& op);

// Normal-ordered operator from parse_poly syntax with D for d/dx (D must
// already stand to the right of its coefficient).
DiffOp parse_op(std::string_view text, const FieldNames& names = {});

// Rectangular matrix of operators; square ones carry Poisson pencils.
class MatDiffOp {
 public:
  MatDiffOp() = default;
  MatDiffOp(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static MatDiffOp identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return rows_; }
  bool square() const { return rows_ == cols_; }

  DiffOp& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const DiffOp& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  bool is_zero() const;

  MatDiffOp block(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const;

  MatDiffOp& operator+=(const MatDiffOp& o);
  MatDiffOp& operator-=(const MatDiffOp& o);
  MatDiffOp& operator*=(const Rational& c);
  friend MatDiffOp operator+(MatDiffOp a, const MatDiffOp& b) { return a += b; }
  friend MatDiffOp operator-(MatDiffOp a, const MatDiffOp& b) { return a -= b; }
  friend MatDiffOp operator-(MatDiffOp a) { return a *= Rational(-1); }
  friend MatDiffOp operator*(MatDiffOp a, const Rational& c) { return a *= c; }
  friend MatDiffOp operator*(const MatDiffOp& a, const MatDiffOp& b);
  friend bool operator==(const MatDiffOp& a, const MatDiffOp& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const MatDiffOp& a, const MatDiffOp& b) { return !(a == b); }

  template <class F>
  MatDiffOp map_coeffs(F&& f) const {
    MatDiffOp out(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k].map_coeffs(f);
    return out;
  }

  std::string str(const FieldNames& names = {}) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<DiffOp> entries_;
};

// Formal adjoint of a matrix operator: (P^dagger)_{ij} = (P_{ji})^dagger.
MatDiffOp adjoint(const MatDiffOp& op);

// Entries (i,j) with P_ji^dagger != -P_ij, reported 1-based as "(i,j)/(j,i)".
std::optional<std::string> skew_adjointness_violation(const MatDiffOp& op);
inline bool is_skew_adjoint(const MatDiffOp& op) { return !skew_adjointness_violation(op); }

// L* with (L*)^i_k = sum_s dF^i/dw^k_(s) d^s. `fields` is the number of source
// fields (columns).
MatDiffOp frechet(const std::vector<Poly>& components, std::size_t fields);

struct EvolutionaryField {
  std::vector<Poly> characteristic;
};

// sum_{i,s} (d^s Z^i) d f / d w^i_(s)
Poly prolong_apply(const EvolutionaryField& z, const Poly& f);

// L_Z P = pr_Z(P) - (L*_Z P + P (L*_Z)^dagger).
MatDiffOp lie_derivative(const EvolutionaryField& z, const MatDiffOp& op);

// The pencil P_lambda = P2 - lambda P1 split into (P1, P2), and back.
struct PoissonPair {
  MatDiffOp p1;
  MatDiffOp p2;
};
PoissonPair split_pencil(const MatDiffOp& pencil);
MatDiffOp join_pencil(const PoissonPair& pair);
int lambda_degree(const MatDiffOp& op);

struct GradingVerdict {
  bool ok = true;
  std::string witness;  // first offending term when !ok
};

// Every term eps^k f d^m must satisfy m = k - deg f + 1 with k >= min_k and
// m >= 0. min_k = -1 is the general class; min_k = 0 is the class admitting
// a dispersionless limit.
GradingVerdict grading_check(const MatDiffOp& op, int min_k = -1);

// w~^i = sum_k eps^k F^i_k with deg F^i_k = k.
class MiuraMap {
 public:
  // components[i][k] = F^i_k
  explicit MiuraMap(std::vector<std::vector<Poly>> components);

  static MiuraMap identity(std::size_t fields);

  std::size_t fields() const { return components_.size(); }
  int truncation() const;
  const std::vector<std::vector<Poly>>& components() const { return components_; }
  Poly component(std::size_t i) const;

 private:
  std::vector<std::vector<Poly>> components_;
};

struct MiuraResult {
  MatDiffOp op;
  int truncation_order = 0;
  bool truncated = false;  // some eps^k with k > truncation_order was dropped
};

// L* P L re-expressed in the new variables, exact through eps^order.
MiuraResult miura_apply(const MatDiffOp& op, const MiuraMap& map, int order = 8);

// Rational binomial coefficient.
Rational binomial(int n, int k);

}  // namespace ppl
