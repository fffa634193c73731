#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppl/linalg.hpp"

namespace ppl {

// Sparse structure constants: entry (i,j) lists (l, c^{ij}_l).
using SparseVec = std::vector<std::pair<int, Rational>>;

// Classical simple Lie algebra realized by matrices, with a Chevalley-graded
// basis: negative principal degrees (increasing), Cartan, positive degrees.
class LieAlg {
 public:
  std::string name;  // "A1", "B2", ...
  char series = 'A';
  int rank = 0;
  int dim = 0;
  int h = 0;      // Coxeter number
  int h_vee = 0;  // dual Coxeter number
  std::vector<std::string> basis_labels;
  std::vector<int> X, Y, H;  // basis indices of the Chevalley generators
  std::vector<int> principal_degree;
  std::vector<int> theta_degree;
  RVec e_theta;
  RVec theta_vee;
  RMatrix form;  // normalized Killing form <b_i, b_j> = tr(ad ad)/(2 h_vee)

  // Defining representation.
  int matrix_size = 0;
  std::vector<RMatrix> matrices;

  const SparseVec& structure(int i, int j) const { return c_[static_cast<std::size_t>(i * dim + j)]; }

  RVec unit(int i) const;
  RVec bracket(const RVec& a, const RVec& b) const;
  Rational pairing(const RVec& a, const RVec& b) const;
  // (ad a)_{lj} = coordinate l of [a, b_j].
  RMatrix ad(const RVec& a) const;
  RMatrix matrix(const RVec& a) const;
  // Coordinates of a defining-representation matrix (assumed in the algebra).
  RVec coords(const RMatrix& m) const;
  int index_of(std::string_view label) const;  // -1 when absent

 private:
  friend LieAlg build_algebra(char series, int rank);

  std::vector<SparseVec> c_;
  std::vector<std::pair<std::size_t, std::size_t>> pivots_;  // matrix entries read by coords()
  std::vector<SparseVec> pivot_inverse_;
};

LieAlg build_algebra(char series, int rank);
// "A1", "B2", "C3", "D4".
LieAlg build_algebra(std::string_view descriptor);

struct HighestRoot {
  RVec e_theta;
  RVec theta_vee;
};
HighestRoot highest_root_data(const LieAlg& alg);

struct Subspace {
  std::size_t ambient = 0;
  std::vector<RVec> basis;
  std::size_t dim() const { return basis.size(); }
  bool contains(const RVec& v) const;
};

Subspace kernel_ad(const LieAlg& alg, const RVec& a);
Subspace orth_complement(const LieAlg& alg, const Subspace& s);

// Structural self-check: antisymmetry, Jacobi, invariance of the form,
// symmetry/nondegeneracy, normalization against tr(ad ad), Chevalley degrees
// and N = n(h+1). Returns an empty string when everything holds.
std::string check_algebra(const LieAlg& alg, bool full_jacobi = true);

struct Table1Row {
  std::string name;
  int h = 0;
  int h_vee = 0;
  int dim_leaf = 0;
  int dim_g1 = 0;  // dimension of the +1 eigenspace of ad theta_vee
  bool constructed = false;
};

// Computes the row from the constructed algebra; throws an integrity error if
// dim_leaf != 2 h_vee - 2 or dim_g1 != 2 (h_vee - 2).
Table1Row table1_report(const LieAlg& alg);
// Closed-form row for a classical series.
Table1Row table1_expected(char series, int rank);
// E6, E7, E8, F4, G2 as reference data.
std::vector<Table1Row> table1_exceptional();

// Structure constants and Gram matrix of `alg` in another basis.
struct BasisData {
  int dim = 0;
  std::vector<SparseVec> c;  // c[i*dim+j]
  RMatrix gram;
  const SparseVec& structure(int i, int j) const { return c[static_cast<std::size_t>(i * dim + j)]; }
};
BasisData rebase(const LieAlg& alg, const std::vector<RVec>& basis);

// Dual basis with respect to the invariant form: <dual_i, basis_j> = delta_ij.
std::vector<RVec> dual_basis(const LieAlg& alg, const std::vector<RVec>& basis);

}  // namespace ppl
