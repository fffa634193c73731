#pragma once

#include <string>
#include <vector>

#include "ppl/invariants.hpp"
#include "ppl/pencils.hpp"
#include "ppl/polymatrix.hpp"

namespace ppl {

// Restriction of a coefficient to the slice: fixed fields become constants,
// their derivatives vanish, retained field retained[k] is renumbered to k.
Poly restrict_to_slice(const Poly& f, const GaugeSpec& q);

struct BlockDecomposition {
  MatDiffOp substituted;  // full operator on the slice, adapted order (retained | eliminated)
  MatDiffOp a, b, c, d;
  std::vector<int> eliminated;
};
BlockDecomposition adapted_blocks(const MatDiffOp& op, const GaugeSpec& q);

struct DInverse {
  MatDiffOp inverse;
  int order = 0;  // number of Neumann steps taken
};
// d = eps^{k0} (d0 + r) with d0 algebraic; d^{-1} = sum_k (-d0^{-1} r)^k d0^{-1} eps^{-k0}.
// d0 must have a nonzero constant determinant. Verifies d d^{-1} = Id.
DInverse invert_d(const MatDiffOp& d, int max_order = 24);

struct ReducedPencil {
  MatDiffOp op;
  FieldNames names;
  std::string source;
  GaugeSpec gauge;
  int d_inverse_order = 0;
  BlockDecomposition blocks;
  MatDiffOp d_inverse;
  // Restriction of the Liouville field when it is constant and tangent to
  // the slice; empty otherwise.
  std::optional<EvolutionaryField> liouville;
};

ReducedPencil dirac_reduce(const MatDiffOp& op, const GaugeSpec& q, int max_order = 24);
ReducedPencil dirac_reduce(const PencilInstance& p, const GaugeSpec& q, int max_order = 24);

// [[P', b], [0, d]] [[Id, 0], [d^{-1} c, Id]] == substituted operator.
bool reassembly_check(const ReducedPencil& r);

struct SchurReport {
  Poly det_full;     // det pi_lambda on the slice
  Poly det_delta;    // det delta_lambda
  Poly det_reduced;  // det pi'_lambda
  bool factorizes = false;  // det_full == det_delta * det_reduced
  bool lambda_free = false;
  bool constant = false;
};
SchurReport schur_check(const ReducedPencil& r);

struct KernelSample {
  RVec point;          // algebra coordinates of w
  Rational p;          // symbol variable
  std::size_t dim = 0;  // dim ker(ad A) cap ker(ad w + p-term)
};
struct KernelReport {
  std::vector<KernelSample> samples;
  bool trivial() const;
};
// Intersection of the kernels of the P1 and P2 symbol matrices at leaf
// points I + sum (random) leaf coordinates, at p = 0 and a random p.
KernelReport kernel_intersection_check(const PencilInstance& p, const GaugeSpec& q, int samples,
                                       unsigned long long seed = 1);
// Same at an explicit point (field coordinates) and p.
std::size_t kernel_intersection_dim(const PencilInstance& p, const RVec& field_point, const Rational& pval);

// Characteristic polynomial of the unreduced pencil restricted to the P1-leaf
// through I, parametrized as w = I + sum_k t^k b_k with (b_k) a basis of
// ker(ad A)^perp; the t^k are fields 0..dim-1 of the result.
struct LeafCharPoly {
  CharPoly charpoly;
  std::size_t leaf_dim = 0;
};
LeafCharPoly leaf_char_poly(const PencilInstance& p);

}  // namespace ppl
