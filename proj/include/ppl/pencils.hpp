#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ppl/algebra.hpp"
#include "ppl/diffop.hpp"

namespace ppl {

enum class Variant { DS, SwappedCH, Custom, Scalar };
const char* to_string(Variant v);
Variant parse_variant(std::string_view s);

// Coordinates on the gauge slice Q: retained fields stay dynamical, the others
// are pinned to constants (their x-derivatives vanish).
struct GaugeSpec {
  std::vector<int> retained;  // 0-based field indices, in output order
  std::map<int, Rational> fixed;
  std::vector<std::string> retained_names;  // optional display names

  // Throws a validation error unless retained and fixed partition 0..n-1.
  void validate(std::size_t fields) const;
  FieldNames reduced_names(const FieldNames& full) const;
};

struct PencilInstance {
  std::string id;
  Variant variant = Variant::Custom;
  std::shared_ptr<const LieAlg> algebra;  // null for scalar and operator-only pencils
  std::vector<RVec> frame;  // w = sum_l w^l frame[l], algebra coordinates
  RVec a_vector;            // algebra coordinates
  RVec i_vector;            // algebra coordinates, empty when unspecified
  MatDiffOp op;             // P_lambda = P2 - lambda P1
  EvolutionaryField liouville;
  FieldNames names;

  std::size_t fields() const { return op.rows(); }
};

// -eps^{-1} sum_l c^{ij}_l (w^l - lambda a^l) - g^{ij} d, in the coordinates
// dual to `frame` (the algebra basis when empty). The Liouville field is the
// constant a.
PencilInstance ds_pencil(std::shared_ptr<const LieAlg> alg, const RVec& a, std::vector<RVec> frame = {},
                         FieldNames names = {});
// Roles of w and a exchanged: -eps^{-1} c^{ij}_l (a^l - lambda w^l) - g^{ij} d.
PencilInstance swapped_pencil(std::shared_ptr<const LieAlg> alg, const RVec& a, std::vector<RVec> frame = {},
                              FieldNames names = {});

// A = E_theta, I = sum Y_i, algebra basis coordinates.
PencilInstance ds_standard_pencil(std::shared_ptr<const LieAlg> alg);

PencilInstance ch_pencil();
PencilInstance gds_sl3_pencil();
// 2(u - lambda) d + u_x + eps^2 (2c d^3 + 3c_x d^2 + c_xx d); c = c(u).
PencilInstance scalar_deformation_pencil(const Poly& c);

// Coordinates w^l of an algebra element in the pencil's frame.
RVec field_coordinates(const PencilInstance& p, const RVec& element);

struct ExactnessReport {
  MatDiffOp residual1;  // L_Z P1
  MatDiffOp residual2;  // L_Z P2 - P1
  bool p1_ok() const { return residual1.is_zero(); }
  bool p2_ok() const { return residual2.is_zero(); }
  bool ok() const { return p1_ok() && p2_ok(); }
};
ExactnessReport check_exact(const MatDiffOp& pencil, const EvolutionaryField& z);
inline ExactnessReport check_exact(const PencilInstance& p) { return check_exact(p.op, p.liouville); }

// Skew-adjointness, grading (k >= -1) and lambda-linearity; throws a
// validation or grading error naming the offending entries.
void validate_pencil(const MatDiffOp& op);

struct BuiltinPencil {
  PencilInstance pencil;
  GaugeSpec gauge;
};

// "kdv", "so5", "sl3-frac", "camassa-holm", "scalar", "scalar:c=<expr in u>"
// or "ds:<algebra>" (standard DS pencil, no gauge).
BuiltinPencil builtin(const std::string& name);
const std::vector<std::string>& builtin_names();

}  // namespace ppl
