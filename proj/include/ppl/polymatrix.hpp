#pragma once

#include <vector>

#include "ppl/poly.hpp"

namespace ppl {

// Commutative matrix over the polynomial ring (symbols, blocks of d0).
using PolyMatrix = std::vector<std::vector<Poly>>;

PolyMatrix zero_matrix(std::size_t rows, std::size_t cols);
// Fraction-free Bareiss elimination with exact division.
Poly determinant(PolyMatrix m);
PolyMatrix adjugate(const PolyMatrix& m);
PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix transpose(const PolyMatrix& m);

}  // namespace ppl
