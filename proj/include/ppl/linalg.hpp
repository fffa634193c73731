#pragma once

#include <optional>
#include <vector>

#include "ppl/rational.hpp"

namespace ppl {

using RVec = std::vector<Rational>;

// Dense exact matrix, row major.
class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RMatrix identity(std::size_t n);
  static RMatrix from_columns(const std::vector<RVec>& cols, std::size_t rows);
  static RMatrix from_rows(const std::vector<RVec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RVec row(std::size_t i) const;
  RVec column(std::size_t j) const;
  RMatrix transpose() const;

  friend RMatrix operator*(const RMatrix& a, const RMatrix& b);
  friend RVec operator*(const RMatrix& a, const RVec& v);
  friend RMatrix operator+(const RMatrix& a, const RMatrix& b);
  friend RMatrix operator-(const RMatrix& a, const RMatrix& b);
  friend RMatrix operator*(const Rational& c, const RMatrix& a);
  friend bool operator!=(const RMatrix& a, const RMatrix& b) { return !(a == b); }
  friend bool operator==(const RMatrix& a, const RMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const;
  Rational trace() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RowEchelon {
  RMatrix reduced;              // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};
RowEchelon rref(RMatrix m);

std::size_t rank(const RMatrix& m);
// Basis of {x : m x = 0}.
std::vector<RVec> nullspace(const RMatrix& m);
std::optional<RMatrix> inverse(const RMatrix& m);
Rational determinant(RMatrix m);

RVec add(const RVec& a, const RVec& b);
RVec scale(const RVec& a, const Rational& c);
bool is_zero(const RVec& v);
Rational dot(const RVec& a, const RVec& b);

}  // namespace ppl
