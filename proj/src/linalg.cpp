#include "ppl/linalg.hpp"

#include <algorithm>

#include "ppl/error.hpp"

namespace ppl {

RMatrix RMatrix::identity(std::size_t n) {
  RMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RMatrix RMatrix::from_columns(const std::vector<RVec>& cols, std::size_t rows) {
  RMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  return m;
}

RMatrix RMatrix::from_rows(const std::vector<RVec>& rows, std::size_t cols) {
  RMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

RVec RMatrix::row(std::size_t i) const { return RVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

RVec RMatrix::column(std::size_t j) const {
  RVec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

RMatrix RMatrix::transpose() const {
  RMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

RMatrix operator*(const RMatrix& a, const RMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorKind::Precondition, "matrix shape mismatch");
  RMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& x = a.at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b.at(k, j) != 0) out.at(i, j) += x * b.at(k, j);
    }
  return out;
}

RVec operator*(const RMatrix& a, const RVec& v) {
  if (a.cols_ != v.size()) fail(ErrorKind::Precondition, "matrix-vector shape mismatch");
  RVec out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j)
      if (a.at(i, j) != 0 && v[j] != 0) out[i] += a.at(i, j) * v[j];
  return out;
}

RMatrix operator+(const RMatrix& a, const RMatrix& b) {
  RMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
  return out;
}

RMatrix operator-(const RMatrix& a, const RMatrix& b) {
  RMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
  return out;
}

RMatrix operator*(const Rational& c, const RMatrix& a) {
  RMatrix out = a;
  for (auto& x : out.data_) x *= c;
  return out;
}

bool RMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x == 0; });
}

Rational RMatrix::trace() const {
  Rational t;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
  return t;
}

RowEchelon rref(RMatrix m) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m.at(piv, k), m.at(r, k));
    Rational s = m.at(r, c);
    for (std::size_t k = c; k < m.cols(); ++k) m.at(r, k) /= s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rational f = m.at(i, c);
      for (std::size_t k = c; k < m.cols(); ++k)
        if (m.at(r, k) != 0) m.at(i, k) -= f * m.at(r, k);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const RMatrix& m) { return rref(m).pivots.size(); }

std::vector<RVec> nullspace(const RMatrix& m) {
  RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RVec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RVec v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced.at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RMatrix> inverse(const RMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  std::size_t n = m.rows();
  RMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  RowEchelon e = rref(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  RMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = e.reduced.at(i, n + j);
  return inv;
}

Rational determinant(RMatrix m) {
  if (m.rows() != m.cols()) fail(ErrorKind::Precondition, "determinant of a non-square matrix");
  std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m.at(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m.at(piv, k), m.at(c, k));
      det = -det;
    }
    det *= m.at(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m.at(r, c) == 0) continue;
      Rational f = m.at(r, c) / m.at(c, c);
      for (std::size_t k = c; k < n; ++k) m.at(r, k) -= f * m.at(c, k);
    }
  }
  return det;
}

RVec add(const RVec& a, const RVec& b) {
  RVec out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

RVec scale(const RVec& a, const Rational& c) {
  RVec out = a;
  for (auto& x : out) x *= c;
  return out;
}

bool is_zero(const RVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Rational dot(const RVec& a, const RVec& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

}  // namespace ppl
