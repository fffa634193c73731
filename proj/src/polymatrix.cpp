#include "ppl/polymatrix.hpp"

#include "ppl/error.hpp"

namespace ppl {

PolyMatrix zero_matrix(std::size_t rows, std::size_t cols) {
  return PolyMatrix(rows, std::vector<Poly>(cols));
}

Poly determinant(PolyMatrix m) {
  std::size_t n = m.size();
  if (n == 0) return Poly(1);
  for (const auto& row : m)
    if (row.size() != n) fail(ErrorKind::Precondition, "determinant of a non-square matrix");
  Poly prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      // pick the sparsest nonzero pivot below
      std::size_t best = n;
      for (std::size_t r = k + 1; r < n; ++r)
        if (!m[r][k].is_zero() && (best == n || m[r][k].size() < m[best][k].size())) best = r;
      if (best == n) return Poly();
      std::swap(m[k], m[best]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        if (prev == Poly(1)) {
          m[i][j] = std::move(num);
          continue;
        }
        auto q = divide_exact(num, prev);
        if (!q) fail(ErrorKind::Integrity, "Bareiss step is not exact");
        m[i][j] = std::move(*q);
      }
      m[i][k] = Poly();
    }
    prev = m[k][k];
  }
  Poly det = m[n - 1][n - 1];
  return negate ? -det : det;
}

PolyMatrix adjugate(const PolyMatrix& m) {
  std::size_t n = m.size();
  PolyMatrix adj = zero_matrix(n, n);
  if (n == 1) {
    adj[0][0] = Poly(1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      PolyMatrix minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<Poly> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != j) row.push_back(m[r][c]);
        minor.push_back(std::move(row));
      }
      Poly d = determinant(std::move(minor));
      adj[j][i] = ((i + j) % 2 == 0) ? d : -d;
    }
  return adj;
}

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  PolyMatrix out = zero_matrix(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[t][j].is_zero()) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

PolyMatrix transpose(const PolyMatrix& m) {
  if (m.empty()) return {};
  PolyMatrix t = zero_matrix(m[0].size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

}  // namespace ppl
