#include "ppl/algebra.hpp"

#include <algorithm>
#include <map>

#include "ppl/error.hpp"

namespace ppl {

namespace {

using Entries = std::map<std::pair<int, int>, Rational>;

void prune(Entries& e) {
  for (auto it = e.begin(); it != e.end();) it = it->second == 0 ? e.erase(it) : std::next(it);
}

Entries mul(const Entries& a, const Entries& b) {
  std::map<int, std::vector<std::pair<int, const Rational*>>> brow;
  for (const auto& [ij, v] : b) brow[ij.first].emplace_back(ij.second, &v);
  Entries out;
  for (const auto& [ik, v] : a) {
    auto it = brow.find(ik.second);
    if (it == brow.end()) continue;
    for (const auto& [j, w] : it->second) out[{ik.first, j}] += v * *w;
  }
  prune(out);
  return out;
}

Entries commutator(const Entries& a, const Entries& b) {
  Entries out = mul(a, b);
  for (const auto& [ij, v] : mul(b, a)) out[ij] -= v;
  prune(out);
  return out;
}

Entries scaled(Entries e, const Rational& c) {
  for (auto& [ij, v] : e) v *= c;
  return e;
}

RVec flatten(const Entries& e, int d) {
  RVec v(static_cast<std::size_t>(d * d));
  for (const auto& [ij, x] : e) v[static_cast<std::size_t>(ij.first * d + ij.second)] = x;
  return v;
}

// Incremental linear-independence test.
class Echelon {
 public:
  bool add(RVec v) {
    for (const auto& [piv, row] : rows_) {
      if (v[piv] == 0) continue;
      Rational f = v[piv];
      for (std::size_t k = 0; k < v.size(); ++k)
        if (row[k] != 0) v[k] -= f * row[k];
    }
    auto it = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (it == v.end()) return false;
    auto piv = static_cast<std::size_t>(it - v.begin());
    Rational s = v[piv];
    for (auto& x : v) x /= s;
    for (auto& [p, row] : rows_) {
      if (row[piv] == 0) continue;
      Rational f = row[piv];
      for (std::size_t k = 0; k < v.size(); ++k)
        if (v[k] != 0) row[k] -= f * v[k];
    }
    rows_.emplace_back(piv, std::move(v));
    return true;
  }

 private:
  std::vector<std::pair<std::size_t, RVec>> rows_;
};

// Defining representation: the algebra is {w : every constraint vanishes}.
struct Representation {
  int d = 0;
  // Linear functionals on matrix entries.
  std::vector<Entries> constraints;
};

Representation representation(char series, int rank) {
  Representation rep;
  if (series == 'A') {
    rep.d = rank + 1;
    Entries tr;
    for (int i = 0; i < rep.d; ++i) tr[{i, i}] = 1;
    rep.constraints.push_back(tr);
    return rep;
  }
  int d = series == 'B' ? 2 * rank + 1 : 2 * rank;
  rep.d = d;
  // Anti-diagonal S with S_{k,d-1-k} = s_k: alternating signs, symmetric for
  // B (odd d) and C-type antisymmetric for even d; D flips the second half.
  std::vector<int> s(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) s[k] = (k % 2 == 0) ? 1 : -1;
  if (series == 'D')
    for (int k = 0; k < rank; ++k) s[d - 1 - k] = s[k];
  // (wS + S w^T)_{ab} = w_{a,d-1-b} s_{d-1-b} + s_a w_{b,d-1-a}
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      Entries f;
      f[{a, d - 1 - b}] += s[d - 1 - b];
      f[{b, d - 1 - a}] += s[a];
      prune(f);
      if (!f.empty()) rep.constraints.push_back(f);
    }
  return rep;
}

// The one-dimensional solution of the constraints supported on `positions`.
Entries solve_support(const Representation& rep, const std::vector<std::pair<int, int>>& positions) {
  std::vector<RVec> rows;
  for (const auto& f : rep.constraints) {
    RVec row(positions.size());
    bool touches = false;
    for (std::size_t k = 0; k < positions.size(); ++k) {
      auto it = f.find(positions[k]);
      if (it != f.end()) {
        row[k] = it->second;
        touches = true;
      }
    }
    if (touches) rows.push_back(row);
  }
  std::vector<RVec> ns;
  if (rows.empty()) {
    ns.assign(1, RVec(positions.size(), Rational(1)));
    if (positions.size() != 1) ns.clear();
  } else {
    ns = nullspace(RMatrix::from_rows(rows, positions.size()));
  }
  if (ns.size() != 1) fail(ErrorKind::Integrity, "root vector support is not one-dimensional");
  RVec v = ns[0];
  Rational lead = *std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
  Entries out;
  for (std::size_t k = 0; k < positions.size(); ++k) out[positions[k]] = v[k] / lead;
  prune(out);
  return out;
}

std::vector<std::pair<int, int>> simple_root_support(char series, int rank, int i, int d) {
  // 0-based generator index i; matrix indices 0-based.
  if (series == 'A') return {{i, i + 1}};
  if (i < rank - 1) return {{i + 1, i}, {d - 1 - i, d - 2 - i}};
  switch (series) {
    case 'B':
      return {{rank, rank - 1}, {rank + 1, rank}};
    case 'C':
      return {{rank, rank - 1}};
    default:  // D
      return {{rank, rank - 2}, {rank + 1, rank - 1}};
  }
}

void validate_rank(char series, int rank) {
  int min_rank = series == 'A' ? 1 : (series == 'D' ? 3 : 2);
  if (series != 'A' && series != 'B' && series != 'C' && series != 'D')
    fail(ErrorKind::Usage, std::string("unknown series '") + series + "' (expected A, B, C or D)");
  if (rank < min_rank)
    fail(ErrorKind::Usage, std::string("series ") + series + " requires rank >= " + std::to_string(min_rank) +
                               ", got " + std::to_string(rank));
  if (rank > 12) fail(ErrorKind::Usage, "rank above 12 is not supported");
}

Rational coefficient_of(const SparseVec& v, int idx) {
  for (const auto& [l, c] : v)
    if (l == idx) return c;
  return 0;
}

}  // namespace

RVec LieAlg::unit(int i) const {
  RVec v(static_cast<std::size_t>(dim));
  v[static_cast<std::size_t>(i)] = 1;
  return v;
}

RVec LieAlg::bracket(const RVec& a, const RVec& b) const {
  RVec out(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      if (b[j] == 0) continue;
      Rational f = a[i] * b[j];
      for (const auto& [l, c] : structure(i, j)) out[l] += f * c;
    }
  }
  return out;
}

Rational LieAlg::pairing(const RVec& a, const RVec& b) const { return dot(a, form * b); }

RMatrix LieAlg::ad(const RVec& a) const {
  RMatrix m(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < dim; ++j)
      for (const auto& [l, c] : structure(i, j)) m.at(l, j) += a[i] * c;
  }
  return m;
}

RMatrix LieAlg::matrix(const RVec& a) const {
  RMatrix m(static_cast<std::size_t>(matrix_size), static_cast<std::size_t>(matrix_size));
  for (int i = 0; i < dim; ++i)
    if (a[i] != 0) m = m + a[i] * matrices[i];
  return m;
}

RVec LieAlg::coords(const RMatrix& m) const {
  RVec out(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) {
    for (const auto& [p, c] : pivot_inverse_[k]) {
      const Rational& x = m.at(pivots_[p].first, pivots_[p].second);
      if (x != 0) out[k] += c * x;
    }
  }
  return out;
}

int LieAlg::index_of(std::string_view label) const {
  for (int i = 0; i < dim; ++i)
    if (basis_labels[i] == label) return i;
  return -1;
}

LieAlg build_algebra(char series, int rank) {
  validate_rank(series, rank);
  Representation rep = representation(series, rank);
  int d = rep.d;

  std::vector<Entries> xs, ys;
  for (int i = 0; i < rank; ++i) {
    auto support = simple_root_support(series, rank, i, d);
    Entries x = solve_support(rep, support);
    std::vector<std::pair<int, int>> tsupport;
    for (auto [a, b] : support) tsupport.emplace_back(b, a);
    Entries y = solve_support(rep, tsupport);
    // scale y so that [[x, y], x] = 2x
    Entries hx = commutator(commutator(x, y), x);
    auto [pos, val] = *x.begin();
    Rational mu = hx.count(pos) ? hx[pos] / val : Rational(0);
    if (mu == 0) fail(ErrorKind::Integrity, "degenerate sl2 triple");
    xs.push_back(x);
    ys.push_back(scaled(y, Rational(2) / mu));
  }

  // Root vectors by principal degree, generated from the simple ones.
  auto generate = [&](const std::vector<Entries>& simple) {
    std::vector<std::vector<Entries>> levels{simple};
    while (true) {
      Echelon ech;
      std::vector<Entries> next;
      for (const auto& v : levels.back())
        for (const auto& s : simple) {
          Entries u = commutator(v, s);
          if (u.empty()) continue;
          if (ech.add(flatten(u, d))) next.push_back(std::move(u));
        }
      if (next.empty()) break;
      levels.push_back(std::move(next));
    }
    return levels;
  };
  auto pos_levels = generate(xs);
  auto neg_levels = generate(ys);
  if (pos_levels.size() != neg_levels.size()) fail(ErrorKind::Integrity, "unbalanced principal gradation");

  LieAlg alg;
  alg.series = series;
  alg.rank = rank;
  alg.name = std::string(1, series) + std::to_string(rank);
  alg.matrix_size = d;
  alg.h = static_cast<int>(pos_levels.size()) + 1;

  std::vector<Entries> basis;
  auto label = [&](char stem, int k) { return rank == 1 ? std::string(1, stem) : stem + std::to_string(k); };
  {
    // negatives, from the deepest level up
    std::vector<int> first_label(neg_levels.size());
    int k = 1;
    for (std::size_t lv = 0; lv < neg_levels.size(); ++lv) {
      first_label[lv] = k;
      k += static_cast<int>(neg_levels[lv].size());
    }
    for (std::size_t lv = neg_levels.size(); lv-- > 0;)
      for (std::size_t t = 0; t < neg_levels[lv].size(); ++t) {
        if (lv == 0) alg.Y.push_back(static_cast<int>(basis.size()));
        basis.push_back(neg_levels[lv][t]);
        alg.basis_labels.push_back(label('Y', first_label[lv] + static_cast<int>(t)));
        alg.principal_degree.push_back(-static_cast<int>(lv) - 1);
      }
  }
  for (int i = 0; i < rank; ++i) {
    alg.H.push_back(static_cast<int>(basis.size()));
    basis.push_back(commutator(xs[i], ys[i]));
    alg.basis_labels.push_back(label('H', i + 1));
    alg.principal_degree.push_back(0);
  }
  {
    int k = 1;
    for (std::size_t lv = 0; lv < pos_levels.size(); ++lv)
      for (const auto& v : pos_levels[lv]) {
        if (lv == 0) alg.X.push_back(static_cast<int>(basis.size()));
        basis.push_back(v);
        alg.basis_labels.push_back(label('X', k++));
        alg.principal_degree.push_back(static_cast<int>(lv) + 1);
      }
  }
  alg.dim = static_cast<int>(basis.size());
  int N = alg.dim;

  for (const auto& b : basis) {
    RMatrix m(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (const auto& [ij, v] : b) m.at(ij.first, ij.second) = v;
    alg.matrices.push_back(std::move(m));
  }

  // Coordinate extraction through N independent matrix entries.
  {
    std::vector<RVec> rows;
    for (const auto& b : basis) rows.push_back(flatten(b, d));
    RowEchelon e = rref(RMatrix::from_rows(rows, static_cast<std::size_t>(d * d)));
    if (static_cast<int>(e.pivots.size()) != N) fail(ErrorKind::Integrity, "basis matrices are dependent");
    RMatrix m(static_cast<std::size_t>(N), static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) {
      std::size_t p = e.pivots[k];
      alg.pivots_.emplace_back(p / d, p % d);
      for (int i = 0; i < N; ++i) m.at(k, i) = rows[i][p];
    }
    auto inv = inverse(m);
    if (!inv) fail(ErrorKind::Integrity, "coordinate extraction matrix is singular");
    alg.pivot_inverse_.resize(N);
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k)
        if (inv->at(i, k) != 0) alg.pivot_inverse_[i].emplace_back(k, inv->at(i, k));
  }

  alg.c_.assign(static_cast<std::size_t>(N * N), {});
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      Entries br = commutator(basis[i], basis[j]);
      if (br.empty()) continue;
      RMatrix m(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
      for (const auto& [ij, v] : br) m.at(ij.first, ij.second) = v;
      RVec cc = alg.coords(m);
      SparseVec sv, neg;
      for (int l = 0; l < N; ++l)
        if (cc[l] != 0) {
          sv.emplace_back(l, cc[l]);
          neg.emplace_back(l, -cc[l]);
        }
      alg.c_[static_cast<std::size_t>(i * N + j)] = std::move(sv);
      alg.c_[static_cast<std::size_t>(j * N + i)] = std::move(neg);
    }

  // Killing form tr(ad b_i ad b_j); only opposite degrees pair.
  RMatrix killing(static_cast<std::size_t>(N), static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) {
      if (alg.principal_degree[i] + alg.principal_degree[j] != 0) continue;
      Rational t;
      for (int m = 0; m < N; ++m)
        for (const auto& [l, v] : alg.structure(i, m)) {
          Rational w = coefficient_of(alg.structure(j, l), m);
          if (w != 0) t += v * w;
        }
      killing.at(i, j) = t;
      killing.at(j, i) = t;
    }

  HighestRoot hr;
  hr.e_theta = alg.unit(N - 1);
  RVec f_theta = alg.unit(0);
  RVec t = alg.bracket(hr.e_theta, f_theta);
  RVec te = alg.bracket(t, hr.e_theta);
  Rational mu = te[N - 1];
  if (mu == 0) fail(ErrorKind::Integrity, "highest root coroot is degenerate");
  hr.theta_vee = scale(t, Rational(2) / mu);
  Rational k_tt = dot(hr.theta_vee, killing * hr.theta_vee);
  Rational hv = k_tt / 4;
  if (!is_integer(hv) || hv <= 0) fail(ErrorKind::Integrity, "dual Coxeter number is not a positive integer");
  alg.h_vee = static_cast<int>(hv.get_num().get_si());
  alg.form = Rational(1, 2 * alg.h_vee) * killing;
  alg.e_theta = hr.e_theta;
  alg.theta_vee = hr.theta_vee;

  for (int i = 0; i < N; ++i) {
    RVec v = alg.bracket(alg.theta_vee, alg.unit(i));
    Rational ev = v[i];
    if (scale(alg.unit(i), ev) != v) fail(ErrorKind::Integrity, "basis is not ad(theta_vee)-diagonal");
    if (!is_integer(ev)) fail(ErrorKind::Integrity, "non-integral theta grading");
    alg.theta_degree.push_back(static_cast<int>(ev.get_num().get_si()));
  }
  return alg;
}

LieAlg build_algebra(std::string_view descriptor) {
  if (descriptor.size() < 2) fail(ErrorKind::Usage, "algebra descriptor must look like A1, B2, C3 or D4");
  char series = static_cast<char>(std::toupper(static_cast<unsigned char>(descriptor[0])));
  std::string digits(descriptor.substr(1));
  if (digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 3)
    fail(ErrorKind::Usage, "algebra descriptor must look like A1, B2, C3 or D4");
  return build_algebra(series, std::stoi(digits));
}

HighestRoot highest_root_data(const LieAlg& alg) { return {alg.e_theta, alg.theta_vee}; }

bool Subspace::contains(const RVec& v) const {
  std::vector<RVec> rows = basis;
  std::size_t r0 = rank(RMatrix::from_rows(rows, ambient));
  rows.push_back(v);
  return rank(RMatrix::from_rows(rows, ambient)) == r0;
}

Subspace kernel_ad(const LieAlg& alg, const RVec& a) {
  if (is_zero(a)) fail(ErrorKind::Precondition, "kernel_ad needs a nonzero element");
  return {static_cast<std::size_t>(alg.dim), nullspace(alg.ad(a))};
}

Subspace orth_complement(const LieAlg& alg, const Subspace& s) {
  auto n = static_cast<std::size_t>(alg.dim);
  if (s.basis.empty()) {
    Subspace full{n, {}};
    for (int i = 0; i < alg.dim; ++i) full.basis.push_back(alg.unit(i));
    return full;
  }
  std::vector<RVec> rows;
  for (const auto& v : s.basis) rows.push_back(alg.form * v);
  return {n, nullspace(RMatrix::from_rows(rows, n))};
}

std::string check_algebra(const LieAlg& alg, bool full_jacobi) {
  int N = alg.dim;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      SparseVec neg = alg.structure(j, i);
      for (auto& [l, c] : neg) c = -c;
      if (neg != alg.structure(i, j)) return "antisymmetry fails at (" + alg.basis_labels[i] + "," + alg.basis_labels[j] + ")";
    }
  if (alg.form.transpose() != alg.form) return "bilinear form is not symmetric";
  if (determinant(alg.form) == 0) return "bilinear form is degenerate";
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (alg.structure(i, j).empty()) continue;
      RVec bij(static_cast<std::size_t>(N));
      for (const auto& [l, c] : alg.structure(i, j)) bij[l] = c;
      for (int k = 0; k < N; ++k) {
        // <[b_i,b_j], b_k> + <b_j, [b_i,b_k]> = 0
        Rational s = dot(bij, alg.form.column(k));
        for (const auto& [l, c] : alg.structure(i, k)) s += c * alg.form.at(j, l);
        if (s != 0) return "form is not invariant";
      }
    }
  if (full_jacobi) {
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j)
        for (int k = j + 1; k < N; ++k) {
          RVec acc(static_cast<std::size_t>(N));
          auto term = [&](int a, int b, int c) {
            for (const auto& [l, v] : alg.structure(b, c))
              for (const auto& [m, w] : alg.structure(a, l)) acc[m] += v * w;
          };
          term(i, j, k);
          term(j, k, i);
          term(k, i, j);
          if (!is_zero(acc))
            return "Jacobi identity fails for (" + alg.basis_labels[i] + "," + alg.basis_labels[j] + "," +
                   alg.basis_labels[k] + ")";
        }
  }
  for (int i : alg.X)
    if (alg.principal_degree[i] != 1) return "X generator not in degree 1";
  for (int i : alg.Y)
    if (alg.principal_degree[i] != -1) return "Y generator not in degree -1";
  if (N != alg.rank * (alg.h + 1)) return "N != n(h+1)";
  return {};
}

Table1Row table1_report(const LieAlg& alg) {
  Table1Row row;
  row.name = alg.name;
  row.h = alg.h;
  row.h_vee = alg.h_vee;
  row.constructed = true;
  Subspace k = kernel_ad(alg, alg.e_theta);
  row.dim_leaf = static_cast<int>(orth_complement(alg, k).dim());
  row.dim_g1 = static_cast<int>(std::count(alg.theta_degree.begin(), alg.theta_degree.end(), 1));
  if (row.dim_leaf != 2 * alg.h_vee - 2)
    fail(ErrorKind::Integrity, alg.name + ": dim ker(ad E_theta)^perp = " + std::to_string(row.dim_leaf) +
                                   " differs from 2h_vee-2 = " + std::to_string(2 * alg.h_vee - 2));
  if (row.dim_g1 != 2 * (alg.h_vee - 2))
    fail(ErrorKind::Integrity, alg.name + ": dim g^1 = " + std::to_string(row.dim_g1) +
                                   " differs from 2(h_vee-2) = " + std::to_string(2 * (alg.h_vee - 2)));
  return row;
}

Table1Row table1_expected(char series, int n) {
  Table1Row row;
  row.name = std::string(1, series) + std::to_string(n);
  switch (series) {
    case 'A':
      row.h = n + 1, row.h_vee = n + 1, row.dim_leaf = 2 * n;
      break;
    case 'B':
      row.h = 2 * n, row.h_vee = 2 * n - 1, row.dim_leaf = 4 * n - 4;
      break;
    case 'C':
      row.h = 2 * n, row.h_vee = n + 1, row.dim_leaf = 2 * n;
      break;
    case 'D':
      row.h = 2 * n - 2, row.h_vee = 2 * n - 2, row.dim_leaf = 4 * n - 6;
      break;
    default:
      fail(ErrorKind::Usage, std::string("unknown series '") + series + "'");
  }
  row.dim_g1 = 2 * (row.h_vee - 2);
  return row;
}

std::vector<Table1Row> table1_exceptional() {
  auto row = [](const char* name, int h, int hv, int leaf) {
    return Table1Row{name, h, hv, leaf, 2 * (hv - 2), false};
  };
  return {row("E6", 12, 12, 22), row("E7", 18, 18, 34), row("E8", 30, 30, 58), row("F4", 12, 9, 16),
          row("G2", 6, 4, 6)};
}

BasisData rebase(const LieAlg& alg, const std::vector<RVec>& basis) {
  int n = static_cast<int>(basis.size());
  if (n != alg.dim) fail(ErrorKind::Precondition, "rebase needs a full basis");
  auto inv = inverse(RMatrix::from_columns(basis, static_cast<std::size_t>(alg.dim)));
  if (!inv) fail(ErrorKind::Validation, "frame vectors are linearly dependent");
  BasisData out;
  out.dim = n;
  out.c.assign(static_cast<std::size_t>(n * n), {});
  out.gram = RMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out.gram.at(i, j) = alg.pairing(basis[i], basis[j]);
      if (j <= i) continue;
      RVec cc = *inv * alg.bracket(basis[i], basis[j]);
      SparseVec sv, neg;
      for (int l = 0; l < n; ++l)
        if (cc[l] != 0) {
          sv.emplace_back(l, cc[l]);
          neg.emplace_back(l, -cc[l]);
        }
      out.c[static_cast<std::size_t>(i * n + j)] = std::move(sv);
      out.c[static_cast<std::size_t>(j * n + i)] = std::move(neg);
    }
  return out;
}

std::vector<RVec> dual_basis(const LieAlg& alg, const std::vector<RVec>& basis) {
  auto n = static_cast<std::size_t>(alg.dim);
  RMatrix gf = alg.form * RMatrix::from_columns(basis, n);
  auto inv = inverse(gf);
  if (!inv) fail(ErrorKind::Validation, "frame vectors are linearly dependent");
  RMatrix e = inv->transpose();
  std::vector<RVec> out;
  for (std::size_t l = 0; l < basis.size(); ++l) out.push_back(e.column(l));
  return out;
}

}  // namespace ppl
