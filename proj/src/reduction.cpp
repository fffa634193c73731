#include "ppl/reduction.hpp"

#include <algorithm>
#include <random>

#include "ppl/error.hpp"
#include "ppl/invariants.hpp"

namespace ppl {

Poly restrict_to_slice(const Poly& f, const GaugeSpec& q) {
  std::map<VarCode, Poly> values;
  for (VarCode v : f.variables()) {
    if (!is_jet(v)) continue;
    int i = jet_field(v);
    int s = jet_order(v);
    auto pos = std::find(q.retained.begin(), q.retained.end(), i);
    if (pos != q.retained.end()) {
      values[v] = Poly::w(static_cast<int>(pos - q.retained.begin()), s);
      continue;
    }
    auto it = q.fixed.find(i);
    if (it == q.fixed.end()) fail(ErrorKind::Validation, "field " + std::to_string(i + 1) + " is not covered by the gauge");
    values[v] = s == 0 ? Poly(it->second) : Poly();
  }
  return values.empty() ? f : f.substitute(values);
}

BlockDecomposition adapted_blocks(const MatDiffOp& op, const GaugeSpec& q) {
  if (!op.square()) fail(ErrorKind::Precondition, "reduction needs a square operator");
  q.validate(op.rows());
  BlockDecomposition out;
  for (const auto& [i, v] : q.fixed) out.eliminated.push_back(i);
  std::vector<int> order = q.retained;
  order.insert(order.end(), out.eliminated.begin(), out.eliminated.end());
  out.substituted = op.block(order, order).map_coeffs([&](const Poly& c) { return restrict_to_slice(c, q); });

  std::vector<int> top, bottom;
  for (std::size_t k = 0; k < q.retained.size(); ++k) top.push_back(static_cast<int>(k));
  for (std::size_t k = q.retained.size(); k < order.size(); ++k) bottom.push_back(static_cast<int>(k));
  out.a = out.substituted.block(top, top);
  out.b = out.substituted.block(top, bottom);
  out.c = out.substituted.block(bottom, top);
  out.d = out.substituted.block(bottom, bottom);
  return out;
}

namespace {

int min_eps(const MatDiffOp& m) {
  int k = 0;
  bool any = false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (const auto& [order, c] : m.at(i, j).coeffs()) {
        int e = c.min_exponent(kEps);
        k = any ? std::min(k, e) : e;
        any = true;
      }
  return k;
}

std::string eps_range(const MatDiffOp& m) {
  int lo = min_eps(m);
  int hi = lo;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (const auto& [order, c] : m.at(i, j).coeffs()) hi = std::max(hi, c.max_exponent(kEps));
  return "eps^" + std::to_string(lo) + "..eps^" + std::to_string(hi);
}

}  // namespace

DInverse invert_d(const MatDiffOp& d, int max_order) {
  if (!d.square()) fail(ErrorKind::Precondition, "D block is not square");
  std::size_t m = d.rows();
  DInverse out;
  if (m == 0) {
    out.inverse = MatDiffOp(0, 0);
    return out;
  }
  int k0 = min_eps(d);
  Poly shift = Poly::eps(-k0);
  MatDiffOp scaled = d.map_coeffs([&](const Poly& c) { return c * shift; });

  PolyMatrix d0 = zero_matrix(m, m);
  MatDiffOp d0_op(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      d0[i][j] = scaled.at(i, j).coeff(0).coefficient(kEps, 0);
      d0_op.at(i, j) = DiffOp(d0[i][j]);
    }
  MatDiffOp r = scaled - d0_op;

  Poly det = determinant(d0);
  if (det.is_zero())
    fail(ErrorKind::Singular,
         "leading algebraic part d0 of the D block is singular: the kernel intersection may be nontrivial");
  if (!det.is_constant())
    fail(ErrorKind::Precondition, "det d0 = " + det.str() + " is not a constant; a polynomial inverse is unavailable");
  Rational det_c = det.constant_term();
  PolyMatrix adj = adjugate(d0);
  MatDiffOp inv0(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) inv0.at(i, j) = DiffOp(adj[i][j] * (Rational(1) / det_c));

  MatDiffOp step = -(inv0 * r);
  MatDiffOp term = inv0;
  MatDiffOp sum = inv0;
  int k = 0;
  while (true) {
    term = step * term;
    if (term.is_zero()) break;
    ++k;
    if (k > max_order)
      fail(ErrorKind::NonTermination, "Neumann series for the D block did not terminate within " +
                                          std::to_string(max_order) + " steps (residual term spans " +
                                          eps_range(term) + ")");
    sum += term;
  }
  out.order = k;
  Poly unshift = Poly::eps(-k0);
  out.inverse = sum.map_coeffs([&](const Poly& c) { return c * unshift; });
  if (d * out.inverse != MatDiffOp::identity(m))
    fail(ErrorKind::Integrity, "D block inverse failed the composition check");
  return out;
}

ReducedPencil dirac_reduce(const MatDiffOp& op, const GaugeSpec& q, int max_order) {
  ReducedPencil out;
  out.gauge = q;
  out.blocks = adapted_blocks(op, q);
  DInverse inv = invert_d(out.blocks.d, max_order);
  out.d_inverse = inv.inverse;
  out.d_inverse_order = inv.order;
  out.op = out.blocks.a;
  if (out.blocks.d.rows() > 0) out.op -= out.blocks.b * inv.inverse * out.blocks.c;
  if (auto bad = skew_adjointness_violation(out.op))
    fail(ErrorKind::Integrity, "reduced operator is not skew-adjoint at " + *bad);
  for (std::size_t k = 0; k < q.retained.size(); ++k) out.names.names.push_back("w" + std::to_string(q.retained[k] + 1));
  if (!q.retained_names.empty()) out.names = FieldNames{q.retained_names};
  return out;
}

ReducedPencil dirac_reduce(const PencilInstance& p, const GaugeSpec& q, int max_order) {
  ReducedPencil out = dirac_reduce(p.op, q, max_order);
  out.source = p.id;
  if (q.retained_names.empty()) out.names = q.reduced_names(p.names);
  const auto& z = p.liouville.characteristic;
  if (z.size() == p.fields()) {
    bool tangent = std::all_of(z.begin(), z.end(), [](const Poly& c) { return c.is_constant(); });
    for (const auto& [i, v] : q.fixed) tangent = tangent && z[i].is_zero();
    if (tangent) {
      EvolutionaryField zr;
      for (int i : q.retained) zr.characteristic.push_back(z[i]);
      out.liouville = zr;
    }
  }
  return out;
}

bool reassembly_check(const ReducedPencil& r) {
  const auto& bl = r.blocks;
  std::size_t n = bl.a.rows(), m = bl.d.rows();
  MatDiffOp left(n + m, n + m), right = MatDiffOp::identity(n + m);
  MatDiffOp dic = m > 0 ? r.d_inverse * bl.c : MatDiffOp(0, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) left.at(i, j) = r.op.at(i, j);
    for (std::size_t j = 0; j < m; ++j) left.at(i, n + j) = bl.b.at(i, j);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) left.at(n + i, n + j) = bl.d.at(i, j);
    for (std::size_t j = 0; j < n; ++j) right.at(n + i, j) = dic.at(i, j);
  }
  return left * right == bl.substituted;
}

SchurReport schur_check(const ReducedPencil& r) {
  SchurReport s;
  s.det_full = determinant(symbol(r.blocks.substituted));
  s.det_delta = determinant(symbol(r.blocks.d));
  s.det_reduced = determinant(symbol(r.op));
  s.factorizes = s.det_full == s.det_delta * s.det_reduced;
  s.lambda_free = s.det_delta.max_exponent(kLambda) == 0 && s.det_delta.min_exponent(kLambda) == 0;
  s.constant = s.det_delta.is_constant();
  return s;
}

bool KernelReport::trivial() const {
  return std::all_of(samples.begin(), samples.end(), [](const KernelSample& s) { return s.dim == 0; });
}

std::size_t kernel_intersection_dim(const PencilInstance& p, const RVec& field_point, const Rational& pval) {
  if (field_point.size() != p.fields()) fail(ErrorKind::Precondition, "point has the wrong number of fields");
  PoissonPair pair = split_pencil(p.op);
  PolyMatrix s1 = symbol(pair.p1), s2 = symbol(pair.p2);
  std::size_t n = p.fields();
  auto value = [&](VarCode v) -> Rational {
    if (v == kP) return pval;
    if (is_jet(v) && jet_order(v) == 0) return field_point[jet_field(v)];
    return Rational(0);
  };
  RMatrix stacked(2 * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      stacked.at(i, j) = s1[i][j].evaluate<Rational>(value);
      stacked.at(n + i, j) = s2[i][j].evaluate<Rational>(value);
    }
  return nullspace(stacked).size();
}

KernelReport kernel_intersection_check(const PencilInstance& p, const GaugeSpec& q, int samples,
                                       unsigned long long seed) {
  q.validate(p.fields());
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  KernelReport rep;
  for (int s = 0; s < samples; ++s) {
    RVec point(p.fields());
    for (const auto& [i, v] : q.fixed) point[i] = v;
    for (int i : q.retained) point[i] = make_rational(num(gen), den(gen));
    Rational prand = make_rational(num(gen), den(gen));
    if (prand == 0) prand = 1;
    for (const Rational& pv : {Rational(0), prand}) {
      KernelSample ks;
      ks.point = point;
      ks.p = pv;
      ks.dim = kernel_intersection_dim(p, point, pv);
      rep.samples.push_back(ks);
    }
  }
  return rep;
}

LeafCharPoly leaf_char_poly(const PencilInstance& p) {
  if (!p.algebra) fail(ErrorKind::Precondition, "leaf restriction needs an algebra pencil");
  if (p.i_vector.empty()) fail(ErrorKind::Precondition, "pencil has no base point I for its leaf");
  const LieAlg& g = *p.algebra;
  Subspace tangent = orth_complement(g, kernel_ad(g, p.a_vector));
  // field coordinates are linear in the algebra element
  RVec base = field_coordinates(p, p.i_vector);
  std::vector<RVec> dirs;
  for (const RVec& b : tangent.basis) dirs.push_back(field_coordinates(p, b));
  std::map<VarCode, Poly> values;
  for (std::size_t l = 0; l < p.fields(); ++l) {
    Poly v(base[l]);
    for (std::size_t k = 0; k < dirs.size(); ++k)
      if (dirs[k][l] != 0) v += Poly::w(static_cast<int>(k)) * dirs[k][l];
    values[jet(static_cast<int>(l), 0)] = v;
  }
  PolyMatrix s = symbol(p.op);
  for (auto& row : s)
    for (Poly& c : row) c = c.substitute(values);
  LeafCharPoly out;
  out.charpoly = char_poly(s);
  out.leaf_dim = tangent.dim();
  return out;
}

}  // namespace ppl
