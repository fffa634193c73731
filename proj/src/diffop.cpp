#include "ppl/diffop.hpp"

#include <algorithm>
#include <random>

#include "ppl/error.hpp"
#include "ppl/parse.hpp"

namespace ppl {

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

// ---------------------------------------------------------------------------
// DiffOp

DiffOp::DiffOp(const Poly& multiplier) {
  if (!multiplier.is_zero()) coeffs_.emplace(0, multiplier);
}

DiffOp DiffOp::term(int m, const Poly& c) {
  if (m < 0) fail(ErrorKind::Precondition, "negative d-power in a differential operator");
  DiffOp op;
  if (!c.is_zero()) op.coeffs_.emplace(m, c);
  return op;
}

Poly DiffOp::coeff(int m) const {
  auto it = coeffs_.find(m);
  return it == coeffs_.end() ? Poly() : it->second;
}

void DiffOp::add(int m, const Poly& c) {
  if (c.is_zero()) return;
  if (m < 0) fail(ErrorKind::Precondition, "negative d-power in a differential operator");
  auto [it, inserted] = coeffs_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  for (const auto& [m, c] : o.coeffs_) add(m, c);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  for (const auto& [m, c] : o.coeffs_) add(m, -c);
  return *this;
}

DiffOp& DiffOp::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [m, v] : coeffs_) v *= c;
  return *this;
}

DiffOp operator*(const DiffOp& a, const DiffOp& b) {
  DiffOp out;
  if (a.is_zero() || b.is_zero()) return out;
  int max_m = a.order();
  for (const auto& [n, bc] : b.coeffs_) {
    // d^k b for k = 0..max_m
    std::vector<Poly> derivs{bc};
    for (int k = 1; k <= max_m; ++k) {
      derivs.push_back(total_x_derivative(derivs.back()));
      if (derivs.back().is_zero()) break;
    }
    for (const auto& [m, ac] : a.coeffs_) {
      for (int k = 0; k <= m && k < static_cast<int>(derivs.size()); ++k) {
        if (derivs[k].is_zero()) break;
        out.add(m - k + n, ac * derivs[k] * binomial(m, k));
      }
    }
  }
  return out;
}

DiffOp adjoint(const DiffOp& op) {
  // (a d^m)^dagger = (-d)^m o a = (-1)^m sum_k C(m,k) (d^k a) d^{m-k}
  DiffOp out;
  for (const auto& [m, a] : op.coeffs()) {
    Poly dk = a;
    Rational sign = (m % 2 == 0) ? 1 : -1;
    for (int k = 0; k <= m; ++k) {
      if (dk.is_zero()) break;
      out.add(m - k, dk * (sign * binomial(m, k)));
      dk = total_x_derivative(dk);
    }
  }
  return out;
}

std::string DiffOp::str(const FieldNames& names) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : coeffs_) {
    for (const auto& [mono, v] : c.terms()) {
      Rational mag = abs(v);
      bool neg = v < 0;
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      std::string body = mono.is_one() ? "" : monomial_str(mono, names);
      std::string dpart = m == 0 ? "" : (m == 1 ? "D" : "D^" + std::to_string(m));
      std::string rest = body;
      if (!dpart.empty()) rest += (rest.empty() ? "" : "*") + dpart;
      if (rest.empty())
        out += to_string(mag);
      else if (mag == 1)
        out += rest;
      else
        out += to_string(mag) + "*" + rest;
    }
  }
  return out;
}

DiffOp parse_op(std::string_view text, const FieldNames& names) {
  Poly p = parse_poly(text, names);
  DiffOp op;
  for (const auto& [m, c] : p.coefficients(kD)) {
    if (m < 0) fail(ErrorKind::Parse, "negative power of D");
    op.add(m, c);
  }
  return op;
}

// ---------------------------------------------------------------------------
// MatDiffOp

MatDiffOp MatDiffOp::identity(std::size_t n) {
  MatDiffOp id(n, n);
  for (std::size_t i = 0; i < n; ++i) id.at(i, i) = DiffOp(1);
  return id;
}

bool MatDiffOp::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const DiffOp& d) { return d.is_zero(); });
}

MatDiffOp MatDiffOp::block(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
  MatDiffOp out(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i)
    for (std::size_t j = 0; j < col_idx.size(); ++j)
      out.at(i, j) = at(static_cast<std::size_t>(row_idx[i]), static_cast<std::size_t>(col_idx[j]));
  return out;
}

MatDiffOp& MatDiffOp::operator+=(const MatDiffOp& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::Precondition, "matrix shape mismatch in +");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

MatDiffOp& MatDiffOp::operator-=(const MatDiffOp& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::Precondition, "matrix shape mismatch in -");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

MatDiffOp& MatDiffOp::operator*=(const Rational& c) {
  for (auto& e : entries_) e *= c;
  return *this;
}

MatDiffOp operator*(const MatDiffOp& a, const MatDiffOp& b) {
  if (a.cols_ != b.rows_) fail(ErrorKind::Precondition, "matrix shape mismatch in composition");
  MatDiffOp out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const DiffOp& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const DiffOp& bkj = b.at(k, j);
        if (bkj.is_zero()) continue;
        out.at(i, j) += aik * bkj;
      }
    }
  return out;
}

std::string MatDiffOp::str(const FieldNames& names) const {
  std::string out;
  for (std::size_t i = 0; i < rows_; ++i) {
    out += "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += ", ";
      out += at(i, j).str(names);
    }
    out += "]\n";
  }
  return out;
}

MatDiffOp adjoint(const MatDiffOp& op) {
  MatDiffOp out(op.cols(), op.rows());
  for (std::size_t i = 0; i < op.rows(); ++i)
    for (std::size_t j = 0; j < op.cols(); ++j) out.at(j, i) = adjoint(op.at(i, j));
  return out;
}

std::optional<std::string> skew_adjointness_violation(const MatDiffOp& op) {
  if (!op.square()) return std::string("matrix is not square");
  for (std::size_t i = 0; i < op.rows(); ++i)
    for (std::size_t j = i; j < op.cols(); ++j)
      if (adjoint(op.at(j, i)) != -op.at(i, j)) {
        auto a = std::to_string(i + 1);
        auto b = std::to_string(j + 1);
        return "(" + a + "," + b + ")/(" + b + "," + a + ")";
      }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Jet-space calculus

MatDiffOp frechet(const std::vector<Poly>& components, std::size_t fields) {
  MatDiffOp out(components.size(), fields);
  for (std::size_t i = 0; i < components.size(); ++i)
    for (VarCode v : components[i].variables()) {
      if (!is_jet(v)) continue;
      auto k = static_cast<std::size_t>(jet_field(v));
      if (k >= fields) fail(ErrorKind::Precondition, "field index out of range in frechet");
      out.at(i, k).add(jet_order(v), components[i].diff(v));
    }
  return out;
}

Poly prolong_apply(const EvolutionaryField& z, const Poly& f) {
  Poly out;
  std::map<std::pair<int, int>, Poly> dz;
  for (VarCode v : f.variables()) {
    if (!is_jet(v)) continue;
    int i = jet_field(v);
    int s = jet_order(v);
    if (static_cast<std::size_t>(i) >= z.characteristic.size()) continue;
    auto key = std::make_pair(i, s);
    auto it = dz.find(key);
    if (it == dz.end()) it = dz.emplace(key, total_x_derivative(z.characteristic[i], s)).first;
    if (it->second.is_zero()) continue;
    out += it->second * f.diff(v);
  }
  return out;
}

MatDiffOp lie_derivative(const EvolutionaryField& z, const MatDiffOp& op) {
  if (!op.square()) fail(ErrorKind::Precondition, "Lie derivative needs a square operator");
  std::size_t n = op.rows();
  if (z.characteristic.size() != n)
    fail(ErrorKind::Precondition, "vector field and operator sizes differ");
  MatDiffOp out = op.map_coeffs([&](const Poly& c) { return prolong_apply(z, c); });
  MatDiffOp l = frechet(z.characteristic, n);
  if (!l.is_zero()) out -= l * op + op * adjoint(l);
  return out;
}

PoissonPair split_pencil(const MatDiffOp& pencil) {
  if (lambda_degree(pencil) > 1) fail(ErrorKind::Precondition, "pencil is not linear in lambda");
  PoissonPair pair;
  pair.p1 = pencil.map_coeffs([](const Poly& c) { return -c.coefficient(kLambda, 1); });
  pair.p2 = pencil.map_coeffs([](const Poly& c) { return c.coefficient(kLambda, 0); });
  return pair;
}

MatDiffOp join_pencil(const PoissonPair& pair) {
  return pair.p2 - pair.p1.map_coeffs([](const Poly& c) { return c * Poly::lambda(); });
}

int lambda_degree(const MatDiffOp& op) {
  int d = 0;
  for (std::size_t i = 0; i < op.rows(); ++i)
    for (std::size_t j = 0; j < op.cols(); ++j)
      for (const auto& [m, c] : op.at(i, j).coeffs()) d = std::max(d, c.max_exponent(kLambda));
  return d;
}

GradingVerdict grading_check(const MatDiffOp& op, int min_k) {
  for (std::size_t i = 0; i < op.rows(); ++i)
    for (std::size_t j = 0; j < op.cols(); ++j)
      for (const auto& [m, c] : op.at(i, j).coeffs())
        for (const auto& [mono, v] : c.terms()) {
          int k = mono.exponent(kEps);
          int l = mono.differential_degree();
          if (k < min_k || m != k - l + 1) {
            GradingVerdict verdict;
            verdict.ok = false;
            verdict.witness = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              "): term " + DiffOp::term(m, Poly(mono, v)).str() + " has eps^" +
                              std::to_string(k) + ", differential degree " + std::to_string(l) +
                              ", d-order " + std::to_string(m);
            if (k < min_k) verdict.witness += " (eps power below " + std::to_string(min_k) + ")";
            return verdict;
          }
        }
  return {};
}

// ---------------------------------------------------------------------------
// Miura transformations

MiuraMap::MiuraMap(std::vector<std::vector<Poly>> components) : components_(std::move(components)) {
  std::size_t n = components_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (components_[i].empty()) fail(ErrorKind::Validation, "Miura component without F_0");
    for (std::size_t k = 0; k < components_[i].size(); ++k)
      for (const auto& [mono, c] : components_[i][k].terms()) {
        if (mono.exponent(kEps) != 0 || mono.exponent(kLambda) != 0 || mono.exponent(kP) != 0)
          fail(ErrorKind::Validation, "Miura terms must be eps- and lambda-free");
        if (mono.differential_degree() != static_cast<int>(k))
          fail(ErrorKind::Validation, "F^" + std::to_string(i + 1) + "_" + std::to_string(k) +
                                          " is not homogeneous of differential degree " +
                                          std::to_string(k));
        for (const auto& [v, e] : mono.factors())
          if (is_jet(v) && static_cast<std::size_t>(jet_field(v)) >= n)
            fail(ErrorKind::Validation, "Miura map refers to an unknown field");
      }
  }
  // Leading part: det(dF_0/dw) != 0 at a random rational point.
  std::mt19937_64 gen(0x5eed);
  std::uniform_int_distribution<int> dist(-7, 7);
  std::map<VarCode, Rational> point;
  for (std::size_t i = 0; i < n; ++i) point[jet(static_cast<int>(i), 0)] = make_rational(dist(gen), 3);
  std::vector<std::vector<Rational>> jac(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      jac[i][j] = components_[i][0].diff(jet(static_cast<int>(j), 0)).evaluate<Rational>(
          [&](VarCode v) { return point.count(v) ? point[v] : Rational(0); });
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && jac[piv][c] == 0) ++piv;
    if (piv == n) fail(ErrorKind::Singular, "Miura map: leading Jacobian det(dF_0/dw) vanishes");
    if (piv != c) {
      std::swap(jac[piv], jac[c]);
      det = -det;
    }
    det *= jac[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Rational f = jac[r][c] / jac[c][c];
      for (std::size_t k = c; k < n; ++k) jac[r][k] -= f * jac[c][k];
    }
  }
}

MiuraMap MiuraMap::identity(std::size_t fields) {
  std::vector<std::vector<Poly>> comps(fields);
  for (std::size_t i = 0; i < fields; ++i) comps[i] = {Poly::w(static_cast<int>(i))};
  return MiuraMap(std::move(comps));
}

int MiuraMap::truncation() const {
  std::size_t k = 0;
  for (const auto& c : components_) k = std::max(k, c.size());
  return static_cast<int>(k) - 1;
}

Poly MiuraMap::component(std::size_t i) const {
  Poly out;
  for (std::size_t k = 0; k < components_[i].size(); ++k)
    out += components_[i][k] * Poly::eps(static_cast<int>(k));
  return out;
}

namespace {

Poly mul_truncated(const Poly& a, const Poly& b, int max_eps, bool& dropped) {
  Poly out;
  for (const auto& [ma, ca] : a.terms()) {
    int ea = ma.exponent(kEps);
    for (const auto& [mb, cb] : b.terms()) {
      if (ea + mb.exponent(kEps) > max_eps) {
        dropped = true;
        continue;
      }
      out.add_term(ma * mb, ca * cb);
    }
  }
  return out;
}

Poly truncate(const Poly& p, int max_eps, bool& dropped) {
  Poly t = p.truncate_eps(max_eps);
  if (t.size() != p.size()) dropped = true;
  return t;
}

// Substitute jets through `value` with eps-truncation after every product.
template <class ValueFn>
Poly substitute_jets(const Poly& p, ValueFn&& value, int max_eps, bool& dropped) {
  Poly out;
  for (const auto& [mono, c] : p.terms()) {
    int base_eps = mono.exponent(kEps);
    if (base_eps > max_eps) {
      dropped = true;
      continue;
    }
    Monomial rest;
    Poly acc(c);
    for (const auto& [v, e] : mono.factors()) {
      if (!is_jet(v)) {
        rest = rest * Monomial(v, e);
        continue;
      }
      const Poly& val = value(v);
      for (int k = 0; k < e && !acc.is_zero(); ++k) acc = mul_truncated(acc, val, max_eps - base_eps, dropped);
    }
    for (const auto& [m2, c2] : acc.terms()) out.add_term(m2 * rest, c2);
  }
  return out;
}

}  // namespace

MiuraResult miura_apply(const MatDiffOp& op, const MiuraMap& map, int order) {
  std::size_t n = map.fields();
  if (!op.square() || op.rows() != n) fail(ErrorKind::Precondition, "Miura map and operator sizes differ");
  if (order < 0) fail(ErrorKind::Precondition, "negative truncation order");

  // Leading part must be affine: F_0 = J w + b with J constant.
  std::vector<std::vector<Rational>> jac(n, std::vector<Rational>(n));
  std::vector<Rational> shift(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Poly& f0 = map.components()[i][0];
    for (const auto& [mono, c] : f0.terms())
      if (mono.jet_degree() > 1)
        fail(ErrorKind::Precondition,
             "only affine leading terms F_0 are invertible in closed form");
    shift[i] = f0.constant_term();
    for (std::size_t j = 0; j < n; ++j) jac[i][j] = f0.diff(jet(static_cast<int>(j), 0)).constant_term();
  }
  // inverse of J by Gauss-Jordan
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && jac[piv][c] == 0) ++piv;
    if (piv == n) fail(ErrorKind::Singular, "Miura map: leading Jacobian is singular");
    std::swap(jac[piv], jac[c]);
    std::swap(inv[piv], inv[c]);
    Rational s = jac[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      jac[c][k] /= s;
      inv[c][k] /= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || jac[r][c] == 0) continue;
      Rational f = jac[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        jac[r][k] -= f * jac[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }

  MiuraResult result;
  result.truncation_order = order;
  bool dropped = false;

  // Transformed operator in the old variables.
  std::vector<Poly> comps;
  for (std::size_t i = 0; i < n; ++i) comps.push_back(map.component(i));
  MatDiffOp lstar = frechet(comps, n);
  MatDiffOp transformed = lstar * op * adjoint(lstar);

  // Old variables as eps-series in the new ones: fixed point of
  // w = J^{-1}(w~ - b - sum_{k>=1} eps^k F_k(w)).
  std::vector<Poly> old_in_new(n);
  auto affine_inverse = [&](const std::vector<Poly>& rhs) {
    std::vector<Poly> out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (inv[i][j] != 0) out[i] += rhs[j] * inv[i][j];
    return out;
  };
  {
    std::vector<Poly> base(n);
    for (std::size_t j = 0; j < n; ++j) base[j] = Poly::w(static_cast<int>(j)) - Poly(shift[j]);
    old_in_new = affine_inverse(base);
    for (int iter = 0; iter <= order + 1; ++iter) {
      std::map<VarCode, Poly> derivs;
      auto value = [&](VarCode v) -> const Poly& {
        auto it = derivs.find(v);
        if (it == derivs.end())
          it = derivs.emplace(v, total_x_derivative(old_in_new[jet_field(v)], jet_order(v))).first;
        return it->second;
      };
      std::vector<Poly> rhs = base;
      bool local_drop = false;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 1; k < map.components()[j].size(); ++k) {
          Poly fk = substitute_jets(map.components()[j][k], value, order - static_cast<int>(k), local_drop);
          rhs[j] -= fk * Poly::eps(static_cast<int>(k));
        }
      auto next = affine_inverse(rhs);
      for (auto& g : next) g = truncate(g, order, local_drop);
      // The inverse is exact through eps^order once it stops changing; terms
      // dropped here never reach the truncated result.
      bool stable = next == old_in_new;
      old_in_new = std::move(next);
      if (stable) break;
    }
  }

  std::map<VarCode, Poly> derivs;
  auto value = [&](VarCode v) -> const Poly& {
    auto it = derivs.find(v);
    if (it == derivs.end())
      it = derivs.emplace(v, total_x_derivative(old_in_new[jet_field(v)], jet_order(v))).first;
    return it->second;
  };
  result.op = transformed.map_coeffs([&](const Poly& c) { return substitute_jets(c, value, order, dropped); });
  result.truncated = dropped;
  return result;
}

}  // namespace ppl
