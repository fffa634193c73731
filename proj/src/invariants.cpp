#include "ppl/invariants.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <random>

#include "ppl/error.hpp"

namespace ppl {

namespace {

int initial_digits() {
  if (const char* env = std::getenv("PPL_DIGITS")) {
    int d = std::atoi(env);
    if (d >= 20 && d <= 2000) return d;
  }
  return 50;
}

int g_digits = initial_digits();

struct PrecisionScope {
  PrecisionScope() { Real::default_precision(static_cast<unsigned>(g_digits + 10)); }
};

}  // namespace

int working_digits() { return g_digits; }

void set_working_digits(int digits) {
  if (digits < 20 || digits > 2000) fail(ErrorKind::Usage, "precision must be between 20 and 2000 digits");
  g_digits = digits;
}

std::string to_string(const Real& x, int digits) { return x.str(digits); }

PolyMatrix symbol(const MatDiffOp& op, int p_order) {
  PolyMatrix s = zero_matrix(op.rows(), op.cols());
  for (std::size_t i = 0; i < op.rows(); ++i)
    for (std::size_t j = 0; j < op.cols(); ++j)
      for (const auto& [m, c] : op.at(i, j).coeffs())
        for (const auto& [mono, v] : c.terms()) {
          if (mono.has_derivatives()) continue;
          int k = mono.exponent(kEps);
          if (m != k + 1)
            fail(ErrorKind::Grading, "symbol: entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                         ") has a derivative-free term eps^" + std::to_string(k) + " d^" +
                                         std::to_string(m) + " outside the grading");
          if (p_order >= 0 && m > p_order) continue;
          s[i][j].add_term(mono.without(kEps).with_exponent(kP, m), v);
        }
  return s;
}

CharPoly char_poly(const PolyMatrix& s) {
  CharPoly c;
  c.poly = determinant(s);
  c.lambda_degree = c.poly.max_exponent(kLambda);
  return c;
}

HydroData hydro_limit(const MatDiffOp& pencil) {
  GradingVerdict g = grading_check(pencil, 0);
  if (!g.ok) fail(ErrorKind::NoDispersionlessLimit, "no dispersionless limit: " + g.witness);
  PoissonPair pair = split_pencil(pencil);
  std::size_t n = pencil.rows();
  HydroData h;
  auto extract = [&](const MatDiffOp& p, PolyMatrix& gm, std::vector<PolyMatrix>& gamma) {
    gm = zero_matrix(n, n);
    gamma.assign(n, zero_matrix(n, n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        gm[i][j] = p.at(i, j).coeff(1).coefficient(kEps, 0);
        Poly c0 = p.at(i, j).coeff(0).coefficient(kEps, 0);
        for (std::size_t k = 0; k < n; ++k) gamma[k][i][j] = c0.diff(jet(static_cast<int>(k), 1));
      }
  };
  extract(pair.p1, h.g1, h.gamma1);
  extract(pair.p2, h.g2, h.gamma2);
  return h;
}

namespace {

// Polynomial in one variable with rational coefficients, low degree first.
using UPoly = std::vector<Rational>;

template <class T>
T horner(const UPoly& f, const T& x) {
  T acc(0);
  for (std::size_t k = f.size(); k-- > 0;) acc = acc * x + rational_to<T>(f[k]);
  return acc;
}

UPoly derivative(const UPoly& f) {
  UPoly d;
  for (std::size_t k = 1; k < f.size(); ++k) d.push_back(f[k] * static_cast<long>(k));
  return d;
}

std::function<Rational(VarCode)> field_values(const std::vector<Rational>& w0) {
  return [&w0](VarCode v) -> Rational {
    if (is_jet(v) && jet_order(v) == 0 && static_cast<std::size_t>(jet_field(v)) < w0.size())
      return w0[jet_field(v)];
    if (is_jet(v) && jet_order(v) == 0) fail(ErrorKind::Precondition, "sample point has too few fields");
    return Rational(0);
  };
}

// Replace jets by rationals; p and lambda stay.
Poly at_point(const Poly& f, const std::vector<Rational>& w0) {
  std::map<VarCode, Poly> values;
  auto fv = field_values(w0);
  for (VarCode v : f.variables())
    if (is_jet(v)) values[v] = Poly(fv(v));
  return values.empty() ? f : f.substitute(values);
}

std::optional<Rational> rationalize(const Real& x, const UPoly& f) {
  // continued fraction convergents
  Real y = x;
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int step = 0; step < 40; ++step) {
    Real fl = floor(y);
    mpz_class a;
    mpfr_get_z(a.get_mpz_t(), fl.backend().data(), MPFR_RNDN);
    mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (abs(k2) > mpz_class("100000000")) break;
    Rational q(h2, k2);
    q.canonicalize();
    if (horner(f, q) == 0) return q;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    Real frac = y - fl;
    if (abs(frac) < Real("1e-40")) break;
    y = 1 / frac;
  }
  return std::nullopt;
}

struct RealRoot {
  Real value;
  std::optional<Rational> exact;
};

// Real simple roots of f; non-real or repeated roots raise a semisimplicity error.
std::vector<RealRoot> real_simple_roots(const UPoly& f) {
  std::size_t deg = f.size() - 1;
  if (deg == 0) fail(ErrorKind::Semisimplicity, "characteristic polynomial has no lambda-dependence at p = 0");
  std::vector<RealRoot> out;
  if (deg == 1) {
    Rational r = -f[0] / f[1];
    out.push_back({rational_to<Real>(r), r});
    return out;
  }
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
  double lead = f[deg].get_d();
  for (std::size_t k = 0; k < deg; ++k) comp(0, static_cast<Eigen::Index>(k)) = -f[deg - 1 - k].get_d() / lead;
  for (std::size_t k = 1; k < deg; ++k) comp(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = 1;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  UPoly df = derivative(f);
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    std::complex<double> z = es.eigenvalues()[k];
    if (std::abs(z.imag()) > 1e-7 * (1 + std::abs(z.real())))
      fail(ErrorKind::Semisimplicity, "non-real canonical coordinate at this point");
    Real x(z.real());
    for (int it = 0; it < 200; ++it) {
      Real fx = horner(f, x), dfx = horner(df, x);
      if (dfx == 0) fail(ErrorKind::Semisimplicity, "repeated canonical coordinate at this point");
      Real dx = fx / dfx;
      x -= dx;
      if (abs(dx) <= abs(x) * pow(Real(10), -(g_digits + 5)) || dx == 0) break;
    }
    RealRoot r{x, rationalize(x, f)};
    if (r.exact) r.value = rational_to<Real>(*r.exact);
    out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
  Real scale(1);
  for (const auto& r : out) scale = std::max(scale, Real(abs(r.value)));
  for (std::size_t k = 1; k < out.size(); ++k) {
    bool same = out[k].exact && out[k - 1].exact ? *out[k].exact == *out[k - 1].exact
                                                  : abs(out[k].value - out[k - 1].value) < scale * Real("1e-20");
    if (same) fail(ErrorKind::Semisimplicity, "repeated canonical coordinate at this point");
  }
  for (const auto& r : out)
    if (r.exact && horner(df, *r.exact) == 0) fail(ErrorKind::Semisimplicity, "repeated canonical coordinate");
  return out;
}

// r[i][j]: coefficient of p^i lambda^j.
template <class T>
std::vector<T> series_root(const std::vector<std::vector<Rational>>& r, const T& a0, int order) {
  std::size_t pmax = r.size();
  std::size_t lmax = 0;
  for (const auto& row : r) lmax = std::max(lmax, row.size());
  std::vector<T> a{a0};
  T f_lambda(0);
  for (std::size_t j = 1; j < r[0].size(); ++j) {
    T pw(1);
    for (std::size_t t = 1; t < j; ++t) pw *= a0;
    f_lambda += rational_to<T>(r[0][j]) * T(static_cast<long>(j)) * pw;
  }
  if (f_lambda == 0) fail(ErrorKind::Semisimplicity, "repeated root in the lambda expansion");
  for (int k = 1; k <= order; ++k) {
    // powers of S = sum_{t<k} a_t p^t truncated at p^k
    std::vector<std::vector<T>> pw(lmax, std::vector<T>(static_cast<std::size_t>(k + 1), T(0)));
    pw[0][0] = T(1);
    for (std::size_t j = 1; j < lmax; ++j)
      for (int x = 0; x <= k; ++x) {
        if (pw[j - 1][x] == 0) continue;
        for (int t = 0; t < k && x + t <= k; ++t) pw[j][x + t] += pw[j - 1][x] * a[t];
      }
    T acc(0);
    for (std::size_t i = 0; i < pmax && static_cast<int>(i) <= k; ++i)
      for (std::size_t j = 0; j < r[i].size(); ++j)
        if (r[i][j] != 0) acc += rational_to<T>(r[i][j]) * pw[j][k - i];
    a.push_back(-acc / f_lambda);
  }
  return a;
}

}  // namespace

RootExpansion lambda_roots(const CharPoly& c, const std::vector<Rational>& w0, int order) {
  PrecisionScope prec;
  if (order < 0) fail(ErrorKind::Usage, "expansion order must be nonnegative");
  Poly r = at_point(c.poly, w0);
  if (r.is_zero()) fail(ErrorKind::Semisimplicity, "characteristic polynomial vanishes at this point");
  for (VarCode v : r.variables())
    if (v != kP && v != kLambda) fail(ErrorKind::Precondition, "characteristic polynomial depends on eps or jets");
  RootExpansion out;
  out.base_point = w0;
  out.p_shift = r.min_exponent(kP);
  int pmax = r.max_exponent(kP) - out.p_shift;
  int lmax = r.max_exponent(kLambda);
  std::vector<std::vector<Rational>> tab(static_cast<std::size_t>(pmax + 1),
                                         std::vector<Rational>(static_cast<std::size_t>(lmax + 1)));
  for (const auto& [mono, v] : r.terms())
    tab[mono.exponent(kP) - out.p_shift][mono.exponent(kLambda)] = v;
  UPoly f = tab[0];
  while (!f.empty() && f.back() == 0) f.pop_back();
  for (const auto& root : real_simple_roots(f)) {
    RootSeries s;
    if (root.exact) {
      s.exact = true;
      s.exact_coeffs = series_root<Rational>(tab, *root.exact, order);
      for (const auto& q : s.exact_coeffs) s.coeffs.push_back(rational_to<Real>(q));
    } else {
      s.coeffs = series_root<Real>(tab, root.value, order);
    }
    s.max_odd = 0;
    for (std::size_t k = 1; k < s.coeffs.size(); k += 2) s.max_odd = std::max(s.max_odd, Real(abs(s.coeffs[k])));
    out.roots.push_back(std::move(s));
  }
  return out;
}

std::vector<CanonicalPoint> canonical_data(const HydroData& h, const std::vector<Rational>& w0) {
  PrecisionScope prec;
  std::size_t n = h.g1.size();
  PolyMatrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = h.g2[i][j] - Poly::lambda() * h.g1[i][j];
  Poly F = determinant(m);
  Poly Fl = F.diff(kLambda);
  std::vector<Poly> Fw;
  for (std::size_t a = 0; a < n; ++a) Fw.push_back(F.diff(jet(static_cast<int>(a), 0)));

  Poly f_at = at_point(F, w0);
  UPoly f(static_cast<std::size_t>(f_at.max_exponent(kLambda) + 1));
  for (const auto& [mono, v] : f_at.terms()) f[mono.exponent(kLambda)] = v;
  while (!f.empty() && f.back() == 0) f.pop_back();
  if (f.empty()) fail(ErrorKind::Semisimplicity, "det(g2 - lambda g1) vanishes identically");

  auto fv = field_values(w0);
  std::vector<CanonicalPoint> out;
  for (const auto& root : real_simple_roots(f)) {
    CanonicalPoint cp;
    if (root.exact) {
      Rational u = *root.exact;
      auto val = [&](VarCode v) { return v == kLambda ? u : fv(v); };
      Rational fl = Fl.evaluate<Rational>(val);
      if (fl == 0) fail(ErrorKind::Semisimplicity, "repeated canonical coordinate");
      std::vector<Rational> du;
      for (std::size_t a = 0; a < n; ++a) du.push_back(-Fw[a].evaluate<Rational>(val) / fl);
      Rational fsum;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) fsum += du[a] * h.g1[a][b].evaluate<Rational>(val) * du[b];
      cp.exact = true;
      cp.u_exact = u;
      cp.f_exact = fsum;
      cp.u = rational_to<Real>(u);
      cp.f = rational_to<Real>(fsum);
    } else {
      Real u = root.value;
      auto val = [&](VarCode v) { return v == kLambda ? u : rational_to<Real>(fv(v)); };
      Real fl = Fl.evaluate<Real>(val);
      std::vector<Real> du;
      for (std::size_t a = 0; a < n; ++a) du.push_back(-Fw[a].evaluate<Real>(val) / fl);
      Real fsum(0);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) fsum += du[a] * h.g1[a][b].evaluate<Real>(val) * du[b];
      cp.u = u;
      cp.f = fsum;
    }
    out.push_back(cp);
  }
  return out;
}

CentralInvariantReport central_invariants_at(const MatDiffOp& pencil, const std::vector<std::vector<Rational>>& points,
                                             int order, double tol) {
  PrecisionScope prec;
  if (order < 2) fail(ErrorKind::Usage, "central invariants need expansion order >= 2");
  HydroData hd = hydro_limit(pencil);
  CharPoly cp = char_poly(pencil);
  CentralInvariantReport rep;
  rep.order = order;
  rep.tolerance = Real(tol);
  for (const auto& w0 : points) {
    RootExpansion roots = lambda_roots(cp, w0, order);
    std::vector<CanonicalPoint> canon = canonical_data(hd, w0);
    if (canon.size() != roots.roots.size())
      fail(ErrorKind::Integrity, "canonical coordinates and lambda-roots disagree in number");
    CentralSample sample;
    sample.point = w0;
    sample.max_odd = 0;
    for (std::size_t i = 0; i < roots.roots.size(); ++i) {
      const RootSeries& rs = roots.roots[i];
      // pair with the nearest canonical coordinate
      std::size_t best = 0;
      for (std::size_t k = 1; k < canon.size(); ++k)
        if (abs(canon[k].u - rs.coeffs[0]) < abs(canon[best].u - rs.coeffs[0])) best = k;
      const CanonicalPoint& cn = canon[best];
      if (abs(cn.u - rs.coeffs[0]) > Real("1e-20") * (1 + abs(cn.u)))
        fail(ErrorKind::Integrity, "lowest p-term of the characteristic polynomial is not det(g2 - lambda g1)");
      if (cn.f == 0) fail(ErrorKind::Semisimplicity, "f vanishes at this point");
      CentralRecord rec;
      rec.u = cn.u;
      rec.f = cn.f;
      rec.lambda2 = rs.coeffs[2];
      rec.c = rec.lambda2 / (3 * rec.f);
      if (rs.exact && cn.exact) {
        rec.exact = true;
        rec.u_exact = cn.u_exact;
        rec.f_exact = cn.f_exact;
        rec.lambda2_exact = rs.exact_coeffs[2];
        rec.c_exact = rec.lambda2_exact / (3 * rec.f_exact);
      }
      sample.max_odd = std::max(sample.max_odd, rs.max_odd);
      sample.roots.push_back(rec);
    }
    std::sort(sample.roots.begin(), sample.roots.end(),
              [](const CentralRecord& a, const CentralRecord& b) { return a.u < b.u; });
    rep.samples.push_back(std::move(sample));
  }
  // constancy: compare the multisets of c-values across samples
  rep.constant = true;
  if (!rep.samples.empty()) {
    std::size_t m = rep.samples[0].roots.size();
    std::vector<std::vector<Real>> sorted;
    for (const auto& s : rep.samples) {
      std::vector<Real> cs;
      for (const auto& r : s.roots) cs.push_back(r.c);
      std::sort(cs.begin(), cs.end());
      sorted.push_back(cs);
    }
    for (std::size_t i = 0; i < m; ++i) {
      Real lo = sorted[0][i], hi = sorted[0][i];
      for (const auto& cs : sorted) {
        lo = std::min(lo, cs[i]);
        hi = std::max(hi, cs[i]);
      }
      rep.spread.push_back(hi - lo);
      if (hi - lo >= Real(tol)) rep.constant = false;
    }
  }
  return rep;
}

CentralInvariantReport central_invariants(const MatDiffOp& pencil, const SampleOptions& opt) {
  if (opt.samples < 1) fail(ErrorKind::Usage, "need at least one sample point");
  std::mt19937_64 gen(opt.seed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  std::size_t n = pencil.rows();
  std::vector<std::vector<Rational>> points;
  int attempts = 0;
  while (static_cast<int>(points.size()) < opt.samples) {
    if (++attempts > 100 * opt.samples)
      fail(ErrorKind::Semisimplicity, "no semisimple sample points found (spectrum not real and simple)");
    std::vector<Rational> w(n);
    for (auto& x : w) x = make_rational(num(gen), den(gen));
    try {
      central_invariants_at(pencil, {w}, opt.order, opt.tol);
      points.push_back(w);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Semisimplicity) throw;
    }
  }
  CentralInvariantReport rep = central_invariants_at(pencil, points, opt.order, opt.tol);
  rep.seed = opt.seed;
  return rep;
}

std::vector<Rational> ds_predicted_ci(const LieAlg& alg) {
  std::vector<Rational> out;
  for (int i : alg.H) out.push_back(alg.form.at(i, i) / 48);
  return out;
}

CharPolyRatio charpoly_ratio(const Poly& rm, const Poly& rq) {
  if (rm.is_zero() || rq.is_zero()) fail(ErrorKind::Integrity, "vanishing characteristic polynomial");
  CharPolyRatio out;
  if (auto q = divide_exact(rq, rm)) {
    out.f = *q;
  } else if (auto q2 = divide_exact(rm, rq)) {
    out.f = *q2;
    out.inverted = true;
  } else {
    fail(ErrorKind::Integrity, "characteristic polynomials are not proportional");
  }
  out.lambda_free = out.f.max_exponent(kLambda) == 0;
  out.constant = out.f.is_constant();
  return out;
}

bool EigenScalingReport::ok(double tol) const {
  return std::all_of(samples.begin(), samples.end(),
                     [&](const EigenScalingSample& s) { return s.distance < tol && s.zero_modes == rank; });
}

EigenScalingReport eigen_scaling_check(const LieAlg& alg, const std::vector<double>& lambdas, double tol) {
  (void)tol;
  RVec I(static_cast<std::size_t>(alg.dim));
  for (int y : alg.Y) I[y] = 1;
  auto ad_double = [&](double lam) {
    RMatrix adI = alg.ad(I), adE = alg.ad(alg.e_theta);
    Eigen::MatrixXd m(alg.dim, alg.dim);
    for (int i = 0; i < alg.dim; ++i)
      for (int j = 0; j < alg.dim; ++j) m(i, j) = adI.at(i, j).get_d() - lam * adE.at(i, j).get_d();
    return m;
  };
  auto eigs = [&](double lam) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(ad_double(lam), false);
    std::vector<std::complex<double>> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return v;
  };
  auto base = eigs(1.0);
  EigenScalingReport rep;
  rep.rank = alg.rank;
  for (double lam : lambdas) {
    EigenScalingSample s;
    s.lambda = lam;
    auto got = eigs(lam);
    double factor = std::pow(lam, 1.0 / alg.h);
    std::vector<std::complex<double>> want;
    for (const auto& z : base) want.push_back(z * factor);
    // greedy nearest matching as a multiset distance
    std::vector<bool> used(want.size(), false);
    double dist = 0;
    for (const auto& z : got) {
      std::size_t best = want.size();
      for (std::size_t k = 0; k < want.size(); ++k)
        if (!used[k] && (best == want.size() || std::abs(want[k] - z) < std::abs(want[best] - z))) best = k;
      used[best] = true;
      dist = std::max(dist, std::abs(want[best] - z));
    }
    s.distance = dist;
    double scale = 0;
    for (const auto& z : got) scale = std::max(scale, std::abs(z));
    for (const auto& z : got)
      if (std::abs(z) < 1e-7 * std::max(1.0, scale)) ++s.zero_modes;
    rep.samples.push_back(s);
  }
  return rep;
}

}  // namespace ppl
