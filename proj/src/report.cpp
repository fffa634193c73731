#include "ppl/report.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <random>
#include <sstream>

#include "ppl/error.hpp"
#include "ppl/reference.hpp"

namespace ppl {

Emit parse_emit(std::string_view s) {
  if (s == "text") return Emit::Text;
  if (s == "json") return Emit::Json;
  if (s == "latex") return Emit::Latex;
  fail(ErrorKind::Usage, "unknown emit format '" + std::string(s) + "' (expected text, json or latex)");
}

namespace {

Json names_json(const FieldNames& names, std::size_t n) {
  Json out = Json::array();
  for (std::size_t i = 0; i < n; ++i) out.push_back(names.name(static_cast<int>(i)));
  return out;
}

FieldNames names_from(const Json& j) {
  FieldNames n;
  for (const auto& s : j) n.names.push_back(s.get<std::string>());
  return n;
}

Json pair_json(const MatDiffOp& op, const FieldNames& names) {
  PoissonPair pair = split_pencil(op);
  Json j;
  j["pencil"] = to_json(op);
  j["p1"] = to_json(pair.p1);
  j["p2"] = to_json(pair.p2);
  j["text"] = {{"p1", pair.p1.str(names)}, {"p2", pair.p2.str(names)}};
  return j;
}

std::string real_str(const Real& x) { return to_string(x, 20); }

bool a_is_highest_root(const PencilInstance& p) {
  if (!p.algebra || p.a_vector.empty()) return false;
  const RVec& e = p.algebra->e_theta;
  // proportional to E_theta
  std::optional<Rational> ratio;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) {
      if (p.a_vector[k] != 0) return false;
      continue;
    }
    Rational r = p.a_vector[k] / e[k];
    if (ratio && *ratio != r) return false;
    ratio = r;
  }
  return ratio && *ratio != 0;
}

}  // namespace

Json algebra_report(const LieAlg& alg) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = "algebra";
  j["algebra"] = to_json(alg);
  Table1Row row = table1_report(alg);
  j["table1"] = {{"h", row.h}, {"h_vee", row.h_vee}, {"dim_leaf", row.dim_leaf}, {"dim_g1", row.dim_g1}};
  std::vector<std::string> pred;
  for (const auto& c : ds_predicted_ci(alg)) pred.push_back(to_string(c));
  j["predicted_central_invariants"] = pred;
  return j;
}

Json pencil_report(const BuiltinPencil& b) {
  const PencilInstance& p = b.pencil;
  Json j;
  j["schema"] = kSchema;
  j["command"] = "pencil";
  j["id"] = p.id;
  j["variant"] = to_string(p.variant);
  if (p.algebra) j["algebra"] = p.algebra->name;
  j["fields"] = p.fields();
  j["names"] = names_json(p.names, p.fields());
  j["operator"] = pair_json(p.op, p.names);
  std::vector<std::string> z;
  for (const auto& c : p.liouville.characteristic) z.push_back(c.str(p.names));
  j["liouville"] = z;
  ExactnessReport ex = check_exact(p);
  j["exact"] = {{"lz_p1_zero", ex.p1_ok()}, {"lz_p2_equals_p1", ex.p2_ok()}};
  j["gauge"] = to_json(b.gauge);
  return j;
}

Json reduce_report(const BuiltinPencil& b, int max_order) {
  ReducedPencil r = dirac_reduce(b.pencil, b.gauge, max_order);
  SchurReport s = schur_check(r);
  Json j;
  j["schema"] = kSchema;
  j["command"] = "reduce";
  j["source"] = r.source;
  j["gauge"] = to_json(b.gauge);
  j["names"] = names_json(r.names, r.op.rows());
  j["reduced"] = to_json(r.op);
  Json pair = pair_json(r.op, r.names);
  j["p1"] = pair["p1"];
  j["p2"] = pair["p2"];
  j["text"] = pair["text"];
  j["d_inverse_order"] = r.d_inverse_order;
  j["schur"] = {{"det_delta", to_json(s.det_delta)},
                {"det_delta_text", s.det_delta.str(r.names)},
                {"lambda_free", s.lambda_free},
                {"constant", s.constant},
                {"factorizes", s.factorizes}};
  j["reassembly"] = reassembly_check(r);
  if (r.liouville) {
    std::vector<std::string> z;
    for (const auto& c : r.liouville->characteristic) z.push_back(c.str(r.names));
    ExactnessReport ex = check_exact(r.op, *r.liouville);
    j["liouville"] = {{"characteristic", z}, {"lz_p1_zero", ex.p1_ok()}, {"lz_p2_equals_p1", ex.p2_ok()}};
  }
  return j;
}

Json invariants_report(const BuiltinPencil& b, const SampleOptions& opt, int max_order) {
  MatDiffOp op = b.pencil.op;
  FieldNames names = b.pencil.names;
  bool reduced = !b.gauge.fixed.empty();
  if (reduced) {
    ReducedPencil r = dirac_reduce(b.pencil, b.gauge, max_order);
    op = r.op;
    names = r.names;
  }
  CharPoly cp = char_poly(op);
  CentralInvariantReport rep = central_invariants(op, opt);

  Json j;
  j["schema"] = kSchema;
  j["command"] = "invariants";
  j["pencil"] = b.pencil.id;
  j["reduced"] = reduced;
  j["names"] = names_json(names, op.rows());
  j["char_poly"] = to_json(cp.poly);
  j["char_poly_text"] = cp.poly.str(names);
  j["lambda_degree"] = cp.lambda_degree;
  auto record = [&](const CentralRecord& r) {
    Json x;
    x["u"] = real_str(r.u);
    x["lambda2"] = real_str(r.lambda2);
    x["f"] = real_str(r.f);
    x["c"] = real_str(r.c);
    if (r.exact) x["c_exact"] = to_string(r.c_exact);
    return x;
  };
  Json roots = Json::array();
  for (const auto& r : rep.samples.front().roots) roots.push_back(record(r));
  j["roots"] = roots;
  Json samples = Json::array();
  for (const auto& s : rep.samples) {
    Json x;
    std::vector<std::string> pt;
    for (const auto& v : s.point) pt.push_back(to_string(v));
    x["point"] = pt;
    Json rs = Json::array();
    for (const auto& r : s.roots) rs.push_back(record(r));
    x["roots"] = rs;
    x["max_odd"] = real_str(s.max_odd);
    samples.push_back(x);
  }
  j["samples"] = samples;
  std::vector<std::string> spread;
  for (const auto& s : rep.spread) spread.push_back(real_str(s));
  j["spread"] = spread;
  j["constant"] = rep.constant;
  Json pred = Json::array();
  if (b.pencil.variant == Variant::DS && a_is_highest_root(b.pencil)) {
    auto p = ds_predicted_ci(*b.pencil.algebra);
    std::sort(p.begin(), p.end());
    for (const auto& c : p) pred.push_back(to_string(c));
  }
  j["predicted"] = pred;
  j["seed"] = opt.seed;
  j["samples_requested"] = opt.samples;
  j["order"] = opt.order;
  j["tolerance"] = opt.tol;
  j["digits"] = working_digits();
  return j;
}

// ---- verify suites ---------------------------------------------------------

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.finding || c.pass; });
}

Json to_json(const SuiteResult& r) {
  Json j;
  j["suite"] = r.suite;
  j["passed"] = r.passed();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json x;
    x["name"] = c.name;
    x["pass"] = c.pass;
    if (c.finding) x["finding"] = true;
    if (!c.detail.empty()) x["detail"] = c.detail;
    checks.push_back(x);
  }
  j["checks"] = checks;
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"kdv",       "so5",          "sl3-frac",         "camassa-holm",
                                              "table1",    "exactness",    "schur",            "miura-invariance",
                                              "eigen-scaling", "lambda-degree", "evenness", "scalar"};
  return names;
}

namespace {

// Matrix printouts are multi-line; keep details on one line.
std::string tidy(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\n') {
      out += "; ";
      while (i + 1 < s.size() && s[i + 1] == '\n') ++i;
    } else {
      out += s[i];
    }
  }
  return out;
}

class Suite {
 public:
  explicit Suite(std::string name) { r_.suite = std::move(name); }

  void check(std::string name, bool pass, std::string detail = "") {
    r_.checks.push_back({std::move(name), pass, false, tidy(std::move(detail))});
  }
  void finding(std::string name, bool holds, std::string detail) {
    r_.checks.push_back({std::move(name), holds, true, tidy(std::move(detail))});
  }
  // Runs `body`; a library error becomes a failed check.
  template <class F>
  void guarded(const std::string& name, F&& body) {
    try {
      body();
    } catch (const Error& e) {
      check(name, false, std::string("error: ") + e.what());
    }
  }
  SuiteResult done(double seconds) {
    r_.seconds = seconds;
    return std::move(r_);
  }

 private:
  SuiteResult r_;
};

ReducedPencil reduce_named(const char* n) {
  auto b = builtin(n);
  return dirac_reduce(b.pencil, b.gauge);
}

bool entries_match(const MatDiffOp& got, const MatDiffOp& want, std::string& detail) {
  if (got.rows() != want.rows() || got.cols() != want.cols()) {
    detail = "shape mismatch";
    return false;
  }
  for (std::size_t i = 0; i < got.rows(); ++i)
    for (std::size_t j = 0; j < got.cols(); ++j)
      if (got.at(i, j) != want.at(i, j)) {
        detail += (detail.empty() ? "" : ", ") + std::string("(") + std::to_string(i + 1) + "," +
                  std::to_string(j + 1) + ")";
      }
  if (!detail.empty()) detail = "entries differ: " + detail;
  return detail.empty();
}

std::string rationals(const std::vector<Rational>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + to_string(x);
  return "{" + s + "}";
}

void suite_kdv(Suite& s, const SuiteOptions& opt) {
  s.guarded("reduction", [&] {
    auto r = reduce_named("kdv");
    auto pair = split_pencil(r.op);
    s.check("reduced P1 = -2 D", pair.p1 == ref::kdv_p1(), pair.p1.str(r.names));
    s.check("reduced P2 = -u_x - 2u D + eps^2/2 D^3", pair.p2 == ref::kdv_p2(), pair.p2.str(r.names));
    s.check("char poly = -2(u - lam)p + p^3/2", char_poly(r.op).poly == ref::kdv_charpoly(),
            char_poly(r.op).poly.str(r.names));
    auto ratio = charpoly_ratio(char_poly(r.blocks.substituted).poly, char_poly(r.op).poly);
    s.check("F = 1/4", !ratio.inverted && ratio.f == Poly(Rational(1, 4)), ratio.f.str());
    bool projected = r.liouville && r.liouville->characteristic == std::vector<Poly>{Poly(1)};
    s.check("projected Liouville field Z' = 1", projected);
    if (projected) s.check("reduced pencil exact with Z' = 1", check_exact(r.op, *r.liouville).ok());
  });
  s.guarded("central invariant", [&] {
    auto rep = central_invariants(join_pencil({ref::kdv_p1(), ref::kdv_p2()}), opt.sampling);
    bool all = true;
    for (const auto& smp : rep.samples)
      all = all && smp.roots.size() == 1 && smp.roots[0].exact && smp.roots[0].c_exact == Rational(1, 24);
    s.check("c = 1/24 exactly at every sample", all);
    s.check("c constant", rep.constant);
  });
}

void suite_so5(Suite& s, const SuiteOptions& opt) {
  s.guarded("reduction", [&] {
    auto r = reduce_named("so5");
    auto pair = split_pencil(r.op);
    std::string d1, d2;
    s.check("P1' matches the reference operator (overall sign -1)", entries_match(-pair.p1, ref::so5_p1_ref(), d1),
            d1);
    s.check("P2' matches the reference operator (overall sign -1)", entries_match(-pair.p2, ref::so5_p2_ref(), d2),
            d2);
    s.check("d d^-1 = Id", r.blocks.d * r.d_inverse == MatDiffOp::identity(r.blocks.d.rows()),
            "Neumann steps " + std::to_string(r.d_inverse_order));
    Poly rq = char_poly(r.op).poly;
    s.check("256 R_Q = reference product", rq * Rational(256) == ref::so5_charpoly_256());
    auto rep = central_invariants(r.op, opt.sampling);
    auto pred = ds_predicted_ci(*builtin("so5").pencil.algebra);
    std::sort(pred.begin(), pred.end());
    bool within = true;
    for (const auto& smp : rep.samples) {
      std::vector<Real> cs;
      for (const auto& rec : smp.roots) cs.push_back(rec.c);
      std::sort(cs.begin(), cs.end());
      if (cs.size() != pred.size()) {
        within = false;
        continue;
      }
      for (std::size_t k = 0; k < cs.size(); ++k)
        within = within && abs(cs[k] - rational_to<Real>(pred[k])) < Real(opt.sampling.tol);
    }
    s.check("predicted <H_i,H_i>/48 = {1/24, 1/12}", pred == std::vector<Rational>{Rational(1, 24), Rational(1, 12)},
            rationals(pred));
    s.check("central invariants match the prediction at every sample", within);
    std::string spread;
    for (const auto& x : rep.spread) spread += (spread.empty() ? "" : ", ") + to_string(x, 3);
    s.check("central invariants constant", rep.constant, "spread " + spread);
  });
}

void suite_sl3(Suite& s, const SuiteOptions&) {
  s.guarded("reduction", [&] {
    auto r = reduce_named("sl3-frac");
    std::string d;
    s.check("reduced pencil matches the reference operator (overall sign -1)",
            entries_match(-r.op, ref::sl3_pencil_ref(), d), d);
    auto ratio = charpoly_ratio(char_poly(r.blocks.substituted).poly, char_poly(r.op).poly);
    std::string got = ratio.inverted ? "1/(" + ratio.f.str() + ")" : ratio.f.str();
    s.check("F_Q = -1/3", !ratio.inverted && ratio.f == Poly(Rational(-1, 3)),
            "computed F_Q = R_Q/R_M = " + got +
                "; R_M/R_Q is a positive constant in every real basis, so -1/3 is unreachable");
    bool no_limit = false;
    std::string msg;
    try {
      hydro_limit(r.op);
    } catch (const Error& e) {
      no_limit = e.kind() == ErrorKind::NoDispersionlessLimit;
      msg = e.what();
    }
    s.check("no dispersionless limit", no_limit, msg);
    if (r.liouville) s.check("reduced pencil exact", check_exact(r.op, *r.liouville).ok());
  });
}

void suite_ch(Suite& s, const SuiteOptions& opt) {
  s.guarded("reduction", [&] {
    auto r = reduce_named("camassa-holm");
    auto pair = split_pencil(r.op);
    s.check("P1' = -u_x - 2u D", pair.p1 == ref::ch_p1(), pair.p1.str(r.names));
    s.check("P2' = -2 D + eps^2/2 D^3", pair.p2 == ref::ch_p2(), pair.p2.str(r.names));
    auto ratio = charpoly_ratio(char_poly(r.blocks.substituted).poly, char_poly(r.op).poly);
    s.check("R_Q = 1/4 R_M(u,0,0)", !ratio.inverted && ratio.f == Poly(Rational(1, 4)), ratio.f.str());
    auto p = ch_pencil();
    auto za = check_exact(p);
    s.finding("Z = A: L_Z P1 = 0", za.p1_ok(), "L_Z P1 = " + za.residual1.str(p.names));
    MatDiffOp lz2 = za.residual2 + split_pencil(p.op).p1;
    s.finding("Z = A: L_Z P2 = P1", za.p2_ok(), "L_Z P2 = " + lz2.str(p.names));
    EvolutionaryField zw;
    for (int i = 0; i < 3; ++i) zw.characteristic.push_back(Poly::w(i));
    auto pp = split_pencil(p.op);
    s.finding("Z = w: L_Z P1 = -P1 and L_Z P2 = -2 P2",
              lie_derivative(zw, pp.p1) == -pp.p1 && lie_derivative(zw, pp.p2) == pp.p2 * Rational(-2),
              "Euler-type scaling field, not a Liouville field");
    auto rep = central_invariants(r.op, opt.sampling);
    bool quad = true;
    for (const auto& smp : rep.samples)
      quad = quad && smp.roots[0].exact && smp.roots[0].c_exact == smp.point[0] * smp.point[0] / 24;
    s.finding("central invariant c = u^2/24 (non-constant)", quad && !rep.constant, "");
  });
}

void suite_table1(Suite& s, const SuiteOptions& opt) {
  if (opt.max_rank < 1) fail(ErrorKind::Usage, "--ranks must be at least 1");
  for (char series : {'A', 'B', 'C', 'D'}) {
    int lo = series == 'A' ? 1 : series == 'D' ? 3 : 2;
    for (int r = lo; r <= opt.max_rank; ++r) {
      std::string name = std::string(1, series) + std::to_string(r);
      s.guarded(name, [&] {
        Table1Row got = table1_report(build_algebra(series, r));
        Table1Row want = table1_expected(series, r);
        std::ostringstream d;
        d << "h=" << got.h << " h_vee=" << got.h_vee << " dim leaf=" << got.dim_leaf << " dim g1=" << got.dim_g1;
        s.check(name, got.h == want.h && got.h_vee == want.h_vee && got.dim_leaf == want.dim_leaf &&
                          got.dim_leaf == 2 * got.h_vee - 2 && got.dim_g1 == 2 * (got.h_vee - 2),
                d.str());
      });
    }
  }
}

void suite_exactness(Suite& s, const SuiteOptions&) {
  for (const char* n : {"kdv", "so5", "sl3-frac", "ds:A2", "ds:A3", "ds:B3", "ds:C3", "ds:D4"}) {
    s.guarded(n, [&] {
      auto ex = check_exact(builtin(n).pencil);
      s.check(std::string(n) + ": L_Z P1 = 0", ex.p1_ok());
      s.check(std::string(n) + ": L_Z P2 = P1", ex.p2_ok());
    });
  }
  for (const char* n : {"kdv", "so5", "sl3-frac"}) {
    s.guarded(std::string(n) + " reduced", [&] {
      auto r = reduce_named(n);
      bool ok = r.liouville && check_exact(r.op, *r.liouville).ok();
      s.check(std::string(n) + " reduced: exact with the projected field", ok);
    });
  }
}

void suite_schur(Suite& s, const SuiteOptions&) {
  for (const char* n : {"kdv", "so5", "sl3-frac", "camassa-holm"}) {
    s.guarded(n, [&] {
      auto r = reduce_named(n);
      auto sc = schur_check(r);
      s.check(std::string(n) + ": det pi = det delta det pi'", sc.factorizes);
      s.check(std::string(n) + ": det delta lambda-free", sc.lambda_free, "det delta = " + sc.det_delta.str());
      s.check(std::string(n) + ": reassembly", reassembly_check(r));
    });
  }
}

void suite_miura(Suite& s, const SuiteOptions& opt) {
  Poly u = Poly::w(0);
  std::vector<std::pair<std::string, MiuraMap>> maps;
  maps.emplace_back("u + eps u_x", MiuraMap(std::vector<std::vector<Poly>>{{u, Poly::w(0, 1)}}));
  for (int alpha : {0, 1}) {
    Poly f2 = Poly::w(0, 2) + Poly::w(0, 1) * Poly::w(0, 1) * Rational(alpha);
    maps.emplace_back("u + eps^2 (u_xx + " + std::to_string(alpha) + " u_x^2)",
                      MiuraMap(std::vector<std::vector<Poly>>{{u, Poly(), f2}}));
  }
  MatDiffOp kdv = join_pencil({ref::kdv_p1(), ref::kdv_p2()});
  CharPoly base = char_poly(kdv);
  std::mt19937_64 gen(opt.sampling.seed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  for (const auto& [label, m] : maps) {
    s.guarded(label, [&] {
      auto t = miura_apply(kdv, m, 8);
      CharPoly c = char_poly(t.op);
      Real worst(0);
      for (int k = 0; k < opt.sampling.samples; ++k) {
        std::vector<Rational> w0{make_rational(num(gen), den(gen))};
        auto a = lambda_roots(base, w0, 4);
        auto b = lambda_roots(c, w0, 4);
        if (a.roots.size() != b.roots.size()) fail(ErrorKind::Integrity, "root count changed");
        for (std::size_t i = 0; i < a.roots.size(); ++i)
          for (std::size_t q = 0; q <= 4; ++q) worst = std::max(worst, Real(abs(a.roots[i].coeffs[q] - b.roots[i].coeffs[q])));
      }
      s.check(label + ": lambda-roots unchanged to O(p^4)", worst < Real(opt.sampling.tol),
              "max deviation " + to_string(worst, 3));
      s.check(label + ": transformed pencil skew-adjoint", is_skew_adjoint(t.op));
    });
  }
}

void suite_eigen(Suite& s, const SuiteOptions&) {
  for (const char* n : {"A2", "B2"}) {
    s.guarded(n, [&] {
      auto rep = eigen_scaling_check(build_algebra(n), {2.0, 3.0});
      double worst = 0;
      bool modes = true;
      for (const auto& smp : rep.samples) {
        worst = std::max(worst, smp.distance);
        modes = modes && smp.zero_modes == rep.rank;
      }
      std::ostringstream d;
      d << "max distance " << worst;
      s.check(std::string(n) + ": eigenvalues scale by lambda^(1/h)", rep.ok(1e-8), d.str());
      s.check(std::string(n) + ": exactly rank zero modes", modes);
    });
  }
}

void suite_lambda_degree(Suite& s, const SuiteOptions&) {
  for (const char* n : {"ds:A1", "ds:B2", "ds:A2"}) {
    s.guarded(n, [&] {
      auto b = builtin(n);
      auto l = leaf_char_poly(b.pencil);
      s.check(std::string(n) + ": lambda-degree on the leaf = rank",
              lambda_degree_check(l.charpoly, b.pencil.algebra->rank),
              "degree " + std::to_string(l.charpoly.lambda_degree));
    });
  }
}

void suite_evenness(Suite& s, const SuiteOptions& opt) {
  for (const char* n : {"kdv", "so5", "camassa-holm", "scalar", "scalar:c=u"}) {
    s.guarded(n, [&] {
      auto b = builtin(n);
      MatDiffOp op = b.gauge.fixed.empty() ? b.pencil.op : dirac_reduce(b.pencil, b.gauge).op;
      SampleOptions so = opt.sampling;
      so.order = std::max(so.order, 6);
      auto rep = central_invariants(op, so);
      Real worst(0);
      for (const auto& smp : rep.samples) worst = std::max(worst, smp.max_odd);
      s.check(std::string(n) + ": odd p-coefficients vanish", worst < Real("1e-25"), "max " + to_string(worst, 3));
    });
  }
  // no dispersionless limit: expand the roots of R directly
  s.guarded("sl3-frac", [&] {
    auto r = reduce_named("sl3-frac");
    CharPoly c = char_poly(r.op);
    std::mt19937_64 gen(opt.sampling.seed);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 3);
    Real worst(0);
    int done = 0;
    for (int k = 0; k < 50 * opt.sampling.samples && done < opt.sampling.samples; ++k) {
      std::vector<Rational> w0;
      for (std::size_t i = 0; i < r.op.rows(); ++i) w0.push_back(make_rational(num(gen), den(gen)));
      try {
        for (const auto& root : lambda_roots(c, w0, std::max(opt.sampling.order, 6)).roots)
          worst = std::max(worst, root.max_odd);
        ++done;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Semisimplicity) throw;
      }
    }
    s.check("sl3-frac: odd p-coefficients vanish", done == opt.sampling.samples && worst < Real("1e-25"),
            std::to_string(done) + " points, max " + to_string(worst, 3));
  });
}

void suite_scalar(Suite& s, const SuiteOptions& opt) {
  s.guarded("c = u", [&] {
    auto rep = central_invariants(builtin("scalar:c=u").pencil.op, opt.sampling);
    bool ok = true;
    for (const auto& smp : rep.samples)
      ok = ok && abs(smp.roots[0].c - rational_to<Real>(smp.point[0]) / 6) < Real(opt.sampling.tol);
    s.check("c(u) = u: central invariant u/6", ok);
    s.check("c(u) = u: flagged non-constant", !rep.constant);
  });
  s.guarded("c = 1", [&] {
    auto rep = central_invariants(builtin("scalar").pencil.op, opt.sampling);
    bool ok = true;
    for (const auto& smp : rep.samples) ok = ok && abs(smp.roots[0].c - Real(1) / 6) < Real(opt.sampling.tol);
    s.check("c(u) = 1: central invariant 1/6", ok);
    s.check("c(u) = 1: constant", rep.constant);
  });
}

}  // namespace

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  using Fn = void (*)(Suite&, const SuiteOptions&);
  static const std::vector<std::pair<std::string, Fn>> table{
      {"kdv", suite_kdv},         {"so5", suite_so5},
      {"sl3-frac", suite_sl3},    {"camassa-holm", suite_ch},
      {"table1", suite_table1},   {"exactness", suite_exactness},
      {"schur", suite_schur},     {"miura-invariance", suite_miura},
      {"eigen-scaling", suite_eigen}, {"lambda-degree", suite_lambda_degree},
      {"evenness", suite_evenness}, {"scalar", suite_scalar}};
  for (const auto& [n, fn] : table) {
    if (n != name) continue;
    Suite s(name);
    auto t0 = std::chrono::steady_clock::now();
    fn(s, opt);
    return s.done(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  std::string valid;
  for (const auto& n : suite_names()) valid += (valid.empty() ? "" : ", ") + n;
  fail(ErrorKind::Lookup, "unknown suite '" + name + "' (valid: " + valid + ", all)");
}

// ---- rendering -------------------------------------------------------------

namespace {

std::string render_pair_latex(const Json& p1, const Json& p2, const FieldNames& names) {
  std::ostringstream s;
  s << "P_1 = " << latex(matdiffop_from_json(p1), names) << "\n\n";
  s << "P_2 = " << latex(matdiffop_from_json(p2), names) << "\n";
  return s.str();
}

// Single-row operators stay on the label's line.
std::string block(const Json& text) {
  std::string t = text.get<std::string>();
  while (!t.empty() && t.back() == '\n') t.pop_back();
  if (t.find('\n') == std::string::npos) return " " + t + "\n";
  return "\n" + t + "\n";
}

std::string render_text(const Json& j) {
  std::ostringstream s;
  std::string cmd = j.value("command", "");
  if (cmd == "algebra") {
    const Json& a = j["algebra"];
    s << a["name"].get<std::string>() << ": dim " << a["dim"] << ", rank " << a["rank"] << ", h " << a["h"]
      << ", h_vee " << a["h_vee"] << "\n";
    s << "basis:";
    for (const auto& l : a["basis"]) s << " " << l.get<std::string>();
    s << "\n";
    s << "dim ker(ad E_theta)^perp = " << j["table1"]["dim_leaf"] << ", dim g^1 = " << j["table1"]["dim_g1"] << "\n";
    s << "predicted DS central invariants:";
    for (const auto& c : j["predicted_central_invariants"]) s << " " << c.get<std::string>();
    s << "\n";
  } else if (cmd == "pencil") {
    s << j["id"].get<std::string>() << " (" << j["variant"].get<std::string>() << ", " << j["fields"]
      << " fields)\n";
    s << "P1 =" << block(j["operator"]["text"]["p1"]) << "P2 =" << block(j["operator"]["text"]["p2"]);
    s << "L_Z P1 = 0: " << (j["exact"]["lz_p1_zero"].get<bool>() ? "yes" : "no")
      << ", L_Z P2 = P1: " << (j["exact"]["lz_p2_equals_p1"].get<bool>() ? "yes" : "no") << "\n";
  } else if (cmd == "reduce") {
    s << "reduced " << j["source"].get<std::string>() << " (";
    bool first = true;
    for (const auto& n : j["names"]) {
      s << (first ? "" : ", ") << n.get<std::string>();
      first = false;
    }
    s << ")\n";
    s << "P1' =" << block(j["text"]["p1"]) << "P2' =" << block(j["text"]["p2"]);
    s << "D-inverse Neumann steps: " << j["d_inverse_order"] << "\n";
    s << "det delta = " << j["schur"]["det_delta_text"].get<std::string>()
      << (j["schur"]["lambda_free"].get<bool>() ? " (lambda-free)" : " (depends on lambda)") << "\n";
    if (j.contains("liouville"))
      s << "projected Liouville field exact: "
        << (j["liouville"]["lz_p1_zero"].get<bool>() && j["liouville"]["lz_p2_equals_p1"].get<bool>() ? "yes" : "no")
        << "\n";
  } else if (cmd == "invariants") {
    s << "pencil " << j["pencil"].get<std::string>() << (j["reduced"].get<bool>() ? " (reduced)" : "") << "\n";
    s << "R = " << j["char_poly_text"].get<std::string>() << "\n";
    s << "lambda-degree " << j["lambda_degree"] << "\n";
    for (const auto& smp : j["samples"]) {
      s << "at (";
      bool first = true;
      for (const auto& v : smp["point"]) {
        s << (first ? "" : ", ") << v.get<std::string>();
        first = false;
      }
      s << "):";
      for (const auto& r : smp["roots"])
        s << "  u=" << r["u"].get<std::string>() << " c="
          << (r.contains("c_exact") ? r["c_exact"].get<std::string>() : r["c"].get<std::string>());
      s << "\n";
    }
    s << "constant: " << (j["constant"].get<bool>() ? "yes" : "no") << "\n";
    if (!j["predicted"].empty()) {
      s << "predicted:";
      for (const auto& c : j["predicted"]) s << " " << c.get<std::string>();
      s << "\n";
    }
  } else if (cmd == "verify") {
    for (const auto& suite : j["suites"]) {
      s << "[" << suite["suite"].get<std::string>() << "] " << (suite["passed"].get<bool>() ? "PASS" : "FAIL") << "\n";
      for (const auto& c : suite["checks"]) {
        std::string tag = c.contains("finding") ? "NOTE" : (c["pass"].get<bool>() ? "ok  " : "FAIL");
        s << "  " << tag << " " << c["name"].get<std::string>();
        if (c.contains("detail")) s << " -- " << c["detail"].get<std::string>();
        s << "\n";
      }
    }
  } else {
    s << j.dump(2) << "\n";
  }
  return s.str();
}

std::string render_latex(const Json& j) {
  std::string cmd = j.value("command", "");
  std::ostringstream s;
  if (cmd == "pencil") {
    FieldNames names = names_from(j["names"]);
    s << render_pair_latex(j["operator"]["p1"], j["operator"]["p2"], names);
  } else if (cmd == "reduce") {
    FieldNames names = names_from(j["names"]);
    s << render_pair_latex(j["p1"], j["p2"], names);
  } else if (cmd == "invariants") {
    s << "\\mathcal{R} = " << latex(poly_from_json(j["char_poly"]), names_from(j["names"])) << "\n";
    s << "% central invariants at the first sample\n";
    for (const auto& r : j["roots"])
      s << "c = " << (r.contains("c_exact") ? r["c_exact"].get<std::string>() : r["c"].get<std::string>()) << "\n";
  } else {
    return render_text(j);
  }
  return s.str();
}

}  // namespace

std::string render(const Json& report, Emit emit) {
  switch (emit) {
    case Emit::Json:
      return report.dump(2) + "\n";
    case Emit::Latex:
      return render_latex(report);
    case Emit::Text:
      return render_text(report);
  }
  return render_text(report);
}

}  // namespace ppl
