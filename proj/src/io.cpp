#include "ppl/io.hpp"

#include <fstream>
#include <sstream>

#include "ppl/error.hpp"
#include "ppl/parse.hpp"

namespace ppl {

namespace {

[[noreturn]] void bad(const std::string& pointer, const std::string& what) {
  fail(ErrorKind::Parse, (pointer.empty() ? std::string("/") : pointer) + ": " + what);
}

const Json& member(const Json& j, const std::string& key, const std::string& pointer) {
  if (!j.is_object()) bad(pointer, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(pointer, "missing key \"" + key + "\"");
  return *it;
}

int as_int(const Json& j, const std::string& pointer) {
  if (!j.is_number_integer()) bad(pointer, "expected an integer");
  return j.get<int>();
}

Rational as_rational(const Json& j, const std::string& pointer) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) bad(pointer, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    bad(pointer, e.what());
  }
}

RVec as_vector(const Json& j, const std::string& pointer) {
  if (!j.is_array()) bad(pointer, "expected an array of rationals");
  RVec v;
  for (std::size_t k = 0; k < j.size(); ++k) v.push_back(as_rational(j[k], pointer + "/" + std::to_string(k)));
  return v;
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& pointer) {
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) bad(pointer + "/" + k, "unknown key");
  }
}

Poly poly_from_any(const Json& j, const FieldNames& names, const std::string& pointer) {
  if (j.is_string()) {
    try {
      return parse_poly(j.get<std::string>(), names);
    } catch (const Error& e) {
      bad(pointer, e.what());
    }
  }
  return poly_from_json(j, pointer);
}

}  // namespace

Json to_json(const Poly& f) {
  Json out = Json::array();
  for (const auto& [m, c] : f.terms()) {
    Json mono = Json::object();
    Json w = Json::array();
    int e = 0, lam = 0, p = 0;
    for (const auto& [v, x] : m.factors()) {
      if (is_jet(v))
        w.push_back({jet_field(v) + 1, jet_order(v), x});
      else if (v == kEps)
        e = x;
      else if (v == kLambda)
        lam = x;
      else if (v == kP)
        p = x;
    }
    if (!w.empty()) mono["w"] = w;
    if (e != 0) mono["eps"] = e;
    if (lam != 0) mono["lam"] = lam;
    if (p != 0) mono["p"] = p;
    out.push_back({mono, to_string(c)});
  }
  return out;
}

Poly poly_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_array()) bad(pointer, "expected a polynomial term array");
  Poly out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    std::string here = pointer + "/" + std::to_string(k);
    const Json& t = j[k];
    if (!t.is_array() || t.size() != 2) bad(here, "expected [monomial, \"p/q\"]");
    const Json& mono = t[0];
    if (!mono.is_object()) bad(here + "/0", "expected a monomial object");
    check_keys(mono, {"w", "eps", "lam", "p"}, here + "/0");
    Poly term(as_rational(t[1], here + "/1"));
    if (mono.contains("w")) {
      const Json& w = mono["w"];
      std::string wp = here + "/0/w";
      if (!w.is_array()) bad(wp, "expected [[i, s, exp], ...]");
      for (std::size_t q = 0; q < w.size(); ++q) {
        std::string fp = wp + "/" + std::to_string(q);
        if (!w[q].is_array() || w[q].size() != 3) bad(fp, "expected [i, s, exp]");
        int i = as_int(w[q][0], fp + "/0");
        int s = as_int(w[q][1], fp + "/1");
        int x = as_int(w[q][2], fp + "/2");
        if (i < 1) bad(fp + "/0", "field indices are 1-based");
        if (s < 0 || s > kMaxJetOrder) bad(fp + "/1", "derivative order out of range");
        if (x < 1) bad(fp + "/2", "jet exponents must be positive");
        term *= Poly::var(jet(i - 1, s), x);
      }
    }
    if (mono.contains("eps")) term *= Poly::eps(as_int(mono["eps"], here + "/0/eps"));
    auto nonneg = [&](const char* key, VarCode v) {
      if (!mono.contains(key)) return;
      int x = as_int(mono[key], here + "/0/" + key);
      if (x < 0) bad(here + "/0/" + key, "negative exponent");
      if (x > 0) term *= Poly::var(v, x);
    };
    nonneg("lam", kLambda);
    nonneg("p", kP);
    out += term;
  }
  return out;
}

Json to_json(const DiffOp& op) {
  Json out = Json::array();
  for (const auto& [m, c] : op.coeffs()) out.push_back({{"m", m}, {"coeff", to_json(c)}});
  return out;
}

Json to_json(const MatDiffOp& op) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < op.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < op.cols(); ++j) row.push_back(to_json(op.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

DiffOp diffop_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_array()) bad(pointer, "expected an array of {\"m\", \"coeff\"} terms");
  DiffOp out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    std::string here = pointer + "/" + std::to_string(k);
    check_keys(j[k], {"m", "coeff"}, here);
    int m = as_int(member(j[k], "m", here), here + "/m");
    if (m < 0) bad(here + "/m", "negative derivative order");
    out.add(m, poly_from_json(member(j[k], "coeff", here), here + "/coeff"));
  }
  return out;
}

MatDiffOp matdiffop_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_array() || j.empty()) bad(pointer, "expected a non-empty array of rows");
  std::size_t n = j.size();
  std::size_t m = j[0].is_array() ? j[0].size() : 0;
  MatDiffOp out(n, m);
  for (std::size_t r = 0; r < n; ++r) {
    std::string rp = pointer + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != m) bad(rp, "rows must be arrays of equal length");
    for (std::size_t c = 0; c < m; ++c) out.at(r, c) = diffop_from_json(j[r][c], rp + "/" + std::to_string(c));
  }
  return out;
}

Json to_json(const LieAlg& alg) {
  Json j;
  j["name"] = alg.name;
  j["dim"] = alg.dim;
  j["rank"] = alg.rank;
  j["h"] = alg.h;
  j["h_vee"] = alg.h_vee;
  j["basis"] = alg.basis_labels;
  Json c = Json::array();
  for (int a = 0; a < alg.dim; ++a)
    for (int b = 0; b < alg.dim; ++b)
      for (const auto& [l, v] : alg.structure(a, b)) c.push_back({a + 1, b + 1, l + 1, to_string(v)});
  j["c"] = c;
  Json g = Json::array();
  for (int a = 0; a < alg.dim; ++a) {
    Json row = Json::array();
    for (int b = 0; b < alg.dim; ++b) row.push_back(to_string(alg.form.at(a, b)));
    g.push_back(row);
  }
  j["g"] = g;
  auto one_based = [](const std::vector<int>& v) {
    std::vector<int> out;
    for (int x : v) out.push_back(x + 1);
    return out;
  };
  j["chevalley"] = {{"X", one_based(alg.X)}, {"Y", one_based(alg.Y)}, {"H", one_based(alg.H)}};
  j["principal_degree"] = alg.principal_degree;
  j["theta_degree"] = alg.theta_degree;
  return j;
}

Json to_json(const GaugeSpec& q) {
  Json j;
  std::vector<int> retained;
  for (int i : q.retained) retained.push_back(i + 1);
  j["retained"] = retained;
  Json fixed = Json::object();
  for (const auto& [i, v] : q.fixed) fixed[std::to_string(i + 1)] = to_string(v);
  j["fixed"] = fixed;
  if (!q.retained_names.empty()) j["names"] = q.retained_names;
  return j;
}

GaugeSpec gauge_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_object()) bad(pointer, "expected a gauge object");
  check_keys(j, {"retained", "fixed", "names"}, pointer);
  GaugeSpec q;
  const Json& r = member(j, "retained", pointer);
  if (!r.is_array()) bad(pointer + "/retained", "expected an array of 1-based field indices");
  for (std::size_t k = 0; k < r.size(); ++k) {
    int i = as_int(r[k], pointer + "/retained/" + std::to_string(k));
    if (i < 1) bad(pointer + "/retained/" + std::to_string(k), "field indices are 1-based");
    q.retained.push_back(i - 1);
  }
  if (j.contains("fixed")) {
    const Json& f = j["fixed"];
    if (!f.is_object()) bad(pointer + "/fixed", "expected {\"<index>\": \"p/q\", ...}");
    for (const auto& [k, v] : f.items()) {
      std::string here = pointer + "/fixed/" + k;
      int i = 0;
      try {
        std::size_t used = 0;
        i = std::stoi(k, &used);
        if (used != k.size()) throw std::invalid_argument(k);
      } catch (const std::exception&) {
        bad(here, "keys must be 1-based field indices");
      }
      if (i < 1) bad(here, "field indices are 1-based");
      q.fixed[i - 1] = as_rational(v, here);
    }
  }
  if (j.contains("names")) {
    const Json& n = j["names"];
    if (!n.is_array()) bad(pointer + "/names", "expected an array of strings");
    for (std::size_t k = 0; k < n.size(); ++k) {
      if (!n[k].is_string()) bad(pointer + "/names/" + std::to_string(k), "expected a string");
      q.retained_names.push_back(n[k].get<std::string>());
    }
  }
  return q;
}

// ---- LaTeX ---------------------------------------------------------------

namespace {

std::string latex_rational_abs(const Rational& q) {
  Rational a = abs(q);
  if (is_integer(a)) return a.get_num().get_str();
  return "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
}

std::string latex_field(const FieldNames& names, int field, int order) {
  std::string base = names.name(field);
  auto us = base.find_first_of("0123456789");
  std::string sym = base;
  std::string idx;
  if (us != std::string::npos && us > 0) {
    sym = base.substr(0, us);
    idx = base.substr(us);
  }
  std::string out = sym;
  std::string sub = idx;
  if (order > 0) sub += (sub.empty() ? "" : ",") + std::string(static_cast<std::size_t>(order), 'x');
  if (!sub.empty()) out += "_{" + sub + "}";
  return out;
}

std::string latex_monomial(const Monomial& m, const FieldNames& names) {
  std::string out;
  auto power = [](const std::string& base, int e) {
    return e == 1 ? base : base + "^{" + std::to_string(e) + "}";
  };
  for (const auto& [v, e] : m.factors()) {
    if (v == kEps) {
      out = power("\\epsilon", e) + (out.empty() ? "" : " ") + out;
    } else if (v == kLambda) {
      out += (out.empty() ? "" : " ") + power("\\lambda", e);
    } else if (v == kP) {
      out += (out.empty() ? "" : " ") + power("p", e);
    } else if (is_jet(v)) {
      std::string f = latex_field(names, jet_field(v), jet_order(v));
      if (e != 1) f = "(" + f + ")^{" + std::to_string(e) + "}";
      out += (out.empty() ? "" : " ") + f;
    }
  }
  return out;
}

}  // namespace

std::string latex(const Poly& f, const FieldNames& names) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    std::string mono = latex_monomial(m, names);
    bool neg = c < 0;
    std::string coef = latex_rational_abs(c);
    if (!first) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    if (mono.empty())
      out += coef;
    else
      out += (coef == "1" ? "" : coef + " ") + mono;
    first = false;
  }
  return out;
}

std::string latex(const DiffOp& op, const FieldNames& names) {
  if (op.is_zero()) return "0";
  std::string out;
  bool first = true;
  // highest derivative first
  for (auto it = op.coeffs().rbegin(); it != op.coeffs().rend(); ++it) {
    int m = it->first;
    std::string d = m == 0 ? "" : (m == 1 ? "\\partial_x" : "\\partial_x^{" + std::to_string(m) + "}");
    std::string c = latex(it->second, names);
    bool single = it->second.size() == 1;
    std::string piece;
    if (d.empty()) {
      piece = c;
    } else if (single) {
      const auto& [mono, q] = *it->second.terms().begin();
      std::string ms = latex_monomial(mono, names);
      std::string coef = latex_rational_abs(q);
      piece = (q < 0 ? "-" : "") + (coef == "1" ? "" : coef + " ") + (ms.empty() ? "" : ms + " ") + d;
    } else {
      piece = "\\left(" + c + "\\right)" + d;
    }
    if (first)
      out = piece;
    else if (piece[0] == '-')
      out += " - " + piece.substr(1);
    else
      out += " + " + piece;
    first = false;
  }
  return out;
}

std::string latex(const MatDiffOp& op, const FieldNames& names) {
  std::ostringstream s;
  s << "\\begin{pmatrix}\n";
  for (std::size_t i = 0; i < op.rows(); ++i) {
    for (std::size_t j = 0; j < op.cols(); ++j) s << (j ? " & " : "") << latex(op.at(i, j), names);
    s << (i + 1 < op.rows() ? " \\\\\n" : "\n");
  }
  s << "\\end{pmatrix}";
  return s.str();
}

// ---- pencil files ----------------------------------------------------------

namespace {

std::shared_ptr<const LieAlg> algebra_from_json(const Json& j, const std::string& pointer) {
  if (j.is_string()) {
    try {
      return std::make_shared<const LieAlg>(build_algebra(j.get<std::string>()));
    } catch (const Error& e) {
      bad(pointer, e.what());
    }
  }
  if (!j.is_object()) bad(pointer, "expected an algebra descriptor or LieAlg object");
  std::string name = member(j, "name", pointer).is_string() ? j["name"].get<std::string>() : "";
  if (name.empty()) bad(pointer + "/name", "expected a descriptor such as \"B2\"");
  std::shared_ptr<const LieAlg> alg;
  try {
    alg = std::make_shared<const LieAlg>(build_algebra(name));
  } catch (const Error& e) {
    bad(pointer + "/name", e.what());
  }
  // A full object must agree with the constructed algebra.
  Json mine = to_json(*alg);
  for (const char* key : {"dim", "rank", "h", "h_vee", "basis", "c", "g", "chevalley"})
    if (j.contains(key) && j[key] != mine[key])
      bad(pointer + "/" + key, "does not match the constructed algebra " + name);
  return alg;
}

std::vector<std::string> string_list(const Json& j, const std::string& pointer) {
  if (!j.is_array()) bad(pointer, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_string()) bad(pointer + "/" + std::to_string(k), "expected a string");
    out.push_back(j[k].get<std::string>());
  }
  return out;
}

MatDiffOp operator_from_json(const Json& j, const FieldNames& names, const std::string& pointer) {
  // Either structured JSON or rows of strings in the parse_op syntax.
  if (j.is_array() && !j.empty() && j[0].is_array() && !j[0].empty() && j[0][0].is_string()) {
    MatDiffOp m(j.size(), j[0].size());
    for (std::size_t r = 0; r < j.size(); ++r) {
      std::string rp = pointer + "/" + std::to_string(r);
      if (!j[r].is_array() || j[r].size() != m.cols()) bad(rp, "rows must be arrays of equal length");
      for (std::size_t c = 0; c < m.cols(); ++c) {
        std::string cp = rp + "/" + std::to_string(c);
        if (!j[r][c].is_string()) bad(cp, "expected an operator string");
        try {
          m.at(r, c) = parse_op(j[r][c].get<std::string>(), names);
        } catch (const Error& e) {
          bad(cp, e.what());
        }
      }
    }
    return m;
  }
  return matdiffop_from_json(j, pointer);
}

}  // namespace

BuiltinPencil load_pencil_json(const Json& j) {
  if (!j.is_object()) bad("", "expected a pencil object");
  check_keys(j, {"id", "algebra", "variant", "A", "I", "frame", "names", "operator", "liouville", "c", "gauge"}, "");
  BuiltinPencil out;
  Variant variant = Variant::DS;
  if (j.contains("variant")) {
    if (!j["variant"].is_string()) bad("/variant", "expected a string");
    try {
      variant = parse_variant(j["variant"].get<std::string>());
    } catch (const Error& e) {
      bad("/variant", e.what());
    }
  } else if (j.contains("operator")) {
    variant = Variant::Custom;
  }
  FieldNames names;
  if (j.contains("names")) names.names = string_list(j["names"], "/names");
  PencilInstance& p = out.pencil;

  if (variant == Variant::DS || variant == Variant::SwappedCH) {
    auto alg = algebra_from_json(member(j, "algebra", ""), "/algebra");
    RVec a = as_vector(member(j, "A", ""), "/A");
    if (static_cast<int>(a.size()) != alg->dim)
      bad("/A", "expected " + std::to_string(alg->dim) + " coordinates");
    std::vector<RVec> frame;
    if (j.contains("frame")) {
      const Json& f = j["frame"];
      if (!f.is_array()) bad("/frame", "expected an array of coordinate vectors");
      for (std::size_t k = 0; k < f.size(); ++k) {
        frame.push_back(as_vector(f[k], "/frame/" + std::to_string(k)));
        if (static_cast<int>(frame.back().size()) != alg->dim)
          bad("/frame/" + std::to_string(k), "expected " + std::to_string(alg->dim) + " coordinates");
      }
    }
    try {
      p = variant == Variant::DS ? ds_pencil(alg, a, frame, names) : swapped_pencil(alg, a, frame, names);
    } catch (const Error& e) {
      bad(j.contains("frame") ? "/frame" : "/A", e.what());
    }
    if (j.contains("I")) {
      p.i_vector = as_vector(j["I"], "/I");
      if (static_cast<int>(p.i_vector.size()) != alg->dim)
        bad("/I", "expected " + std::to_string(alg->dim) + " coordinates");
    }
  } else if (variant == Variant::Scalar) {
    Poly c(1);
    if (j.contains("c")) c = poly_from_any(j["c"], FieldNames{{"u"}}, "/c");
    try {
      p = scalar_deformation_pencil(c);
    } catch (const Error& e) {
      bad("/c", e.what());
    }
  } else {
    p.variant = Variant::Custom;
    p.names = names;
    p.op = operator_from_json(member(j, "operator", ""), names, "/operator");
    if (!p.op.square()) bad("/operator", "operator matrix is not square");
  }
  if (j.contains("liouville")) {
    const Json& z = j["liouville"];
    if (!z.is_array() || z.size() != p.fields())
      bad("/liouville", "expected " + std::to_string(p.fields()) + " components");
    p.liouville.characteristic.clear();
    for (std::size_t k = 0; k < z.size(); ++k)
      p.liouville.characteristic.push_back(poly_from_any(z[k], p.names, "/liouville/" + std::to_string(k)));
  }
  if (j.contains("id")) {
    if (!j["id"].is_string()) bad("/id", "expected a string");
    p.id = j["id"].get<std::string>();
  } else if (p.id.empty()) {
    p.id = std::string(to_string(p.variant));
  }

  validate_pencil(p.op);

  if (j.contains("gauge")) {
    out.gauge = gauge_from_json(j["gauge"], "/gauge");
  } else {
    for (std::size_t i = 0; i < p.fields(); ++i) out.gauge.retained.push_back(static_cast<int>(i));
  }
  try {
    out.gauge.validate(p.fields());
  } catch (const Error& e) {
    bad("/gauge", e.what());
  }
  return out;
}

namespace {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Lookup, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Parse, path + ": " + e.what());
  }
}

}  // namespace

BuiltinPencil load_pencil_file(const std::string& path) {
  try {
    return load_pencil_json(read_json_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse && std::string(e.what()).rfind(path, 0) != 0)
      fail(ErrorKind::Parse, path + "#" + e.what());
    throw;
  }
}

GaugeSpec load_gauge_file(const std::string& path) {
  try {
    return gauge_from_json(read_json_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse && std::string(e.what()).rfind(path, 0) != 0)
      fail(ErrorKind::Parse, path + "#" + e.what());
    throw;
  }
}

BuiltinPencil resolve_pencil(const std::string& target) {
  bool looks_like_file = target.find('/') != std::string::npos || (target.size() > 5 && target.substr(target.size() - 5) == ".json");
  if (looks_like_file) return load_pencil_file(target);
  return builtin(target);
}

}  // namespace ppl
