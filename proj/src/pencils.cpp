#include "ppl/pencils.hpp"

#include <algorithm>

#include "ppl/error.hpp"
#include "ppl/parse.hpp"

namespace ppl {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::DS:
      return "ds";
    case Variant::SwappedCH:
      return "swapped-ch";
    case Variant::Custom:
      return "custom";
    case Variant::Scalar:
      return "scalar";
  }
  return "custom";
}

Variant parse_variant(std::string_view s) {
  if (s == "ds") return Variant::DS;
  if (s == "swapped-ch") return Variant::SwappedCH;
  if (s == "custom") return Variant::Custom;
  if (s == "scalar") return Variant::Scalar;
  fail(ErrorKind::Validation, "unknown variant '" + std::string(s) + "' (expected ds, swapped-ch, custom or scalar)");
}

void GaugeSpec::validate(std::size_t fields) const {
  std::vector<int> seen(fields, 0);
  auto mark = [&](int i) {
    if (i < 0 || static_cast<std::size_t>(i) >= fields)
      fail(ErrorKind::Validation, "gauge refers to field " + std::to_string(i + 1) + " but the pencil has " +
                                      std::to_string(fields) + " fields");
    if (seen[i]++) fail(ErrorKind::Validation, "gauge lists field " + std::to_string(i + 1) + " twice");
  };
  for (int i : retained) mark(i);
  for (const auto& [i, v] : fixed) mark(i);
  for (std::size_t i = 0; i < fields; ++i)
    if (!seen[i]) fail(ErrorKind::Validation, "gauge leaves field " + std::to_string(i + 1) + " unassigned");
  if (!retained_names.empty() && retained_names.size() != retained.size())
    fail(ErrorKind::Validation, "gauge names do not match the retained fields");
}

FieldNames GaugeSpec::reduced_names(const FieldNames& full) const {
  if (!retained_names.empty()) return FieldNames{retained_names};
  FieldNames out;
  for (int i : retained) out.names.push_back(full.name(i));
  return out;
}

RVec field_coordinates(const PencilInstance& p, const RVec& element) {
  if (p.frame.empty()) return element;
  auto inv = inverse(RMatrix::from_columns(p.frame, element.size()));
  if (!inv) fail(ErrorKind::Validation, "frame vectors are linearly dependent");
  return *inv * element;
}

namespace {

PencilInstance loop_pencil(std::shared_ptr<const LieAlg> alg, const RVec& a, std::vector<RVec> frame,
                           FieldNames names, bool swapped) {
  if (!alg) fail(ErrorKind::Precondition, "loop pencil needs an algebra");
  if (static_cast<int>(a.size()) != alg->dim) fail(ErrorKind::Validation, "A has the wrong number of coordinates");
  if (is_zero(a)) fail(ErrorKind::Precondition, "the distinguished element A must be nonzero");
  if (frame.empty())
    for (int i = 0; i < alg->dim; ++i) frame.push_back(alg->unit(i));
  if (static_cast<int>(frame.size()) != alg->dim) fail(ErrorKind::Validation, "frame must have dim vectors");

  PencilInstance p;
  p.variant = swapped ? Variant::SwappedCH : Variant::DS;
  p.algebra = alg;
  p.frame = frame;
  p.a_vector = a;
  p.names = std::move(names);

  int n = alg->dim;
  std::vector<RVec> e = dual_basis(*alg, frame);
  BasisData bd = rebase(*alg, e);
  RVec a_coords = field_coordinates(p, a);

  Poly eps_inv = Poly::eps(-1);
  Poly lam = Poly::lambda();
  p.op = MatDiffOp(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Poly c;
      for (const auto& [l, v] : bd.structure(i, j)) {
        Poly wl = Poly::w(l);
        Poly al(a_coords[l]);
        c += (swapped ? al - lam * wl : wl - lam * al) * v;
      }
      DiffOp entry(-(eps_inv * c));
      if (bd.gram.at(i, j) != 0) entry.add(1, Poly(-bd.gram.at(i, j)));
      p.op.at(i, j) = entry;
    }
  for (int l = 0; l < n; ++l) p.liouville.characteristic.push_back(Poly(a_coords[l]));
  return p;
}

std::shared_ptr<const LieAlg> shared_algebra(const char* descriptor) {
  return std::make_shared<const LieAlg>(build_algebra(descriptor));
}

RVec label_vec(const LieAlg& alg, const char* label) {
  int i = alg.index_of(label);
  if (i < 0) fail(ErrorKind::Integrity, std::string("missing basis element ") + label);
  return alg.unit(i);
}

RMatrix elementary(int d, std::initializer_list<std::tuple<int, int, int>> entries) {
  RMatrix m(d, d);
  for (auto [i, j, v] : entries) m.at(i - 1, j - 1) += v;
  return m;
}

// (X, H/2, Y): the dual coordinates are those of the sl2 examples.
std::vector<RVec> sl2_frame(const LieAlg& a) {
  return {label_vec(a, "X"), scale(label_vec(a, "H"), Rational(1, 2)), label_vec(a, "Y")};
}

}  // namespace

PencilInstance ds_pencil(std::shared_ptr<const LieAlg> alg, const RVec& a, std::vector<RVec> frame, FieldNames names) {
  return loop_pencil(std::move(alg), a, std::move(frame), std::move(names), false);
}

PencilInstance swapped_pencil(std::shared_ptr<const LieAlg> alg, const RVec& a, std::vector<RVec> frame,
                              FieldNames names) {
  return loop_pencil(std::move(alg), a, std::move(frame), std::move(names), true);
}

PencilInstance ds_standard_pencil(std::shared_ptr<const LieAlg> alg) {
  if (!alg) fail(ErrorKind::Precondition, "loop pencil needs an algebra");
  PencilInstance p = ds_pencil(alg, highest_root_data(*alg).e_theta);
  RVec i(alg->dim);
  for (int y : alg->Y) i = add(i, alg->unit(y));
  p.i_vector = i;
  p.id = "ds:" + alg->name;
  return p;
}

PencilInstance ch_pencil() {
  auto alg = shared_algebra("A1");
  RVec a = add(label_vec(*alg, "X"), label_vec(*alg, "Y"));
  PencilInstance p = swapped_pencil(alg, a, sl2_frame(*alg));
  p.id = "camassa-holm";
  return p;
}

PencilInstance gds_sl3_pencil() {
  auto alg = shared_algebra("A2");
  const LieAlg& g = *alg;
  auto m = [&](std::initializer_list<std::tuple<int, int, int>> e) { return g.coords(elementary(3, e)); };
  std::vector<RVec> frame{
      m({{2, 2, 1}, {3, 3, -1}}),  // u0
      m({{1, 2, 1}}),              // u1
      m({{2, 3, 1}}),              // u2
      m({{1, 3, 1}}),              // u3
      m({{1, 1, 1}, {2, 2, -1}}),  // p0
      m({{2, 1, 1}, {3, 2, -1}}),  // p1
      m({{3, 1, 1}}),              // leaf base point direction
      m({{2, 1, 1}, {3, 2, 1}}),   // isotropy direction
  };
  RVec a = m({{1, 2, 1}, {2, 3, 1}});
  PencilInstance p = ds_pencil(alg, a, frame, FieldNames{{"u0", "u1", "u2", "u3", "p0", "p1", "c7", "c8"}});
  p.i_vector = m({{3, 1, 1}});
  p.id = "sl3-frac";
  return p;
}

PencilInstance scalar_deformation_pencil(const Poly& c) {
  for (const auto& [mono, v] : c.terms())
    for (const auto& [var, e] : mono.factors())
      if (var != jet(0, 0))
        fail(ErrorKind::Precondition, "the scalar deformation needs c = c(u) without derivatives, eps or lambda");
  Poly u = Poly::w(0);
  Poly cx = total_x_derivative(c);
  Poly cxx = total_x_derivative(cx);
  Poly e2 = Poly::eps(2);
  DiffOp op = DiffOp::term(1, (u - Poly::lambda()) * Rational(2)) + DiffOp(Poly::w(0, 1)) +
              DiffOp::term(3, e2 * c * Rational(2)) + DiffOp::term(2, e2 * cx * Rational(3)) +
              DiffOp::term(1, e2 * cxx);
  PencilInstance p;
  p.id = "scalar";
  p.variant = Variant::Scalar;
  p.op = MatDiffOp(1, 1);
  p.op.at(0, 0) = op;
  p.liouville.characteristic = {Poly(1)};
  p.names = FieldNames{{"u"}};
  return p;
}

ExactnessReport check_exact(const MatDiffOp& pencil, const EvolutionaryField& z) {
  PoissonPair pair = split_pencil(pencil);
  ExactnessReport r;
  r.residual1 = lie_derivative(z, pair.p1);
  r.residual2 = lie_derivative(z, pair.p2) - pair.p1;
  return r;
}

void validate_pencil(const MatDiffOp& op) {
  if (!op.square()) fail(ErrorKind::Validation, "operator matrix is not square");
  if (auto bad = skew_adjointness_violation(op))
    fail(ErrorKind::Validation, "operator is not skew-adjoint at entries " + *bad);
  GradingVerdict g = grading_check(op, -1);
  if (!g.ok) fail(ErrorKind::Grading, "operator violates the eps-grading: " + g.witness);
  if (lambda_degree(op) > 1) fail(ErrorKind::Validation, "operator is not linear in lambda");
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"kdv", "so5", "sl3-frac", "camassa-holm", "scalar"};
  return names;
}

BuiltinPencil builtin(const std::string& name) {
  BuiltinPencil b;
  if (name == "kdv") {
    auto alg = shared_algebra("A1");
    b.pencil = ds_pencil(alg, label_vec(*alg, "X"), sl2_frame(*alg));
    b.pencil.i_vector = label_vec(*alg, "Y");
    b.pencil.id = "kdv";
    b.gauge.retained = {0};
    b.gauge.fixed = {{1, 0}, {2, 1}};
    b.gauge.retained_names = {"u"};
  } else if (name == "so5") {
    auto alg = shared_algebra("B2");
    const LieAlg& g = *alg;
    auto v = [&](const char* l) { return label_vec(g, l); };
    std::vector<RVec> frame{v("X4"), v("X2"), v("X3"), add(v("H1"), v("H2")), v("Y1"),
                            v("Y2"), v("Y3"), v("Y4"), v("X1"), v("H1")};
    b.pencil = ds_pencil(alg, v("X4"), frame);
    b.pencil.i_vector = add(v("Y1"), v("Y2"));
    b.pencil.id = "so5";
    b.gauge.retained = {0, 1};
    b.gauge.fixed = {{2, 0}, {3, 0}, {4, 1}, {5, 1}, {6, 0}, {7, 0}, {8, 0}, {9, 0}};
  } else if (name == "sl3-frac") {
    b.pencil = gds_sl3_pencil();
    b.gauge.retained = {0, 1, 2, 3};
    b.gauge.fixed = {{4, 0}, {5, 0}, {6, 1}, {7, 0}};
  } else if (name == "camassa-holm") {
    b.pencil = ch_pencil();
    b.gauge.retained = {0};
    b.gauge.fixed = {{1, 0}, {2, 0}};
    b.gauge.retained_names = {"u"};
  } else if (name == "scalar" || name.rfind("scalar:", 0) == 0) {
    Poly c(1);
    if (name.size() > 7) {
      std::string spec = name.substr(7);
      if (spec.rfind("c=", 0) != 0) fail(ErrorKind::Usage, "scalar pencil expects scalar:c=<expression in u>");
      c = parse_poly(spec.substr(2), FieldNames{{"u"}});
    }
    b.pencil = scalar_deformation_pencil(c);
    b.pencil.id = name;
    b.gauge.retained = {0};
    b.gauge.retained_names = {"u"};
  } else if (name.rfind("ds:", 0) == 0) {
    b.pencil = ds_standard_pencil(shared_algebra(name.substr(3).c_str()));
    for (std::size_t i = 0; i < b.pencil.fields(); ++i) b.gauge.retained.push_back(static_cast<int>(i));
  } else {
    std::string valid;
    for (const auto& n : builtin_names()) valid += (valid.empty() ? "" : ", ") + n;
    fail(ErrorKind::Lookup, "unknown builtin pencil '" + name + "' (valid: " + valid + ", scalar:c=<expr>, ds:<algebra>)");
  }
  return b;
}

}  // namespace ppl
