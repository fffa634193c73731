#include "doctest.h"
#include "ppl/error.hpp"
#include "ppl/io.hpp"
#include "ppl/parse.hpp"
#include "ppl/reduction.hpp"
#include "ppl/reference.hpp"
#include "ppl/report.hpp"

using namespace ppl;

namespace {

std::string parse_error(const Json& j) {
  try {
    load_pencil_json(j);
  } catch (const Error& e) {
    return std::string(to_string(e.kind())) + ": " + e.what();
  }
  return "no error";
}

}  // namespace

TEST_CASE("poly and operator JSON round trip") {
  Poly f = parse_poly("3/7*w1_xx^2*eps^-1*lam + p^4 - w2", {});
  Json j = to_json(f);
  CHECK(j.dump() == to_json(poly_from_json(j)).dump());
  CHECK(poly_from_json(j) == f);
  // field indices are 1-based
  CHECK(to_json(Poly::w(0)).dump() == R"([[{"w":[[1,0,1]]},"1"]])");

  auto so5 = builtin("so5");
  auto r = dirac_reduce(so5.pencil, so5.gauge);
  CHECK(matdiffop_from_json(to_json(r.op)) == r.op);
}

TEST_CASE("malformed JSON reports a pointer") {
  CHECK_THROWS_WITH_AS(poly_from_json(Json::parse(R"([[{"w":[[0,0,1]]},"1"]])"), "/x"),
                       doctest::Contains("/x/0/0/w/0"), Error);
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"([[{"q":1},"1"]])")), Error);
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"([[{},"1/0"]])")), Error);
}

TEST_CASE("gauge JSON") {
  auto b = builtin("kdv");
  Json j = to_json(b.gauge);
  CHECK(j["retained"] == Json::array({1}));
  GaugeSpec q = gauge_from_json(j);
  CHECK(q.retained == b.gauge.retained);
  CHECK(q.fixed == b.gauge.fixed);
  CHECK_THROWS_WITH_AS(gauge_from_json(Json::parse(R"({"retained": [0]})")), doctest::Contains("/retained/0"), Error);
  CHECK_THROWS_WITH_AS(gauge_from_json(Json::parse(R"({"retained": [1], "fixed": {"x": 1}})")),
                       doctest::Contains("/fixed/x"), Error);
}

TEST_CASE("pencil files") {
  Json kdv = Json::parse(R"({
    "algebra": "A1", "A": [0, 0, 1], "frame": [[0, 0, 1], [0, "1/2", 0], [1, 0, 0]],
    "gauge": {"retained": [1], "fixed": {"2": 0, "3": 1}}})");
  auto b = load_pencil_json(kdv);
  auto want = builtin("kdv");
  CHECK(b.pencil.op == want.pencil.op);
  CHECK(dirac_reduce(b.pencil, b.gauge).op == dirac_reduce(want.pencil, want.gauge).op);

  CHECK(parse_error(Json::parse(R"({"names": ["u", "v"], "operator": [["2*D", "u*D"], ["D", "2*D"]]})"))
            .find("(1,2)/(2,1)") != std::string::npos);
  CHECK(parse_error(Json::parse(R"({"names": ["u"], "operator": [["eps^-2*D"]]})")).rfind("grading", 0) == 0);
  CHECK(parse_error(Json::parse(R"({"algebra": "A1", "A": [0, 1]})")).find("/A") != std::string::npos);
  CHECK(parse_error(Json::parse(R"({"algebra": "A1", "A": [0, 0, 1], "extra": 1})")).find("/extra") !=
        std::string::npos);
  CHECK(parse_error(Json::parse(R"({"variant": "scalar", "c": "u"})")) == "no error");
}

TEST_CASE("latex output") {
  FieldNames u{{"u"}};
  CHECK(latex(ref::kdv_p1(), u) == "\\begin{pmatrix}\n-2 \\partial_x\n\\end{pmatrix}");
  std::string p2 = latex(ref::kdv_p2(), u);
  CHECK(p2.find("\\frac{1}{2} \\epsilon^{2} \\partial_x^{3}") != std::string::npos);
  CHECK(p2.find("u_{x}") != std::string::npos);
}

TEST_CASE("reports") {
  SuiteOptions opt;
  auto r = run_suite("kdv", opt);
  CHECK(r.passed());
  CHECK(to_json(r)["checks"].size() == r.checks.size());
  CHECK_THROWS_AS(run_suite("nope", opt), Error);
  auto rep = reduce_report(builtin("so5"), 24);
  CHECK(rep["schema"] == "ppl/1");
  CHECK(rep["d_inverse_order"] == 5);
  CHECK(rep["schur"]["lambda_free"] == true);
  auto inv = invariants_report(builtin("kdv"), SampleOptions{});
  CHECK(inv["lambda_degree"] == 1);
  CHECK(inv["roots"][0]["c_exact"] == "1/24");
  CHECK(invariants_report(builtin("kdv"), SampleOptions{}).dump() == inv.dump());
  CHECK(parse_emit("latex") == Emit::Latex);
  CHECK_THROWS_AS(parse_emit("html"), Error);
}
