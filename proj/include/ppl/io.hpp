#pragma once

#include <string>

#include "json.hpp"
#include "ppl/algebra.hpp"
#include "ppl/diffop.hpp"
#include "ppl/pencils.hpp"

namespace ppl {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "ppl/1";

// Polynomials: [[monomial, "p/q"], ...] with monomial
// {"w": [[i, s, exp], ...], "eps": e, "lam": d, "p": k}; field indices i are
// 1-based, zero exponents are omitted.
Json to_json(const Poly& f);
Poly poly_from_json(const Json& j, const std::string& pointer = "");

// Operators: [{"m": order, "coeff": <poly>}, ...]; matrices are row-major
// arrays of arrays of those.
Json to_json(const DiffOp& op);
Json to_json(const MatDiffOp& op);
DiffOp diffop_from_json(const Json& j, const std::string& pointer = "");
MatDiffOp matdiffop_from_json(const Json& j, const std::string& pointer = "");

Json to_json(const LieAlg& alg);
Json to_json(const GaugeSpec& q);
GaugeSpec gauge_from_json(const Json& j, const std::string& pointer = "");

std::string latex(const Poly& f, const FieldNames& names = {});
std::string latex(const DiffOp& op, const FieldNames& names = {});
std::string latex(const MatDiffOp& op, const FieldNames& names = {});

// {"algebra": descriptor or LieAlg JSON, "variant": ..., "A": [...], "I": [...],
//  "frame": [[...], ...], "names": [...], "operator": ..., "liouville": [...],
//  "c": "<expr in u>", "gauge": {...}}. Schema violations raise parse errors
// prefixed with the JSON pointer; the instance is validated before return.
BuiltinPencil load_pencil_json(const Json& j);
BuiltinPencil load_pencil_file(const std::string& path);
GaugeSpec load_gauge_file(const std::string& path);

// Builtin name, "scalar:c=...", "ds:<algebra>", or a path to a JSON file.
BuiltinPencil resolve_pencil(const std::string& target);

}  // namespace ppl
