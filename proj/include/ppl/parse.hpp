#pragma once

#include <string_view>

#include "ppl/poly.hpp"

namespace ppl {

// Polynomial expressions such as "-1/16*eps^6*D^7 + eps^2*(w1/2 - w2^2)*D^3".
// Identifiers: eps, lam (or lambda), p, D (formal d/dx), and field names with
// an optional derivative suffix "_x", "_xx", ... Fields are resolved through
// `names`; "w<k>" (1-based) is accepted when no explicit name matches.
Poly parse_poly(std::string_view text, const FieldNames& names = {});

}  // namespace ppl
