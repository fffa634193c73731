#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ppl {

using Rational = mpq_class;

// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

// Accepts "p", "p/q", "-p/q" and decimal literals such as "0.25".
Rational parse_rational(std::string_view text);

// Canonicalized n/d (mpq_class(n, d) alone is not reduced).
inline Rational make_rational(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace ppl
