#include "ppl/rational.hpp"

#include "ppl/error.hpp"

namespace ppl {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Lookup: return "lookup";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Integrity: return "integrity";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::NonTermination: return "non-termination";
    case ErrorKind::Semisimplicity: return "semisimplicity";
    case ErrorKind::NoDispersionlessLimit: return "no-dispersionless-limit";
    case ErrorKind::Grading: return "grading";
  }
  return "unknown";
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  };
  trim(s);
  if (s.empty()) fail(ErrorKind::Parse, "empty rational literal");
  try {
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      bool neg = s[0] == '-';
      std::string body = (neg || s[0] == '+') ? s.substr(1) : s;
      dot = body.find('.');
      std::string digits = body.substr(0, dot) + body.substr(dot + 1);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        fail(ErrorKind::Parse, "malformed decimal literal '" + s + "'");
      mpz_class num(digits, 10);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, body.size() - dot - 1);
      Rational q(num, den);
      q.canonicalize();
      return neg ? Rational(-q) : q;
    }
    if (s[0] == '+') s.erase(s.begin());
    Rational q(s, 10);
    if (q.get_den() == 0) fail(ErrorKind::Parse, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::Parse, "malformed rational literal '" + s + "'");
  }
}

}  // namespace ppl
