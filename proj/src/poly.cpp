#include "ppl/poly.hpp"

#include <algorithm>

#include "ppl/error.hpp"

namespace ppl {

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(VarCode v, std::int32_t e) {
  if (e != 0) factors_.emplace_back(v, e);
}

std::int32_t Monomial::exponent(VarCode v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                             [](const Factor& f, VarCode c) { return f.first < c; });
  return (it != factors_.end() && it->first == v) ? it->second : 0;
}

Monomial Monomial::with_exponent(VarCode v, std::int32_t e) const {
  Monomial r = *this;
  auto it = std::lower_bound(r.factors_.begin(), r.factors_.end(), v,
                             [](const Factor& f, VarCode c) { return f.first < c; });
  if (it != r.factors_.end() && it->first == v) {
    if (e == 0)
      r.factors_.erase(it);
    else
      it->second = e;
  } else if (e != 0) {
    r.factors_.insert(it, Factor{v, e});
  }
  return r;
}

int Monomial::differential_degree() const {
  int d = 0;
  for (const auto& [v, e] : factors_)
    if (is_jet(v)) d += jet_order(v) * e;
  return d;
}

int Monomial::jet_degree() const {
  int d = 0;
  for (const auto& [v, e] : factors_)
    if (is_jet(v)) d += e;
  return d;
}

bool Monomial::has_derivatives() const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [](const Factor& f) { return is_jet(f.first) && jet_order(f.first) > 0; });
}

bool Monomial::has_jets() const {
  return !factors_.empty() && is_jet(factors_.back().first);
}

std::optional<Monomial> Monomial::divide(const Monomial& other) const {
  Monomial r = *this;
  for (const auto& [v, e] : other.factors_) {
    std::int32_t mine = r.exponent(v);
    if (v != kEps && mine < e) return std::nullopt;
    r = r.with_exponent(v, mine - e);
  }
  return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
      r.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->first < i->first) {
      r.factors_.push_back(*j++);
    } else {
      std::int32_t e = i->second + j->second;
      if (e != 0) r.factors_.emplace_back(i->first, e);
      ++i;
      ++j;
    }
  }
  return r;
}

namespace {

// Lexicographic comparison of exponent vectors restricted to codes in
// [lo, hi); smaller codes are more significant. Returns -1, 0, 1.
int lex_compare(const std::vector<Monomial::Factor>& a, const std::vector<Monomial::Factor>& b,
                VarCode lo, VarCode hi) {
  auto i = std::lower_bound(a.begin(), a.end(), lo,
                            [](const Monomial::Factor& f, VarCode c) { return f.first < c; });
  auto j = std::lower_bound(b.begin(), b.end(), lo,
                            [](const Monomial::Factor& f, VarCode c) { return f.first < c; });
  for (;;) {
    bool ai = i != a.end() && i->first < hi;
    bool bj = j != b.end() && j->first < hi;
    if (!ai && !bj) return 0;
    if (ai && bj && i->first == j->first) {
      if (i->second != j->second) return i->second < j->second ? -1 : 1;
      ++i;
      ++j;
      continue;
    }
    // The side holding the smaller code has a positive exponent where the
    // other has zero.
    if (ai && (!bj || i->first < j->first)) return i->second > 0 ? 1 : -1;
    return j->second > 0 ? -1 : 1;
  }
}

}  // namespace

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  int da = a.jet_degree();
  int db = b.jet_degree();
  if (da != db) return da < db;
  int c = lex_compare(a.factors(), b.factors(), kJetBase, ~VarCode{0});
  if (c != 0) return c < 0;
  for (VarCode v : {kEps, kLambda, kP, kD}) {
    auto ea = a.exponent(v);
    auto eb = b.exponent(v);
    if (ea != eb) return ea < eb;
  }
  return false;
}

// ---------------------------------------------------------------------------
// FieldNames

std::string FieldNames::name(int field) const {
  if (field >= 0 && static_cast<std::size_t>(field) < names.size()) return names[field];
  return "w" + std::to_string(field + 1);
}

std::optional<int> FieldNames::find(const std::string& n) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == n) return static_cast<int>(i);
  return std::nullopt;
}

FieldNames FieldNames::numbered(int count, const std::string& stem) {
  FieldNames f;
  for (int i = 0; i < count; ++i) f.names.push_back(stem + std::to_string(i + 1));
  return f;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Poly::Poly(const Monomial& m, const Rational& c) {
  if (c != 0) terms_.emplace(m, c);
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator-(Poly a) {
  for (auto& [m, v] : a.terms_) v = -v;
  return a;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e != 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e != 0) base = base * base;
  }
  return result;
}

int Poly::max_exponent(VarCode v) const {
  bool first = true;
  int best = 0;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(v);
    if (first || e > best) best = e;
    first = false;
  }
  return best;
}

int Poly::min_exponent(VarCode v) const {
  bool first = true;
  int best = 0;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(v);
    if (first || e < best) best = e;
    first = false;
  }
  return best;
}

std::set<VarCode> Poly::variables() const {
  std::set<VarCode> vars;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors()) vars.insert(v);
  return vars;
}

bool Poly::has_derivatives() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first.has_derivatives(); });
}

int Poly::max_jet_order(int field) const {
  int best = -1;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors())
      if (is_jet(v) && jet_field(v) == field) best = std::max(best, jet_order(v));
  return best;
}

std::map<int, Poly> Poly::coefficients(VarCode v) const {
  std::map<int, Poly> out;
  for (const auto& [m, c] : terms_) out[m.exponent(v)].add_term(m.without(v), c);
  return out;
}

Poly Poly::coefficient(VarCode v, int e) const {
  Poly out;
  for (const auto& [m, c] : terms_)
    if (m.exponent(v) == e) out.add_term(m.without(v), c);
  return out;
}

Poly Poly::diff(VarCode v) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(v);
    if (e == 0) continue;
    out.add_term(m.with_exponent(v, e - 1), c * e);
  }
  return out;
}

Poly Poly::truncate_eps(int max_eps) const {
  Poly out;
  for (const auto& [m, c] : terms_)
    if (m.exponent(kEps) <= max_eps) out.terms_.emplace_hint(out.terms_.end(), m, c);
  return out;
}

Poly Poly::substitute(const std::map<VarCode, Poly>& values) const {
  Poly out;
  std::map<std::pair<VarCode, int>, Poly> powers;
  auto power = [&](VarCode v, int e) -> const Poly& {
    auto key = std::make_pair(v, e);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, values.at(v).pow(static_cast<unsigned>(e))).first;
    return it->second;
  };
  for (const auto& [m, c] : terms_) {
    Monomial kept;
    Poly factor(c);
    bool touched = false;
    for (const auto& [v, e] : m.factors()) {
      if (values.count(v)) {
        if (e < 0) fail(ErrorKind::Precondition, "cannot substitute into a negative power");
        factor *= power(v, e);
        touched = true;
        if (factor.is_zero()) break;
      } else {
        kept = kept * Monomial(v, e);
      }
    }
    if (!touched) {
      out.add_term(m, c);
      continue;
    }
    for (const auto& [fm, fc] : factor.terms_) out.add_term(fm * kept, fc);
  }
  return out;
}

std::string monomial_str(const Monomial& m, const FieldNames& names) {
  std::string s;
  auto append = [&](const std::string& base, int e) {
    if (!s.empty()) s += "*";
    s += base;
    if (e != 1) s += "^" + std::to_string(e);
  };
  // jets first, in field/order order, then eps, lam, p
  for (const auto& [v, e] : m.factors())
    if (is_jet(v)) {
      std::string base = names.name(jet_field(v));
      if (jet_order(v) > 0) base += "_" + std::string(static_cast<std::size_t>(jet_order(v)), 'x');
      append(base, e);
    }
  for (const auto& [v, e] : m.factors()) {
    if (v == kEps) append("eps", e);
    if (v == kLambda) append("lam", e);
    if (v == kP) append("p", e);
    if (v == kD) append("D", e);
  }
  return s;
}

std::string Poly::str(const FieldNames& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    bool neg = c < 0;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (m.is_one()) {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag) + "*";
      out += monomial_str(m, names);
    }
  }
  return out;
}

Poly total_x_derivative(const Poly& f) {
  Poly out;
  for (const auto& [m, c] : f.terms()) {
    for (const auto& [v, e] : m.factors()) {
      if (!is_jet(v)) continue;
      if (jet_order(v) >= kMaxJetOrder) fail(ErrorKind::Precondition, "jet order overflow");
      Monomial reduced = m.with_exponent(v, e - 1);
      VarCode next = jet(jet_field(v), jet_order(v) + 1);
      out.add_term(reduced * Monomial(next, 1), c * e);
    }
  }
  return out;
}

Poly total_x_derivative(const Poly& f, int times) {
  Poly out = f;
  for (int k = 0; k < times && !out.is_zero(); ++k) out = total_x_derivative(out);
  return out;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorKind::Precondition, "division by the zero polynomial");
  Poly quotient;
  Poly rest = a;
  const auto& [lead_m, lead_c] = *b.terms().rbegin();
  std::size_t guard = 0;
  const std::size_t limit = 64 * (a.size() + 1) * (b.size() + 1) + 4096;
  while (!rest.is_zero()) {
    const auto& [rm, rc] = *rest.terms().rbegin();
    auto q = rm.divide(lead_m);
    if (!q) return std::nullopt;
    Poly step(*q, rc / lead_c);
    quotient += step;
    rest -= step * b;
    if (++guard > limit) return std::nullopt;
  }
  return quotient;
}

}  // namespace ppl
