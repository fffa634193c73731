#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ppl/rational.hpp"

namespace ppl {

// Variable codes shared by every polynomial in the library. The deformation
// parameter eps may carry negative exponents; every other variable is
// polynomial.
using VarCode = std::uint32_t;

inline constexpr VarCode kEps = 0;
inline constexpr VarCode kLambda = 1;
inline constexpr VarCode kP = 2;
inline constexpr VarCode kD = 3;  // formal d/dx, only inside the parser
inline constexpr VarCode kJetBase = 16;
inline constexpr int kMaxJetOrder = 255;

// w^field_{(order)}, field is 0-based.
constexpr VarCode jet(int field, int order) {
  return kJetBase + (static_cast<VarCode>(field) << 8) + static_cast<VarCode>(order);
}
constexpr bool is_jet(VarCode c) { return c >= kJetBase; }
constexpr int jet_field(VarCode c) { return static_cast<int>((c - kJetBase) >> 8); }
constexpr int jet_order(VarCode c) { return static_cast<int>((c - kJetBase) & 0xffu); }

class Monomial {
 public:
  using Factor = std::pair<VarCode, std::int32_t>;

  Monomial() = default;
  explicit Monomial(VarCode v, std::int32_t e = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  std::int32_t exponent(VarCode v) const;
  bool is_one() const { return factors_.empty(); }

  // Copy with the exponent of v replaced (zero removes the factor).
  Monomial with_exponent(VarCode v, std::int32_t e) const;
  Monomial without(VarCode v) const { return with_exponent(v, 0); }

  // Sum of derivative orders weighted by exponent.
  int differential_degree() const;
  // Ordinary degree in the jet variables.
  int jet_degree() const;
  bool has_derivatives() const;
  bool has_jets() const;

  // Nullopt when some exponent of `other` exceeds ours (eps excepted).
  std::optional<Monomial> divide(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

 private:
  std::vector<Factor> factors_;  // sorted by code, exponents nonzero
};

// Graded lexicographic on the jet part (field index, then derivative order),
// then eps, lambda, p.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Naming of jet variables for printing and parsing.
struct FieldNames {
  std::vector<std::string> names;  // names[i] is field i; fallback "w<i+1>"
  std::string name(int field) const;
  std::optional<int> find(const std::string& name) const;
  static FieldNames numbered(int count, const std::string& stem = "w");
};

// Sparse polynomial with rational coefficients; canonical (no zero terms).
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, MonomialLess>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(int c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(const Monomial& m, const Rational& c);

  static Poly var(VarCode v, std::int32_t e = 1) { return Poly(Monomial(v, e), Rational(1)); }
  static Poly w(int field, int order = 0) { return var(jet(field, order)); }
  static Poly eps(std::int32_t e = 1) { return var(kEps, e); }
  static Poly lambda() { return var(kLambda); }
  static Poly p(std::int32_t e = 1) { return var(kP, e); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Coefficient of the unit monomial.
  Rational constant_term() const;
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rational& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator-(Poly a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned e) const;

  int max_exponent(VarCode v) const;  // 0 for the zero polynomial
  int min_exponent(VarCode v) const;
  std::set<VarCode> variables() const;
  bool has_derivatives() const;
  // Highest jet order of `field` present, -1 if absent.
  int max_jet_order(int field) const;

  // Split by the exponent of v: result[e] has no v.
  std::map<int, Poly> coefficients(VarCode v) const;
  Poly coefficient(VarCode v, int e) const;

  Poly diff(VarCode v) const;
  // Drop every term whose eps exponent exceeds `max_eps`.
  Poly truncate_eps(int max_eps) const;

  // Replace variables by polynomials. Substituted variables must appear with
  // nonnegative exponents.
  Poly substitute(const std::map<VarCode, Poly>& values) const;
  Poly substitute(VarCode v, const Poly& value) const { return substitute({{v, value}}); }

  template <class T>
  T evaluate(const std::function<T(VarCode)>& value) const;

  std::string str(const FieldNames& names = {}) const;

 private:
  Terms terms_;
};

// d/dx acting on jets: w_(s) -> w_(s+1).
Poly total_x_derivative(const Poly& f);
Poly total_x_derivative(const Poly& f, int times);

// Exact quotient a / b, nullopt when b does not divide a.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

std::string monomial_str(const Monomial& m, const FieldNames& names);

template <class T>
T rational_to(const Rational& q) {
  return T(q.get_num().get_str()) / T(q.get_den().get_str());
}
template <>
inline double rational_to<double>(const Rational& q) { return q.get_d(); }
template <>
inline Rational rational_to<Rational>(const Rational& q) { return q; }

template <class T>
T Poly::evaluate(const std::function<T(VarCode)>& value) const {
  T total(0);
  std::map<VarCode, T> cache;
  for (const auto& [m, c] : terms_) {
    T term = rational_to<T>(c);
    for (const auto& [v, e] : m.factors()) {
      auto it = cache.find(v);
      if (it == cache.end()) it = cache.emplace(v, value(v)).first;
      T base = it->second;
      T acc(1);
      for (int k = 0; k < (e < 0 ? -e : e); ++k) acc *= base;
      term = e < 0 ? T(term / acc) : T(term * acc);
    }
    total += term;
  }
  return total;
}

}  // namespace ppl
