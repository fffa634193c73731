#include "ppl/parse.hpp"

#include <cctype>
#include <string>

#include "ppl/error.hpp"

namespace ppl {
namespace {

class Parser {
 public:
  Parser(std::string_view text, const FieldNames& names) : text_(text), names_(names) {}

  Poly run() {
    Poly p = expr();
    skip();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::Parse, "at offset " + std::to_string(pos_) + " in \"" + std::string(text_) +
                               "\": " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc;
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    Poly first = term();
    acc = neg ? -first : first;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = power();
    for (;;) {
      if (accept('*')) {
        acc *= power();
      } else if (accept('/')) {
        Poly d = power();
        if (!d.is_constant() || d.is_zero()) error("division only by nonzero constants");
        acc *= Rational(1) / d.constant_term();
      } else {
        return acc;
      }
    }
  }

  int exponent() {
    bool paren = accept('(');
    bool neg = accept('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("expected integer exponent");
    int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (paren && !accept(')')) error("expected ')'");
    return neg ? -e : e;
  }

  Poly power() {
    if (accept('-')) return -power();
    Poly base = atom();
    if (accept('^')) {
      int e = exponent();
      if (e >= 0) return base.pow(static_cast<unsigned>(e));
      if (base.size() == 1 && base.terms().begin()->second == 1) {
        const Monomial& m = base.terms().begin()->first;
        if (m.factors().size() == 1 && m.factors()[0].first == kEps)
          return Poly::eps(m.factors()[0].second * e);
      }
      error("negative exponents are only allowed on eps");
    }
    return base;
  }

  Poly atom() {
    skip();
    if (pos_ >= text_.size()) error("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!accept(')')) error("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      return Poly(parse_rational(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return identifier(std::string(text_.substr(start, pos_ - start)));
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  Poly identifier(const std::string& id) {
    if (id == "eps" || id == "epsilon") return Poly::eps();
    if (id == "lam" || id == "lambda") return Poly::lambda();
    if (id == "p") return Poly::p();
    if (id == "D") return Poly::var(kD);
    std::string base = id;
    int order = 0;
    auto us = id.rfind('_');
    if (us != std::string::npos && us + 1 < id.size() &&
        id.find_first_not_of('x', us + 1) == std::string::npos) {
      base = id.substr(0, us);
      order = static_cast<int>(id.size() - us - 1);
    }
    if (auto f = names_.find(base)) return Poly::w(*f, order);
    if (base.size() > 1 && base[0] == 'w' &&
        base.find_first_not_of("0123456789", 1) == std::string::npos) {
      int k = std::stoi(base.substr(1));
      if (k >= 1) return Poly::w(k - 1, order);
    }
    error("unknown identifier '" + id + "'");
  }

  std::string_view text_;
  const FieldNames& names_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const FieldNames& names) {
  return Parser(text, names).run();
}

}  // namespace ppl
