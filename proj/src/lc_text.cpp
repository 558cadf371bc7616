// Text syntax for LCNumber: printing and a small recursive-descent parser.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' exponent)?
//   exponent:= ['+' | '-'] integer | '(' ['-'] integer ['/' integer] ')'
//   primary := number | 'eps' | '(' expr ')'

#include <cctype>
#include <string>

#include "nsbayes/errors.hpp"
#include "nsbayes/lc_number.hpp"

namespace nsbayes {
namespace {

std::string exponent_text(const Rational& e) {
  if (e == 1) return "eps";
  if (e.get_den() == 1) return "eps^" + e.get_str();
  return "eps^(" + e.get_str() + ")";
}

std::string term_text(const Term& t, bool magnitude_only) {
  Rational c = magnitude_only ? abs(t.coefficient) : t.coefficient;
  if (t.exponent == 0) return to_string(c);
  if (c == 1) return exponent_text(t.exponent);
  if (c == -1) return "-" + exponent_text(t.exponent);
  return to_string(c) + "*" + exponent_text(t.exponent);
}

class Parser {
 public:
  Parser(std::string_view text, int order) : text_(text), order_(order) {}

  LCNumber run() {
    LCNumber value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  LCNumber expr() {
    LCNumber value = term();
    for (;;) {
      if (accept('+')) {
        value = value + term();
      } else if (accept('-')) {
        value = value - term();
      } else {
        return value;
      }
    }
  }

  LCNumber term() {
    LCNumber value = unary();
    for (;;) {
      if (accept('*')) {
        value = value * unary();
      } else if (accept('/')) {
        value = value / unary();
      } else {
        return value;
      }
    }
  }

  LCNumber unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  LCNumber power() {
    LCNumber base = primary();
    if (!accept('^')) return base;
    skip_space();
    Rational e;
    if (accept('(')) {
      bool negative = accept('-');
      e = integer();
      if (accept('/')) {
        mpz_class den = integer();
        if (den == 0) fail("zero denominator in exponent");
        e /= den;
      }
      expect(')');
      if (negative) e = -e;
    } else {
      bool negative = accept('-');
      if (!negative) accept('+');
      e = integer();
      if (negative) e = -e;
    }
    if (e.get_den() == 1) {
      mpz_class n = e.get_num();
      if (!n.fits_slong_p()) fail("exponent too large");
      return pow(base, n.get_si());
    }
    // fractional powers are only defined here for eps^q times a unit coefficient
    if (base.terms().size() != 1 || base.terms().front().coefficient != 1) {
      fail("fractional exponent requires a base of the form eps^q");
    }
    return LCNumber::monomial(1, base.terms().front().exponent * e, base.order());
  }

  mpz_class integer() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
  }

  LCNumber primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      LCNumber inner = expr();
      expect(')');
      return inner;
    }
    if (text_.compare(pos_, 3, "eps") == 0) {
      pos_ += 3;
      return LCNumber::eps(order_);
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        ++pos_;
      }
      std::string_view literal = text_.substr(start, pos_ - start);
      try {
        return LCNumber(parse_rational(literal), order_);
      } catch (const ParseError&) {
        pos_ = start;
        fail("malformed number '" + std::string(literal) + "'");
      }
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  int order_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string LCNumber::to_string() const {
  if (terms_.empty()) return "0";
  std::string out = term_text(terms_.front(), false);
  for (std::size_t i = 1; i < terms_.size(); ++i) {
    out += sgn(terms_[i].coefficient) < 0 ? " - " : " + ";
    out += term_text(terms_[i], true);
  }
  return out;
}

LCNumber LCNumber::parse(std::string_view text, int order) { return Parser(text, order).run(); }

}  // namespace nsbayes
