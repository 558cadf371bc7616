#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "nsbayes/rational.hpp"

namespace nsbayes {

// One summand coefficient * eps^exponent of a truncated Levi-Civita series.
struct Term {
  Rational exponent;
  Rational coefficient;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Element of a truncated Levi-Civita field: a finite formal series in a
/// positive infinitesimal eps with rational exponents and coefficients.
///
/// Terms are kept in canonical form (strictly increasing exponents, no zero
/// coefficients). Truncation is relative: a value with valuation v keeps only
/// terms of exponent <= v + order. Binary operations on values of different
/// orders use the smaller order. An infinite "K" is written as eps^-1.
class LCNumber {
 public:
  static constexpr int kDefaultOrder = 8;

  LCNumber() = default;
  explicit LCNumber(const Rational& value, int order = kDefaultOrder);
  explicit LCNumber(long value, int order = kDefaultOrder) : LCNumber(Rational(value), order) {}

  // Canonicalizes (sorts, merges, drops zeros) and truncates.
  static LCNumber from_terms(std::vector<Term> terms, int order = kDefaultOrder);
  static LCNumber monomial(const Rational& coefficient, const Rational& exponent,
                           int order = kDefaultOrder);
  static LCNumber eps(int order = kDefaultOrder) { return monomial(1, 1, order); }

  // Text syntax: "3/2 + 5*eps^2 - eps^-1", "eps^(1/2)", parentheses, * / ^.
  static LCNumber parse(std::string_view text, int order = kDefaultOrder);

  const std::vector<Term>& terms() const { return terms_; }
  int order() const { return order_; }
  LCNumber with_order(int order) const;

  bool is_zero() const { return terms_.empty(); }
  // Least exponent with a nonzero coefficient; nullopt stands for +infinity.
  std::optional<Rational> valuation() const;
  Rational coefficient_at(const Rational& exponent) const;
  Rational leading_coefficient() const;
  int sign() const;

  bool is_infinitesimal() const;  // zero or valuation > 0
  bool is_near_standard() const;  // valuation >= 0
  bool is_infinite() const;       // valuation < 0
  bool is_appreciable() const;    // valuation == 0

  // Coefficient of eps^0; throws NotNearStandard for infinite values.
  Rational standard_part() const;

  std::string to_string() const;

  LCNumber operator-() const;
  LCNumber& operator+=(const LCNumber& rhs) { return *this = *this + rhs; }
  LCNumber& operator-=(const LCNumber& rhs) { return *this = *this - rhs; }
  LCNumber& operator*=(const LCNumber& rhs) { return *this = *this * rhs; }
  LCNumber& operator/=(const LCNumber& rhs) { return *this = *this / rhs; }

  friend LCNumber operator+(const LCNumber& a, const LCNumber& b);
  friend LCNumber operator-(const LCNumber& a, const LCNumber& b);
  friend LCNumber operator*(const LCNumber& a, const LCNumber& b);
  friend LCNumber operator/(const LCNumber& a, const LCNumber& b);

  // Mixed operations lift the rational at the series' own order.
  friend LCNumber operator+(const LCNumber& a, const Rational& b) { return a + LCNumber(b, a.order_); }
  friend LCNumber operator+(const Rational& a, const LCNumber& b) { return LCNumber(a, b.order_) + b; }
  friend LCNumber operator-(const LCNumber& a, const Rational& b) { return a - LCNumber(b, a.order_); }
  friend LCNumber operator-(const Rational& a, const LCNumber& b) { return LCNumber(a, b.order_) - b; }
  friend LCNumber operator*(const LCNumber& a, const Rational& b);
  friend LCNumber operator*(const Rational& a, const LCNumber& b) { return b * a; }
  friend LCNumber operator/(const LCNumber& a, const Rational& b);

  // Canonical forms identical; the truncation order does not take part.
  friend bool operator==(const LCNumber& a, const LCNumber& b) { return a.terms_ == b.terms_; }
  friend std::strong_ordering operator<=>(const LCNumber& a, const LCNumber& b);
  friend bool operator==(const LCNumber& a, const Rational& b) { return a == LCNumber(b, a.order_); }
  friend std::strong_ordering operator<=>(const LCNumber& a, const Rational& b) {
    return a <=> LCNumber(b, a.order_);
  }

  friend std::ostream& operator<<(std::ostream& os, const LCNumber& x) { return os << x.to_string(); }

  friend LCNumber exact_difference(const LCNumber& a, const LCNumber& b);

 private:
  std::vector<Term> terms_;
  int order_ = kDefaultOrder;
};

// a - b with no truncation; the order and sign tests rely on it.
LCNumber exact_difference(const LCNumber& a, const LCNumber& b);

LCNumber inverse(const LCNumber& a);  // throws ZeroDivision
LCNumber pow(const LCNumber& base, long exponent);

std::strong_ordering compare(const LCNumber& a, const LCNumber& b);
std::optional<Rational> valuation(const LCNumber& a);
Rational standard_part(const LCNumber& a);

// a - b is zero or infinitesimal.
bool approx_equal(const LCNumber& a, const LCNumber& b);
// a <= b or a approx b.
bool approx_leq(const LCNumber& a, const LCNumber& b);

// x >> y: gamma * x > y for every positive real gamma. True whenever x > 0 and
// y <= 0, a reading the quantified definition implies but does not state.
bool much_greater(const LCNumber& x, const LCNumber& y);

// For x, y > 0 with much_greater(x, y) false, a positive rational gamma with
// gamma * x <= y. nullopt when no witness is needed or the inputs are not both
// positive.
std::optional<Rational> much_greater_counterexample(const LCNumber& x, const LCNumber& y);

}  // namespace nsbayes
