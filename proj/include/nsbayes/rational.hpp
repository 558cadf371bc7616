#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace nsbayes {

using Rational = mpq_class;

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Accepts "p/q", "p", and plain decimals such as "-1.25". Throws ParseError.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form ("p" when the denominator is 1).
std::string to_string(const Rational& value);

// Decimal approximation with the given number of fractional digits, for
// human-readable output only.
std::string to_decimal(const Rational& value, int digits = 6);

inline int sign(const Rational& value) { return sgn(value); }

Rational abs(const Rational& value);

// p/q in canonical form; mpq_class(p, q) alone does not reduce.
inline Rational ratio(const mpz_class& p, const mpz_class& q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

}  // namespace nsbayes
