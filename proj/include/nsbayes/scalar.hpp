#pragma once

#include <concepts>
#include <string>
#include <type_traits>

#include "nsbayes/lc_number.hpp"
#include "nsbayes/rational.hpp"

namespace nsbayes {

// Ordered-field scalars used by the decision-theory code: exact rationals and
// truncated Levi-Civita numbers. `like` supplies the truncation order when a
// constant has to be lifted into the field.
template <class T>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static Rational lift(const Rational& r, const Rational& /*like*/ = {}) { return r; }
  static Rational standard_part(const Rational& r) { return r; }
  static std::string str(const Rational& r) { return to_string(r); }
};

template <>
struct ScalarOps<LCNumber> {
  static LCNumber lift(const Rational& r, const LCNumber& like) { return LCNumber(r, like.order()); }
  static LCNumber lift(const Rational& r) { return LCNumber(r); }
  static Rational standard_part(const LCNumber& x) { return x.standard_part(); }
  static std::string str(const LCNumber& x) { return x.to_string(); }
};

template <class T>
concept OrderedScalar = std::same_as<T, Rational> || std::same_as<T, LCNumber>;

// The field a mixed Rational/LCNumber computation lands in.
template <OrderedScalar A, OrderedScalar B>
using CommonScalar =
    std::conditional_t<std::same_as<A, LCNumber> || std::same_as<B, LCNumber>, LCNumber, Rational>;

template <OrderedScalar R, OrderedScalar A, OrderedScalar B>
R scalar_mul(const A& a, const B& b) {
  if constexpr (std::same_as<R, Rational>) {
    return Rational(a * b);
  } else {
    return a * b;
  }
}

}  // namespace nsbayes
