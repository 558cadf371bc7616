#include "nsbayes/lc_number.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "nsbayes/errors.hpp"

namespace nsbayes {
namespace {

using TermMap = std::map<Rational, Rational>;

std::vector<Term> canonical(const TermMap& acc) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (const auto& [e, c] : acc) {
    if (c != 0) out.push_back({e, c});
  }
  return out;
}

void truncate(std::vector<Term>& terms, int order) {
  if (terms.empty()) return;
  const Rational horizon = terms.front().exponent + order;
  auto it = std::find_if(terms.begin(), terms.end(),
                         [&](const Term& t) { return t.exponent > horizon; });
  terms.erase(it, terms.end());
}

std::vector<Term> merge_sum(const std::vector<Term>& a, const std::vector<Term>& b, int b_sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].exponent < b[j].exponent)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].exponent < a[i].exponent) {
      Rational c = b_sign < 0 ? Rational(-b[j].coefficient) : b[j].coefficient;
      out.push_back({b[j].exponent, c});
      ++j;
    } else {
      Rational c = b_sign < 0 ? Rational(a[i].coefficient - b[j].coefficient)
                              : Rational(a[i].coefficient + b[j].coefficient);
      if (c != 0) out.push_back({a[i].exponent, c});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LCNumber::LCNumber(const Rational& value, int order) : order_(order) {
  if (value != 0) terms_.push_back({Rational(0), value});
}

LCNumber LCNumber::from_terms(std::vector<Term> terms, int order) {
  TermMap acc;
  for (auto& t : terms) acc[t.exponent] += t.coefficient;
  LCNumber out;
  out.order_ = order;
  out.terms_ = canonical(acc);
  truncate(out.terms_, order);
  return out;
}

LCNumber LCNumber::monomial(const Rational& coefficient, const Rational& exponent, int order) {
  LCNumber out;
  out.order_ = order;
  if (coefficient != 0) out.terms_.push_back({exponent, coefficient});
  return out;
}

LCNumber LCNumber::with_order(int order) const {
  LCNumber out = *this;
  out.order_ = order;
  truncate(out.terms_, order);
  return out;
}

std::optional<Rational> LCNumber::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().exponent;
}

Rational LCNumber::coefficient_at(const Rational& exponent) const {
  for (const auto& t : terms_) {
    if (t.exponent == exponent) return t.coefficient;
    if (t.exponent > exponent) break;
  }
  return 0;
}

Rational LCNumber::leading_coefficient() const {
  return terms_.empty() ? Rational(0) : terms_.front().coefficient;
}

int LCNumber::sign() const { return terms_.empty() ? 0 : sgn(terms_.front().coefficient); }

bool LCNumber::is_infinitesimal() const { return terms_.empty() || terms_.front().exponent > 0; }
bool LCNumber::is_near_standard() const { return terms_.empty() || terms_.front().exponent >= 0; }
bool LCNumber::is_infinite() const { return !terms_.empty() && terms_.front().exponent < 0; }
bool LCNumber::is_appreciable() const { return !terms_.empty() && terms_.front().exponent == 0; }

Rational LCNumber::standard_part() const {
  if (is_infinite()) throw NotNearStandard("standard part of infinite value " + to_string());
  return coefficient_at(0);
}

LCNumber LCNumber::operator-() const {
  LCNumber out = *this;
  for (auto& t : out.terms_) t.coefficient = -t.coefficient;
  return out;
}

LCNumber operator+(const LCNumber& a, const LCNumber& b) {
  LCNumber out;
  out.order_ = std::min(a.order_, b.order_);
  out.terms_ = merge_sum(a.terms_, b.terms_, +1);
  truncate(out.terms_, out.order_);
  return out;
}

LCNumber operator-(const LCNumber& a, const LCNumber& b) {
  LCNumber out;
  out.order_ = std::min(a.order_, b.order_);
  out.terms_ = merge_sum(a.terms_, b.terms_, -1);
  truncate(out.terms_, out.order_);
  return out;
}

LCNumber operator*(const LCNumber& a, const LCNumber& b) {
  LCNumber out;
  out.order_ = std::min(a.order_, b.order_);
  if (a.terms_.empty() || b.terms_.empty()) return out;
  const Rational horizon = a.terms_.front().exponent + b.terms_.front().exponent + out.order_;
  TermMap acc;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      Rational e = s.exponent + t.exponent;
      if (e > horizon) break;
      acc[e] += s.coefficient * t.coefficient;
    }
  }
  out.terms_ = canonical(acc);
  return out;
}

LCNumber operator*(const LCNumber& a, const Rational& b) {
  if (b == 0) return LCNumber(Rational(0), a.order_);
  LCNumber out = a;
  for (auto& t : out.terms_) t.coefficient *= b;
  return out;
}

LCNumber operator/(const LCNumber& a, const Rational& b) {
  if (b == 0) throw ZeroDivision();
  LCNumber out = a;
  for (auto& t : out.terms_) t.coefficient /= b;
  return out;
}

LCNumber operator/(const LCNumber& a, const LCNumber& b) { return a * inverse(b); }

LCNumber exact_difference(const LCNumber& a, const LCNumber& b) {
  LCNumber out;
  out.order_ = std::min(a.order_, b.order_);
  out.terms_ = merge_sum(a.terms_, b.terms_, -1);
  return out;
}

LCNumber inverse(const LCNumber& a) {
  if (a.is_zero()) throw ZeroDivision();
  const int order = a.order();
  const Term& lead = a.terms().front();
  // a = c * eps^v * (1 + u), u infinitesimal
  std::vector<Term> u_terms;
  for (std::size_t i = 1; i < a.terms().size(); ++i) {
    const Term& t = a.terms()[i];
    u_terms.push_back({t.exponent - lead.exponent, t.coefficient / lead.coefficient});
  }
  LCNumber result(Rational(1), order);
  if (!u_terms.empty()) {
    const LCNumber neg_u = -LCNumber::from_terms(u_terms, order);
    // (-u)^k has valuation k * mu; only k * mu <= order survives truncation.
    const Rational mu = u_terms.front().exponent;
    Rational k_max_q = Rational(order) / mu;
    mpz_class k_max = k_max_q.get_num() / k_max_q.get_den();
    LCNumber power(Rational(1), order);
    for (mpz_class k = 1; k <= k_max; ++k) {
      power = power * neg_u;
      result = LCNumber::from_terms(
          [&] {
            std::vector<Term> merged = result.terms();
            for (const auto& t : power.terms()) {
              if (t.exponent <= order) merged.push_back(t);
            }
            return merged;
          }(),
          order);
    }
  }
  std::vector<Term> scaled;
  scaled.reserve(result.terms().size());
  for (const auto& t : result.terms()) {
    scaled.push_back({t.exponent - lead.exponent, t.coefficient / lead.coefficient});
  }
  return LCNumber::from_terms(std::move(scaled), order);
}

LCNumber pow(const LCNumber& base, long exponent) {
  if (exponent < 0) return inverse(pow(base, -exponent));
  LCNumber result(Rational(1), base.order());
  LCNumber square = base;
  for (unsigned long e = static_cast<unsigned long>(exponent); e != 0; e >>= 1) {
    if (e & 1u) result = result * square;
    if (e > 1) square = square * square;
  }
  return result;
}

std::strong_ordering operator<=>(const LCNumber& a, const LCNumber& b) {
  const int s = exact_difference(a, b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering compare(const LCNumber& a, const LCNumber& b) { return a <=> b; }

std::optional<Rational> valuation(const LCNumber& a) { return a.valuation(); }

Rational standard_part(const LCNumber& a) { return a.standard_part(); }

bool approx_equal(const LCNumber& a, const LCNumber& b) {
  return exact_difference(a, b).is_infinitesimal();
}

bool approx_leq(const LCNumber& a, const LCNumber& b) { return a <= b || approx_equal(a, b); }

bool much_greater(const LCNumber& x, const LCNumber& y) {
  if (x.sign() <= 0) return false;
  if (y.sign() <= 0) return true;
  return *y.valuation() > *x.valuation();
}

std::optional<Rational> much_greater_counterexample(const LCNumber& x, const LCNumber& y) {
  if (x.sign() <= 0 || y.sign() <= 0 || much_greater(x, y)) return std::nullopt;
  // valuation(y) <= valuation(x). With equal valuations, half the ratio of
  // leading coefficients puts gamma * x strictly below y; otherwise y/x is
  // infinite and gamma = 1 already works.
  Rational gamma(1);
  if (*y.valuation() == *x.valuation()) {
    gamma = y.leading_coefficient() / (2 * x.leading_coefficient());
  }
  return gamma;
}

}  // namespace nsbayes
