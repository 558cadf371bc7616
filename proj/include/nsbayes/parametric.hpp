#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nsbayes/errors.hpp"
#include "nsbayes/lc_number.hpp"
#include "nsbayes/prior_synthesis.hpp"
#include "nsbayes/scalar.hpp"

namespace nsbayes {

class OutsideDomain : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Families

/// Estimating the mean of N(theta, I_d) under squared error with the linear
/// rule x -> c x. Risk is d c^2 + (1 - c)^2 |theta|^2.
struct NormalLocationFamily {
  using Params = Rational;  // shrinkage coefficient c
  int dim = 1;

  template <OrderedScalar T>
  T risk_at(const T& c, const std::vector<T>& theta) const {
    if (theta.size() != static_cast<std::size_t>(dim)) {
      throw ShapeMismatch("parameter point has dimension " + std::to_string(theta.size()));
    }
    const T one = ScalarOps<T>::lift(1, c);
    T norm2 = ScalarOps<T>::lift(0, c);
    for (const T& v : theta) norm2 = norm2 + T(v * v);
    const T shrink = one - c;
    return T(T(c * c) * Rational(dim)) + T(T(shrink * shrink) * norm2);
  }

  LCNumber risk(const Params& c, const std::vector<LCNumber>& theta) const {
    return risk_at(LCNumber(c, theta.empty() ? LCNumber::kDefaultOrder : theta.front().order()), theta);
  }
  Rational risk(const Params& c, const std::vector<Rational>& theta) const { return risk_at(c, theta); }

  /// Bayes risk of x -> c x under the prior N(0, k^2 I_d):
  /// d c^2 + d (1 - c)^2 k^2.
  template <OrderedScalar T>
  T gaussian_bayes_risk(const T& c, const T& k) const {
    const T shrink = ScalarOps<T>::lift(1, c) - c;
    return T(T(c * c) * Rational(dim)) + T(T(T(shrink * shrink) * T(k * k)) * Rational(dim));
  }
};

/// Rule (a, b): estimate a after observing 0 and b after observing 1.
struct BernoulliRule {
  Rational a;
  Rational b;
  friend bool operator==(const BernoulliRule&, const BernoulliRule&) = default;
};

/// X ~ Bernoulli(g(t)) on Theta = [0, 1] with g(t) = t for t > 0, g(0) = 1,
/// and loss (g(t) - y)^2. Risk of (a, b) is
/// (1 - g(t)) (g(t) - a)^2 + g(t) (g(t) - b)^2.
struct BernoulliBoundaryFamily {
  using Params = BernoulliRule;

  // g takes the t-branch for every t > 0, infinitesimal t included.
  template <OrderedScalar T>
  static T g(const T& t) {
    const T zero = ScalarOps<T>::lift(0, t);
    const T one = ScalarOps<T>::lift(1, t);
    if (t < zero || t > one) throw OutsideDomain("Bernoulli parameter outside [0, 1]");
    return t > zero ? t : one;
  }

  template <OrderedScalar T>
  T risk_at(const BernoulliRule& rule, const T& t) const {
    const T p = g(t);
    const T one = ScalarOps<T>::lift(1, t);
    const T da = p - ScalarOps<T>::lift(rule.a, t);
    const T db = p - ScalarOps<T>::lift(rule.b, t);
    return T(T(one - p) * T(da * da)) + T(p * T(db * db));
  }

  LCNumber risk(const Params& rule, const std::vector<LCNumber>& point) const {
    if (point.size() != 1) throw ShapeMismatch("Bernoulli parameter is one-dimensional");
    return risk_at(rule, point.front());
  }
  Rational risk(const Params& rule, const std::vector<Rational>& point) const {
    if (point.size() != 1) throw ShapeMismatch("Bernoulli parameter is one-dimensional");
    return risk_at(rule, point.front());
  }
};

// ---------------------------------------------------------------------------
// epsilon-regularity

struct Probe {
  std::vector<Rational> center;
  Rational radius;
};

enum class Regularity { kRegular, kNotRegular, kIndeterminate };
std::string to_string(Regularity r);

struct BallMassBounds {
  LCNumber lower;
  LCNumber upper;
};

struct ProbeOutcome {
  Probe probe;
  BallMassBounds mass;
  bool lower_much_greater = false;  // lower >> epsilon
  bool upper_much_greater = false;  // upper >> epsilon
};

struct RegularityVerdict {
  Regularity verdict = Regularity::kIndeterminate;
  // NotRegular: a probe whose upper mass bound is not >> epsilon.
  // Indeterminate: a probe whose bounds straddle the decision.
  std::optional<ProbeOutcome> witness;
  std::vector<ProbeOutcome> probes;
};

// Centers {0, e_1} and radii {1/2, 1, 2}.
std::vector<Probe> default_probes(int dim);

/// Bounds on the N(0, K^2 I_d) mass of the open ball B(center, r):
///   upper = V_d(r) (2 pi K^2)^(-d/2)
///   lower = upper * (1 - R^2 / (2 K^2)),  R = |center| + r
/// with pi and the ball-volume constant enclosed by rational intervals.
/// Throws NotInfinite unless K is positive and infinite, BadProbe for a
/// nonpositive radius or a center of the wrong dimension.
BallMassBounds gaussian_ball_mass_bounds(int dim, const LCNumber& K, const Probe& probe);

RegularityVerdict check_epsilon_regular_normal(int dim, const LCNumber& K, const LCNumber& epsilon,
                                               const std::vector<Probe>& probes);

// Exact ball masses for a finitely supported prior.
RegularityVerdict check_epsilon_regular_finite(const LCPrior& prior, const LCNumber& epsilon,
                                               const std::vector<Probe>& probes);

// Rational enclosure [lo, hi] of V_d(1) (2 pi)^(-d/2) = 1 / (2^(d/2) Gamma(d/2 + 1)).
std::pair<Rational, Rational> gaussian_ball_constant(int dim);

// ---------------------------------------------------------------------------
// Blyth-style certificate

struct GaussianPrior {
  LCNumber K;  // N(0, K^2 I_d), K infinite
};

using PriorSpec = std::variant<GaussianPrior, LCPrior>;

struct BlythCertificate {
  bool certified = false;
  std::string reason;  // empty when certified
  bool epsilon_bayes = false;
  RegularityVerdict regularity;
  LCNumber candidate_bayes_risk;
  std::vector<LCNumber> challenger_bayes_risks;
  std::string scope;
};

BlythCertificate blyth_certificate(const NormalLocationFamily& family, const Rational& candidate,
                                   const PriorSpec& prior, const LCNumber& epsilon,
                                   const std::vector<Rational>& challengers, const std::vector<Probe>& probes);

BlythCertificate blyth_certificate(const BernoulliBoundaryFamily& family, const BernoulliRule& candidate,
                                   const LCPrior& prior, const LCNumber& epsilon,
                                   const std::vector<BernoulliRule>& challengers,
                                   const std::vector<Probe>& probes);

// ---------------------------------------------------------------------------
// Example reports

struct NormalLocationReport {
  int dim = 1;
  LCNumber K;
  LCNumber shrinkage;       // c = K^2 / (K^2 + 1)
  Rational shrinkage_st;    // st(c)
  LCNumber bayes_B;         // Bayes risk of x -> c x under N(0, K^2 I_d)
  LCNumber bayes_M;         // Bayes risk of x -> x under the same prior
  LCNumber gap;             // d / (K^2 + 1)
  bool gap_infinitesimal = false;
  // Pointwise risk r(theta) = constant + quadratic * |theta|^2.
  LCNumber risk_constant_B, risk_quadratic_B;
  Rational risk_constant_M, risk_quadratic_M;
  LCNumber epsilon;  // 1 / (K^2 + 1)
  RegularityVerdict regularity;
  BlythCertificate blyth;
  std::string closed_form_bayes_B, closed_form_gap;
};

// Throws NotInfinite if valuation(K) >= 0 and OutsideDomain for dim < 1.
NormalLocationReport normal_location_report(int dim, const LCNumber& K);

struct BernoulliPriorCase {
  std::vector<Rational> states;  // support
  std::vector<Rational> weights;
  BernoulliRule optimal;
  Rational optimal_bayes_risk;
  Rational zero_rule_bayes_risk;
  bool components_positive = false;
  bool zero_rule_strictly_worse = false;
};

struct BernoulliBoundaryReport {
  LCNumber lc_bayes_risk;  // risk of (0, 0) at the point prior eps
  Rational lc_bayes_risk_st;
  Rational risk_at_half;  // r(1/2, (0, 0))
  Rational risk_at_zero;  // r(0, (0, 0))
  std::vector<BernoulliPriorCase> prior_cases;
  bool non_bayes_on_grid = false;  // every case has positive components and a strict gap
  std::size_t challengers_checked = 0;
  std::vector<Rational> domination_states;
  std::vector<BernoulliRule> dominators;  // challengers 0-dominating (0, 0) on the state grid
  BlythCertificate blyth;
};

/// `max_n` sets the state grid {1/n : n = 1..max_n} U {0} for the
/// no-domination check; challengers are {(i/20, j/20)}.
BernoulliBoundaryReport bernoulli_boundary_report(int order = LCNumber::kDefaultOrder, int max_n = 40);

// The priors enumerated by bernoulli_boundary_report on {0} U {1/10, ..., 1}.
std::vector<std::pair<std::vector<Rational>, std::vector<Rational>>> bernoulli_grid_priors();

// Posterior-mean rule for a prior on [0, 1] (weights over `states`).
BernoulliRule bernoulli_bayes_rule(const std::vector<Rational>& states, const std::vector<Rational>& weights);

}  // namespace nsbayes
