#pragma once

#include <concepts>
#include <map>
#include <vector>

#include "nsbayes/admissibility.hpp"
#include "nsbayes/decision.hpp"
#include "nsbayes/lc_number.hpp"
#include "nsbayes/lp.hpp"

namespace nsbayes {

/// Zero-sum game between nature (choosing a prior) and the statistician,
/// scored relative to a fixed procedure d:
///   value = max_pi min_d' [ r(pi, d') - r(pi, d) ]  (<= 0, = -epsilon_star).
/// The optimal pi is the normal of a hyperplane separating d's risk point,
/// shifted by epsilon_star, from the risk set.
struct GameAnalysis {
  Rational value;
  Prior<Rational> witness_prior;
  std::vector<std::size_t> best_responses;  // Bayes action per observation under witness_prior
  Rational slack;                           // max(0, -value): d is slack-Bayes w.r.t. witness_prior
  // The LP returns one basic optimum; when value < 0 other optimal priors exist.
  bool prior_may_be_nonunique = false;
};

GameAnalysis synthesize_prior(const FiniteProblem& p, const Procedure& d);

// Variables pi_theta (>= 0) followed by m_x (free).
lp::LPProblem prior_game_lp(const FiniteProblem& p, const Procedure& d);

/// r(pi, d) <= min over randomized d' of r(pi, d') + epsilon, in whichever
/// field the problem, prior, and epsilon live.
template <OrderedScalar T, OrderedScalar W, OrderedScalar E>
bool verify_epsilon_bayes(const FiniteProblemT<T>& p, const Procedure& d, const Prior<W>& prior,
                          const E& epsilon) {
  const auto actual = bayes_risk(p, d, prior);
  const auto best = minimum_bayes_risk(p, prior);
  return actual <= best + epsilon;
}

struct ClassificationReport {
  Procedure procedure;
  AdmissibilityVerdict verdict;
  GameAnalysis game;
  bool bayes = false;  // exactly Bayes w.r.t. the witness prior
};

// Throws CertificateFailure if value + epsilon_star != 0 or a flag
// combination is inconsistent.
ClassificationReport classify(const FiniteProblem& p, const Procedure& d);

/// Prior with finite support on non-Archimedean parameter points.
struct LCPrior {
  std::vector<std::vector<LCNumber>> support;
  std::vector<LCNumber> weights;

  // Throws WeightError / SupportMismatch.
  void validate() const;
};

/// Standard prior on rational parameter points.
struct StandardPrior {
  std::vector<std::vector<Rational>> points;
  std::vector<Rational> weights;
};

/// Maps each support point to its standard part and sums the weights of
/// points that collapse together; returns standard parts of the summed
/// weights. Throws NotNearStandard when a coordinate is infinite.
StandardPrior pushdown(const LCPrior& prior);

/// A parametric family evaluates risk at a point in either field.
template <class F>
concept RiskFamily = requires(const F& f, const typename F::Params& params, const std::vector<LCNumber>& lc,
                              const std::vector<Rational>& q) {
  { f.risk(params, lc) } -> std::same_as<LCNumber>;
  { f.risk(params, q) } -> std::same_as<Rational>;
};

struct PushdownConsistency {
  LCNumber lc_bayes_risk;
  Rational pushdown_bayes_risk;
  bool consistent = false;  // st(lc_bayes_risk) == pushdown_bayes_risk
};

template <RiskFamily F>
PushdownConsistency pushdown_risk_consistency(const F& family, const typename F::Params& params,
                                              const LCPrior& prior) {
  prior.validate();
  PushdownConsistency out;
  out.lc_bayes_risk = prior.weights.front() * family.risk(params, prior.support.front());
  for (std::size_t i = 1; i < prior.support.size(); ++i) {
    out.lc_bayes_risk = out.lc_bayes_risk + prior.weights[i] * family.risk(params, prior.support[i]);
  }
  const StandardPrior standard = pushdown(prior);
  for (std::size_t i = 0; i < standard.points.size(); ++i) {
    out.pushdown_bayes_risk += standard.weights[i] * family.risk(params, standard.points[i]);
  }
  out.consistent = out.lc_bayes_risk.is_near_standard() &&
                   out.lc_bayes_risk.standard_part() == out.pushdown_bayes_risk;
  return out;
}

}  // namespace nsbayes
