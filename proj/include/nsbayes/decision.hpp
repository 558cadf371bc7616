#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nsbayes/errors.hpp"
#include "nsbayes/rational.hpp"
#include "nsbayes/scalar.hpp"

namespace nsbayes {

struct StateInfo {
  std::string label;
  std::optional<std::vector<Rational>> coords;
};

struct ActionInfo {
  std::string label;
  std::optional<Rational> value;  // numeric embedding, when the action has one
};

/// Tabulated decision problem: states Theta, observations X, actions A, model
/// rows P_theta over X, and nonnegative loss l(theta, a). The scalar type is
/// Rational for ordinary problems and LCNumber when states sit at
/// non-Archimedean parameter values.
template <OrderedScalar T>
class FiniteProblemT {
 public:
  // Throws MalformedProblem when shapes disagree, a model row is not a
  // probability vector, or a loss entry is negative.
  static FiniteProblemT create(std::vector<StateInfo> states, std::vector<std::string> observations,
                               std::vector<ActionInfo> actions, Matrix<T> model, Matrix<T> loss);

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_observations() const { return observations_.size(); }
  std::size_t num_actions() const { return actions_.size(); }

  const std::vector<StateInfo>& states() const { return states_; }
  const std::vector<std::string>& observations() const { return observations_; }
  const std::vector<ActionInfo>& actions() const { return actions_; }
  const Matrix<T>& model() const { return model_; }
  const Matrix<T>& loss() const { return loss_; }
  const T& model(std::size_t state, std::size_t obs) const { return model_[state][obs]; }
  const T& loss(std::size_t state, std::size_t action) const { return loss_[state][action]; }

  bool has_action_embedding() const;

 private:
  std::vector<StateInfo> states_;
  std::vector<std::string> observations_;
  std::vector<ActionInfo> actions_;
  Matrix<T> model_;
  Matrix<T> loss_;
};

using FiniteProblem = FiniteProblemT<Rational>;
using LCFiniteProblem = FiniteProblemT<LCNumber>;

/// Decision rule: either a map X -> A or a row-stochastic |X| x |A| matrix.
/// Both kinds know their shape.
class Procedure {
 public:
  static Procedure nonrandomized(std::vector<std::size_t> map, std::size_t num_actions);
  // Throws WeightError unless every row is a probability vector.
  static Procedure randomized(Matrix<Rational> matrix);
  // Randomized rule with a 0/1 matrix collapses to its map.
  static Procedure simplified(Matrix<Rational> matrix);

  bool is_randomized() const { return std::holds_alternative<Matrix<Rational>>(rule_); }
  std::size_t num_observations() const { return num_observations_; }
  std::size_t num_actions() const { return num_actions_; }

  const std::vector<std::size_t>& map() const { return std::get<std::vector<std::size_t>>(rule_); }
  const Matrix<Rational>& matrix() const { return std::get<Matrix<Rational>>(rule_); }

  Rational probability(std::size_t obs, std::size_t action) const;
  Matrix<Rational> as_matrix() const;

  // Throws ShapeMismatch when the rule does not fit |X| x |A|.
  void check_shape(std::size_t num_observations, std::size_t num_actions) const;

  friend bool operator==(const Procedure&, const Procedure&) = default;

 private:
  Procedure() = default;
  std::variant<std::vector<std::size_t>, Matrix<Rational>> rule_;
  std::size_t num_observations_ = 0;
  std::size_t num_actions_ = 0;
};

/// Probability vector over a finite support of state indices.
template <OrderedScalar W>
struct Prior {
  std::vector<std::size_t> support;
  std::vector<W> weights;

  static Prior dense(std::vector<W> weights) {
    Prior p;
    for (std::size_t i = 0; i < weights.size(); ++i) p.support.push_back(i);
    p.weights = std::move(weights);
    return p;
  }
  static Prior point(std::size_t state, W one) {
    return Prior{{state}, {std::move(one)}};
  }

  // Throws SupportMismatch for bad indices, WeightError for bad weights.
  void validate(std::size_t num_states) const {
    if (support.size() != weights.size()) throw SupportMismatch("support and weights differ in length");
    std::vector<bool> seen(num_states, false);
    for (std::size_t s : support) {
      if (s >= num_states) throw SupportMismatch("prior support index " + std::to_string(s) + " out of range");
      if (seen[s]) throw SupportMismatch("duplicate prior support index " + std::to_string(s));
      seen[s] = true;
    }
    if (weights.empty()) throw WeightError("prior has empty support");
    W total = weights.front();
    for (std::size_t i = 1; i < weights.size(); ++i) total = total + weights[i];
    for (const W& w : weights) {
      if (w < ScalarOps<W>::lift(0, weights.front())) throw WeightError("negative prior weight");
    }
    if (!(total == ScalarOps<W>::lift(1, weights.front()))) throw WeightError("prior weights do not sum to 1");
  }

  // Weight of every state, zero off the support.
  std::vector<W> dense_weights(std::size_t num_states) const {
    std::vector<W> out(num_states, ScalarOps<W>::lift(0, weights.front()));
    for (std::size_t i = 0; i < support.size(); ++i) out[support[i]] = weights[i];
    return out;
  }
};

/// r(theta, d) = sum_x P_theta(x) sum_a d(x, a) l(theta, a).
template <OrderedScalar T>
T risk(const FiniteProblemT<T>& p, const Procedure& d, std::size_t state) {
  if (state >= p.num_states()) {
    throw IndexOutOfRange("state index " + std::to_string(state) + " out of range");
  }
  d.check_shape(p.num_observations(), p.num_actions());
  T total = ScalarOps<T>::lift(0, p.loss(state, 0));
  for (std::size_t x = 0; x < p.num_observations(); ++x) {
    const T& px = p.model(state, x);
    if (!d.is_randomized()) {
      total = total + scalar_mul<T>(px, p.loss(state, d.map()[x]));
      continue;
    }
    T inner = ScalarOps<T>::lift(0, px);
    for (std::size_t a = 0; a < p.num_actions(); ++a) {
      const Rational& w = d.matrix()[x][a];
      if (w != 0) inner = inner + scalar_mul<T>(p.loss(state, a), w);
    }
    total = total + scalar_mul<T>(px, inner);
  }
  return total;
}

template <OrderedScalar T>
std::vector<T> risk_vector(const FiniteProblemT<T>& p, const Procedure& d) {
  std::vector<T> out;
  out.reserve(p.num_states());
  for (std::size_t s = 0; s < p.num_states(); ++s) out.push_back(risk(p, d, s));
  return out;
}

/// r(pi, d) = sum_theta pi(theta) r(theta, d), in the prior's field when the
/// prior is non-Archimedean.
template <OrderedScalar T, OrderedScalar W>
CommonScalar<T, W> bayes_risk(const FiniteProblemT<T>& p, const Procedure& d, const Prior<W>& prior) {
  using R = CommonScalar<T, W>;
  prior.validate(p.num_states());
  R total = scalar_mul<R>(prior.weights.front(), risk(p, d, prior.support.front()));
  for (std::size_t i = 1; i < prior.support.size(); ++i) {
    total = total + scalar_mul<R>(prior.weights[i], risk(p, d, prior.support[i]));
  }
  return total;
}

/// Posterior-weighted loss of action a at observation x:
/// sum_theta pi(theta) P_theta(x) l(theta, a).
template <OrderedScalar T, OrderedScalar W>
CommonScalar<T, W> weighted_loss(const FiniteProblemT<T>& p, const Prior<W>& prior, std::size_t x,
                                 std::size_t a) {
  using R = CommonScalar<T, W>;
  R total = scalar_mul<R>(prior.weights.front(),
                          scalar_mul<T>(p.model(prior.support.front(), x), p.loss(prior.support.front(), a)));
  for (std::size_t i = 1; i < prior.support.size(); ++i) {
    const std::size_t s = prior.support[i];
    total = total + scalar_mul<R>(prior.weights[i], scalar_mul<T>(p.model(s, x), p.loss(s, a)));
  }
  return total;
}

// Per-observation Bayes actions (lowest index among ties).
template <OrderedScalar T, OrderedScalar W>
std::vector<std::size_t> bayes_actions(const FiniteProblemT<T>& p, const Prior<W>& prior) {
  prior.validate(p.num_states());
  std::vector<std::size_t> best(p.num_observations(), 0);
  for (std::size_t x = 0; x < p.num_observations(); ++x) {
    auto best_value = weighted_loss(p, prior, x, 0);
    for (std::size_t a = 1; a < p.num_actions(); ++a) {
      auto v = weighted_loss(p, prior, x, a);
      if (v < best_value) {
        best_value = v;
        best[x] = a;
      }
    }
  }
  return best;
}

/// min over randomized d' of r(pi, d'), which separates over observations:
/// sum_x min_a sum_theta pi(theta) P_theta(x) l(theta, a).
template <OrderedScalar T, OrderedScalar W>
CommonScalar<T, W> minimum_bayes_risk(const FiniteProblemT<T>& p, const Prior<W>& prior) {
  auto actions = bayes_actions(p, prior);
  auto total = weighted_loss(p, prior, 0, actions[0]);
  for (std::size_t x = 1; x < p.num_observations(); ++x) total = total + weighted_loss(p, prior, x, actions[x]);
  return total;
}

/// Row-wise mixture sum_i w_i d_i. Throws WeightError unless the weights are
/// a probability vector, ShapeMismatch when the procedures differ in shape.
Procedure convex_combine(std::span<const Procedure> procedures, std::span<const Rational> weights);

/// Replaces each row d(x, .) by the embedded action nearest to its mean
/// (ties go to the lower index). Nonrandomized input is returned unchanged.
/// Throws NoEmbedding when actions carry no numeric values.
Procedure derandomize(const FiniteProblem& p, const Procedure& d);

// True when every row's mean lands exactly on an embedded action, i.e.
// derandomize() did not have to snap.
bool derandomization_is_exact(const FiniteProblem& p, const Procedure& d);

// Every loss row, read along the sorted action embedding, has nondecreasing
// slopes (discrete second differences >= 0).
bool loss_convex_along_embedding(const FiniteProblem& p);

// Rational problem lifted into the Levi-Civita field with zero eps-parts.
LCFiniteProblem lift_problem(const FiniteProblem& p, int order = LCNumber::kDefaultOrder);

}  // namespace nsbayes
