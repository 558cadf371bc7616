#include "nsbayes/prior_synthesis.hpp"

#include <algorithm>

namespace nsbayes {

lp::LPProblem prior_game_lp(const FiniteProblem& p, const Procedure& d) {
  const std::size_t ns = p.num_states();
  const std::size_t nx = p.num_observations();
  const std::vector<Rational> r = risk_vector(p, d);
  lp::LPProblem lp;
  lp.objective.assign(ns + nx, 0);
  lp.bounds.assign(ns + nx, lp::VariableBounds{});
  for (std::size_t s = 0; s < ns; ++s) lp.objective[s] = -r[s];
  for (std::size_t x = 0; x < nx; ++x) {
    lp.objective[ns + x] = 1;
    lp.bounds[ns + x].lower_is_zero = false;
  }
  std::vector<Rational> simplex(ns + nx);
  std::fill(simplex.begin(), simplex.begin() + static_cast<std::ptrdiff_t>(ns), Rational(1));
  lp.rows.push_back(std::move(simplex));
  lp.relations.push_back(lp::Relation::kEqual);
  lp.rhs.push_back(1);
  // m_x <= sum_theta pi_theta P_theta(x) l(theta, a) for every action
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t a = 0; a < p.num_actions(); ++a) {
      std::vector<Rational> row(ns + nx);
      for (std::size_t s = 0; s < ns; ++s) row[s] = -(p.model(s, x) * p.loss(s, a));
      row[ns + x] = 1;
      lp.rows.push_back(std::move(row));
      lp.relations.push_back(lp::Relation::kLessEqual);
      lp.rhs.push_back(0);
    }
  }
  return lp;
}

GameAnalysis synthesize_prior(const FiniteProblem& p, const Procedure& d) {
  d.check_shape(p.num_observations(), p.num_actions());
  const lp::LPSolution sol = lp::solve_verified(prior_game_lp(p, d));
  if (sol.status != lp::Status::kOptimal) {
    throw CertificateFailure("prior game LP is " + lp::to_string(sol.status));
  }
  GameAnalysis g;
  g.value = sol.objective_value;
  g.witness_prior = Prior<Rational>::dense({sol.primal.begin(),
                                            sol.primal.begin() + static_cast<std::ptrdiff_t>(p.num_states())});
  g.best_responses = bayes_actions(p, g.witness_prior);
  g.slack = g.value < 0 ? Rational(-g.value) : Rational(0);
  g.prior_may_be_nonunique = g.value < 0;
  return g;
}

ClassificationReport classify(const FiniteProblem& p, const Procedure& d) {
  ClassificationReport report{d, check_admissible(p, d), synthesize_prior(p, d), false};
  const auto& v = report.verdict;
  const auto& g = report.game;
  if (g.value + v.epsilon_star != 0) {
    throw CertificateFailure("game value and uniform improvement are not dual: v* = " + to_string(g.value) +
                             ", eps* = " + to_string(v.epsilon_star));
  }
  if (!verify_epsilon_bayes(p, d, g.witness_prior, g.slack)) {
    throw CertificateFailure("witness prior fails the epsilon-Bayes check");
  }
  report.bayes = g.slack == 0;
  if (report.bayes != v.extended_admissible || (v.admissible && !v.extended_admissible)) {
    throw CertificateFailure("inconsistent admissibility and Bayes flags");
  }
  return report;
}

void LCPrior::validate() const {
  if (support.empty() || support.size() != weights.size()) {
    throw SupportMismatch("prior needs one weight per support point");
  }
  for (const auto& pt : support) {
    if (pt.size() != support.front().size()) throw SupportMismatch("support points differ in dimension");
  }
  LCNumber total = weights.front();
  for (std::size_t i = 1; i < weights.size(); ++i) total = total + weights[i];
  for (const auto& w : weights) {
    if (w.sign() < 0) throw WeightError("negative prior weight " + w.to_string());
  }
  if (!(total == LCNumber(Rational(1), total.order()))) {
    throw WeightError("prior weights sum to " + total.to_string() + ", not 1");
  }
}

StandardPrior pushdown(const LCPrior& prior) {
  prior.validate();
  StandardPrior out;
  std::vector<LCNumber> mass;
  for (std::size_t i = 0; i < prior.support.size(); ++i) {
    std::vector<Rational> point;
    for (const LCNumber& c : prior.support[i]) {
      if (!c.is_near_standard()) {
        throw NotNearStandard("support point coordinate " + c.to_string() + " has no standard part");
      }
      point.push_back(c.standard_part());
    }
    auto it = std::find(out.points.begin(), out.points.end(), point);
    if (it == out.points.end()) {
      out.points.push_back(std::move(point));
      mass.push_back(prior.weights[i]);
    } else {
      auto k = static_cast<std::size_t>(it - out.points.begin());
      mass[k] = mass[k] + prior.weights[i];
    }
  }
  // Infinitesimal-mass groups vanish in the pushdown.
  std::vector<std::vector<Rational>> points;
  for (std::size_t k = 0; k < mass.size(); ++k) {
    Rational w = mass[k].standard_part();
    if (w == 0) continue;
    points.push_back(out.points[k]);
    out.weights.push_back(w);
  }
  out.points = std::move(points);
  return out;
}

}  // namespace nsbayes
