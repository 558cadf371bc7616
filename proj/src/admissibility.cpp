#include "nsbayes/admissibility.hpp"

namespace nsbayes {
namespace {

std::size_t rule_variables(const FiniteProblem& p) { return p.num_observations() * p.num_actions(); }

// Coefficient of D(x, a) in r(theta, D).
Rational risk_coefficient(const FiniteProblem& p, std::size_t theta, std::size_t x, std::size_t a) {
  return p.model(theta, x) * p.loss(theta, a);
}

// Shared skeleton: one risk row per state, then one simplex row per
// observation; `extra` trailing variables with the given bounds.
lp::LPProblem rule_lp(const FiniteProblem& p, std::size_t extra, bool extra_free) {
  const std::size_t nd = rule_variables(p);
  lp::LPProblem lp;
  lp.objective.assign(nd + extra, 0);
  lp.bounds.assign(nd + extra, lp::VariableBounds{});
  for (std::size_t k = nd; k < nd + extra; ++k) lp.bounds[k].lower_is_zero = !extra_free;
  for (std::size_t theta = 0; theta < p.num_states(); ++theta) {
    std::vector<Rational> row(nd + extra);
    for (std::size_t x = 0; x < p.num_observations(); ++x) {
      for (std::size_t a = 0; a < p.num_actions(); ++a) {
        row[x * p.num_actions() + a] = risk_coefficient(p, theta, x, a);
      }
    }
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(0);  // set by the caller
    lp.relations.push_back(lp::Relation::kLessEqual);
  }
  for (std::size_t x = 0; x < p.num_observations(); ++x) {
    std::vector<Rational> row(nd + extra);
    for (std::size_t a = 0; a < p.num_actions(); ++a) row[x * p.num_actions() + a] = 1;
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(1);
    lp.relations.push_back(lp::Relation::kEqual);
  }
  return lp;
}

Procedure rule_from_solution(const FiniteProblem& p, const std::vector<Rational>& primal) {
  Matrix<Rational> m(p.num_observations(), std::vector<Rational>(p.num_actions()));
  for (std::size_t x = 0; x < p.num_observations(); ++x) {
    for (std::size_t a = 0; a < p.num_actions(); ++a) m[x][a] = primal[x * p.num_actions() + a];
  }
  return Procedure::simplified(std::move(m));
}

}  // namespace

bool check_domination(const DominationQuery& q, const Procedure& challenger) {
  if (q.epsilon < 0) throw WeightError("epsilon must be nonnegative");
  const auto base = risk_vector(q.problem, q.candidate);
  const auto other = risk_vector(q.problem, challenger);
  bool differs = false;
  for (std::size_t s = 0; s < base.size(); ++s) {
    if (other[s] > base[s] - q.epsilon) return false;
    differs = differs || other[s] != base[s];
  }
  return q.epsilon > 0 || differs;
}

std::optional<Procedure> find_dominator(const DominationQuery& q) {
  if (q.challengers) {
    for (const Procedure& c : *q.challengers) {
      if (check_domination(q, c)) return c;
    }
    return std::nullopt;
  }
  if (q.epsilon == 0) {
    return check_admissible(q.problem, q.candidate).witness;
  }
  UniformImprovement best = max_uniform_improvement(q.problem, q.candidate);
  if (best.epsilon_star >= q.epsilon) return best.witness;
  return std::nullopt;
}

lp::LPProblem uniform_improvement_lp(const FiniteProblem& p, const Procedure& d) {
  lp::LPProblem lp = rule_lp(p, 1, /*extra_free=*/true);
  const std::size_t eps = rule_variables(p);
  lp.objective[eps] = 1;
  for (std::size_t theta = 0; theta < p.num_states(); ++theta) {
    lp.rows[theta][eps] = 1;
    lp.rhs[theta] = risk(p, d, theta);
  }
  return lp;
}

lp::LPProblem admissibility_lp(const FiniteProblem& p, const Procedure& d) {
  lp::LPProblem lp = rule_lp(p, p.num_states(), /*extra_free=*/false);
  const std::size_t nd = rule_variables(p);
  for (std::size_t theta = 0; theta < p.num_states(); ++theta) {
    lp.objective[nd + theta] = 1;
    lp.rows[theta][nd + theta] = 1;
    lp.relations[theta] = lp::Relation::kEqual;
    lp.rhs[theta] = risk(p, d, theta);
  }
  return lp;
}

UniformImprovement max_uniform_improvement(const FiniteProblem& p, const Procedure& d) {
  d.check_shape(p.num_observations(), p.num_actions());
  const lp::LPSolution sol = lp::solve_verified(uniform_improvement_lp(p, d));
  if (sol.status != lp::Status::kOptimal) {
    throw CertificateFailure("uniform improvement LP is " + lp::to_string(sol.status));
  }
  return {sol.objective_value, rule_from_solution(p, sol.primal)};
}

AdmissibilityVerdict check_admissible(const FiniteProblem& p, const Procedure& d) {
  d.check_shape(p.num_observations(), p.num_actions());
  AdmissibilityVerdict v;
  const lp::LPSolution sol = lp::solve_verified(admissibility_lp(p, d));
  if (sol.status != lp::Status::kOptimal) {
    throw CertificateFailure("admissibility LP is " + lp::to_string(sol.status));
  }
  if (sol.objective_value > 0) {
    v.admissible = false;
    v.witness = rule_from_solution(p, sol.primal);
  }
  UniformImprovement u = max_uniform_improvement(p, d);
  v.epsilon_star = u.epsilon_star;
  if (u.epsilon_star > 0) {
    v.extended_admissible = false;
    v.uniform_witness = u.witness;
  }
  return v;
}

bool check_lc_domination(const std::vector<LCNumber>& risks_a, const std::vector<LCNumber>& risks_b,
                         const LCNumber& epsilon, DominationMode mode,
                         const std::vector<bool>& standard_tags) {
  if (risks_a.size() != risks_b.size() || risks_a.size() != standard_tags.size()) {
    throw ShapeMismatch("risk vectors and tags must have equal length");
  }
  bool separated = false;
  for (std::size_t k = 0; k < risks_a.size(); ++k) {
    const bool designated = mode == DominationMode::kOnAll || standard_tags[k];
    // untruncated a - b - epsilon >= 0
    if (designated && exact_difference(exact_difference(risks_a[k], risks_b[k]), epsilon).sign() < 0) {
      return false;
    }
    if (standard_tags[k] && !approx_equal(risks_b[k], risks_a[k])) separated = true;
  }
  return separated;
}

}  // namespace nsbayes
