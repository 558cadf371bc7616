#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsbayes/rational.hpp"

namespace nsbayes::lp {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class Status { kOptimal, kInfeasible, kUnbounded };

struct VariableBounds {
  bool lower_is_zero = true;  // otherwise the variable is unbounded below
  std::optional<Rational> upper;
};

/// maximize objective . x  subject to  rows[i] . x (relation[i]) rhs[i]
/// and per-variable bounds.
struct LPProblem {
  std::vector<Rational> objective;
  Matrix<Rational> rows;
  std::vector<Relation> relations;
  std::vector<Rational> rhs;
  std::vector<VariableBounds> bounds;

  std::size_t num_variables() const { return objective.size(); }
  std::size_t num_rows() const { return rows.size(); }

  // Throws MalformedProblem on any dimension mismatch.
  void validate() const;
};

/// Result of solve(). Dual conventions for a maximization problem:
/// row duals are >= 0 on <= rows, <= 0 on >= rows, free on = rows; upper-bound
/// duals are >= 0 and are zero for variables without a finite upper bound.
///
/// Optimal:    primal, duals, upper_bound_duals; objective == rhs.y + upper.w.
/// Infeasible: duals/upper_bound_duals hold a Farkas certificate: the same
///             sign pattern, A^T y + w >= 0 (== 0 on free variables) and
///             rhs.y + upper.w < 0.
/// Unbounded:  primal is a feasible point and ray an improving direction.
struct LPSolution {
  Status status = Status::kInfeasible;
  std::vector<Rational> primal;
  Rational objective_value;
  std::vector<Rational> duals;
  std::vector<Rational> upper_bound_duals;
  std::vector<Rational> ray;
};

// Dense two-phase primal simplex with Bland's rule, exact throughout.
LPSolution solve(const LPProblem& problem);

/// Independent exact re-check of a solution's certificate. Returns an empty
/// string when valid, otherwise a description of the first violation.
std::string verify_certificate(const LPProblem& problem, const LPSolution& solution);

// solve() followed by verify_certificate(); throws CertificateFailure.
LPSolution solve_verified(const LPProblem& problem);

std::string to_string(Status status);

}  // namespace nsbayes::lp
