#pragma once

#include <optional>
#include <vector>

#include "nsbayes/decision.hpp"
#include "nsbayes/lc_number.hpp"
#include "nsbayes/lp.hpp"

namespace nsbayes {

/// Is `candidate` epsilon-dominated within a class of challengers? An empty
/// `challengers` list stands for every randomized procedure.
struct DominationQuery {
  FiniteProblem problem;
  Procedure candidate;
  Rational epsilon;
  std::optional<std::vector<Procedure>> challengers;
};

struct UniformImprovement {
  Rational epsilon_star;
  Procedure witness;
};

struct AdmissibilityVerdict {
  bool admissible = true;
  bool extended_admissible = true;
  // Largest uniform improvement over the candidate's risk; never negative
  // because the candidate itself is feasible.
  Rational epsilon_star;
  // A procedure that dominates the candidate, present iff !admissible.
  std::optional<Procedure> witness;
  // A procedure improving on the candidate by epsilon_star everywhere,
  // present iff !extended_admissible.
  std::optional<Procedure> uniform_witness;
};

// Clause 1: r(theta, challenger) <= r(theta, candidate) - epsilon for every
// theta. Clause 2 (only needed at epsilon == 0): some theta differs.
bool check_domination(const DominationQuery& query, const Procedure& challenger);

std::optional<Procedure> find_dominator(const DominationQuery& query);

/// max eps s.t. r(theta, D) <= r(theta, d) - eps for all theta, over all
/// randomized D. d is extended admissible iff the optimum is 0.
UniformImprovement max_uniform_improvement(const FiniteProblem& p, const Procedure& d);

AdmissibilityVerdict check_admissible(const FiniteProblem& p, const Procedure& d);

// LP encodings, exposed for tests and debugging dumps. Variables are the
// entries D(x, a) in row-major order followed by the extra unknowns.
lp::LPProblem uniform_improvement_lp(const FiniteProblem& p, const Procedure& d);
lp::LPProblem admissibility_lp(const FiniteProblem& p, const Procedure& d);

enum class DominationMode {
  kOnStandard,  // clause 1 only on the standard-tagged points
  kOnAll,       // clause 1 on every grid point
};

/// Nonstandard domination of a by b over a grid of evaluation points:
/// clause 1 `b <= a - epsilon` on the designated set, clause 2 `b !~ a` at
/// some standard-tagged point. Throws ShapeMismatch on length mismatch.
bool check_lc_domination(const std::vector<LCNumber>& risks_a, const std::vector<LCNumber>& risks_b,
                         const LCNumber& epsilon, DominationMode mode,
                         const std::vector<bool>& standard_tags);

}  // namespace nsbayes
