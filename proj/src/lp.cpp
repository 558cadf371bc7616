#include "nsbayes/lp.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>

#include "nsbayes/errors.hpp"

namespace nsbayes::lp {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Problem in equality form  A x = b, x >= 0, b >= 0, with an identity column
// (slack or artificial) per row for the starting basis.
struct Standardized {
  std::size_t num_structural = 0;
  std::size_t num_slack = 0;
  std::size_t num_artificial = 0;
  // Original variable j maps to +column plus/-column minus (minus == kNone when
  // the variable has lower bound zero).
  std::vector<std::size_t> plus_column, minus_column;
  // Extended row r is original row r (r < num_rows) or the upper-bound row of
  // variable ub_variable[r - num_rows]; flip[r] is -1 when the row was negated.
  std::vector<std::size_t> ub_variable;
  std::vector<int> flip;
  std::vector<std::size_t> initial_column;
  Matrix<Rational> tableau;  // rows x (columns + 1); last column is the rhs
  std::vector<std::size_t> basis;

  std::size_t num_columns() const { return num_structural + num_slack + num_artificial; }
  bool is_artificial(std::size_t col) const { return col >= num_structural + num_slack; }
};

Standardized standardize(const LPProblem& p) {
  Standardized s;
  const std::size_t n = p.num_variables();
  for (std::size_t j = 0; j < n; ++j) {
    s.plus_column.push_back(s.num_structural++);
    s.minus_column.push_back(p.bounds[j].lower_is_zero ? kNone : s.num_structural++);
  }

  Matrix<Rational> rows;
  std::vector<Relation> rel;
  std::vector<Rational> rhs;
  auto add_row = [&](const std::vector<Rational>& coeffs, Relation r, const Rational& b) {
    std::vector<Rational> row(s.num_structural);
    for (std::size_t j = 0; j < n; ++j) {
      row[s.plus_column[j]] = coeffs[j];
      if (s.minus_column[j] != kNone) row[s.minus_column[j]] = -coeffs[j];
    }
    int f = 1;
    Rational bb = b;
    if (bb < 0) {
      f = -1;
      bb = -bb;
      for (auto& v : row) v = -v;
      if (r == Relation::kLessEqual) {
        r = Relation::kGreaterEqual;
      } else if (r == Relation::kGreaterEqual) {
        r = Relation::kLessEqual;
      }
    }
    rows.push_back(std::move(row));
    rel.push_back(r);
    rhs.push_back(bb);
    s.flip.push_back(f);
  };
  for (std::size_t i = 0; i < p.num_rows(); ++i) add_row(p.rows[i], p.relations[i], p.rhs[i]);
  for (std::size_t j = 0; j < n; ++j) {
    if (!p.bounds[j].upper) continue;
    std::vector<Rational> unit(n);
    unit[j] = 1;
    add_row(unit, Relation::kLessEqual, *p.bounds[j].upper);
    s.ub_variable.push_back(j);
  }

  const std::size_t m = rows.size();
  for (Relation r : rel) {
    if (r != Relation::kEqual) ++s.num_slack;
    if (r != Relation::kLessEqual) ++s.num_artificial;
  }
  const std::size_t cols = s.num_columns();
  s.tableau.assign(m, std::vector<Rational>(cols + 1));
  s.basis.assign(m, kNone);
  s.initial_column.assign(m, kNone);
  std::size_t next_slack = s.num_structural;
  std::size_t next_art = s.num_structural + s.num_slack;
  for (std::size_t i = 0; i < m; ++i) {
    auto& t = s.tableau[i];
    for (std::size_t j = 0; j < s.num_structural; ++j) t[j] = rows[i][j];
    t[cols] = rhs[i];
    switch (rel[i]) {
      case Relation::kLessEqual:
        t[next_slack] = 1;
        s.basis[i] = next_slack++;
        break;
      case Relation::kGreaterEqual:
        t[next_slack++] = -1;
        t[next_art] = 1;
        s.basis[i] = next_art++;
        break;
      case Relation::kEqual:
        t[next_art] = 1;
        s.basis[i] = next_art++;
        break;
    }
    s.initial_column[i] = s.basis[i];
  }
  return s;
}

void pivot(Standardized& s, std::size_t row, std::size_t col) {
  auto& pr = s.tableau[row];
  const Rational inv = 1 / pr[col];
  for (auto& v : pr) v *= inv;
  for (std::size_t i = 0; i < s.tableau.size(); ++i) {
    if (i == row) continue;
    auto& r = s.tableau[i];
    if (r[col] == 0) continue;
    const Rational factor = r[col];
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (pr[j] != 0) r[j] -= factor * pr[j];
    }
  }
  s.basis[row] = col;
}

Rational reduced_cost(const Standardized& s, const std::vector<Rational>& cost, std::size_t col) {
  Rational d = cost[col];
  for (std::size_t i = 0; i < s.tableau.size(); ++i) {
    if (cost[s.basis[i]] != 0 && s.tableau[i][col] != 0) d -= cost[s.basis[i]] * s.tableau[i][col];
  }
  return d;
}

// Maximizes cost over the current basis. Returns kNone at optimality or the
// entering column that proved unboundedness.
std::size_t run_simplex(Standardized& s, const std::vector<Rational>& cost, bool allow_artificial) {
  const std::size_t cols = s.num_columns();
  std::vector<bool> in_basis(cols, false);
  for (;;) {
    std::fill(in_basis.begin(), in_basis.end(), false);
    for (std::size_t b : s.basis) in_basis[b] = true;
    std::size_t entering = kNone;
    for (std::size_t j = 0; j < cols; ++j) {
      if (in_basis[j] || (!allow_artificial && s.is_artificial(j))) continue;
      if (reduced_cost(s, cost, j) > 0) {
        entering = j;
        break;
      }
    }
    if (entering == kNone) return kNone;

    std::size_t leaving = kNone;
    Rational best_ratio;
    for (std::size_t i = 0; i < s.tableau.size(); ++i) {
      const Rational& a = s.tableau[i][entering];
      if (a <= 0) continue;
      Rational ratio = s.tableau[i][cols] / a;
      if (leaving == kNone || ratio < best_ratio ||
          (ratio == best_ratio && s.basis[i] < s.basis[leaving])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving == kNone) return entering;
    pivot(s, leaving, entering);
  }
}

std::vector<Rational> column_values(const Standardized& s) {
  std::vector<Rational> x(s.num_columns());
  const std::size_t rhs = s.num_columns();
  for (std::size_t i = 0; i < s.tableau.size(); ++i) x[s.basis[i]] = s.tableau[i][rhs];
  return x;
}

std::vector<Rational> to_original(const Standardized& s, const std::vector<Rational>& x) {
  std::vector<Rational> out(s.plus_column.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = x[s.plus_column[j]];
    if (s.minus_column[j] != kNone) out[j] -= x[s.minus_column[j]];
  }
  return out;
}

// y_i = c_B B^-1 e_i, read off the columns that formed the starting identity.
void extract_duals(const Standardized& s, const std::vector<Rational>& cost, std::size_t num_rows,
                   LPSolution& out) {
  const std::size_t m = s.tableau.size();
  out.duals.assign(num_rows, 0);
  out.upper_bound_duals.assign(s.plus_column.size(), 0);
  for (std::size_t r = 0; r < m; ++r) {
    Rational y;
    for (std::size_t i = 0; i < m; ++i) {
      const Rational& c = cost[s.basis[i]];
      if (c != 0) y += c * s.tableau[i][s.initial_column[r]];
    }
    y *= s.flip[r];
    if (r < num_rows) {
      out.duals[r] = y;
    } else {
      out.upper_bound_duals[s.ub_variable[r - num_rows]] = y;
    }
  }
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational out;
  for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
  return out;
}

}  // namespace

void LPProblem::validate() const {
  const std::size_t n = objective.size();
  if (bounds.size() != n) throw MalformedProblem("bounds length differs from objective length");
  if (relations.size() != rows.size() || rhs.size() != rows.size()) {
    throw MalformedProblem("relations/rhs length differs from row count");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) {
      throw MalformedProblem("row " + std::to_string(i) + " length differs from objective length");
    }
  }
}

LPSolution solve(const LPProblem& p) {
  p.validate();
  Standardized s = standardize(p);
  const std::size_t cols = s.num_columns();
  LPSolution out;

  std::vector<Rational> phase1(cols);
  for (std::size_t j = s.num_structural + s.num_slack; j < cols; ++j) phase1[j] = -1;
  if (s.num_artificial > 0) {
    run_simplex(s, phase1, true);
    Rational infeasibility;
    for (std::size_t i = 0; i < s.tableau.size(); ++i) {
      if (s.is_artificial(s.basis[i])) infeasibility += s.tableau[i][cols];
    }
    if (infeasibility > 0) {
      out.status = Status::kInfeasible;
      extract_duals(s, phase1, p.num_rows(), out);
      return out;
    }
    // Drive zero-level artificials out where a real column can replace them.
    for (std::size_t i = 0; i < s.tableau.size(); ++i) {
      if (!s.is_artificial(s.basis[i])) continue;
      for (std::size_t j = 0; j < s.num_structural + s.num_slack; ++j) {
        if (s.tableau[i][j] != 0) {
          pivot(s, i, j);
          break;
        }
      }
    }
  }

  std::vector<Rational> phase2(cols);
  for (std::size_t j = 0; j < p.num_variables(); ++j) {
    phase2[s.plus_column[j]] = p.objective[j];
    if (s.minus_column[j] != kNone) phase2[s.minus_column[j]] = -p.objective[j];
  }
  std::size_t unbounded_col = run_simplex(s, phase2, false);
  out.primal = to_original(s, column_values(s));
  if (unbounded_col != kNone) {
    out.status = Status::kUnbounded;
    std::vector<Rational> direction(cols);
    direction[unbounded_col] = 1;
    for (std::size_t i = 0; i < s.tableau.size(); ++i) {
      direction[s.basis[i]] = -s.tableau[i][unbounded_col];
    }
    out.ray = to_original(s, direction);
    out.objective_value = dot(p.objective, out.primal);
    return out;
  }
  out.status = Status::kOptimal;
  out.objective_value = dot(p.objective, out.primal);
  extract_duals(s, phase2, p.num_rows(), out);
  return out;
}

std::string verify_certificate(const LPProblem& p, const LPSolution& sol) {
  const std::size_t n = p.num_variables();
  const std::size_t m = p.num_rows();

  auto primal_feasible = [&](const std::vector<Rational>& x) -> std::string {
    if (x.size() != n) return "primal has wrong length";
    for (std::size_t j = 0; j < n; ++j) {
      if (p.bounds[j].lower_is_zero && x[j] < 0) return "x[" + std::to_string(j) + "] < 0";
      if (p.bounds[j].upper && x[j] > *p.bounds[j].upper) {
        return "x[" + std::to_string(j) + "] above upper bound";
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      Rational lhs = dot(p.rows[i], x);
      bool ok = p.relations[i] == Relation::kLessEqual      ? lhs <= p.rhs[i]
                : p.relations[i] == Relation::kGreaterEqual ? lhs >= p.rhs[i]
                                                            : lhs == p.rhs[i];
      if (!ok) return "row " + std::to_string(i) + " violated";
    }
    return {};
  };

  // Sign conventions on y, w, and the aggregated column sums A^T y + w.
  auto dual_signs = [&](std::vector<Rational>& column_sums, Rational& bound) -> std::string {
    if (sol.duals.size() != m || sol.upper_bound_duals.size() != n) return "dual has wrong length";
    for (std::size_t i = 0; i < m; ++i) {
      const Rational& y = sol.duals[i];
      if (p.relations[i] == Relation::kLessEqual && y < 0) return "negative dual on <= row";
      if (p.relations[i] == Relation::kGreaterEqual && y > 0) return "positive dual on >= row";
    }
    column_sums.assign(n, 0);
    bound = dot(p.rhs, sol.duals);
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& w = sol.upper_bound_duals[j];
      if (w < 0) return "negative upper-bound dual";
      if (!p.bounds[j].upper && w != 0) return "upper-bound dual on unbounded variable";
      if (p.bounds[j].upper) bound += w * *p.bounds[j].upper;
      column_sums[j] = w;
      for (std::size_t i = 0; i < m; ++i) column_sums[j] += p.rows[i][j] * sol.duals[i];
    }
    return {};
  };

  switch (sol.status) {
    case Status::kOptimal: {
      if (auto e = primal_feasible(sol.primal); !e.empty()) return e;
      std::vector<Rational> g;
      Rational dual_value;
      if (auto e = dual_signs(g, dual_value); !e.empty()) return e;
      for (std::size_t j = 0; j < n; ++j) {
        if (p.bounds[j].lower_is_zero ? g[j] < p.objective[j] : g[j] != p.objective[j]) {
          return "dual constraint " + std::to_string(j) + " violated";
        }
        // complementary slackness on the variable side
        if (g[j] != p.objective[j] && sol.primal[j] != 0) {
          return "complementary slackness fails at variable " + std::to_string(j);
        }
        if (sol.upper_bound_duals[j] != 0 && sol.primal[j] != *p.bounds[j].upper) {
          return "complementary slackness fails at upper bound " + std::to_string(j);
        }
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (sol.duals[i] != 0 && dot(p.rows[i], sol.primal) != p.rhs[i]) {
          return "complementary slackness fails at row " + std::to_string(i);
        }
      }
      const Rational primal_value = dot(p.objective, sol.primal);
      if (primal_value != sol.objective_value) return "objective value mismatch";
      if (primal_value != dual_value) return "duality gap is nonzero";
      return {};
    }
    case Status::kInfeasible: {
      std::vector<Rational> g;
      Rational bound;
      if (auto e = dual_signs(g, bound); !e.empty()) return e;
      for (std::size_t j = 0; j < n; ++j) {
        if (p.bounds[j].lower_is_zero ? g[j] < 0 : g[j] != 0) {
          return "Farkas column condition fails at variable " + std::to_string(j);
        }
      }
      if (bound >= 0) return "Farkas bound is not negative";
      return {};
    }
    case Status::kUnbounded: {
      if (auto e = primal_feasible(sol.primal); !e.empty()) return e;
      if (sol.ray.size() != n) return "ray has wrong length";
      for (std::size_t j = 0; j < n; ++j) {
        if (p.bounds[j].lower_is_zero && sol.ray[j] < 0) return "ray leaves lower bound";
        if (p.bounds[j].upper && sol.ray[j] > 0) return "ray leaves upper bound";
      }
      for (std::size_t i = 0; i < m; ++i) {
        Rational lhs = dot(p.rows[i], sol.ray);
        bool ok = p.relations[i] == Relation::kLessEqual      ? lhs <= 0
                  : p.relations[i] == Relation::kGreaterEqual ? lhs >= 0
                                                              : lhs == 0;
        if (!ok) return "ray violates row " + std::to_string(i);
      }
      if (dot(p.objective, sol.ray) <= 0) return "ray does not improve the objective";
      return {};
    }
  }
  return "unknown status";
}

LPSolution solve_verified(const LPProblem& problem) {
  LPSolution sol = solve(problem);
  if (auto e = verify_certificate(problem, sol); !e.empty()) {
    throw CertificateFailure("LP certificate rejected: " + e);
  }
  return sol;
}

std::string to_string(Status status) {
  switch (status) {
    case Status::kOptimal:
      return "Optimal";
    case Status::kInfeasible:
      return "Infeasible";
    case Status::kUnbounded:
      return "Unbounded";
  }
  return "?";
}

}  // namespace nsbayes::lp
