#include <gtest/gtest.h>

#include "nsbayes/errors.hpp"
#include "nsbayes/lp.hpp"
#include "support.hpp"

using namespace nsbayes;
using namespace nsbayes::lp;
using nsbayes::fixtures::Rng;

namespace {

LPProblem make(std::vector<Rational> c, Matrix<Rational> rows, std::vector<Relation> rel, std::vector<Rational> rhs) {
  LPProblem p;
  p.bounds.assign(c.size(), VariableBounds{});
  p.objective = std::move(c);
  p.rows = std::move(rows);
  p.relations = std::move(rel);
  p.rhs = std::move(rhs);
  return p;
}

constexpr auto LE = Relation::kLessEqual;
constexpr auto GE = Relation::kGreaterEqual;
constexpr auto EQ = Relation::kEqual;

// Solve a square system exactly; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(Matrix<Rational> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

bool feasible(const LPProblem& p, const std::vector<Rational>& x) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < 0) return false;
  }
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    Rational lhs;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += p.rows[i][j] * x[j];
    if (p.relations[i] == LE && lhs > p.rhs[i]) return false;
    if (p.relations[i] == GE && lhs < p.rhs[i]) return false;
    if (p.relations[i] == EQ && lhs != p.rhs[i]) return false;
  }
  return true;
}

// Best feasible vertex of {x >= 0, rows}: every choice of n tight
// constraints among the rows and the coordinate planes.
std::optional<Rational> vertex_oracle(const LPProblem& p) {
  const std::size_t n = p.objective.size();
  Matrix<Rational> all = p.rows;
  std::vector<Rational> rhs = p.rhs;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> e(n);
    e[j] = 1;
    all.push_back(e);
    rhs.push_back(0);
  }
  std::optional<Rational> best;
  const std::size_t m = all.size();
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t start) {
    if (k == n) {
      Matrix<Rational> a;
      std::vector<Rational> b;
      for (auto i : pick) {
        a.push_back(all[i]);
        b.push_back(rhs[i]);
      }
      auto x = solve_square(a, b);
      if (!x || !feasible(p, *x)) return;
      Rational v;
      for (std::size_t j = 0; j < n; ++j) v += p.objective[j] * (*x)[j];
      if (!best || v > *best) best = v;
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      pick[k] = i;
      rec(k + 1, i + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST(SolveLP, SingleBound) {
  auto p = make({1}, {{1}}, {LE}, {3});
  auto s = solve_verified(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_EQ(s.primal[0], 3);
  EXPECT_EQ(s.objective_value, 3);
  EXPECT_EQ(s.duals[0], 1);
}

TEST(SolveLP, SimplexFace) {
  auto p = make({1, 1}, {{1, 1}}, {LE}, {1});
  auto s = solve_verified(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_EQ(s.objective_value, 1);
}

TEST(SolveLP, ContradictoryBoundsGiveFarkas) {
  auto p = make({1}, {{1}, {1}}, {GE, LE}, {1, 0});
  auto s = solve(p);
  ASSERT_EQ(s.status, Status::kInfeasible);
  EXPECT_EQ(verify_certificate(p, s), "");
  // y = (y1 <= 0, y2 >= 0) with y1 + y2 >= 0 and y1 + 0 < 0
  EXPECT_LT(s.duals[0], 0);
  EXPECT_GT(s.duals[1], 0);
}

TEST(SolveLP, Unbounded) {
  auto p = make({1, 0}, {{-1, 1}}, {LE}, {1});
  auto s = solve_verified(p);
  ASSERT_EQ(s.status, Status::kUnbounded);
  ASSERT_EQ(s.ray.size(), 2u);
  EXPECT_GT(s.ray[0], 0);
}

TEST(SolveLP, FreeVariables) {
  // max -x with x free and x >= -5  ->  x = -5
  auto p = make({-1}, {{1}}, {GE}, {-5});
  p.bounds[0].lower_is_zero = false;
  auto s = solve_verified(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_EQ(s.primal[0], -5);
  EXPECT_EQ(s.objective_value, 5);
}

TEST(SolveLP, UpperBounds) {
  auto p = make({2, 3}, {{1, 1}}, {LE}, {4});
  p.bounds[1].upper = ratio(3, 2);
  auto s = solve_verified(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_EQ(s.primal[1], ratio(3, 2));
  EXPECT_EQ(s.primal[0], ratio(5, 2));
  EXPECT_EQ(s.objective_value, ratio(19, 2));
  EXPECT_EQ(s.upper_bound_duals[1], 1);
}

TEST(SolveLP, EqualityAndNegativeRhs) {
  // x + y = 2, x - y >= -4 written with negative rhs
  auto p = make({1, -1}, {{1, 1}, {-1, 1}}, {EQ, LE}, {2, -1});
  auto s = solve_verified(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_EQ(s.objective_value, 2);
}

// Beale's cycling example; Bland's rule has to terminate.
TEST(SolveLP, DegenerateCyclingInstance) {
  auto p = make({ratio(3, 4), -150, ratio(1, 50), -6},
                {{ratio(1, 4), -60, ratio(-1, 25), 9}, {ratio(1, 2), -90, ratio(-1, 50), 3}, {0, 0, 1, 0}},
                {LE, LE, LE}, {0, 0, 1});
  auto s = solve_verified(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_EQ(s.objective_value, ratio(1, 20));
}

TEST(SolveLP, DegenerateThreeVariable) {
  // the optimal vertex (1, 0, 0) has five tight constraints
  auto p = make({1, 1, 1}, {{1, 1, 0}, {1, 0, 1}, {1, 1, 1}, {1, 0, 0}}, {LE, LE, LE, LE}, {1, 1, 1, 1});
  auto s = solve_verified(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_EQ(s.objective_value, 1);
}

TEST(SolveLP, EmptyProblem) {
  auto p = make({}, {}, {}, {});
  auto s = solve_verified(p);
  EXPECT_EQ(s.status, Status::kOptimal);
  EXPECT_EQ(s.objective_value, 0);
}

TEST(SolveLP, MalformedProblem) {
  auto p = make({1, 1}, {{1}}, {LE}, {1});
  EXPECT_THROW(solve(p), MalformedProblem);
  auto q = make({1}, {{1}}, {LE, LE}, {1});
  EXPECT_THROW(solve(q), MalformedProblem);
  auto r = make({1}, {{1}}, {LE}, {1});
  r.bounds.clear();
  EXPECT_THROW(solve(r), MalformedProblem);
}

TEST(VerifyCertificate, RejectsTamperedSolutions) {
  auto p = make({1, 1}, {{1, 2}, {3, 1}}, {LE, LE}, {4, 6});
  auto s = solve(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  ASSERT_EQ(verify_certificate(p, s), "");

  auto bad_value = s;
  bad_value.objective_value += 1;
  EXPECT_NE(verify_certificate(p, bad_value), "");

  auto bad_dual = s;
  bad_dual.duals[0] += 1;
  EXPECT_NE(verify_certificate(p, bad_dual), "");

  auto bad_primal = s;
  bad_primal.primal[0] += 10;
  EXPECT_NE(verify_certificate(p, bad_primal), "");

  auto bad_status = s;
  bad_status.status = Status::kInfeasible;
  EXPECT_NE(verify_certificate(p, bad_status), "");
}

TEST(SolveLP, StatusNames) {
  EXPECT_EQ(to_string(Status::kOptimal), "Optimal");
  EXPECT_EQ(to_string(Status::kInfeasible), "Infeasible");
  EXPECT_EQ(to_string(Status::kUnbounded), "Unbounded");
}

// Strong duality and agreement with vertex enumeration on random instances.
TEST(SolveLP, RandomAgainstVertexOracle) {
  Rng rng(31);
  int counts[3] = {0, 0, 0};
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 4));
    std::vector<Rational> c;
    for (std::size_t j = 0; j < n; ++j) c.push_back(rng.rational(-5, 5, 3));
    Matrix<Rational> rows;
    std::vector<Relation> rel;
    std::vector<Rational> rhs;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Rational> row;
      for (std::size_t j = 0; j < n; ++j) row.push_back(rng.rational(-4, 6, 3));
      rows.push_back(row);
      const long r = rng.uniform(0, 5);
      rel.push_back(r < 4 ? LE : (r == 4 ? GE : EQ));
      rhs.push_back(rng.rational(-2, 8, 2));
    }
    auto p = make(c, rows, rel, rhs);
    LPSolution s = solve(p);
    ASSERT_EQ(verify_certificate(p, s), "") << "trial " << trial;
    auto oracle = vertex_oracle(p);
    ++counts[static_cast<int>(s.status)];
    switch (s.status) {
      case Status::kOptimal:
        ASSERT_TRUE(oracle);
        EXPECT_EQ(s.objective_value, *oracle) << "trial " << trial;
        break;
      case Status::kInfeasible:
        EXPECT_FALSE(oracle) << "trial " << trial;
        break;
      case Status::kUnbounded:
        EXPECT_TRUE(oracle) << "trial " << trial;  // feasible, hence a vertex exists
        break;
    }
  }
  // the generator exercises every outcome
  EXPECT_GT(counts[0], 0);
  EXPECT_GT(counts[1], 0);
  EXPECT_GT(counts[2], 0);
}
