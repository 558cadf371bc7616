#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "nsbayes/decision.hpp"
#include "nsbayes/lc_number.hpp"
#include "nsbayes/rational.hpp"

namespace nsbayes::fixtures {

// Deterministic across platforms: only raw mt19937 draws are used.
class Rng {
 public:
  explicit Rng(std::uint32_t seed) : gen_(seed) {}
  // Uniform-ish integer in [lo, hi].
  long uniform(long lo, long hi) { return lo + static_cast<long>(gen_() % static_cast<std::uint32_t>(hi - lo + 1)); }
  Rational rational(long num_lo, long num_hi, long max_den) {
    return ratio(uniform(num_lo, num_hi), uniform(1, max_den));
  }
  Rational nonzero_rational(long bound, long max_den) {
    long n = 0;
    while (n == 0) n = uniform(-bound, bound);
    return ratio(n, uniform(1, max_den));
  }

 private:
  std::mt19937 gen_;
};

// FP1: two states, one observation, loss [[0,1],[1,0]], actions embedded at 0, 1.
inline FiniteProblem fp1() {
  return FiniteProblem::create({{"theta1", {}}, {"theta2", {}}}, {"x1"}, {{"a1", Rational(0)}, {"a2", Rational(1)}},
                               {{1}, {1}}, {{0, 1}, {1, 0}});
}

// FP2: the a2 loss column is the a1 column plus 1.
inline FiniteProblem fp2() {
  return FiniteProblem::create({{"theta1", {}}, {"theta2", {}}}, {"x1"}, {{"a1", {}}, {"a2", {}}}, {{1}, {1}},
                               {{0, 1}, {1, 2}});
}

// Choose a1 with probability p.
inline Procedure fp1_rule(const Rational& p) { return Procedure::randomized({{p, Rational(1 - p)}}); }

inline std::vector<Rational> random_distribution(Rng& rng, std::size_t n) {
  std::vector<long> raw(n);
  long total = 0;
  while (total == 0) {
    total = 0;
    for (auto& w : raw) total += (w = rng.uniform(0, 6));
  }
  std::vector<Rational> out;
  for (long w : raw) out.push_back(ratio(w, total));
  return out;
}

inline FiniteProblem random_problem(Rng& rng, std::size_t ns, std::size_t nx, std::size_t na) {
  std::vector<StateInfo> states;
  for (std::size_t s = 0; s < ns; ++s) states.push_back({"t" + std::to_string(s), {}});
  std::vector<std::string> obs;
  for (std::size_t x = 0; x < nx; ++x) obs.push_back("x" + std::to_string(x));
  std::vector<ActionInfo> actions;
  for (std::size_t a = 0; a < na; ++a) actions.push_back({"a" + std::to_string(a), {}});
  Matrix<Rational> model, loss;
  for (std::size_t s = 0; s < ns; ++s) {
    model.push_back(random_distribution(rng, nx));
    std::vector<Rational> row;
    for (std::size_t a = 0; a < na; ++a) row.push_back(rng.rational(0, 9, 4));
    loss.push_back(std::move(row));
  }
  return FiniteProblem::create(states, obs, actions, model, loss);
}

inline Procedure random_procedure(Rng& rng, std::size_t nx, std::size_t na) {
  if (rng.uniform(0, 1) == 0) {
    std::vector<std::size_t> map;
    for (std::size_t x = 0; x < nx; ++x) map.push_back(static_cast<std::size_t>(rng.uniform(0, static_cast<long>(na) - 1)));
    return Procedure::nonrandomized(map, na);
  }
  Matrix<Rational> m;
  for (std::size_t x = 0; x < nx; ++x) m.push_back(random_distribution(rng, na));
  return Procedure::randomized(m);
}

// Oracle risk: direct double sum on the dense matrix.
inline Rational oracle_risk(const FiniteProblem& p, const Procedure& d, std::size_t s) {
  const auto m = d.as_matrix();
  Rational total;
  for (std::size_t x = 0; x < p.num_observations(); ++x) {
    for (std::size_t a = 0; a < p.num_actions(); ++a) total += p.model(s, x) * m[x][a] * p.loss(s, a);
  }
  return total;
}

// Oracle min Bayes risk: enumerate every nonrandomized rule.
inline Rational oracle_min_bayes_risk(const FiniteProblem& p, const std::vector<Rational>& prior) {
  std::vector<std::size_t> map(p.num_observations(), 0);
  std::optional<Rational> best;
  while (true) {
    Rational r;
    for (std::size_t s = 0; s < p.num_states(); ++s) {
      for (std::size_t x = 0; x < p.num_observations(); ++x) r += prior[s] * p.model(s, x) * p.loss(s, map[x]);
    }
    if (!best || r < *best) best = r;
    std::size_t k = 0;
    while (k < map.size() && ++map[k] == p.num_actions()) map[k++] = 0;
    if (k == map.size()) break;
  }
  return *best;
}

inline Rational oracle_bayes_risk(const FiniteProblem& p, const Procedure& d, const std::vector<Rational>& prior) {
  Rational r;
  for (std::size_t s = 0; s < p.num_states(); ++s) r += prior[s] * oracle_risk(p, d, s);
  return r;
}

// max over priors on a grid of step 1/steps of [min_d' r(pi, d') - r(pi, d)].
inline Rational oracle_grid_game_value(const FiniteProblem& p, const Procedure& d, long steps) {
  std::optional<Rational> best;
  std::vector<long> k(p.num_states(), 0);
  auto visit = [&](const std::vector<long>& counts) {
    std::vector<Rational> prior;
    for (long c : counts) prior.push_back(ratio(c, steps));
    Rational v = oracle_min_bayes_risk(p, prior) - oracle_bayes_risk(p, d, prior);
    if (!best || v > *best) best = v;
  };
  // compositions of `steps` into num_states parts
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
    if (i + 1 == k.size()) {
      k[i] = left;
      visit(k);
      return;
    }
    for (long c = 0; c <= left; ++c) {
      k[i] = c;
      rec(i + 1, left - c);
    }
  };
  rec(0, steps);
  return *best;
}

// Untruncated series, exponent -> coefficient, for checking LC arithmetic.
using Series = std::map<Rational, Rational>;

inline Series to_series(const LCNumber& x) {
  Series s;
  for (const auto& t : x.terms()) s[t.exponent] = t.coefficient;
  return s;
}

inline Series series_add(Series a, const Series& b) {
  for (const auto& [e, c] : b) {
    a[e] += c;
    if (a[e] == 0) a.erase(e);
  }
  return a;
}

inline Series series_mul(const Series& a, const Series& b) {
  Series out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Rational e = ea + eb;
      out[e] += ca * cb;
      if (out[e] == 0) out.erase(e);
    }
  }
  return out;
}

// Keep exponents <= valuation + order.
inline Series series_truncate(const Series& s, int order) {
  if (s.empty()) return s;
  const Rational horizon = s.begin()->first + order;
  Series out;
  for (const auto& [e, c] : s) {
    if (e <= horizon) out[e] = c;
  }
  return out;
}

// Small random LC numbers: <= 3 terms, exponents in {-2, -3/2, ..., 2} with
// span <= 2, so sums and products of a few of them are never truncated at
// order 8. Never zero.
inline LCNumber random_lc(Rng& rng, bool near_standard = false, int order = LCNumber::kDefaultOrder) {
  for (;;) {
    const long base = near_standard ? rng.uniform(0, 2) : rng.uniform(-4, 0);  // in halves
    std::vector<Term> terms;
    const long n = rng.uniform(1, 3);
    for (long i = 0; i < n; ++i) {
      terms.push_back({ratio(base + rng.uniform(0, 4), 2), rng.nonzero_rational(9, 5)});
    }
    LCNumber x = LCNumber::from_terms(terms, order);
    if (!x.is_zero()) return x;  // repeated exponents can cancel
  }
}

}  // namespace nsbayes::fixtures
