// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "nsbayes/admissibility.hpp"
#include "nsbayes/parametric.hpp"
#include "nsbayes/prior_synthesis.hpp"
#include "support.hpp"

using namespace nsbayes;
using nsbayes::fixtures::Rng;
namespace fixtures = nsbayes::fixtures;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first few are kept for the report line.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  int checks() const { return checks_; }
  int failures() const { return failures_; }
  const std::string& notes() const { return notes_; }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::string notes_;
};

LCNumber big_k() { return LCNumber::monomial(1, -1); }

Rational max_loss(const FiniteProblem& p) {
  Rational m;
  for (const auto& row : p.loss()) {
    for (const auto& v : row) m = std::max(m, v);
  }
  return m;
}

Outcome normal_location_exactness() {
  Checker c;
  const LCNumber K = big_k();
  const LCNumber K2 = K * K;
  const LCNumber one(1);
  for (int d = 1; d <= 3; ++d) {
    const auto r = normal_location_report(d, K);
    const std::string tag = "d=" + std::to_string(d);
    c.expect(r.bayes_B == LCNumber(d) * K2 / (K2 + one), tag + " bayes_B");
    c.expect(r.bayes_M == LCNumber(d), tag + " bayes_M");
    c.expect(r.gap == LCNumber(d) / (K2 + one), tag + " gap");
    c.expect(r.gap_infinitesimal && r.gap.is_infinitesimal() && !r.gap.is_zero(), tag + " gap infinitesimal");
  }
  return {c.failures() == 0, "d=1,2,3 bayes_B = d K^2/(K^2+1), bayes_M = d, gap = d/(K^2+1) exact" +
                                 (c.notes().empty() ? "" : "; failed: " + c.notes())};
}

Outcome regularity_threshold() {
  const LCNumber K = big_k();
  const LCNumber eps = LCNumber(1) / (K * K + LCNumber(1));
  std::vector<Regularity> v;
  for (int d = 1; d <= 3; ++d) v.push_back(check_epsilon_regular_normal(d, K, eps, default_probes(d)).verdict);
  const bool pass = v[0] == Regularity::kRegular && v[2] == Regularity::kNotRegular;
  return {pass, "d=1 " + to_string(v[0]) + ", d=3 " + to_string(v[2]) + "; d=2 " + to_string(v[1]) +
                    " (recorded discrepancy: the d=2 ball mass has the valuation of epsilon)"};
}

Outcome bernoulli_boundary() {
  Checker c;
  const LCNumber e = LCNumber::eps();
  const auto r = bernoulli_boundary_report();
  c.expect(r.lc_bayes_risk == e * e && r.lc_bayes_risk_st == 0, "LC Bayes risk");

  const BernoulliBoundaryFamily f;
  const auto bayes = [&](const BernoulliPriorCase& pc, const BernoulliRule& rule) {
    Rational total;
    for (std::size_t i = 0; i < pc.states.size(); ++i) {
      total += pc.weights[i] * f.risk(rule, std::vector<Rational>{pc.states[i]});
    }
    return total;
  };
  for (const auto& pc : r.prior_cases) {
    c.expect(pc.optimal.a > 0 && pc.optimal.b > 0, "optimal components");
    const Rational gap = bayes(pc, BernoulliRule{0, 0}) - bayes(pc, pc.optimal);
    c.expect(gap > 0, "strict Bayes gap");
  }

  // 0-domination over the 21 x 21 challenger grid, recomputed from the risk
  // function at the 41 states {1/n : n <= 40} U {0}.
  std::vector<std::string> found;
  for (long i = 0; i <= 20; ++i) {
    for (long j = 0; j <= 20; ++j) {
      const BernoulliRule rule{ratio(i, 20), ratio(j, 20)};
      if (i == 0 && j == 0) continue;
      bool weak = true, strict = false;
      for (int n = 0; n <= 40; ++n) {
        const std::vector<Rational> t{n == 0 ? Rational(0) : ratio(1, n)};
        const Rational diff = f.risk(rule, t) - f.risk(BernoulliRule{0, 0}, t);
        weak = weak && diff <= 0;
        strict = strict || diff < 0;
      }
      if (weak && strict) found.push_back("(" + to_string(rule.a) + "," + to_string(rule.b) + ")");
    }
  }
  c.expect(found.size() == r.dominators.size(), "report and recomputation disagree on dominators");
  const bool no_dominator = found.empty() && r.dominators.empty();

  std::ostringstream detail;
  detail << "LC Bayes risk " << r.lc_bayes_risk.to_string() << " (st " << to_string(r.lc_bayes_risk_st) << "); "
         << r.prior_cases.size() << " grid priors non-Bayes: " << (r.non_bayes_on_grid ? "yes" : "no") << "; ";
  if (no_dominator) {
    detail << "no 0-dominator among 441 challengers";
  } else {
    detail << found.size() << " 0-dominators among 441 challengers:";
    for (const auto& s : found) detail << " " << s;
    detail << " (weakly better at every state, tie at t=1/40)";
  }
  if (c.failures()) detail << "; failed: " << c.notes();
  return {c.failures() == 0 && no_dominator, detail.str()};
}

Outcome duality_identity() {
  Checker c;
  Rng rng(20240917u);
  for (int i = 0; i < 120; ++i) {
    const auto ns = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto nx = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto na = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto p = fixtures::random_problem(rng, ns, nx, na);
    const auto d = fixtures::random_procedure(rng, nx, na);
    const auto g = synthesize_prior(p, d);
    const auto u = max_uniform_improvement(p, d);
    c.expect(g.value + u.epsilon_star == 0, "v* + eps* != 0 on problem " + std::to_string(i));
    c.expect(verify_epsilon_bayes(p, d, g.witness_prior, std::max(Rational(0), Rational(-g.value))),
             "witness prior rejected on problem " + std::to_string(i));
  }
  return {c.failures() == 0, "120 random problems up to 4x4x4, " + std::to_string(c.checks()) + " exact checks" +
                                 (c.notes().empty() ? "" : "; failed: " + c.notes())};
}

Outcome grid_oracle() {
  Checker c;
  Rng rng(7u);
  const Rational step = ratio(1, 100);
  for (int i = 0; i < 20; ++i) {
    const auto ns = static_cast<std::size_t>(rng.uniform(2, 3));
    const auto nx = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto na = static_cast<std::size_t>(rng.uniform(2, 3));
    const auto p = fixtures::random_problem(rng, ns, nx, na);
    const auto d = fixtures::random_procedure(rng, nx, na);
    const Rational v = synthesize_prior(p, d).value;
    const Rational grid = fixtures::oracle_grid_game_value(p, d, 100);
    const Rational bound = step * 2 * max_loss(p);
    c.expect(grid <= v && v <= grid + bound, "problem " + std::to_string(i));
  }
  return {c.failures() == 0, "20 problems with |Theta| <= 3 against a 0.01-step prior grid" +
                                 (c.notes().empty() ? "" : "; failed: " + c.notes())};
}

Outcome lc_field_suite() {
  Checker c;
  Rng rng(11u);
  const LCNumber one(1);
  for (int i = 0; i < 200; ++i) {
    const LCNumber a = fixtures::random_lc(rng), b = fixtures::random_lc(rng), x = fixtures::random_lc(rng);
    c.expect(a + b == b + a && a * b == b * a, "commutativity");
    c.expect((a + b) + x == a + (b + x) && (a * b) * x == a * (b * x), "associativity");
    c.expect(a * (b + x) == a * b + a * x, "distributivity");
    if (a < b) {
      c.expect(a + x < b + x, "order and addition");
      if (x.sign() > 0) c.expect(a * x < b * x, "order and multiplication");
    }
    c.expect(a * inverse(a) == one, "a * inv(a)");

    const LCNumber s = fixtures::random_lc(rng, true), t = fixtures::random_lc(rng, true);
    c.expect((s + t).standard_part() == s.standard_part() + t.standard_part() &&
                 (s * t).standard_part() == s.standard_part() * t.standard_part(),
             "st homomorphism");

    const LCNumber px = a.sign() > 0 ? a : -a, py = b.sign() > 0 ? b : -b;
    if (!much_greater(px, py)) {
      const auto gamma = much_greater_counterexample(px, py);
      c.expect(gamma && *gamma > 0 && px * *gamma <= py, "much-greater witness");
    } else {
      c.expect(!much_greater_counterexample(px, py), "spurious witness");
    }
  }
  return {c.failures() == 0, std::to_string(c.checks()) + " randomized field/order checks" +
                                 (c.notes().empty() ? "" : "; failed: " + c.notes())};
}

// Actions at 0, 1/m, ..., 1; loss w (g - a)^2 + v |a - h| + k, convex in a.
FiniteProblem convex_problem(Rng& rng, std::size_t ns, std::size_t nx, long m) {
  std::vector<StateInfo> states;
  std::vector<std::string> obs;
  std::vector<ActionInfo> actions;
  Matrix<Rational> model, loss;
  for (long j = 0; j <= m; ++j) actions.push_back({"a" + std::to_string(j), ratio(j, m)});
  for (std::size_t x = 0; x < nx; ++x) obs.push_back("x" + std::to_string(x));
  for (std::size_t s = 0; s < ns; ++s) {
    states.push_back({"t" + std::to_string(s), {}});
    model.push_back(fixtures::random_distribution(rng, nx));
    const Rational w = rng.rational(0, 4, 2), g = rng.rational(0, 4, 4), v = rng.rational(0, 2, 3),
                   h = rng.rational(0, 4, 4), k = rng.rational(0, 2, 2);
    std::vector<Rational> row;
    for (long j = 0; j <= m; ++j) {
      const Rational a = ratio(j, m);
      row.push_back(w * (g - a) * (g - a) + v * abs(Rational(a - h)) + k);
    }
    loss.push_back(row);
  }
  return FiniteProblem::create(states, obs, actions, model, loss);
}

// Each row mixes two actions around a target index so the mean is exact.
Procedure exact_mean_mixture(Rng& rng, std::size_t nx, long m) {
  Matrix<Rational> rows;
  for (std::size_t x = 0; x < nx; ++x) {
    std::vector<Rational> row(static_cast<std::size_t>(m + 1));
    const long k = rng.uniform(0, m);
    const long i = rng.uniform(0, k), j = rng.uniform(k, m);
    if (i == j) {
      row[static_cast<std::size_t>(k)] = 1;
    } else {
      row[static_cast<std::size_t>(i)] += ratio(j - k, j - i);
      row[static_cast<std::size_t>(j)] += ratio(k - i, j - i);
    }
    rows.push_back(row);
  }
  return Procedure::randomized(rows);
}

Outcome jensen() {
  Checker c;
  Rng rng(13u);
  int problems = 0;
  for (; problems < 60; ++problems) {
    const long m = rng.uniform(2, 5);
    const auto nx = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto p = convex_problem(rng, static_cast<std::size_t>(rng.uniform(1, 4)), nx, m);
    c.expect(loss_convex_along_embedding(p), "generated loss not convex");
    const auto d = exact_mean_mixture(rng, nx, m);
    c.expect(derandomization_is_exact(p, d), "mean not exact");
    const auto e = derandomize(p, d);
    for (std::size_t s = 0; s < p.num_states(); ++s) c.expect(risk(p, e, s) <= risk(p, d, s), "Jensen");
  }
  return {c.failures() == 0, std::to_string(problems) + " convex problems, " + std::to_string(c.checks()) +
                                 " checks" + (c.notes().empty() ? "" : "; failed: " + c.notes())};
}

Outcome pushdown_consistency() {
  Checker c;
  Rng rng(17u);
  const LCNumber e = LCNumber::eps();
  int polynomial = 0;
  for (int i = 0; i < 15; ++i, ++polynomial) {
    const int dim = static_cast<int>(rng.uniform(1, 3));
    const NormalLocationFamily f{dim};
    LCPrior prior;
    const auto w = fixtures::random_distribution(rng, 3);
    for (int k = 0; k < 3; ++k) {
      std::vector<LCNumber> pt;
      for (int j = 0; j < dim; ++j) {
        pt.push_back(LCNumber(rng.rational(-3, 3, 2)) + fixtures::random_lc(rng, true) * e);
      }
      prior.support.push_back(pt);
      prior.weights.push_back(LCNumber(w[static_cast<std::size_t>(k)]));
    }
    c.expect(pushdown_risk_consistency(f, rng.rational(0, 4, 4), prior).consistent, "normal-location case");
  }
  for (int i = 0; i < 15; ++i, ++polynomial) {
    const BernoulliBoundaryFamily f;
    LCPrior prior;
    const auto w = fixtures::random_distribution(rng, 2);
    for (int k = 0; k < 2; ++k) {
      // interior points: st in [1/10, 9/10], infinitesimal perturbation either way
      const LCNumber t = LCNumber(ratio(rng.uniform(1, 9), 10)) + LCNumber(rng.nonzero_rational(3, 3)) * e;
      prior.support.push_back({t});
      prior.weights.push_back(LCNumber(w[static_cast<std::size_t>(k)]));
    }
    const BernoulliRule rule{rng.rational(0, 4, 4), rng.rational(0, 4, 4)};
    c.expect(pushdown_risk_consistency(f, rule, prior).consistent, "interior Bernoulli case");
  }
  const auto boundary = pushdown_risk_consistency(BernoulliBoundaryFamily{}, BernoulliRule{0, 0},
                                                  LCPrior{{{e}}, {LCNumber(1)}});
  c.expect(!boundary.consistent, "boundary case at eps not flagged");
  return {c.failures() == 0, std::to_string(polynomial) + " polynomial cases consistent; Bernoulli at eps: LC " +
                                 boundary.lc_bayes_risk.to_string() + " vs pushdown " +
                                 to_string(boundary.pushdown_bayes_risk) + ", flag " +
                                 (boundary.consistent ? "true" : "false") +
                                 (c.notes().empty() ? "" : "; failed: " + c.notes())};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "normal-location exactness", 1, normal_location_exactness},
      {2, "regularity dimension threshold", 1, regularity_threshold},
      {3, "Bernoulli boundary", 30, bernoulli_boundary},
      {4, "duality identity", 60, duality_identity},
      {5, "brute-force prior grid", 60, grid_oracle},
      {6, "LC field suite", 30, lc_field_suite},
      {7, "Jensen derandomization", 60, jensen},
      {8, "pushdown consistency", 60, pushdown_consistency},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < cr.limit_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  [" << cr.id << "] " << cr.name << ": " << o.detail
              << (in_time ? "" : "; over time limit") << std::fixed << std::setprecision(3) << " (" << secs
              << " s, limit " << std::setprecision(0) << cr.limit_s << " s)\n";
  }
  return failed ? 1 : 0;
}
