#include "nsbayes/parametric.hpp"

#include <random>

namespace nsbayes {
namespace {

// pi is enclosed by these decimals.
const Rational kPiLower(3141592653, 1000000000);
const Rational kPiUpper(3141592654, 1000000000);

// Rational bounds L <= sqrt(lo), U >= sqrt(hi) on a 1e-6 grid.
std::pair<Rational, Rational> sqrt_enclosure(const Rational& lo, const Rational& hi) {
  const mpz_class scale2("1000000000000");
  const mpz_class scale("1000000");
  mpz_class lo_scaled = (lo.get_num() * scale2) / lo.get_den();
  mpz_class hi_scaled = (hi.get_num() * scale2 + hi.get_den() - 1) / hi.get_den();
  mpz_class root_lo, root_hi;
  mpz_sqrt(root_lo.get_mpz_t(), lo_scaled.get_mpz_t());
  mpz_sqrt(root_hi.get_mpz_t(), hi_scaled.get_mpz_t());
  return {ratio(root_lo, scale), ratio(root_hi + 1, scale)};
}

mpz_class factorial(unsigned long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Rational power(const Rational& base, int exponent) {
  Rational out(1);
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

void check_probe(const Probe& probe, std::size_t dim) {
  if (probe.radius <= 0) throw BadProbe("probe radius must be positive");
  if (probe.center.size() != dim) throw BadProbe("probe center has the wrong dimension");
}

RegularityVerdict decide(std::vector<ProbeOutcome> outcomes) {
  RegularityVerdict v;
  v.verdict = Regularity::kRegular;
  for (const auto& o : outcomes) {
    if (!o.upper_much_greater) {
      v.verdict = Regularity::kNotRegular;
      v.witness = o;
      break;
    }
    if (!o.lower_much_greater && v.verdict == Regularity::kRegular) {
      v.verdict = Regularity::kIndeterminate;
      v.witness = o;
    }
  }
  v.probes = std::move(outcomes);
  return v;
}

ProbeOutcome outcome(const Probe& probe, BallMassBounds mass, const LCNumber& epsilon) {
  ProbeOutcome o{probe, std::move(mass), false, false};
  o.lower_much_greater = much_greater(o.mass.lower, epsilon);
  o.upper_much_greater = much_greater(o.mass.upper, epsilon);
  return o;
}

// challenger + epsilon - candidate >= 0, untruncated.
bool within_epsilon(const LCNumber& candidate, const LCNumber& challenger, const LCNumber& epsilon) {
  return exact_difference(exact_difference(challenger, candidate), -epsilon).sign() >= 0;
}

void finish_certificate(BlythCertificate& cert, const LCNumber& epsilon, std::size_t num_probes) {
  cert.epsilon_bayes = true;
  for (std::size_t j = 0; j < cert.challenger_bayes_risks.size(); ++j) {
    if (!within_epsilon(cert.candidate_bayes_risk, cert.challenger_bayes_risks[j], epsilon)) {
      cert.epsilon_bayes = false;
      cert.reason = "epsilon-Bayes fails against challenger " + std::to_string(j);
      break;
    }
  }
  if (cert.epsilon_bayes) {
    if (cert.regularity.verdict == Regularity::kNotRegular) {
      cert.reason = "prior is not epsilon-regular";
    } else if (cert.regularity.verdict == Regularity::kIndeterminate) {
      cert.reason = "epsilon-regularity is indeterminate at the probe bounds";
    }
  }
  cert.certified = cert.epsilon_bayes && cert.regularity.verdict == Regularity::kRegular;
  cert.scope = "admissible among " + std::to_string(cert.challenger_bayes_risks.size()) +
               " listed challengers; regularity checked on " + std::to_string(num_probes) + " probe balls";
}

std::string closed_form(int dim, const std::string& numerator_tail) {
  return (dim == 1 ? std::string() : std::to_string(dim) + "*") + numerator_tail;
}

}  // namespace

std::string to_string(Regularity r) {
  switch (r) {
    case Regularity::kRegular:
      return "Regular";
    case Regularity::kNotRegular:
      return "NotRegular";
    case Regularity::kIndeterminate:
      return "Indeterminate";
  }
  return "?";
}

std::vector<Probe> default_probes(int dim) {
  std::vector<Probe> out;
  std::vector<Rational> origin(static_cast<std::size_t>(dim));
  std::vector<Rational> unit = origin;
  unit[0] = 1;
  for (const auto& center : {origin, unit}) {
    for (const Rational& r : {Rational(1, 2), Rational(1), Rational(2)}) out.push_back({center, r});
  }
  return out;
}

std::pair<Rational, Rational> gaussian_ball_constant(int dim) {
  if (dim < 1) throw OutsideDomain("dimension must be at least 1");
  const auto m = static_cast<unsigned long>(dim / 2);
  if (dim % 2 == 0) {
    Rational k = ratio(1, power(2, static_cast<int>(m)).get_num() * factorial(m));
    return {k, k};
  }
  // Gamma(m + 3/2) = (2m+2)! sqrt(pi) / (4^(m+1) (m+1)!), 2^(d/2) = 2^m sqrt(2)
  const Rational q = ratio(power(4, static_cast<int>(m + 1)).get_num() * factorial(m + 1),
                           power(2, static_cast<int>(m)).get_num() * factorial(2 * m + 2));
  auto [root_lo, root_hi] = sqrt_enclosure(2 * kPiLower, 2 * kPiUpper);
  return {q / root_hi, q / root_lo};
}

BallMassBounds gaussian_ball_mass_bounds(int dim, const LCNumber& K, const Probe& probe) {
  if (K.sign() <= 0 || !K.is_infinite()) throw NotInfinite("K must be positive and infinite, got " + K.to_string());
  check_probe(probe, static_cast<std::size_t>(dim));
  auto [k_lo, k_hi] = gaussian_ball_constant(dim);
  Rational center_norm2;
  for (const auto& c : probe.center) center_norm2 += c * c;
  const Rational r_d = power(probe.radius, dim);
  const LCNumber scale = inverse(pow(K, dim));  // K^-d
  const LCNumber upper = scale * Rational(k_hi * r_d);
  // R^2 <= 2 |c|^2 + 2 r^2 keeps R rational without a square root
  const Rational big_r2 = 2 * center_norm2 + 2 * probe.radius * probe.radius;
  const LCNumber correction = LCNumber(Rational(1), K.order()) - inverse(K * K) * Rational(big_r2 / 2);
  const LCNumber lower = scale * Rational(k_lo * r_d) * correction;
  return {lower, upper};
}

RegularityVerdict check_epsilon_regular_normal(int dim, const LCNumber& K, const LCNumber& epsilon,
                                               const std::vector<Probe>& probes) {
  std::vector<ProbeOutcome> outcomes;
  for (const auto& probe : probes) {
    outcomes.push_back(outcome(probe, gaussian_ball_mass_bounds(dim, K, probe), epsilon));
  }
  return decide(std::move(outcomes));
}

RegularityVerdict check_epsilon_regular_finite(const LCPrior& prior, const LCNumber& epsilon,
                                               const std::vector<Probe>& probes) {
  prior.validate();
  std::vector<ProbeOutcome> outcomes;
  for (const auto& probe : probes) {
    check_probe(probe, prior.support.front().size());
    LCNumber mass(Rational(0), prior.weights.front().order());
    const Rational r2 = probe.radius * probe.radius;
    for (std::size_t i = 0; i < prior.support.size(); ++i) {
      LCNumber dist2(Rational(0), prior.weights.front().order());
      for (std::size_t j = 0; j < probe.center.size(); ++j) {
        const LCNumber diff = prior.support[i][j] - probe.center[j];
        dist2 = dist2 + diff * diff;
      }
      if (dist2 < r2) mass = mass + prior.weights[i];
    }
    outcomes.push_back(outcome(probe, {mass, mass}, epsilon));
  }
  return decide(std::move(outcomes));
}

BlythCertificate blyth_certificate(const NormalLocationFamily& family, const Rational& candidate,
                                   const PriorSpec& prior, const LCNumber& epsilon,
                                   const std::vector<Rational>& challengers, const std::vector<Probe>& probes) {
  BlythCertificate cert;
  if (const auto* g = std::get_if<GaussianPrior>(&prior)) {
    auto bayes = [&](const Rational& c) { return family.gaussian_bayes_risk(LCNumber(c, g->K.order()), g->K); };
    cert.candidate_bayes_risk = bayes(candidate);
    for (const auto& c : challengers) cert.challenger_bayes_risks.push_back(bayes(c));
    cert.regularity = check_epsilon_regular_normal(family.dim, g->K, epsilon, probes);
  } else {
    const auto& lc = std::get<LCPrior>(prior);
    lc.validate();
    auto bayes = [&](const Rational& c) {
      LCNumber total = lc.weights.front() * family.risk(c, lc.support.front());
      for (std::size_t i = 1; i < lc.support.size(); ++i) total = total + lc.weights[i] * family.risk(c, lc.support[i]);
      return total;
    };
    cert.candidate_bayes_risk = bayes(candidate);
    for (const auto& c : challengers) cert.challenger_bayes_risks.push_back(bayes(c));
    cert.regularity = check_epsilon_regular_finite(lc, epsilon, probes);
  }
  finish_certificate(cert, epsilon, probes.size());
  return cert;
}

BlythCertificate blyth_certificate(const BernoulliBoundaryFamily& family, const BernoulliRule& candidate,
                                   const LCPrior& prior, const LCNumber& epsilon,
                                   const std::vector<BernoulliRule>& challengers,
                                   const std::vector<Probe>& probes) {
  prior.validate();
  auto bayes = [&](const BernoulliRule& rule) {
    LCNumber total = prior.weights.front() * family.risk(rule, prior.support.front());
    for (std::size_t i = 1; i < prior.support.size(); ++i) {
      total = total + prior.weights[i] * family.risk(rule, prior.support[i]);
    }
    return total;
  };
  BlythCertificate cert;
  cert.candidate_bayes_risk = bayes(candidate);
  for (const auto& c : challengers) cert.challenger_bayes_risks.push_back(bayes(c));
  cert.regularity = check_epsilon_regular_finite(prior, epsilon, probes);
  finish_certificate(cert, epsilon, probes.size());
  return cert;
}

NormalLocationReport normal_location_report(int dim, const LCNumber& K) {
  if (dim < 1) throw OutsideDomain("dimension must be at least 1");
  if (K.sign() <= 0 || !K.is_infinite()) throw NotInfinite("K must be positive and infinite, got " + K.to_string());
  const NormalLocationFamily family{dim};
  const int order = K.order();
  const LCNumber one(Rational(1), order);
  const LCNumber K2 = K * K;
  const LCNumber inv = inverse(K2 + one);  // 1 / (K^2 + 1)

  NormalLocationReport r;
  r.dim = dim;
  r.K = K;
  r.shrinkage = K2 * inv;
  r.shrinkage_st = r.shrinkage.standard_part();
  // 1 - c is taken as 1/(K^2 + 1) directly; subtracting the truncated c
  // would lose its last term to cancellation.
  r.risk_constant_B = r.shrinkage * r.shrinkage * Rational(dim);
  r.risk_quadratic_B = inv * inv;
  r.bayes_B = r.risk_constant_B + r.risk_quadratic_B * K2 * Rational(dim);
  r.bayes_M = family.gaussian_bayes_risk(one, K);
  r.gap = inv * Rational(dim);
  r.gap_infinitesimal = r.gap.is_infinitesimal();
  r.risk_constant_M = dim;
  r.risk_quadratic_M = 0;
  r.epsilon = inv;

  const auto probes = default_probes(dim);
  r.regularity = check_epsilon_regular_normal(dim, K, r.epsilon, probes);
  std::vector<Rational> challengers;
  for (int j = 0; j <= 10; ++j) challengers.push_back(ratio(j, 10));
  r.blyth = blyth_certificate(family, Rational(1), GaussianPrior{K}, r.epsilon, challengers, probes);

  if (K == LCNumber::monomial(1, -1, order)) {
    r.closed_form_bayes_B = std::to_string(dim) + "/(1+eps^2)";
    r.closed_form_gap = closed_form(dim, "eps^2/(1+eps^2)");
  } else {
    r.closed_form_bayes_B = std::to_string(dim) + "*K^2/(K^2+1) with K = " + K.to_string();
    r.closed_form_gap = std::to_string(dim) + "/(K^2+1) with K = " + K.to_string();
  }
  return r;
}

BernoulliRule bernoulli_bayes_rule(const std::vector<Rational>& states, const std::vector<Rational>& weights) {
  Rational p0, a_num, p1, b_num;  // P(X=0), E[g 1{X=0}], P(X=1), E[g 1{X=1}]
  Rational mean;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Rational g = BernoulliBoundaryFamily::g(states[i]);
    p0 += weights[i] * (1 - g);
    a_num += weights[i] * g * (1 - g);
    p1 += weights[i] * g;
    b_num += weights[i] * g * g;
    mean += weights[i] * g;
  }
  // X = 0 has probability zero when all mass sits where g = 1; any a is then
  // optimal and the prior mean of g is used.
  BernoulliRule rule;
  rule.a = p0 > 0 ? Rational(a_num / p0) : mean;
  rule.b = p1 > 0 ? Rational(b_num / p1) : mean;
  return rule;
}

std::vector<std::pair<std::vector<Rational>, std::vector<Rational>>> bernoulli_grid_priors() {
  std::vector<Rational> grid{Rational(0)};
  for (int k = 1; k <= 10; ++k) grid.push_back(ratio(k, 10));
  const std::size_t n = grid.size();
  std::vector<std::pair<std::vector<Rational>, std::vector<Rational>>> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({{grid[i]}, {Rational(1)}});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.push_back({{grid[i], grid[j]}, {Rational(1, 2), Rational(1, 2)}});
  }
  out.push_back({grid, std::vector<Rational>(n, ratio(1, static_cast<long>(n)))});
  out.push_back({{grid.begin() + 1, grid.end()}, std::vector<Rational>(n - 1, ratio(1, static_cast<long>(n - 1)))});
  std::mt19937 rng(20240917u);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<long> raw(n);
    long total = 0;
    for (auto& w : raw) total += (w = static_cast<long>(rng() % 10));
    if (total == 0) {
      raw[0] = 1;
      total = 1;
    }
    std::vector<Rational> weights;
    for (long w : raw) weights.push_back(ratio(w, total));
    out.push_back({grid, weights});
  }
  return out;
}

BernoulliBoundaryReport bernoulli_boundary_report(int order, int max_n) {
  const BernoulliBoundaryFamily family;
  const BernoulliRule zero{0, 0};
  BernoulliBoundaryReport r;
  const LCNumber eps = LCNumber::eps(order);
  r.lc_bayes_risk = family.risk_at(zero, eps);
  r.lc_bayes_risk_st = r.lc_bayes_risk.standard_part();
  r.risk_at_half = family.risk_at(zero, Rational(1, 2));
  r.risk_at_zero = family.risk_at(zero, Rational(0));

  r.non_bayes_on_grid = true;
  for (auto& [states, weights] : bernoulli_grid_priors()) {
    BernoulliPriorCase c;
    c.states = states;
    c.weights = weights;
    c.optimal = bernoulli_bayes_rule(states, weights);
    for (std::size_t i = 0; i < states.size(); ++i) {
      c.optimal_bayes_risk += weights[i] * family.risk_at(c.optimal, states[i]);
      c.zero_rule_bayes_risk += weights[i] * family.risk_at(zero, states[i]);
    }
    c.components_positive = c.optimal.a > 0 && c.optimal.b > 0;
    c.zero_rule_strictly_worse = c.zero_rule_bayes_risk > c.optimal_bayes_risk;
    r.non_bayes_on_grid = r.non_bayes_on_grid && c.components_positive && c.zero_rule_strictly_worse;
    r.prior_cases.push_back(std::move(c));
  }

  for (int n = 1; n <= max_n; ++n) r.domination_states.push_back(ratio(1, n));
  r.domination_states.emplace_back(0);
  std::vector<Rational> zero_risks;
  for (const auto& t : r.domination_states) zero_risks.push_back(family.risk_at(zero, t));
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const BernoulliRule rule{ratio(i, 20), ratio(j, 20)};
      ++r.challengers_checked;
      bool weakly_better = true;
      bool strictly_somewhere = false;
      for (std::size_t s = 0; s < r.domination_states.size() && weakly_better; ++s) {
        const Rational risk = family.risk_at(rule, r.domination_states[s]);
        weakly_better = risk <= zero_risks[s];
        strictly_somewhere = strictly_somewhere || risk < zero_risks[s];
      }
      if (weakly_better && strictly_somewhere) r.dominators.push_back(rule);
    }
  }

  LCPrior point{{{eps}}, {LCNumber(Rational(1), order)}};
  std::vector<BernoulliRule> challengers;
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; j <= 4; ++j) challengers.push_back({ratio(i, 4), ratio(j, 4)});
  }
  r.blyth = blyth_certificate(family, zero, point, eps, challengers, default_probes(1));
  return r;
}

}  // namespace nsbayes
