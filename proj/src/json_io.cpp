#include "nsbayes/json_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace nsbayes::io {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw SchemaError(where + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing \"") + key + "\"");
  return *it;
}

const Json& array_at(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

// Rationals are strings "p/q"; bare JSON integers are tolerated.
Rational rational_at(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail(where, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

std::vector<Rational> rational_row(const Json& j, const std::string& where) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < array_at(j, where).size(); ++i) {
    out.push_back(rational_at(j[i], where + "/" + std::to_string(i)));
  }
  return out;
}

Matrix<Rational> rational_matrix(const Json& j, const std::string& where) {
  Matrix<Rational> out;
  for (std::size_t i = 0; i < array_at(j, where).size(); ++i) {
    out.push_back(rational_row(j[i], where + "/" + std::to_string(i)));
  }
  return out;
}

std::string label_at(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string label");
  return j.get<std::string>();
}

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json rationals(const Matrix<Rational>& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(rationals(row));
  return out;
}

Json indices(const std::vector<std::size_t>& v) {
  Json out = Json::array();
  for (auto x : v) out.push_back(x);
  return out;
}

std::string relation_name(lp::Relation r) {
  switch (r) {
    case lp::Relation::kLessEqual:
      return "<=";
    case lp::Relation::kEqual:
      return "=";
    case lp::Relation::kGreaterEqual:
      return ">=";
  }
  return "?";
}

std::string st_string(const LCNumber& x) {
  return x.is_near_standard() ? to_string(x.standard_part()) : "undefined";
}

// "lc-value  (st = p/q ~ 0.500000)"
std::string lc_text(const LCNumber& x) {
  if (!x.is_near_standard()) return x.to_string() + "  (st undefined)";
  const Rational st = x.standard_part();
  return x.to_string() + "  (st = " + to_string(st) + " ~ " + to_decimal(st) + ")";
}

std::string rational_text(const Rational& x) { return to_string(x) + "  (~ " + to_decimal(x) + ")"; }

std::string procedure_text(const Procedure& d) {
  std::ostringstream os;
  if (!d.is_randomized()) {
    os << "map [";
    for (std::size_t x = 0; x < d.map().size(); ++x) os << (x ? ", " : "") << d.map()[x];
    os << "]";
    return os.str();
  }
  os << "matrix [";
  for (std::size_t x = 0; x < d.matrix().size(); ++x) {
    os << (x ? "; " : "");
    for (std::size_t a = 0; a < d.matrix()[x].size(); ++a) os << (a ? " " : "") << to_string(d.matrix()[x][a]);
  }
  os << "]";
  return os.str();
}

// Two-column block with keys padded to a common width.
class Table {
 public:
  void row(std::string key, std::string value) { rows_.emplace_back(std::move(key), std::move(value)); }
  std::string str(const std::string& indent = "") const {
    std::size_t width = 0;
    for (const auto& [k, v] : rows_) width = std::max(width, k.size());
    std::ostringstream os;
    for (const auto& [k, v] : rows_) os << indent << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << "\n";
    return os.str();
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string rule_string(const BernoulliRule& r) { return "(" + to_string(r.a) + ", " + to_string(r.b) + ")"; }

Json rule_json(const BernoulliRule& r) { return Json::array({to_string(r.a), to_string(r.b)}); }

Json probe_json(const ProbeOutcome& o) {
  Json j;
  j["center"] = rationals(o.probe.center);
  j["radius"] = to_string(o.probe.radius);
  j["mass_lower"] = o.mass.lower.to_string();
  j["mass_upper"] = o.mass.upper.to_string();
  j["lower_much_greater_than_epsilon"] = o.lower_much_greater;
  j["upper_much_greater_than_epsilon"] = o.upper_much_greater;
  return j;
}

std::string regularity_text(const RegularityVerdict& v) {
  std::string out = to_string(v.verdict);
  if (v.witness) {
    out += "  (probe center [";
    for (std::size_t i = 0; i < v.witness->probe.center.size(); ++i) {
      out += (i ? ", " : "") + to_string(v.witness->probe.center[i]);
    }
    out += "], radius " + to_string(v.witness->probe.radius) + ", mass <= " + v.witness->mass.upper.to_string() + ")";
  }
  return out;
}

}  // namespace

FiniteProblem problem_from_json(const Json& j) {
  std::vector<StateInfo> states;
  const Json& js = array_at(member(j, "states", ""), "/states");
  for (std::size_t i = 0; i < js.size(); ++i) {
    const std::string where = "/states/" + std::to_string(i);
    StateInfo s;
    s.label = label_at(member(js[i], "label", where), where + "/label");
    if (js[i].contains("coords")) s.coords = rational_row(js[i]["coords"], where + "/coords");
    states.push_back(std::move(s));
  }
  std::vector<std::string> observations;
  const Json& jo = array_at(member(j, "observations", ""), "/observations");
  for (std::size_t i = 0; i < jo.size(); ++i) observations.push_back(label_at(jo[i], "/observations/" + std::to_string(i)));
  std::vector<ActionInfo> actions;
  const Json& ja = array_at(member(j, "actions", ""), "/actions");
  for (std::size_t i = 0; i < ja.size(); ++i) {
    const std::string where = "/actions/" + std::to_string(i);
    ActionInfo a;
    a.label = label_at(member(ja[i], "label", where), where + "/label");
    if (ja[i].contains("value")) a.value = rational_at(ja[i]["value"], where + "/value");
    actions.push_back(std::move(a));
  }
  Matrix<Rational> model = rational_matrix(member(j, "model", ""), "/model");
  Matrix<Rational> loss = rational_matrix(member(j, "loss", ""), "/loss");
  try {
    return FiniteProblem::create(std::move(states), std::move(observations), std::move(actions), std::move(model),
                                 std::move(loss));
  } catch (const MalformedProblem& e) {
    fail("problem", e.what());
  }
}

Json to_json(const FiniteProblem& p) {
  Json j;
  j["states"] = Json::array();
  for (const auto& s : p.states()) {
    Json js{{"label", s.label}};
    if (s.coords) js["coords"] = rationals(*s.coords);
    j["states"].push_back(js);
  }
  j["observations"] = p.observations();
  j["actions"] = Json::array();
  for (const auto& a : p.actions()) {
    Json ja{{"label", a.label}};
    if (a.value) ja["value"] = to_string(*a.value);
    j["actions"].push_back(ja);
  }
  j["model"] = rationals(p.model());
  j["loss"] = rationals(p.loss());
  return j;
}

Procedure procedure_from_json(const Json& j, const FiniteProblem& p) {
  const std::string kind = label_at(member(j, "kind", "procedure"), "procedure/kind");
  try {
    Procedure d = [&] {
      if (kind == "nonrandomized") {
        std::vector<std::size_t> map;
        const Json& jm = array_at(member(j, "map", "procedure"), "procedure/map");
        for (const auto& v : jm) {
          if (!v.is_number_unsigned()) fail("procedure/map", "expected action indices");
          map.push_back(v.get<std::size_t>());
        }
        return Procedure::nonrandomized(std::move(map), p.num_actions());
      }
      if (kind == "randomized") {
        return Procedure::randomized(rational_matrix(member(j, "matrix", "procedure"), "procedure/matrix"));
      }
      fail("procedure/kind", "unknown kind \"" + kind + "\"");
    }();
    d.check_shape(p.num_observations(), p.num_actions());
    return d;
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    fail("procedure", e.what());
  }
}

std::vector<Procedure> procedures_from_json(const Json& j, const FiniteProblem& p) {
  const Json& list = j.is_object() ? member(j, "procedures", "") : j;
  std::vector<Procedure> out;
  for (std::size_t i = 0; i < array_at(list, "procedures").size(); ++i) {
    try {
      out.push_back(procedure_from_json(list[i], p));
    } catch (const SchemaError& e) {
      throw SchemaError("procedures/" + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

Json to_json(const Procedure& d) {
  if (!d.is_randomized()) return Json{{"kind", "nonrandomized"}, {"map", indices(d.map())}};
  return Json{{"kind", "randomized"}, {"matrix", rationals(d.matrix())}};
}

Json to_json(const lp::LPProblem& lp) {
  Json j;
  j["sense"] = "maximize";
  j["objective"] = rationals(lp.objective);
  j["rows"] = rationals(lp.rows);
  j["relations"] = Json::array();
  for (auto r : lp.relations) j["relations"].push_back(relation_name(r));
  j["rhs"] = rationals(lp.rhs);
  j["bounds"] = Json::array();
  for (const auto& b : lp.bounds) {
    Json jb{{"lower", b.lower_is_zero ? Json("0") : Json(nullptr)}};
    jb["upper"] = b.upper ? Json(to_string(*b.upper)) : Json(nullptr);
    j["bounds"].push_back(jb);
  }
  return j;
}

Json to_json(const lp::LPSolution& sol) {
  Json j;
  j["status"] = lp::to_string(sol.status);
  j["primal"] = rationals(sol.primal);
  j["objective_value"] = to_string(sol.objective_value);
  j["duals"] = rationals(sol.duals);
  j["upper_bound_duals"] = rationals(sol.upper_bound_duals);
  j["ray"] = rationals(sol.ray);
  return j;
}

Json lc_json(const LCNumber& x) { return Json{{"lc", x.to_string()}, {"st", st_string(x)}}; }

Json to_json(const GameAnalysis& g, const Procedure& d) {
  Json j;
  j["procedure"] = to_json(d);
  j["game_value"] = to_string(g.value);
  j["prior"] = rationals(g.witness_prior.weights);
  j["bayes_slack"] = to_string(g.slack);
  j["best_responses"] = indices(g.best_responses);
  j["prior_may_be_nonunique"] = g.prior_may_be_nonunique;
  return j;
}

Json to_json(const ClassificationReport& r) {
  Json j;
  j["procedure"] = to_json(r.procedure);
  j["admissible"] = r.verdict.admissible;
  j["extended_admissible"] = r.verdict.extended_admissible;
  if (r.verdict.witness) j["witness"] = to_json(*r.verdict.witness);
  if (r.verdict.uniform_witness) j["uniform_witness"] = to_json(*r.verdict.uniform_witness);
  j["epsilon_star"] = to_string(r.verdict.epsilon_star);
  j["game_value"] = to_string(r.game.value);
  j["prior"] = rationals(r.game.witness_prior.weights);
  j["bayes_slack"] = to_string(r.game.slack);
  j["bayes"] = r.bayes;
  j["best_responses"] = indices(r.game.best_responses);
  j["prior_may_be_nonunique"] = r.game.prior_may_be_nonunique;
  return j;
}

Json to_json(const RegularityVerdict& v) {
  Json j;
  j["verdict"] = to_string(v.verdict);
  j["witness"] = v.witness ? probe_json(*v.witness) : Json(nullptr);
  j["probes"] = Json::array();
  for (const auto& o : v.probes) j["probes"].push_back(probe_json(o));
  return j;
}

Json to_json(const BlythCertificate& c) {
  Json j;
  j["certified"] = c.certified;
  j["reason"] = c.reason;
  j["epsilon_bayes"] = c.epsilon_bayes;
  j["regularity"] = to_string(c.regularity.verdict);
  j["candidate_bayes_risk"] = lc_json(c.candidate_bayes_risk);
  j["challenger_bayes_risks"] = Json::array();
  for (const auto& r : c.challenger_bayes_risks) j["challenger_bayes_risks"].push_back(lc_json(r));
  j["scope"] = c.scope;
  return j;
}

Json to_json(const NormalLocationReport& r) {
  Json j;
  j["example"] = "normal-location";
  j["dim"] = r.dim;
  j["K"] = lc_json(r.K);
  j["shrinkage"] = lc_json(r.shrinkage);
  j["bayes_B"] = lc_json(r.bayes_B);
  j["bayes_B"]["closed_form"] = r.closed_form_bayes_B;
  j["bayes_M"] = lc_json(r.bayes_M);
  j["gap"] = lc_json(r.gap);
  j["gap"]["closed_form"] = r.closed_form_gap;
  j["gap"]["infinitesimal"] = r.gap_infinitesimal;
  j["risk_B"] = Json{{"constant", lc_json(r.risk_constant_B)}, {"quadratic", lc_json(r.risk_quadratic_B)}};
  j["risk_M"] = Json{{"constant", to_string(r.risk_constant_M)}, {"quadratic", to_string(r.risk_quadratic_M)}};
  j["epsilon"] = lc_json(r.epsilon);
  j["regularity"] = to_json(r.regularity);
  j["blyth"] = to_json(r.blyth);
  return j;
}

Json to_json(const BernoulliBoundaryReport& r) {
  Json j;
  j["example"] = "bernoulli-boundary";
  j["lc_bayes_risk"] = lc_json(r.lc_bayes_risk);
  j["risk_at_half"] = to_string(r.risk_at_half);
  j["risk_at_zero"] = to_string(r.risk_at_zero);
  Json cases = Json::array();
  for (const auto& c : r.prior_cases) {
    Json jc;
    jc["states"] = rationals(c.states);
    jc["weights"] = rationals(c.weights);
    jc["optimal"] = rule_json(c.optimal);
    jc["optimal_bayes_risk"] = to_string(c.optimal_bayes_risk);
    jc["zero_rule_bayes_risk"] = to_string(c.zero_rule_bayes_risk);
    jc["components_positive"] = c.components_positive;
    jc["zero_rule_strictly_worse"] = c.zero_rule_strictly_worse;
    cases.push_back(std::move(jc));
  }
  j["non_bayes_on_grid"] = r.non_bayes_on_grid;
  j["prior_cases"] = std::move(cases);
  j["domination"] = Json{{"challengers_checked", r.challengers_checked},
                         {"states", rationals(r.domination_states)},
                         {"dominators", Json::array()}};
  for (const auto& d : r.dominators) j["domination"]["dominators"].push_back(rule_json(d));
  j["blyth"] = to_json(r.blyth);
  return j;
}

std::string to_text(const ClassificationReport& r, std::size_t index) {
  Table t;
  t.row("procedure", procedure_text(r.procedure));
  t.row("admissible", yes_no(r.verdict.admissible));
  if (r.verdict.witness) t.row("witness", procedure_text(*r.verdict.witness));
  t.row("extended admissible", yes_no(r.verdict.extended_admissible));
  if (r.verdict.uniform_witness) t.row("uniform witness", procedure_text(*r.verdict.uniform_witness));
  t.row("epsilon*", rational_text(r.verdict.epsilon_star));
  t.row("game value", rational_text(r.game.value));
  std::string prior;
  for (std::size_t i = 0; i < r.game.witness_prior.weights.size(); ++i) {
    prior += (i ? " " : "") + to_string(r.game.witness_prior.weights[i]);
  }
  t.row("prior", prior + (r.game.prior_may_be_nonunique ? "  (one of several optima)" : ""));
  t.row("bayes slack", rational_text(r.game.slack));
  t.row("bayes", yes_no(r.bayes));
  return "[" + std::to_string(index) + "]\n" + t.str("  ");
}

std::string to_text(const GameAnalysis& g, const Procedure& d) {
  Table t;
  t.row("procedure", procedure_text(d));
  t.row("game value", rational_text(g.value));
  std::string prior;
  for (std::size_t i = 0; i < g.witness_prior.weights.size(); ++i) prior += (i ? " " : "") + to_string(g.witness_prior.weights[i]);
  t.row("prior", prior + (g.prior_may_be_nonunique ? "  (one of several optima)" : ""));
  t.row("bayes slack", rational_text(g.slack));
  std::string br;
  for (std::size_t i = 0; i < g.best_responses.size(); ++i) br += (i ? " " : "") + std::to_string(g.best_responses[i]);
  t.row("best responses", br);
  return t.str();
}

std::string to_text(const NormalLocationReport& r) {
  Table t;
  t.row("example", "normal-location");
  t.row("dim", std::to_string(r.dim));
  t.row("K", lc_text(r.K));
  t.row("shrinkage c", lc_text(r.shrinkage));
  t.row("bayes_B", lc_text(r.bayes_B));
  t.row("bayes_B closed form", r.closed_form_bayes_B);
  t.row("bayes_M", lc_text(r.bayes_M));
  t.row("gap", lc_text(r.gap));
  t.row("gap closed form", r.closed_form_gap);
  t.row("gap infinitesimal", yes_no(r.gap_infinitesimal));
  t.row("risk_B(theta)", "(" + r.risk_constant_B.to_string() + ") + (" + r.risk_quadratic_B.to_string() + ")*|theta|^2");
  t.row("risk_M(theta)", to_string(r.risk_constant_M));
  t.row("epsilon", lc_text(r.epsilon));
  t.row("regularity", regularity_text(r.regularity));
  t.row("blyth certified", yes_no(r.blyth.certified) + (r.blyth.reason.empty() ? "" : "  (" + r.blyth.reason + ")"));
  t.row("blyth scope", r.blyth.scope);
  return t.str();
}

std::string to_text(const BernoulliBoundaryReport& r) {
  Table t;
  t.row("example", "bernoulli-boundary");
  t.row("lc bayes risk of (0,0)", lc_text(r.lc_bayes_risk));
  t.row("risk of (0,0) at 1/2", rational_text(r.risk_at_half));
  t.row("risk of (0,0) at 0", rational_text(r.risk_at_zero));
  std::size_t positive = 0, worse = 0;
  for (const auto& c : r.prior_cases) {
    positive += c.components_positive;
    worse += c.zero_rule_strictly_worse;
  }
  const std::string n = std::to_string(r.prior_cases.size());
  t.row("grid priors", n);
  t.row("optimal rule positive", std::to_string(positive) + "/" + n);
  t.row("(0,0) strictly worse", std::to_string(worse) + "/" + n);
  t.row("non-Bayes on grid", yes_no(r.non_bayes_on_grid));
  t.row("challengers checked", std::to_string(r.challengers_checked) + " on " +
                                   std::to_string(r.domination_states.size()) + " states");
  std::string dominators;
  for (const auto& d : r.dominators) dominators += (dominators.empty() ? "" : " ") + rule_string(d);
  t.row("dominators of (0,0)", dominators.empty() ? "none" : dominators);
  t.row("blyth certified", yes_no(r.blyth.certified) + (r.blyth.reason.empty() ? "" : "  (" + r.blyth.reason + ")"));
  t.row("blyth scope", r.blyth.scope);
  return t.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

}  // namespace nsbayes::io
