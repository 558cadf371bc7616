#include "nsbayes/cli.hpp"

#include <CLI11.hpp>

#include "nsbayes/json_io.hpp"

namespace nsbayes {
namespace {

enum class Format { kJson, kText };

struct Options {
  Format format = Format::kJson;
  int order = LCNumber::kDefaultOrder;
  std::string problem_path;
  std::string procedures_path;
  std::size_t procedure_index = 0;
  std::string example;
  int dim = 1;
  std::string expr;
};

void emit(std::ostream& out, const io::Json& j) { out << j.dump(2) << "\n"; }

// Nonrandomized rules X -> A in lexicographic order, observation 0 most
// significant.
Procedure enumerated_rule(const FiniteProblem& p, std::size_t index) {
  mpz_class count = 1;
  for (std::size_t x = 0; x < p.num_observations(); ++x) count *= static_cast<unsigned long>(p.num_actions());
  if (mpz_class(static_cast<unsigned long>(index)) >= count) {
    throw IndexOutOfRange("procedure index " + std::to_string(index) + " out of range (there are " +
                          count.get_str() + " nonrandomized rules)");
  }
  std::vector<std::size_t> map(p.num_observations());
  for (std::size_t x = p.num_observations(); x-- > 0;) {
    map[x] = index % p.num_actions();
    index /= p.num_actions();
  }
  return Procedure::nonrandomized(std::move(map), p.num_actions());
}

int finite_classify(const Options& o, std::ostream& out) {
  const FiniteProblem p = io::problem_from_json(io::read_json_file(o.problem_path));
  const auto procs = io::procedures_from_json(io::read_json_file(o.procedures_path), p);
  std::vector<ClassificationReport> reports;
  for (const auto& d : procs) reports.push_back(classify(p, d));
  if (o.format == Format::kJson) {
    io::Json j = io::Json::array();
    for (const auto& r : reports) j.push_back(io::to_json(r));
    emit(out, j);
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) out << (i ? "\n" : "") << io::to_text(reports[i], i);
  }
  return 0;
}

int finite_synthesize(const Options& o, std::ostream& out) {
  const FiniteProblem p = io::problem_from_json(io::read_json_file(o.problem_path));
  Procedure d = [&] {
    if (o.procedures_path.empty()) return enumerated_rule(p, o.procedure_index);
    auto procs = io::procedures_from_json(io::read_json_file(o.procedures_path), p);
    if (o.procedure_index >= procs.size()) {
      throw IndexOutOfRange("procedure index " + std::to_string(o.procedure_index) + " out of range");
    }
    return procs[o.procedure_index];
  }();
  const GameAnalysis g = synthesize_prior(p, d);
  if (!verify_epsilon_bayes(p, d, g.witness_prior, g.slack)) {
    throw CertificateFailure("witness prior fails the epsilon-Bayes check");
  }
  if (o.format == Format::kJson) {
    emit(out, io::to_json(g, d));
  } else {
    out << io::to_text(g, d);
  }
  return 0;
}

int example(const Options& o, std::ostream& out) {
  if (o.example == "normal-location") {
    const auto r = normal_location_report(o.dim, LCNumber::monomial(1, -1, o.order));
    if (o.format == Format::kJson) {
      emit(out, io::to_json(r));
    } else {
      out << io::to_text(r);
    }
    return 0;
  }
  const auto r = bernoulli_boundary_report(o.order);
  if (o.format == Format::kJson) {
    emit(out, io::to_json(r));
  } else {
    out << io::to_text(r);
  }
  return 0;
}

int lc_eval(const Options& o, std::ostream& out) {
  const LCNumber x = LCNumber::parse(o.expr, o.order);
  const auto v = x.valuation();
  if (o.format == Format::kJson) {
    io::Json j;
    j["expr"] = o.expr;
    j["order"] = o.order;
    j["value"] = x.to_string();
    j["valuation"] = v ? io::Json(to_string(*v)) : io::Json(nullptr);
    j["st"] = x.is_near_standard() ? to_string(x.standard_part()) : "undefined";
    emit(out, j);
  } else {
    out << "value      " << x.to_string() << "\n";
    out << "valuation  " << (v ? to_string(*v) : "inf") << "\n";
    if (x.is_near_standard()) {
      out << "st         " << to_string(x.standard_part()) << "  (~ " << to_decimal(x.standard_part()) << ")\n";
    } else {
      out << "st         undefined\n";
    }
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact admissibility and Bayes certificates for finite decision problems", "nsbayes"};
  app.require_subcommand(1);
  app.fallthrough();
  const std::map<std::string, Format> formats{{"json", Format::kJson}, {"text", Format::kText}};
  app.add_option("--format", o.format, "Output format")->transform(CLI::CheckedTransformer(formats));
  app.add_option("--order", o.order, "Levi-Civita truncation order")->check(CLI::PositiveNumber);

  auto* finite = app.add_subcommand("finite", "Finite decision problems");
  finite->require_subcommand(1);
  auto* classify_cmd = finite->add_subcommand("classify", "Classify each procedure in a file");
  classify_cmd->add_option("problem", o.problem_path, "Problem JSON")->required();
  classify_cmd->add_option("--procedures", o.procedures_path, "Procedures JSON")->required();
  auto* synth_cmd = finite->add_subcommand("synthesize-prior", "Least favorable prior against one procedure");
  synth_cmd->add_option("problem", o.problem_path, "Problem JSON")->required();
  synth_cmd->add_option("--procedure", o.procedure_index,
                        "Index into --procedures, or into the nonrandomized rules in lexicographic order")
      ->required();
  synth_cmd->add_option("--procedures", o.procedures_path, "Procedures JSON");

  auto* example_cmd = app.add_subcommand("example", "Built-in parametric examples");
  example_cmd->add_option("name", o.example, "normal-location or bernoulli-boundary")
      ->required()
      ->check(CLI::IsMember({"normal-location", "bernoulli-boundary"}));
  example_cmd->add_option("--dim", o.dim, "Dimension for normal-location")->check(CLI::PositiveNumber);

  auto* lc = app.add_subcommand("lc", "Levi-Civita field");
  lc->require_subcommand(1);
  auto* eval_cmd = lc->add_subcommand("eval", "Evaluate an expression in eps");
  eval_cmd->add_option("expr", o.expr, "Expression")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (classify_cmd->parsed()) return finite_classify(o, out);
    if (synth_cmd->parsed()) return finite_synthesize(o, out);
    if (example_cmd->parsed()) return example(o, out);
    return lc_eval(o, out);
  } catch (const ZeroDivision& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const CertificateFailure& e) {
    err << "certificate failure: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    if (!o.expr.empty()) err << "  " << o.expr << "\n  " << std::string(e.position(), ' ') << "^\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace nsbayes
