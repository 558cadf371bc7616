#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nsbayes/decision.hpp"
#include "nsbayes/lc_number.hpp"
#include "nsbayes/lp.hpp"
#include "nsbayes/parametric.hpp"
#include "nsbayes/prior_synthesis.hpp"

namespace nsbayes::io {

// Insertion-ordered so that emitted documents are stable and readable.
using Json = nlohmann::ordered_json;

// All readers throw SchemaError with a JSON-pointer-ish location.
FiniteProblem problem_from_json(const Json& j);
Json to_json(const FiniteProblem& p);

// Accepts a single procedure object.
Procedure procedure_from_json(const Json& j, const FiniteProblem& p);
// Accepts an array of procedures or {"procedures": [...]}.
std::vector<Procedure> procedures_from_json(const Json& j, const FiniteProblem& p);
Json to_json(const Procedure& d);

Json to_json(const lp::LPProblem& lp);
Json to_json(const lp::LPSolution& sol);

// {"lc": "...", "st": "p/q" | "undefined"}
Json lc_json(const LCNumber& x);

Json to_json(const GameAnalysis& g, const Procedure& d);
Json to_json(const ClassificationReport& r);

Json to_json(const RegularityVerdict& v);
Json to_json(const BlythCertificate& c);
Json to_json(const NormalLocationReport& r);
Json to_json(const BernoulliBoundaryReport& r);

// Aligned-column text renderings. LC values carry a decimal of st.
std::string to_text(const ClassificationReport& r, std::size_t index);
std::string to_text(const GameAnalysis& g, const Procedure& d);
std::string to_text(const NormalLocationReport& r);
std::string to_text(const BernoulliBoundaryReport& r);

// Reads and parses a JSON file; throws SchemaError when unreadable or invalid.
Json read_json_file(const std::string& path);

}  // namespace nsbayes::io
