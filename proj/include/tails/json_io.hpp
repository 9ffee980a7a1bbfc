#pragma once

#include <json.hpp>

#include "tails/harness.hpp"
#include "tails/problems.hpp"
#include "tails/words.hpp"

namespace tails {

using Json = nlohmann::json;

// Naturals serialize as JSON numbers up to 2^53 and as decimal strings above;
// the parser accepts both forms.
Json nat_to_json(const Nat& n);
Nat nat_from_json(const Json& j);

Json word_to_json(const Word& w);  // PAUSE entries are null
Word word_from_json(const Json& j);

Json enumeration_to_json(const EnumerationPresentation& e);
EnumerationPresentation enumeration_from_json(const Json& j);

Json instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const Json& j);

Json solution_to_json(const ProblemSolution& sol);
ProblemSolution solution_from_json(const Json& j);

GeneratorLimits limits_from_json(const Json& j);  // absent fields keep defaults

Json report_to_json(const Report& r);
Json counterexample_to_json(const Counterexample& c);

}  // namespace tails
