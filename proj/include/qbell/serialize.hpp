#pragma once

#include <string>

#include <json.hpp>

#include "qbell/inference.hpp"
#include "qbell/quantum.hpp"
#include "qbell/spacetime.hpp"
#include "qbell/theories.hpp"

namespace qbell {

using json = nlohmann::json;

// Complex entries serialize as [re, im] pairs; round trips are bit-exact
// for every double (shortest round-trip formatting).

json to_json(const StateVector& state);
StateVector state_from_json(const json& j);

json to_json(const Observable& obs);
Observable observable_from_json(const json& j);

json to_json(const OutcomeDistribution& dist);

json to_json(const ScenarioSpec& scenario);
ScenarioSpec scenario_from_json(const json& j);

json to_json(const ConditionalTable& table);
ConditionalTable table_from_json(const json& j);

json to_json(const ConditionReport& report);

json to_json(const BellResult& bell);
json to_json(const GhzParityReport& report);
json to_json(const GhzLadderReport& report);

json to_json(const Geometry& geometry);
json to_json(const KnowledgeSet& knowledge);
json to_json(const AvailabilityReport& report);

/// "label,t,pos" rows for plotting the light-cone diagram.
std::string geometry_csv(const Geometry& geometry);

/// The LHV model file format: a JSON list of
///   {weight, responses: {party: {setting: {"+1": p}}}}
/// with optional "label" per entry; parties are keyed "a", "b", "c".
LocalHVModel lhv_model_from_json(const json& j);
LocalHVModel load_lhv_model(const std::string& path);

std::string outcome_key(const Outcomes& o);
Outcomes outcomes_from_key(const std::string& key);

}  // namespace qbell
