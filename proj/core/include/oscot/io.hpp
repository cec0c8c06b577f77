#pragma once

#include <json.hpp>

#include <string>

#include "oscot/counterexample.hpp"
#include "oscot/map_builder.hpp"

namespace oscot::io {

using json = nlohmann::ordered_json;

// Rationals serialize as strings ("p/q" or "p"); parsing also accepts plain
// JSON integers and finite decimals, converted exactly.

json to_json(const Rat& x);
json to_json(const Interval& iv);
json to_json(const Domain& d);
json to_json(const Measure1D& m);
json to_json(const StepFn& f);
json to_json(const Instance& inst);
json to_json(const Plan& plan);
json to_json(const Strip& strip);
json to_json(const PiecewiseMap& map);
json to_json(const ConjugatePair& pair);
json to_json(const MonotoneDecomposition& dec);
json to_json(const SolveStats& stats);
json to_json(const SolveResult& result);
json to_json(const VerifyReport& report);

Rat rat_from_json(const json& j);
Interval interval_from_json(const json& j);
Domain domain_from_json(const json& j);
Measure1D measure_from_json(const json& j);
StepFn stepfn_from_json(const json& j);
Instance instance_from_json(const json& j);
Plan plan_from_json(const json& j);
Strip strip_from_json(const json& j);
PiecewiseMap map_from_json(const json& j);
ConjugatePair pair_from_json(const json& j);
SolveResult result_from_json(const json& j);

/// Reads and parses; IoError when unreadable, ParseError when not JSON.
json load_json(const std::string& path);
void save_json(const std::string& path, const json& j);

Instance load_instance(const std::string& path);
StepFn load_stepfn(const std::string& path);
ConjugatePair load_pair(const std::string& path);
PiecewiseMap load_map(const std::string& path);
SolveResult load_result(const std::string& path);

}  // namespace oscot::io
