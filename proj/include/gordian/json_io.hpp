#pragma once

#include <json.hpp>

#include "gordian/construction.hpp"
#include "gordian/isotopy_engine.hpp"
#include "gordian/poly_curve.hpp"
#include "gordian/thickness.hpp"

namespace gordian {

// Runtime scenario: which link to build, how to drive the engine, where to
// write artifacts.
struct Scenario {
    std::string name;
    std::string control = "gordian"; // "gordian" or "clasp"
    GordianSpec spec;
    EngineConfig engine;
    std::string outputs = ".";
    std::uint64_t isoperimetric_trials = 0;
    bool invariant_checks = true;
};

void validate(const Scenario& sc);

nlohmann::json curve_to_json(const PolyCurve& c);
PolyCurve curve_from_json(const nlohmann::json& j);

nlohmann::json link_to_json(const ThickLink& l);
ThickLink link_from_json(const nlohmann::json& j);

nlohmann::json spec_to_json(const GordianSpec& s);
GordianSpec spec_from_json(const nlohmann::json& j);

nlohmann::json engine_to_json(const EngineConfig& c);
EngineConfig engine_from_json(const nlohmann::json& j);

nlohmann::json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);

nlohmann::json thickness_to_json(const ThicknessReport& r);
nlohmann::json construction_report_to_json(const ConstructionReport& r);
nlohmann::json split_report_to_json(const SplitAttemptReport& r);

} // namespace gordian
