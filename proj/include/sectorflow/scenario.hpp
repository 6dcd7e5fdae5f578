#ifndef SECTORFLOW_SCENARIO_HPP
#define SECTORFLOW_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "sectorflow/attacks.hpp"
#include "sectorflow/engine.hpp"
#include "sectorflow/graph.hpp"

namespace sectorflow {

// Per-scenario metric parameter overrides; anything unset falls back to the
// built-in defaults, and CLI flags override both.
struct MetricOverrides {
    std::optional<int> alpha;
    std::optional<int> beta;
    std::optional<double> c_exp;
    std::optional<double> sdos_factor;
    std::optional<double> weight_lost;
    std::optional<int> max_n;
    bool operator==(const MetricOverrides&) const = default;
};

struct ScenarioDocument {
    int version = 1;
    std::string notes;  // free-form provenance remarks, no semantics
    SectorGraph graph;
    std::vector<Aircraft> fleet;
    std::vector<AttackScenario> attacks;
    int horizon = 1;
    MetricOverrides metrics;
    bool operator==(const ScenarioDocument&) const = default;
};

// JSON in, fully validated document out. Syntax problems raise ParseError;
// everything semantic raises ValidationError with a field path such as
// "aircraft[3].route[1]".
ScenarioDocument parse_scenario(const std::string& text);

// Canonical JSON; parse_scenario(serialize_scenario(d)) == d.
std::string serialize_scenario(const ScenarioDocument& doc);

ScenarioDocument load_scenario_file(const std::string& path);

}  // namespace sectorflow

#endif
