#ifndef SECTORFLOW_ATTACKS_HPP
#define SECTORFLOW_ATTACKS_HPP

#include "sectorflow/engine.hpp"
#include "sectorflow/graph.hpp"

namespace sectorflow {

enum class AttackKind {
    CompleteRDOS,  // every outflow of the target sector loses capacity
    PartialRDOS,   // one directed route loses capacity
    RST,           // ghost copy of one aircraft on a false route; the real one
                   // flies unmanaged until the window ends
    SDOS,          // the target sector's queues are bypassed (flushed)
};

struct AttackWindow {
    int start = 0;
    int end = 0;  // inclusive
    bool contains(int t) const { return start <= t && t <= end; }
    bool operator==(const AttackWindow&) const = default;
};

struct AttackScenario {
    AttackKind kind = AttackKind::CompleteRDOS;
    SectorId sector = 0;   // CompleteRDOS and SDOS target
    RouteKey route{0, 0};  // PartialRDOS target; RST ghost route
    int aircraft_id = 0;   // RST target
    AttackWindow window;
    bool operator==(const AttackScenario&) const = default;
};

// Static checks that do not depend on simulation time: windows ordered,
// referenced sectors and routes exist, RST targets are known aircraft.
void validate_attacks(const std::vector<AttackScenario>& attacks, const SectorGraph& graph,
                      const NetworkState& initial);

// Control overrides for interval t: capacity masks drop to 0 inside RDOS
// windows, ghost arrivals are reported for RST windows that open at t, flush
// flags are set inside SDOS windows. Independent attacks compose; a route
// that would be masked and flushed at once is rejected.
StepModifiers resolve_modifiers(const std::vector<AttackScenario>& attacks, int t,
                                const SectorGraph& graph);

// The visibility half of RST: inside the window the target aircraft is
// Unmanaged (skipped by service, still occupying its slot); at the interval
// right after the window it re-enters management at the back of whatever
// queue it now waits in. Pure; ghost bookkeeping lives in simulate.
NetworkState apply_rst_visibility(const NetworkState& state, const AttackScenario& attack,
                                  int t);

}  // namespace sectorflow

#endif
