#ifndef SECTORFLOW_ENGINE_HPP
#define SECTORFLOW_ENGINE_HPP

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sectorflow/graph.hpp"

namespace sectorflow {

enum class AircraftStatus {
    Queued,     // waiting in its current leg's queue (or scheduled to inject)
    InTransit,  // served this interval, joins the next queue one interval later
    Arrived,    // reached its final sector; absorbing
    Unmanaged,  // present but invisible to service selection (report tampering)
};

struct Aircraft {
    int id = 0;
    std::vector<SectorId> route;  // >= 2 distinct sectors, consecutive pairs routed
    std::size_t hop_index = 0;    // current leg: route[hop_index] -> route[hop_index+1]
    AircraftStatus status = AircraftStatus::Queued;
    std::optional<int> inject_t;  // scheduled entry interval; absent = present at t=0
    std::optional<int> arrival_t;
    bool operator==(const Aircraft&) const = default;
};

// The leg the aircraft waits on (or is being handed into). Throws
// RouteExhausted at the final sector.
RouteKey next_outflow(const Aircraft& aircraft);

// One-route backlog recurrence: max(0, u + ghost + x_prev - capacity_mask*c).
// The matching service law is min(x_prev + u + ghost, capacity_mask*c).
int step_backlog(int x_prev, int u, int c, int capacity_mask, int ghost);

// A queue slot: a real aircraft or a ghost echo of one. Ghosts carry the
// spoofed id and the index of the attack that created them; they occupy
// backlog and service capacity but never move downstream.
struct QueueEntry {
    int id = 0;
    bool ghost = false;
    int attack_index = -1;
    bool operator==(const QueueEntry&) const = default;
};

struct GhostSpawn {
    RouteKey route;
    int spoofed_id = 0;
    int attack_index = -1;
};

// Per-interval control overrides, identity when empty: full capacity
// everywhere, no ghosts, no flushes.
struct StepModifiers {
    std::map<RouteKey, int> capacity_mask;   // 0 or 1; absent means 1
    std::map<RouteKey, int> ghost_increment; // ghost arrivals this interval
    std::set<SectorId> flush;                // sectors whose queues are bypassed
    std::vector<GhostSpawn> ghost_spawns;    // identities behind ghost_increment

    int mask(const RouteKey& route) const {
        auto it = capacity_mask.find(route);
        return it == capacity_mask.end() ? 1 : it->second;
    }
};

struct NetworkState {
    int t = 0;
    std::map<RouteKey, std::deque<QueueEntry>> queues;
    std::map<int, Aircraft> fleet;                   // by id
    std::map<RouteKey, std::vector<int>> in_transit; // deliveries due next interval
    std::map<int, std::vector<int>> injections;      // interval -> aircraft ids
    bool operator==(const NetworkState&) const = default;
};

// Queues seeded from aircraft without inject_t (FIFO order by ascending id);
// scheduled aircraft wait in the injection table. Validates routes against
// the graph and id uniqueness.
NetworkState initial_state(const SectorGraph& graph, const std::vector<Aircraft>& fleet);

struct TraceEvent {
    int t = 0;
    std::string kind;  // serve, flush, ghost_spawn, ghost_serve, ghost_drop,
                       // unmanaged, remanaged
    RouteKey route;
    int aircraft_id = 0;  // spoofed id for ghost events
    bool operator==(const TraceEvent&) const = default;
};

// What one advance did, for trace assembly and conservation checks.
struct StepReport {
    std::map<RouteKey, int> enqueued;  // real arrivals (deliveries + injections)
    std::map<RouteKey, int> ghosts;    // ghost arrivals
    std::map<RouteKey, int> served;    // service slots consumed (flush: whole queue)
    std::map<RouteKey, int> mask;      // effective capacity mask
    std::set<SectorId> flushed;
    std::vector<TraceEvent> events;
    std::map<int, int> arrivals;  // aircraft id -> arrival interval
};

// One interval: enqueue deliveries scheduled for the new interval plus
// scheduled injections (merged ascending by id) and ghost arrivals (appended
// after), then per route in ascending (from,to) order either flush the whole
// queue downstream or serve up to capacity_mask*capacity entries FIFO,
// skipping Unmanaged aircraft. Served aircraft reach the next queue one
// interval later; ghosts consume a slot and vanish. Pure: returns the new
// state, input untouched.
NetworkState advance(const NetworkState& state, const SectorGraph& graph,
                     const StepModifiers& modifiers, StepReport* report = nullptr);

struct SimulationTrace {
    std::vector<RouteKey> routes;  // ascending (from,to)
    int horizon = 0;
    // Indexed by interval t = 0..horizon.
    std::vector<std::map<RouteKey, int>> backlog;
    std::vector<std::map<RouteKey, int>> enqueued;
    std::vector<std::map<RouteKey, int>> ghosts;      // ghost arrivals
    std::vector<std::map<RouteKey, int>> adjustment;  // ghost removals, as -1
    std::vector<std::map<RouteKey, int>> served;
    std::vector<std::map<RouteKey, int>> mask;
    std::vector<std::set<SectorId>> flushed;
    std::vector<TraceEvent> events;
    std::map<int, std::optional<int>> arrivals;  // every aircraft; empty = unarrived
    bool horizon_too_small = false;
    std::vector<int> unarrived;  // ascending ids
};

struct AttackScenario;

// Full run: interval 0 is the recorded initial condition; each of
// 1..horizon resolves the active attacks into modifiers and advances.
// Deterministic: equal inputs give equal traces.
SimulationTrace simulate(const SectorGraph& graph, const NetworkState& initial,
                         const std::vector<AttackScenario>& attacks, int horizon);

}  // namespace sectorflow

#endif
