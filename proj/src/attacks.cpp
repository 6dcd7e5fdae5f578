#include "sectorflow/attacks.hpp"

#include <algorithm>

namespace sectorflow {

namespace {

std::string attack_path(std::size_t index) { return "attacks[" + std::to_string(index) + "]"; }

}  // namespace

void validate_attacks(const std::vector<AttackScenario>& attacks, const SectorGraph& graph,
                      const NetworkState& initial) {
    for (std::size_t i = 0; i < attacks.size(); ++i) {
        const AttackScenario& atk = attacks[i];
        if (atk.window.start < 0 || atk.window.start > atk.window.end)
            throw ValidationError(attack_path(i) + ".window",
                                  "needs 0 <= start <= end, got [" +
                                      std::to_string(atk.window.start) + "," +
                                      std::to_string(atk.window.end) + "]");
        switch (atk.kind) {
            case AttackKind::CompleteRDOS:
            case AttackKind::SDOS:
                if (!graph.has_sector(atk.sector)) throw UnknownSector(atk.sector);
                break;
            case AttackKind::PartialRDOS:
                if (!graph.has_route(atk.route.first, atk.route.second))
                    throw UnknownRoute(atk.route.first, atk.route.second);
                break;
            case AttackKind::RST:
                if (!graph.has_route(atk.route.first, atk.route.second))
                    throw UnknownRoute(atk.route.first, atk.route.second);
                if (!initial.fleet.count(atk.aircraft_id))
                    throw UnknownAircraft(atk.aircraft_id);
                for (std::size_t j = 0; j < i; ++j) {
                    const AttackScenario& other = attacks[j];
                    if (other.kind != AttackKind::RST ||
                        other.aircraft_id != atk.aircraft_id)
                        continue;
                    const bool disjoint = atk.window.start > other.window.end ||
                                          other.window.start > atk.window.end;
                    if (!disjoint)
                        throw ValidationError(attack_path(i),
                                              "window overlaps attacks[" + std::to_string(j) +
                                                  "] on the same aircraft");
                }
                break;
        }
    }
}

StepModifiers resolve_modifiers(const std::vector<AttackScenario>& attacks, int t,
                                const SectorGraph& graph) {
    if (t < 0) throw ValidationError("t", "must be non-negative");
    StepModifiers mods;
    for (std::size_t i = 0; i < attacks.size(); ++i) {
        const AttackScenario& atk = attacks[i];
        switch (atk.kind) {
            case AttackKind::CompleteRDOS:
                if (!graph.has_sector(atk.sector)) throw UnknownSector(atk.sector);
                if (atk.window.contains(t))
                    for (SectorId j : graph.out_neighbors(atk.sector))
                        mods.capacity_mask[{atk.sector, j}] = 0;
                break;
            case AttackKind::PartialRDOS:
                if (!graph.has_route(atk.route.first, atk.route.second))
                    throw UnknownRoute(atk.route.first, atk.route.second);
                if (atk.window.contains(t)) mods.capacity_mask[atk.route] = 0;
                break;
            case AttackKind::RST:
                if (!graph.has_route(atk.route.first, atk.route.second))
                    throw UnknownRoute(atk.route.first, atk.route.second);
                // The ghost is a standing queue token, so it arrives once,
                // when the window opens; its +1 then persists until service
                // or detection.
                if (t == atk.window.start) {
                    mods.ghost_spawns.push_back(
                        {atk.route, atk.aircraft_id, static_cast<int>(i)});
                    mods.ghost_increment[atk.route] += 1;
                }
                break;
            case AttackKind::SDOS:
                if (!graph.has_sector(atk.sector)) throw UnknownSector(atk.sector);
                if (atk.window.contains(t)) mods.flush.insert(atk.sector);
                break;
        }
    }
    for (SectorId s : mods.flush)
        for (SectorId j : graph.out_neighbors(s))
            if (mods.mask({s, j}) == 0)
                throw ConflictingAttack("route " + std::to_string(s) + "->" +
                                        std::to_string(j) +
                                        " is both capacity-masked and flushed at interval " +
                                        std::to_string(t));
    return mods;
}

NetworkState apply_rst_visibility(const NetworkState& state, const AttackScenario& attack,
                                  int t) {
    if (attack.kind != AttackKind::RST)
        throw ValidationError("attack", "visibility rules apply to report tampering only");

    NetworkState next = state;
    auto it = next.fleet.find(attack.aircraft_id);
    if (it == next.fleet.end()) throw UnknownAircraft(attack.aircraft_id);
    Aircraft& a = it->second;

    if (attack.window.contains(t)) {
        if (a.status == AircraftStatus::Arrived)
            throw UnknownAircraft(a.id, "already arrived");
        a.status = AircraftStatus::Unmanaged;
        return next;
    }
    if (t != attack.window.end + 1)
        throw ValidationError("t", "neither inside the window nor the detection interval");

    // Detection: back under management, at the back of whatever queue holds
    // it now. An aircraft caught mid-transit just resumes normal delivery.
    if (a.status != AircraftStatus::Unmanaged) return next;
    const RouteKey leg = next_outflow(a);
    std::deque<QueueEntry>& queue = next.queues.at(leg);
    auto entry = std::find_if(queue.begin(), queue.end(), [&](const QueueEntry& e) {
        return !e.ghost && e.id == a.id;
    });
    if (entry != queue.end()) {
        const QueueEntry moved = *entry;
        queue.erase(entry);
        queue.push_back(moved);
        a.status = AircraftStatus::Queued;
    } else {
        a.status = AircraftStatus::InTransit;
    }
    return next;
}

namespace {

// Drops attack i's ghost token from its route queue if it is still waiting.
bool drop_ghost(NetworkState& state, const AttackScenario& atk, std::size_t index) {
    std::deque<QueueEntry>& queue = state.queues.at(atk.route);
    auto entry = std::find_if(queue.begin(), queue.end(), [&](const QueueEntry& e) {
        return e.ghost && e.attack_index == static_cast<int>(index);
    });
    if (entry == queue.end()) return false;
    queue.erase(entry);
    return true;
}

void zero_rows(SimulationTrace& trace, int t) {
    for (const RouteKey& r : trace.routes) {
        trace.backlog[t][r] = 0;
        trace.enqueued[t][r] = 0;
        trace.ghosts[t][r] = 0;
        trace.adjustment[t][r] = 0;
        trace.served[t][r] = 0;
        trace.mask[t][r] = 1;
    }
}

void record_backlogs(SimulationTrace& trace, int t, const NetworkState& state) {
    for (const auto& [route, queue] : state.queues)
        trace.backlog[t][route] = static_cast<int>(queue.size());
}

// Window boundaries for RST attacks at interval t: detection first (ghost
// drop plus re-management), then newly opened windows (position check plus
// visibility loss). Ghost arrivals for opened windows come from
// resolve_modifiers.
void rst_boundaries(NetworkState& state, const std::vector<AttackScenario>& attacks, int t,
                    SimulationTrace& trace) {
    for (std::size_t i = 0; i < attacks.size(); ++i) {
        const AttackScenario& atk = attacks[i];
        if (atk.kind != AttackKind::RST) continue;

        if (t == atk.window.end + 1) {
            if (drop_ghost(state, atk, i)) {
                trace.adjustment[t][atk.route] -= 1;
                trace.events.push_back({t, "ghost_drop", atk.route, atk.aircraft_id});
            }
            const Aircraft snapshot = state.fleet.at(atk.aircraft_id);
            if (snapshot.status == AircraftStatus::Unmanaged) {
                state = apply_rst_visibility(state, atk, t);
                trace.events.push_back(
                    {t, "remanaged", next_outflow(snapshot), atk.aircraft_id});
            }
        }
        if (t == atk.window.start) {
            const Aircraft snapshot = state.fleet.at(atk.aircraft_id);
            if (snapshot.status == AircraftStatus::Arrived)
                throw UnknownAircraft(snapshot.id, "already arrived");
            const SectorId at = snapshot.route[snapshot.hop_index];
            if (at != atk.route.first)
                throw ValidationError(attack_path(i),
                                      "ghost route leaves sector " +
                                          std::to_string(atk.route.first) + " but aircraft " +
                                          std::to_string(snapshot.id) +
                                          " departs from sector " + std::to_string(at));
            state = apply_rst_visibility(state, atk, t);
            trace.events.push_back({t, "unmanaged", next_outflow(snapshot), atk.aircraft_id});
        }
    }
}

}  // namespace

SimulationTrace simulate(const SectorGraph& graph, const NetworkState& initial,
                         const std::vector<AttackScenario>& attacks, int horizon) {
    if (horizon < 1) throw ValidationError("horizon", "must be at least 1");
    if (initial.t != 0) throw ValidationError("initial", "clock must start at interval 0");
    validate_attacks(attacks, graph, initial);

    NetworkState state = initial;
    SimulationTrace trace;
    for (const auto& [route, attrs] : graph.routes()) trace.routes.push_back(route);
    trace.horizon = horizon;
    trace.backlog.resize(horizon + 1);
    trace.enqueued.resize(horizon + 1);
    trace.ghosts.resize(horizon + 1);
    trace.adjustment.resize(horizon + 1);
    trace.served.resize(horizon + 1);
    trace.mask.resize(horizon + 1);
    trace.flushed.resize(horizon + 1);
    for (int t = 0; t <= horizon; ++t) zero_rows(trace, t);

    // Interval 0 is the initial condition: no service, but windows that open
    // at 0 already hide their aircraft and seed their ghost tokens.
    rst_boundaries(state, attacks, 0, trace);
    const StepModifiers mods0 = resolve_modifiers(attacks, 0, graph);
    for (const GhostSpawn& g : mods0.ghost_spawns) {
        state.queues.at(g.route).push_back({g.spoofed_id, true, g.attack_index});
        trace.ghosts[0][g.route] += 1;
        trace.events.push_back({0, "ghost_spawn", g.route, g.spoofed_id});
    }
    for (const auto& [route, queue] : state.queues)
        for (const QueueEntry& e : queue)
            if (!e.ghost) trace.enqueued[0][route] += 1;
    record_backlogs(trace, 0, state);

    for (int t = 1; t <= horizon; ++t) {
        rst_boundaries(state, attacks, t, trace);
        const StepModifiers mods = resolve_modifiers(attacks, t, graph);
        StepReport report;
        state = advance(state, graph, mods, &report);

        record_backlogs(trace, t, state);
        for (const auto& [route, n] : report.enqueued) trace.enqueued[t][route] = n;
        for (const auto& [route, n] : report.ghosts) trace.ghosts[t][route] = n;
        for (const auto& [route, n] : report.served) trace.served[t][route] = n;
        for (const auto& [route, m] : report.mask) trace.mask[t][route] = m;
        trace.flushed[t] = report.flushed;
        trace.events.insert(trace.events.end(), report.events.begin(), report.events.end());
    }

    for (const auto& [id, a] : state.fleet) {
        trace.arrivals[id] = a.arrival_t;
        if (!a.arrival_t) trace.unarrived.push_back(id);
    }
    trace.horizon_too_small = !trace.unarrived.empty();
    return trace;
}

}  // namespace sectorflow
