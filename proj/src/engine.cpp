#include "sectorflow/engine.hpp"

#include <algorithm>

namespace sectorflow {

RouteKey next_outflow(const Aircraft& aircraft) {
    if (aircraft.hop_index + 1 >= aircraft.route.size())
        throw RouteExhausted(aircraft.id);
    return {aircraft.route[aircraft.hop_index], aircraft.route[aircraft.hop_index + 1]};
}

int step_backlog(int x_prev, int u, int c, int capacity_mask, int ghost) {
    if (x_prev < 0 || u < 0 || c < 0 || ghost < 0)
        throw ValidationError("step_backlog", "inputs must be non-negative");
    if (capacity_mask != 0 && capacity_mask != 1)
        throw ValidationError("capacity_mask", "must be 0 or 1");
    return std::max(0, u + ghost + x_prev - capacity_mask * c);
}

namespace {

void check_aircraft(const SectorGraph& graph, const Aircraft& a) {
    const std::string who = "aircraft " + std::to_string(a.id);
    if (a.id <= 0) throw ValidationError(who, "id must be positive");
    if (a.route.size() < 2) throw ValidationError(who, "route needs at least two sectors");
    std::set<SectorId> seen;
    for (SectorId s : a.route)
        if (!seen.insert(s).second)
            throw ValidationError(who, "route revisits sector " + std::to_string(s));
    for (std::size_t i = 0; i + 1 < a.route.size(); ++i)
        if (!graph.has_route(a.route[i], a.route[i + 1]))
            throw ValidationError(who, "no route " + std::to_string(a.route[i]) + "->" +
                                           std::to_string(a.route[i + 1]));
    if (a.hop_index + 1 >= a.route.size())
        throw ValidationError(who, "hop index is at or past the final sector");
    if (a.inject_t && *a.inject_t < 1)
        throw ValidationError(who, "injection interval must be at least 1");
}

// Every non-Arrived aircraft must sit in exactly one place: one queue slot,
// one transit slot, or the injection table.
void check_exclusive_membership(const NetworkState& state) {
    std::map<int, int> seen;
    for (const auto& [route, queue] : state.queues)
        for (const QueueEntry& e : queue)
            if (!e.ghost) ++seen[e.id];
    for (const auto& [route, ids] : state.in_transit)
        for (int id : ids) ++seen[id];
    for (const auto& [t, ids] : state.injections)
        for (int id : ids) ++seen[id];

    for (const auto& [id, a] : state.fleet) {
        const int expected = a.status == AircraftStatus::Arrived ? 0 : 1;
        auto it = seen.find(id);
        const int actual = it == seen.end() ? 0 : it->second;
        if (actual != expected)
            throw InconsistentState("aircraft " + std::to_string(id) + " occupies " +
                                    std::to_string(actual) + " slots, expected " +
                                    std::to_string(expected));
        if (it != seen.end()) seen.erase(it);
    }
    if (!seen.empty())
        throw InconsistentState("queue entry references unknown aircraft " +
                                std::to_string(seen.begin()->first));
}

Aircraft& fleet_at(NetworkState& state, int id) {
    auto it = state.fleet.find(id);
    if (it == state.fleet.end())
        throw InconsistentState("queue entry references unknown aircraft " + std::to_string(id));
    return it->second;
}

void check_modifiers(const SectorGraph& graph, const StepModifiers& mods) {
    for (const auto& [route, m] : mods.capacity_mask) {
        if (!graph.has_route(route.first, route.second))
            throw UnknownRoute(route.first, route.second);
        if (m != 0 && m != 1)
            throw ValidationError("capacity_mask", "must be 0 or 1");
    }
    for (const GhostSpawn& g : mods.ghost_spawns)
        if (!graph.has_route(g.route.first, g.route.second))
            throw UnknownRoute(g.route.first, g.route.second);
    for (SectorId s : mods.flush)
        if (!graph.has_sector(s)) throw UnknownSector(s);
}

// Moves a served or flushed aircraft one hop forward. Arrival is stamped at
// the service interval; otherwise the aircraft is owed to the next queue.
void advance_hop(Aircraft& a, int t, const RouteKey& route, const char* kind,
                 NetworkState& next, StepReport& rep) {
    rep.events.push_back({t, kind, route, a.id});
    a.hop_index += 1;
    if (a.hop_index + 1 == a.route.size()) {
        a.status = AircraftStatus::Arrived;
        a.arrival_t = t;
        rep.arrivals[a.id] = t;
    } else {
        if (a.status != AircraftStatus::Unmanaged) a.status = AircraftStatus::InTransit;
        next.in_transit[next_outflow(a)].push_back(a.id);
    }
}

}  // namespace

NetworkState initial_state(const SectorGraph& graph, const std::vector<Aircraft>& fleet) {
    NetworkState state;
    for (const auto& [route, attrs] : graph.routes()) state.queues[route];

    for (const Aircraft& a : fleet) {
        check_aircraft(graph, a);
        if (state.fleet.count(a.id))
            throw ValidationError("aircraft " + std::to_string(a.id), "duplicate id");
        state.fleet[a.id] = a;
        state.fleet[a.id].status = AircraftStatus::Queued;
        state.fleet[a.id].arrival_t.reset();
    }
    // std::map iteration gives ascending ids, which is the seeding order.
    for (const auto& [id, a] : state.fleet) {
        if (a.inject_t)
            state.injections[*a.inject_t].push_back(id);
        else
            state.queues[next_outflow(a)].push_back({id, false, -1});
    }
    return state;
}

NetworkState advance(const NetworkState& state, const SectorGraph& graph,
                     const StepModifiers& modifiers, StepReport* report) {
    check_modifiers(graph, modifiers);

    NetworkState next = state;
    next.t = state.t + 1;
    const int t = next.t;

    StepReport local;
    StepReport& rep = report ? *report : local;
    for (const auto& [route, attrs] : graph.routes()) {
        rep.enqueued[route] = 0;
        rep.ghosts[route] = 0;
        rep.served[route] = 0;
        rep.mask[route] = modifiers.mask(route);
    }

    // Arrivals: deliveries owed from last interval plus scheduled injections,
    // merged per route ascending by id; ghost arrivals join behind them.
    std::map<RouteKey, std::vector<int>> incoming = std::move(next.in_transit);
    next.in_transit.clear();
    if (auto it = next.injections.find(t); it != next.injections.end()) {
        for (int id : it->second) incoming[next_outflow(fleet_at(next, id))].push_back(id);
        next.injections.erase(it);
    }
    for (auto& [route, ids] : incoming) {
        std::sort(ids.begin(), ids.end());
        for (int id : ids) {
            Aircraft& a = fleet_at(next, id);
            if (a.status != AircraftStatus::Unmanaged) a.status = AircraftStatus::Queued;
            next.queues.at(route).push_back({id, false, -1});
        }
        rep.enqueued[route] += static_cast<int>(ids.size());
    }
    for (const GhostSpawn& g : modifiers.ghost_spawns) {
        next.queues.at(g.route).push_back({g.spoofed_id, true, g.attack_index});
        rep.ghosts[g.route] += 1;
        rep.events.push_back({t, "ghost_spawn", g.route, g.spoofed_id});
    }

    // Service, routes in ascending order. Deliveries land next interval, so
    // nothing served here feeds another queue within the same interval.
    for (const auto& [route, attrs] : graph.routes()) {
        std::deque<QueueEntry>& queue = next.queues.at(route);
        if (modifiers.flush.count(route.first)) {
            if (modifiers.mask(route) == 0)
                throw ConflictingAttack("route " + std::to_string(route.first) + "->" +
                                        std::to_string(route.second) +
                                        " is both capacity-masked and flushed");
            rep.flushed.insert(route.first);
            for (QueueEntry& e : queue) {
                if (e.ghost) {
                    rep.events.push_back({t, "ghost_serve", route, e.id});
                } else {
                    advance_hop(fleet_at(next, e.id), t, route, "flush", next, rep);
                }
                rep.served[route] += 1;
            }
            queue.clear();
        } else {
            const int budget = modifiers.mask(route) * attrs.capacity;
            auto it = queue.begin();
            while (it != queue.end() && rep.served[route] < budget) {
                if (it->ghost) {
                    rep.events.push_back({t, "ghost_serve", route, it->id});
                    it = queue.erase(it);
                    rep.served[route] += 1;
                    continue;
                }
                Aircraft& a = fleet_at(next, it->id);
                if (a.status == AircraftStatus::Unmanaged) {
                    ++it;  // invisible to the controller; holds its place
                    continue;
                }
                advance_hop(a, t, route, "serve", next, rep);
                it = queue.erase(it);
                rep.served[route] += 1;
            }
        }
    }

    check_exclusive_membership(next);
    return next;
}

}  // namespace sectorflow
