#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>

#include <sectorflow/attacks.hpp>
#include <sectorflow/engine.hpp>
#include <sectorflow/graph.hpp>

using namespace sectorflow;

namespace {

SectorGraph fork_graph() {
    SectorGraph g;
    for (int s : {1, 2, 3}) g.add_sector(s);
    g.add_route(1, 2, 1, 2.0);
    g.add_route(1, 3, 1, 2.0);
    return g;
}

Aircraft plane(int id, std::vector<SectorId> route, std::size_t hop = 0) {
    Aircraft a;
    a.id = id;
    a.route = std::move(route);
    a.hop_index = hop;
    return a;
}

AttackScenario crdos(SectorId sector, int start, int end) {
    AttackScenario a;
    a.kind = AttackKind::CompleteRDOS;
    a.sector = sector;
    a.window = {start, end};
    return a;
}

AttackScenario prdos(RouteKey route, int start, int end) {
    AttackScenario a;
    a.kind = AttackKind::PartialRDOS;
    a.route = route;
    a.window = {start, end};
    return a;
}

AttackScenario sdos(SectorId sector, int start, int end) {
    AttackScenario a;
    a.kind = AttackKind::SDOS;
    a.sector = sector;
    a.window = {start, end};
    return a;
}

AttackScenario rst(int aircraft, RouteKey ghost_route, int start, int end) {
    AttackScenario a;
    a.kind = AttackKind::RST;
    a.aircraft_id = aircraft;
    a.route = ghost_route;
    a.window = {start, end};
    return a;
}

bool has_event(const SimulationTrace& trace, int t, const std::string& kind,
               const RouteKey& route, int id) {
    return std::any_of(trace.events.begin(), trace.events.end(), [&](const TraceEvent& e) {
        return e.t == t && e.kind == kind && e.route == route && e.aircraft_id == id;
    });
}

}  // namespace

TEST_CASE("attack validation checks windows and references") {
    const SectorGraph g = fork_graph();
    const NetworkState s = initial_state(g, {plane(5, {1, 2})});

    CHECK_THROWS_AS(validate_attacks({crdos(1, -1, 2)}, g, s), ValidationError);
    CHECK_THROWS_AS(validate_attacks({crdos(1, 3, 2)}, g, s), ValidationError);
    CHECK_THROWS_AS(validate_attacks({crdos(9, 0, 1)}, g, s), UnknownSector);
    CHECK_THROWS_AS(validate_attacks({sdos(9, 0, 1)}, g, s), UnknownSector);
    CHECK_THROWS_AS(validate_attacks({prdos({2, 3}, 0, 1)}, g, s), UnknownRoute);
    CHECK_THROWS_AS(validate_attacks({rst(9, {1, 3}, 0, 1)}, g, s), UnknownAircraft);
    CHECK_THROWS_AS(validate_attacks({rst(5, {2, 3}, 0, 1)}, g, s), UnknownRoute);

    try {
        validate_attacks({crdos(1, 4, 2)}, g, s);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("attacks[0].window") != std::string::npos);
    }
}

TEST_CASE("tampering windows on one aircraft must not overlap") {
    const SectorGraph g = fork_graph();
    const NetworkState s = initial_state(g, {plane(5, {1, 2}), plane(6, {1, 2})});

    CHECK_THROWS_AS(
        validate_attacks({rst(5, {1, 3}, 0, 3), rst(5, {1, 3}, 3, 5)}, g, s),
        ValidationError);
    CHECK_NOTHROW(validate_attacks({rst(5, {1, 3}, 0, 2), rst(5, {1, 3}, 4, 5)}, g, s));
    CHECK_NOTHROW(validate_attacks({rst(5, {1, 3}, 0, 3), rst(6, {1, 3}, 2, 5)}, g, s));
}

TEST_CASE("modifier resolution follows the windows") {
    const SectorGraph g = fork_graph();

    const StepModifiers inside = resolve_modifiers({crdos(1, 1, 1)}, 1, g);
    CHECK(inside.capacity_mask.at({1, 2}) == 0);
    CHECK(inside.capacity_mask.at({1, 3}) == 0);
    CHECK(inside.flush.empty());
    CHECK(inside.ghost_spawns.empty());

    const StepModifiers outside = resolve_modifiers({crdos(1, 1, 1)}, 2, g);
    CHECK(outside.capacity_mask.empty());
    CHECK(outside.mask({1, 2}) == 1);

    const StepModifiers partial = resolve_modifiers({prdos({1, 3}, 0, 4)}, 3, g);
    CHECK(partial.capacity_mask.count({1, 2}) == 0);
    CHECK(partial.capacity_mask.at({1, 3}) == 0);

    const StepModifiers flushed = resolve_modifiers({sdos(1, 2, 2)}, 2, g);
    CHECK(flushed.flush == std::set<SectorId>{1});

    CHECK_THROWS_AS(resolve_modifiers({crdos(9, 0, 1)}, 0, g), UnknownSector);
    CHECK_THROWS_AS(resolve_modifiers({crdos(1, 0, 1)}, -1, g), ValidationError);
}

TEST_CASE("a complete denial equals the union of partial denials") {
    const SectorGraph g = fork_graph();
    const StepModifiers whole = resolve_modifiers({crdos(1, 0, 3)}, 2, g);
    const StepModifiers parts =
        resolve_modifiers({prdos({1, 2}, 0, 3), prdos({1, 3}, 0, 3)}, 2, g);
    CHECK(whole.capacity_mask == parts.capacity_mask);
}

TEST_CASE("ghost tokens arrive once, when the window opens") {
    const SectorGraph g = fork_graph();
    const std::vector<AttackScenario> attacks = {rst(5, {1, 3}, 2, 6)};

    CHECK(resolve_modifiers(attacks, 1, g).ghost_spawns.empty());
    const StepModifiers at_start = resolve_modifiers(attacks, 2, g);
    REQUIRE(at_start.ghost_spawns.size() == 1);
    CHECK(at_start.ghost_spawns[0].route == RouteKey{1, 3});
    CHECK(at_start.ghost_spawns[0].spoofed_id == 5);
    CHECK(at_start.ghost_increment.at({1, 3}) == 1);
    CHECK(resolve_modifiers(attacks, 3, g).ghost_spawns.empty());
}

TEST_CASE("masking and flushing the same route is rejected") {
    const SectorGraph g = fork_graph();
    CHECK_THROWS_AS(resolve_modifiers({crdos(1, 0, 2), sdos(1, 1, 3)}, 1, g),
                    ConflictingAttack);
    CHECK_THROWS_AS(resolve_modifiers({prdos({1, 2}, 0, 2), sdos(1, 1, 3)}, 2, g),
                    ConflictingAttack);
    // Disjoint windows coexist.
    CHECK_NOTHROW(resolve_modifiers({crdos(1, 0, 2), sdos(1, 3, 4)}, 2, g));
    CHECK_NOTHROW(resolve_modifiers({crdos(1, 0, 2), sdos(1, 3, 4)}, 3, g));
}

TEST_CASE("visibility tampering hides and restores the aircraft") {
    const SectorGraph g = fork_graph();
    NetworkState s = initial_state(g, {plane(5, {1, 2}), plane(6, {1, 2})});
    const AttackScenario atk = rst(5, {1, 3}, 0, 2);

    s = apply_rst_visibility(s, atk, 0);
    CHECK(s.fleet.at(5).status == AircraftStatus::Unmanaged);

    // Detection moves it to the back of its queue.
    NetworkState back = apply_rst_visibility(s, atk, 3);
    CHECK(back.fleet.at(5).status == AircraftStatus::Queued);
    REQUIRE(back.queues.at({1, 2}).size() == 2);
    CHECK(back.queues.at({1, 2})[0].id == 6);
    CHECK(back.queues.at({1, 2})[1].id == 5);

    CHECK_THROWS_AS(apply_rst_visibility(s, atk, 5), ValidationError);
    CHECK_THROWS_AS(apply_rst_visibility(s, crdos(1, 0, 1), 0), ValidationError);
    CHECK_THROWS_AS(apply_rst_visibility(s, rst(9, {1, 3}, 0, 2), 1), UnknownAircraft);

    NetworkState arrived = s;
    arrived.fleet.at(5).status = AircraftStatus::Arrived;
    CHECK_THROWS_AS(apply_rst_visibility(arrived, atk, 1), UnknownAircraft);
}

TEST_CASE("tampering lifecycle: ghost backlog, skipped service, late arrival") {
    const SectorGraph g = fork_graph();
    const std::vector<Aircraft> fleet = {plane(5, {1, 2}), plane(6, {1, 2})};
    const NetworkState s0 = initial_state(g, fleet);

    const SimulationTrace base = simulate(g, s0, {}, 6);
    const SimulationTrace hit = simulate(g, s0, {rst(5, {1, 3}, 0, 2)}, 6);

    // The ghost occupies the decoy route while the window is open.
    CHECK(hit.ghosts[0].at({1, 3}) == 1);
    CHECK(hit.backlog[0].at({1, 3}) == 1);
    CHECK(base.backlog[0].at({1, 3}) == 0);
    CHECK(has_event(hit, 0, "ghost_spawn", {1, 3}, 5));
    CHECK(has_event(hit, 0, "unmanaged", {1, 2}, 5));

    // Nothing real was behind it, so service consumes it at the next interval.
    CHECK(has_event(hit, 1, "ghost_serve", {1, 3}, 5));
    CHECK(hit.backlog[1].at({1, 3}) == 0);

    // The hidden aircraft is passed over; its neighbour leaves first.
    CHECK(*hit.arrivals.at(6) == 1);
    CHECK(*base.arrivals.at(6) == 2);

    // Detection at end+1 re-queues it; it leaves afterwards.
    CHECK(has_event(hit, 3, "remanaged", {1, 2}, 5));
    CHECK(*hit.arrivals.at(5) == 3);
    CHECK(*base.arrivals.at(5) == 1);
    CHECK(*hit.arrivals.at(5) >= *base.arrivals.at(5));

    // The ghost was consumed mid-window, so detection drops nothing.
    CHECK_FALSE(has_event(hit, 3, "ghost_drop", {1, 3}, 5));
    CHECK(hit.adjustment[3].at({1, 3}) == 0);
}

TEST_CASE("an unserved ghost is dropped at detection") {
    const SectorGraph g = fork_graph();
    const std::vector<Aircraft> fleet = {plane(5, {1, 2}), plane(7, {1, 3}),
                                         plane(8, {1, 3})};
    const SimulationTrace hit =
        simulate(g, initial_state(g, fleet), {rst(5, {1, 3}, 0, 1)}, 5);

    // The decoy queue holds two real aircraft ahead of the token, so it is
    // never served inside the window and survives to detection.
    CHECK(hit.backlog[0].at({1, 3}) == 3);
    CHECK(hit.backlog[1].at({1, 3}) == 2);
    CHECK(has_event(hit, 2, "ghost_drop", {1, 3}, 5));
    CHECK(hit.adjustment[2].at({1, 3}) == -1);
    CHECK(hit.backlog[2].at({1, 3}) == 0);
    CHECK(*hit.arrivals.at(5) == 2);
    CHECK(*hit.arrivals.at(7) == 1);
    CHECK(*hit.arrivals.at(8) == 2);
}

TEST_CASE("a flush carries a hidden aircraft forward; detection finds it in transit") {
    SectorGraph g;
    for (int s : {1, 2, 3}) g.add_sector(s);
    g.add_route(1, 2, 1, 2.0);
    g.add_route(2, 3, 1, 2.0);
    g.add_route(1, 3, 1, 2.0);

    const std::vector<Aircraft> fleet = {plane(9, {1, 2, 3})};
    const std::vector<AttackScenario> attacks = {rst(9, {1, 3}, 1, 1), sdos(1, 1, 1)};
    const SimulationTrace trace = simulate(g, initial_state(g, fleet), attacks, 4);

    CHECK(has_event(trace, 1, "unmanaged", {1, 2}, 9));
    CHECK(has_event(trace, 1, "flush", {1, 2}, 9));
    CHECK(has_event(trace, 2, "remanaged", {2, 3}, 9));
    CHECK(*trace.arrivals.at(9) == 2);
}

TEST_CASE("a ghost route must leave the aircraft's current sector") {
    const SectorGraph g = fork_graph();
    SectorGraph wide = g;
    wide.add_route(2, 3, 1, 2.0);
    const std::vector<Aircraft> fleet = {plane(5, {1, 2})};

    try {
        simulate(wide, initial_state(wide, fleet), {rst(5, {2, 3}, 0, 1)}, 3);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        const std::string what = e.what();
        CHECK(what.find("ghost route leaves sector 2") != std::string::npos);
        CHECK(what.find("aircraft 5") != std::string::npos);
        CHECK(what.find("sector 1") != std::string::npos);
    }
}

TEST_CASE("tampering with an aircraft that already arrived is rejected") {
    const SectorGraph g = fork_graph();
    const std::vector<Aircraft> fleet = {plane(5, {1, 2})};
    // Aircraft 5 arrives at t=1; the window opens at t=3.
    CHECK_THROWS_AS(simulate(g, initial_state(g, fleet), {rst(5, {1, 3}, 3, 4)}, 5),
                    UnknownAircraft);
}
