#include "sectorflow/scenario.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace sectorflow {

using nlohmann::json;

namespace {

std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

std::string index_path(const std::string& prefix, std::size_t i) {
    return prefix + "[" + std::to_string(i) + "]";
}

const json& require_field(const json& obj, const std::string& key, const std::string& prefix) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ValidationError(join(prefix, key), "missing field");
    return *it;
}

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ValidationError(path, "expected an object");
}

void check_keys(const json& obj, const std::string& prefix, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) throw ValidationError(join(prefix, key), "unknown field");
}

int require_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ValidationError(path, "expected an integer");
    return j.get<int>();
}

double require_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ValidationError(path, "expected a number");
    return j.get<double>();
}

bool optional_bool(const json& obj, const std::string& key, const std::string& prefix,
                   bool fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_boolean()) throw ValidationError(join(prefix, key), "expected a boolean");
    return it->get<bool>();
}

RouteKey require_route_pair(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2)
        throw ValidationError(path, "expected a [from, to] pair");
    return {require_int(j[0], path + "[0]"), require_int(j[1], path + "[1]")};
}

SectorGraph parse_graph(const json& g) {
    require_object(g, "graph");
    check_keys(g, "graph", {"sectors", "routes"});

    SectorGraph graph;
    const json& sectors = require_field(g, "sectors", "graph");
    if (!sectors.is_array() || sectors.empty())
        throw ValidationError("graph.sectors", "expected a non-empty array");
    for (std::size_t i = 0; i < sectors.size(); ++i) {
        const int s = require_int(sectors[i], index_path("graph.sectors", i));
        if (graph.has_sector(s))
            throw ValidationError(index_path("graph.sectors", i),
                                  "duplicate sector " + std::to_string(s));
        graph.add_sector(s);
    }

    const json& routes = require_field(g, "routes", "graph");
    if (!routes.is_array()) throw ValidationError("graph.routes", "expected an array");
    for (std::size_t i = 0; i < routes.size(); ++i) {
        const std::string path = index_path("graph.routes", i);
        const json& r = routes[i];
        require_object(r, path);
        check_keys(r, path, {"from", "to", "capacity", "flow", "bidirectional"});
        const int from = require_int(require_field(r, "from", path), path + ".from");
        const int to = require_int(require_field(r, "to", path), path + ".to");
        const int capacity = require_int(require_field(r, "capacity", path), path + ".capacity");
        const double flow = require_number(require_field(r, "flow", path), path + ".flow");
        const bool bidir = optional_bool(r, "bidirectional", path, false);
        try {
            graph.add_route(from, to, capacity, flow, bidir);
        } catch (const Error& e) {
            throw ValidationError(path, e.what());
        }
    }
    return graph;
}

std::vector<Aircraft> parse_fleet(const json& list, const SectorGraph& graph) {
    if (!list.is_array()) throw ValidationError("aircraft", "expected an array");
    std::vector<Aircraft> fleet;
    std::set<int> ids;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = index_path("aircraft", i);
        const json& a = list[i];
        require_object(a, path);
        check_keys(a, path, {"id", "route", "hop", "inject_t"});

        Aircraft out;
        out.id = require_int(require_field(a, "id", path), path + ".id");
        if (out.id <= 0) throw ValidationError(path + ".id", "must be positive");
        if (!ids.insert(out.id).second)
            throw ValidationError(path + ".id", "duplicate id " + std::to_string(out.id));

        const json& route = require_field(a, "route", path);
        if (!route.is_array() || route.size() < 2)
            throw ValidationError(path + ".route", "expected at least two sectors");
        std::set<SectorId> seen;
        for (std::size_t j = 0; j < route.size(); ++j) {
            const int s = require_int(route[j], index_path(path + ".route", j));
            if (!graph.has_sector(s))
                throw ValidationError(index_path(path + ".route", j),
                                      "unknown sector " + std::to_string(s));
            if (!seen.insert(s).second)
                throw ValidationError(index_path(path + ".route", j),
                                      "route revisits sector " + std::to_string(s));
            out.route.push_back(s);
        }
        for (std::size_t j = 0; j + 1 < out.route.size(); ++j)
            if (!graph.has_route(out.route[j], out.route[j + 1]))
                throw ValidationError(index_path(path + ".route", j + 1),
                                      "no route " + std::to_string(out.route[j]) + "->" +
                                          std::to_string(out.route[j + 1]));

        const bool has_hop = a.contains("hop");
        const bool has_inject = a.contains("inject_t");
        if (has_hop == has_inject)
            throw ValidationError(path, "needs exactly one of hop or inject_t");
        if (has_hop) {
            const int hop = require_int(a["hop"], path + ".hop");
            if (hop < 0 || hop + 1 >= static_cast<int>(out.route.size()))
                throw ValidationError(path + ".hop",
                                      "must lie between 0 and the leg before the final sector");
            out.hop_index = static_cast<std::size_t>(hop);
        } else {
            const int inject = require_int(a["inject_t"], path + ".inject_t");
            if (inject < 1) throw ValidationError(path + ".inject_t", "must be at least 1");
            out.inject_t = inject;
        }
        fleet.push_back(std::move(out));
    }
    return fleet;
}

AttackWindow parse_window(const json& obj, const std::string& path) {
    const json& w = require_field(obj, "window", path);
    if (!w.is_array() || w.size() != 2)
        throw ValidationError(path + ".window", "expected [start, end]");
    AttackWindow window;
    window.start = require_int(w[0], path + ".window[0]");
    window.end = require_int(w[1], path + ".window[1]");
    if (window.start < 0 || window.start > window.end)
        throw ValidationError(path + ".window", "needs 0 <= start <= end");
    return window;
}

void require_known_sector(const SectorGraph& graph, SectorId s, const std::string& path) {
    if (!graph.has_sector(s))
        throw ValidationError(path, "unknown sector " + std::to_string(s));
}

void require_known_route(const SectorGraph& graph, const RouteKey& r, const std::string& path) {
    if (!graph.has_route(r.first, r.second))
        throw ValidationError(path, "unknown route " + std::to_string(r.first) + "->" +
                                        std::to_string(r.second));
}

std::vector<AttackScenario> parse_attacks(const json& list, const SectorGraph& graph,
                                          const std::vector<Aircraft>& fleet) {
    if (!list.is_array()) throw ValidationError("attacks", "expected an array");
    std::set<int> ids;
    for (const Aircraft& a : fleet) ids.insert(a.id);

    std::vector<AttackScenario> attacks;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = index_path("attacks", i);
        const json& a = list[i];
        require_object(a, path);
        const json& kind = require_field(a, "kind", path);
        if (!kind.is_string()) throw ValidationError(path + ".kind", "expected a string");
        const std::string name = kind.get<std::string>();

        AttackScenario out;
        if (name == "crdos" || name == "sdos") {
            check_keys(a, path, {"kind", "sector", "window"});
            out.kind = name == "crdos" ? AttackKind::CompleteRDOS : AttackKind::SDOS;
            out.sector = require_int(require_field(a, "sector", path), path + ".sector");
            require_known_sector(graph, out.sector, path + ".sector");
        } else if (name == "prdos") {
            check_keys(a, path, {"kind", "route", "window"});
            out.kind = AttackKind::PartialRDOS;
            out.route = require_route_pair(require_field(a, "route", path), path + ".route");
            require_known_route(graph, out.route, path + ".route");
        } else if (name == "rst") {
            check_keys(a, path, {"kind", "aircraft", "ghost_route", "window"});
            out.kind = AttackKind::RST;
            out.aircraft_id = require_int(require_field(a, "aircraft", path), path + ".aircraft");
            if (!ids.count(out.aircraft_id))
                throw ValidationError(path + ".aircraft",
                                      "unknown aircraft " + std::to_string(out.aircraft_id));
            out.route = require_route_pair(require_field(a, "ghost_route", path),
                                           path + ".ghost_route");
            require_known_route(graph, out.route, path + ".ghost_route");
        } else {
            throw ValidationError(path + ".kind",
                                  "expected one of crdos, prdos, rst, sdos; got " + name);
        }
        out.window = parse_window(a, path);
        attacks.push_back(out);
    }
    return attacks;
}

MetricOverrides parse_metrics(const json& m) {
    require_object(m, "metrics");
    check_keys(m, "metrics",
               {"alpha", "beta", "c_exp", "sdos_factor", "weight_lost", "max_n"});
    MetricOverrides out;
    if (m.contains("alpha")) {
        out.alpha = require_int(m["alpha"], "metrics.alpha");
        if (*out.alpha < 1) throw ValidationError("metrics.alpha", "must be a positive integer");
    }
    if (m.contains("beta")) {
        out.beta = require_int(m["beta"], "metrics.beta");
        if (*out.beta < 1) throw ValidationError("metrics.beta", "must be a positive integer");
    }
    if (m.contains("c_exp")) {
        out.c_exp = require_number(m["c_exp"], "metrics.c_exp");
        if (*out.c_exp < 0) throw ValidationError("metrics.c_exp", "must be non-negative");
    }
    if (m.contains("sdos_factor")) {
        out.sdos_factor = require_number(m["sdos_factor"], "metrics.sdos_factor");
        if (*out.sdos_factor <= 0)
            throw ValidationError("metrics.sdos_factor", "must be positive");
    }
    if (m.contains("weight_lost")) {
        out.weight_lost = require_number(m["weight_lost"], "metrics.weight_lost");
        if (!(*out.weight_lost > 0.5 && *out.weight_lost < 1.0))
            throw ValidationError("metrics.weight_lost",
                                  "must lie strictly between 0.5 and 1");
    }
    if (m.contains("max_n")) {
        out.max_n = require_int(m["max_n"], "metrics.max_n");
        if (*out.max_n < 1) throw ValidationError("metrics.max_n", "must be a positive integer");
    }
    return out;
}

}  // namespace

ScenarioDocument parse_scenario(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!root.is_object()) throw ValidationError("", "document must be an object");
    check_keys(root, "",
               {"version", "notes", "graph", "aircraft", "attacks", "horizon", "metrics"});

    ScenarioDocument doc;
    doc.version = require_int(require_field(root, "version", ""), "version");
    if (doc.version != 1)
        throw ValidationError("version",
                              "unsupported version " + std::to_string(doc.version));
    if (root.contains("notes")) {
        if (!root["notes"].is_string()) throw ValidationError("notes", "expected a string");
        doc.notes = root["notes"].get<std::string>();
    }

    doc.graph = parse_graph(require_field(root, "graph", ""));
    doc.fleet = parse_fleet(require_field(root, "aircraft", ""), doc.graph);
    doc.attacks = parse_attacks(require_field(root, "attacks", ""), doc.graph, doc.fleet);
    doc.horizon = require_int(require_field(root, "horizon", ""), "horizon");
    if (doc.horizon < 1) throw ValidationError("horizon", "must be at least 1");
    if (root.contains("metrics")) doc.metrics = parse_metrics(root["metrics"]);
    return doc;
}

std::string serialize_scenario(const ScenarioDocument& doc) {
    json root;
    root["version"] = doc.version;
    if (!doc.notes.empty()) root["notes"] = doc.notes;
    root["graph"]["sectors"] = doc.graph.sector_order();
    json routes = json::array();
    for (const auto& [key, attrs] : doc.graph.routes()) {
        // Stored form is directed; bidirectional inputs round-trip as two
        // directed routes, which parse to the same graph.
        routes.push_back({{"from", key.first},
                          {"to", key.second},
                          {"capacity", attrs.capacity},
                          {"flow", attrs.flow}});
    }
    root["graph"]["routes"] = std::move(routes);

    json fleet = json::array();
    for (const Aircraft& a : doc.fleet) {
        json entry{{"id", a.id}, {"route", a.route}};
        if (a.inject_t)
            entry["inject_t"] = *a.inject_t;
        else
            entry["hop"] = static_cast<int>(a.hop_index);
        fleet.push_back(std::move(entry));
    }
    root["aircraft"] = std::move(fleet);

    json attacks = json::array();
    for (const AttackScenario& atk : doc.attacks) {
        json entry;
        entry["window"] = {atk.window.start, atk.window.end};
        switch (atk.kind) {
            case AttackKind::CompleteRDOS:
                entry["kind"] = "crdos";
                entry["sector"] = atk.sector;
                break;
            case AttackKind::SDOS:
                entry["kind"] = "sdos";
                entry["sector"] = atk.sector;
                break;
            case AttackKind::PartialRDOS:
                entry["kind"] = "prdos";
                entry["route"] = {atk.route.first, atk.route.second};
                break;
            case AttackKind::RST:
                entry["kind"] = "rst";
                entry["aircraft"] = atk.aircraft_id;
                entry["ghost_route"] = {atk.route.first, atk.route.second};
                break;
        }
        attacks.push_back(std::move(entry));
    }
    root["attacks"] = std::move(attacks);
    root["horizon"] = doc.horizon;

    json metrics = json::object();
    if (doc.metrics.alpha) metrics["alpha"] = *doc.metrics.alpha;
    if (doc.metrics.beta) metrics["beta"] = *doc.metrics.beta;
    if (doc.metrics.c_exp) metrics["c_exp"] = *doc.metrics.c_exp;
    if (doc.metrics.sdos_factor) metrics["sdos_factor"] = *doc.metrics.sdos_factor;
    if (doc.metrics.weight_lost) metrics["weight_lost"] = *doc.metrics.weight_lost;
    if (doc.metrics.max_n) metrics["max_n"] = *doc.metrics.max_n;
    if (!metrics.empty()) root["metrics"] = std::move(metrics);

    return root.dump(2) + "\n";
}

ScenarioDocument load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(path, "cannot open scenario file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

}  // namespace sectorflow
