#include "sectorflow/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace sectorflow {

namespace {

std::string route_label(const RouteKey& route) {
    return std::to_string(route.first) + "->" + std::to_string(route.second);
}

}  // namespace

std::string format_double(double x) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.10g", x);
    return buffer;
}

std::string backlogs_csv(const SimulationTrace& trace) {
    std::ostringstream out;
    out << "t,from_sector,to_sector,backlog\n";
    for (int t = 0; t <= trace.horizon && t < static_cast<int>(trace.backlog.size()); ++t)
        for (const RouteKey& route : trace.routes)
            out << t << ',' << route.first << ',' << route.second << ','
                << trace.backlog[t].at(route) << '\n';
    return out.str();
}

std::string arrivals_csv(const SimulationTrace& trace) {
    std::ostringstream out;
    out << "aircraft_id,arrival_t\n";
    for (const auto& [id, arrival] : trace.arrivals) {
        out << id << ',';
        if (arrival) out << *arrival;
        out << '\n';
    }
    return out.str();
}

std::string events_csv(const SimulationTrace& trace) {
    std::ostringstream out;
    out << "t,event,route,aircraft_id\n";
    for (const TraceEvent& e : trace.events)
        out << e.t << ',' << e.kind << ',' << route_label(e.route) << ',' << e.aircraft_id
            << '\n';
    return out.str();
}

std::string ranking_csv(const std::vector<RankedRow>& rows) {
    std::ostringstream out;
    out << "rank,target,value\n";
    for (const RankedRow& row : rows)
        out << row.rank << ',' << row.target << ',' << format_double(row.value) << '\n';
    return out.str();
}

std::string comparison_csv(const ComparisonReport& report) {
    std::ostringstream out;
    out << "sector,vk_rank,vk_value,vt_rank,vt_value,rank_difference\n";
    for (const ComparisonRow& row : report.rows) {
        out << row.sector << ',';
        if (row.vk_rank) out << *row.vk_rank;
        out << ',';
        if (row.vk) out << format_double(*row.vk);
        out << ',';
        if (row.vt_rank) out << *row.vt_rank;
        out << ',';
        if (row.vt) out << format_double(*row.vt);
        out << ',';
        if (row.rank_difference) out << *row.rank_difference;
        out << '\n';
    }
    return out.str();
}

std::string arrival_deltas_csv(const SimulationTrace& baseline, const SimulationTrace& attack) {
    std::map<int, std::pair<std::optional<int>, std::optional<int>>> merged;
    for (const auto& [id, arrival] : baseline.arrivals) merged[id].first = arrival;
    for (const auto& [id, arrival] : attack.arrivals) merged[id].second = arrival;

    std::ostringstream out;
    out << "aircraft_id,baseline_arrival_t,attack_arrival_t,delta\n";
    for (const auto& [id, pair] : merged) {
        out << id << ',';
        if (pair.first) out << *pair.first;
        out << ',';
        if (pair.second) out << *pair.second;
        out << ',';
        if (pair.first && pair.second) out << (*pair.second - *pair.first);
        out << '\n';
    }
    return out.str();
}

std::string backlog_deltas_csv(const SimulationTrace& baseline, const SimulationTrace& attack) {
    std::ostringstream out;
    out << "t,from_sector,to_sector,baseline_backlog,attack_backlog,delta\n";
    const int horizon = std::min(baseline.horizon, attack.horizon);
    for (int t = 0; t <= horizon; ++t) {
        for (const RouteKey& route : baseline.routes) {
            auto it = attack.backlog[t].find(route);
            if (it == attack.backlog[t].end()) continue;
            const int base = baseline.backlog[t].at(route);
            out << t << ',' << route.first << ',' << route.second << ',' << base << ','
                << it->second << ',' << (it->second - base) << '\n';
        }
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    std::error_code ec;
    if (target.has_parent_path())
        std::filesystem::create_directories(target.parent_path(), ec);
    std::ofstream out(target, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
    if (!out) throw Error("failed while writing " + path);
}

}  // namespace sectorflow
