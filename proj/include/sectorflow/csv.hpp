#ifndef SECTORFLOW_CSV_HPP
#define SECTORFLOW_CSV_HPP

#include <string>
#include <utility>
#include <vector>

#include "sectorflow/engine.hpp"
#include "sectorflow/paths.hpp"

namespace sectorflow {

// Shortest round-trippable decimal form, identical across runs.
std::string format_double(double x);

// t,from_sector,to_sector,backlog; rows ordered by t then (from,to).
std::string backlogs_csv(const SimulationTrace& trace);

// aircraft_id,arrival_t; ascending id; unarrived aircraft leave the cell empty.
std::string arrivals_csv(const SimulationTrace& trace);

// t,event,route,aircraft_id in generation order; route rendered as "3->7".
std::string events_csv(const SimulationTrace& trace);

// rank,target,value; callers supply rows already ranked.
struct RankedRow {
    int rank = 0;
    std::string target;
    double value = 0.0;
};
std::string ranking_csv(const std::vector<RankedRow>& rows);

// sector,vk_rank,vk_value,vt_rank,vt_value,rank_difference; a sector whose
// metric failed leaves its cells empty.
std::string comparison_csv(const ComparisonReport& report);

// aircraft_id,baseline_arrival_t,attack_arrival_t,delta over the union of
// aircraft; cells empty where a run never delivered the aircraft.
std::string arrival_deltas_csv(const SimulationTrace& baseline, const SimulationTrace& attack);

// t,from_sector,to_sector,baseline_backlog,attack_backlog,delta over the
// shared horizon and route set.
std::string backlog_deltas_csv(const SimulationTrace& baseline, const SimulationTrace& attack);

// Creates parent directories as needed; throws Error on IO failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace sectorflow

#endif
