#ifndef SECTORFLOW_PATHS_HPP
#define SECTORFLOW_PATHS_HPP

#include <optional>
#include <string>
#include <vector>

#include "sectorflow/graph.hpp"
#include "sectorflow/spectral.hpp"

namespace sectorflow {

struct PathParams {
    double weight_lost = 0.75;  // strictly between 0.5 and 1
    int max_n = 1;              // longest path length counted, >= 1
};

// Exact-length simple-path counts, indexed by length n in 1..max_n
// (index 0 unused). defaultpath counts paths over every unordered sector
// pair of the baseline graph; lostpath and reducepath classify what a
// shutdown does to each pair's length-n count: fully eliminated counts go to
// lostpath, partial losses contribute the difference to reducepath.
struct PathCensus {
    int max_n = 0;
    std::vector<long long> defaultpath;
    std::vector<long long> lostpath;
    std::vector<long long> reducepath;
};

// Sector shutdown: pairs touching k are excluded from loss classification
// (but still count toward defaultpath).
PathCensus path_census(const SectorGraph& graph, SectorId k, const PathParams& params);
// Route shutdown: all pairs participate, including the route's endpoints.
PathCensus path_census(const SectorGraph& graph, const RouteKey& route,
                       const PathParams& params);

// Shutdown score: sum over n of (max_n - n + 1) *
// [w * lostpath^n + (1-w) * reducepath^n] / defaultpath^n, with zero terms
// skipped when defaultpath^n is zero.
double v_k(const PathCensus& census, const PathParams& params);
double v_k(const SectorGraph& graph, SectorId k, const PathParams& params);
double v_k(const SectorGraph& graph, const RouteKey& route, const PathParams& params);

// Side-by-side sector ranking under the path score (sector shutdown) and the
// spectral keep-one-edge score. A metric that fails for a sector leaves its
// cells empty and records the reason.
struct ComparisonRow {
    SectorId sector = 0;
    std::optional<double> vk;
    std::optional<double> vt;
    std::optional<int> vk_rank;
    std::optional<int> vt_rank;
    std::optional<int> rank_difference;
    std::string error;  // first failure message, empty when both metrics ran
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;  // ascending sector id
    std::optional<int> max_rank_difference;
};

// Ranks are 1-based, descending by value, ties broken by ascending sector id.
ComparisonReport rank_compare(const SectorGraph& graph, const SpectralParams& spectral_params,
                              const PathParams& path_params);

}  // namespace sectorflow

#endif
