#include "sectorflow/paths.hpp"

#include <algorithm>
#include <functional>

namespace sectorflow {

namespace {

void check_params(const PathParams& p) {
    if (!(p.weight_lost > 0.5 && p.weight_lost < 1.0))
        throw ValidationError("weight-lost", "must lie strictly between 0.5 and 1");
    if (p.max_n < 1) throw ValidationError("max-n", "must be a positive integer");
}

// Shared census walk. exclude picks the pairs that are classified against
// the reduced graph; every pair still feeds defaultpath.
PathCensus census_impl(const SectorGraph& graph, const SectorGraph& reduced,
                       const PathParams& params,
                       const std::function<bool(SectorId, SectorId)>& exclude) {
    PathCensus census;
    census.max_n = params.max_n;
    census.defaultpath.assign(static_cast<std::size_t>(params.max_n) + 1, 0);
    census.lostpath.assign(static_cast<std::size_t>(params.max_n) + 1, 0);
    census.reducepath.assign(static_cast<std::size_t>(params.max_n) + 1, 0);

    const std::vector<SectorId> order = graph.sector_order();
    for (std::size_t a = 0; a < order.size(); ++a) {
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            const SectorId i = order[a];
            const SectorId j = order[b];
            const std::vector<long long> base =
                count_simple_paths_by_length(graph, i, j, params.max_n);
            for (int n = 1; n <= params.max_n; ++n)
                census.defaultpath[static_cast<std::size_t>(n)] +=
                    base[static_cast<std::size_t>(n)];
            if (exclude(i, j)) continue;
            const std::vector<long long> after =
                count_simple_paths_by_length(reduced, i, j, params.max_n);
            for (int n = 1; n <= params.max_n; ++n) {
                const long long alpha = base[static_cast<std::size_t>(n)];
                const long long beta = after[static_cast<std::size_t>(n)];
                if (alpha > 0 && beta == 0)
                    census.lostpath[static_cast<std::size_t>(n)] += alpha;
                else if (beta > 0 && beta < alpha)
                    census.reducepath[static_cast<std::size_t>(n)] += alpha - beta;
            }
        }
    }
    return census;
}

}  // namespace

PathCensus path_census(const SectorGraph& graph, SectorId k, const PathParams& params) {
    check_params(params);
    if (!graph.has_sector(k)) throw UnknownSector(k);
    const SectorGraph reduced = remove_sector(graph, k);
    return census_impl(graph, reduced, params,
                       [k](SectorId i, SectorId j) { return i == k || j == k; });
}

PathCensus path_census(const SectorGraph& graph, const RouteKey& route,
                       const PathParams& params) {
    check_params(params);
    const SectorGraph reduced = remove_route(graph, route.first, route.second);
    return census_impl(graph, reduced, params, [](SectorId, SectorId) { return false; });
}

double v_k(const PathCensus& census, const PathParams& params) {
    check_params(params);
    const double w = params.weight_lost;
    double score = 0.0;
    for (int n = 1; n <= census.max_n; ++n) {
        const std::size_t idx = static_cast<std::size_t>(n);
        const double numerator = w * static_cast<double>(census.lostpath[idx]) +
                                 (1.0 - w) * static_cast<double>(census.reducepath[idx]);
        if (census.defaultpath[idx] == 0) {
            if (numerator != 0.0) throw DivisionByZeroLength(n);
            continue;
        }
        score += (census.max_n - n + 1) * numerator /
                 static_cast<double>(census.defaultpath[idx]);
    }
    return score;
}

double v_k(const SectorGraph& graph, SectorId k, const PathParams& params) {
    return v_k(path_census(graph, k, params), params);
}

double v_k(const SectorGraph& graph, const RouteKey& route, const PathParams& params) {
    return v_k(path_census(graph, route, params), params);
}

namespace {

// value -> rank (1-based, descending, ties by ascending sector) for the
// sectors where the metric produced a value.
void assign_ranks(std::vector<ComparisonRow>& rows, std::optional<double> ComparisonRow::* value,
                  std::optional<int> ComparisonRow::* rank) {
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].*value) indices.push_back(i);
    std::sort(indices.begin(), indices.end(), [&](std::size_t a, std::size_t b) {
        const double va = *(rows[a].*value);
        const double vb = *(rows[b].*value);
        if (va != vb) return va > vb;
        return rows[a].sector < rows[b].sector;
    });
    for (std::size_t pos = 0; pos < indices.size(); ++pos)
        rows[indices[pos]].*rank = static_cast<int>(pos) + 1;
}

}  // namespace

ComparisonReport rank_compare(const SectorGraph& graph, const SpectralParams& spectral_params,
                              const PathParams& path_params) {
    check_params(path_params);
    ComparisonReport report;
    for (SectorId s : graph.sector_order()) {
        ComparisonRow row;
        row.sector = s;
        try {
            row.vk = v_k(graph, s, path_params);
        } catch (const Error& e) {
            row.error = e.what();
        }
        try {
            row.vt = crdos_vulnerability(graph, s, spectral_params);
        } catch (const Error& e) {
            if (row.error.empty()) row.error = e.what();
        }
        report.rows.push_back(std::move(row));
    }

    assign_ranks(report.rows, &ComparisonRow::vk, &ComparisonRow::vk_rank);
    assign_ranks(report.rows, &ComparisonRow::vt, &ComparisonRow::vt_rank);
    for (ComparisonRow& row : report.rows) {
        if (row.vk_rank && row.vt_rank) {
            row.rank_difference = std::abs(*row.vk_rank - *row.vt_rank);
            if (!report.max_rank_difference ||
                *row.rank_difference > *report.max_rank_difference)
                report.max_rank_difference = row.rank_difference;
        }
    }
    return report;
}

}  // namespace sectorflow
