#include "sectorflow/graph.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace sectorflow {

void SectorGraph::add_sector(SectorId s) { sectors_.insert(s); }

void SectorGraph::add_route(SectorId from, SectorId to, int capacity, double flow,
                            bool bidirectional) {
    if (from == to)
        throw ValidationError("route " + std::to_string(from) + "->" + std::to_string(to),
                              "self-loops are not allowed");
    if (!has_sector(from)) throw UnknownSector(from);
    if (!has_sector(to)) throw UnknownSector(to);
    if (capacity < 0)
        throw ValidationError("route " + std::to_string(from) + "->" + std::to_string(to),
                              "capacity must be non-negative");
    if (flow < 0)
        throw ValidationError("route " + std::to_string(from) + "->" + std::to_string(to),
                              "flow must be non-negative");
    if (has_route(from, to))
        throw ValidationError("route " + std::to_string(from) + "->" + std::to_string(to),
                              "duplicate route");
    routes_[{from, to}] = RouteAttrs{capacity, flow};
    if (bidirectional) {
        if (has_route(to, from))
            throw ValidationError("route " + std::to_string(to) + "->" + std::to_string(from),
                                  "duplicate route");
        routes_[{to, from}] = RouteAttrs{capacity, flow};
    }
}

const RouteAttrs& SectorGraph::route(SectorId from, SectorId to) const {
    auto it = routes_.find({from, to});
    if (it == routes_.end()) throw UnknownRoute(from, to);
    return it->second;
}

std::vector<SectorId> SectorGraph::out_neighbors(SectorId s) const {
    if (!has_sector(s)) throw UnknownSector(s);
    std::vector<SectorId> out;
    for (auto it = routes_.lower_bound({s, std::numeric_limits<SectorId>::min()});
         it != routes_.end() && it->first.first == s; ++it)
        out.push_back(it->first.second);
    return out;
}

std::vector<SectorId> SectorGraph::undirected_neighbors(SectorId s) const {
    if (!has_sector(s)) throw UnknownSector(s);
    std::set<SectorId> out;
    for (const auto& [key, attrs] : routes_) {
        if (key.first == s) out.insert(key.second);
        if (key.second == s) out.insert(key.first);
    }
    return {out.begin(), out.end()};
}

std::vector<RouteKey> SectorGraph::undirected_edges() const {
    std::set<RouteKey> pairs;
    for (const auto& [key, attrs] : routes_)
        pairs.insert({std::min(key.first, key.second), std::max(key.first, key.second)});
    return {pairs.begin(), pairs.end()};
}

bool SectorGraph::connected_undirected() const {
    if (sectors_.empty()) return true;
    std::set<SectorId> seen;
    std::queue<SectorId> frontier;
    frontier.push(*sectors_.begin());
    seen.insert(*sectors_.begin());
    while (!frontier.empty()) {
        SectorId s = frontier.front();
        frontier.pop();
        for (SectorId nb : undirected_neighbors(s))
            if (seen.insert(nb).second) frontier.push(nb);
    }
    return seen.size() == sectors_.size();
}

LaplacianMatrix laplacian(const SectorGraph& graph, bool symmetrize) {
    const std::vector<SectorId> order = graph.sector_order();
    std::map<SectorId, Eigen::Index> index;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(order.size()); ++i)
        index[order[i]] = i;

    const Eigen::Index n = static_cast<Eigen::Index>(order.size());
    LaplacianMatrix L = LaplacianMatrix::Zero(n, n);
    for (const auto& [key, attrs] : graph.routes()) {
        const Eigen::Index r = index.at(key.first);
        const Eigen::Index c = index.at(key.second);
        L(r, c) = -1.0;
        if (symmetrize) L(c, r) = -1.0;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        L(i, i) = 0.0;
        L(i, i) = -L.row(i).sum();
    }
    return L;
}

int diameter(const SectorGraph& graph) {
    const std::vector<SectorId> order = graph.sector_order();
    if (order.size() <= 1) return 0;

    int worst = 0;
    for (SectorId start : order) {
        std::map<SectorId, int> dist;
        dist[start] = 0;
        std::queue<SectorId> frontier;
        frontier.push(start);
        while (!frontier.empty()) {
            SectorId s = frontier.front();
            frontier.pop();
            for (SectorId nb : graph.undirected_neighbors(s)) {
                if (dist.count(nb)) continue;
                dist[nb] = dist[s] + 1;
                frontier.push(nb);
            }
        }
        if (dist.size() != order.size()) throw DisconnectedGraph();
        for (const auto& [s, d] : dist) worst = std::max(worst, d);
    }
    return worst;
}

namespace {

void count_paths_dfs(const SectorGraph& graph, SectorId at, SectorId goal, int edges_left,
                     int max_n, std::set<SectorId>& on_path, std::vector<long long>& counts) {
    // edges_left counts down from max_n; a hit at depth d records length d.
    if (at == goal && edges_left < max_n) {
        counts[max_n - edges_left] += 1;
        return;  // simple paths cannot revisit the goal
    }
    if (edges_left == 0) return;
    for (SectorId nb : graph.undirected_neighbors(at)) {
        if (on_path.count(nb)) continue;
        on_path.insert(nb);
        count_paths_dfs(graph, nb, goal, edges_left - 1, max_n, on_path, counts);
        on_path.erase(nb);
    }
}

}  // namespace

std::vector<long long> count_simple_paths_by_length(const SectorGraph& graph,
                                                    SectorId i, SectorId j, int max_n) {
    if (!graph.has_sector(i)) throw UnknownSector(i);
    if (!graph.has_sector(j)) throw UnknownSector(j);
    if (max_n < 0) throw ValidationError("max_n", "must be non-negative");

    std::vector<long long> counts(static_cast<std::size_t>(max_n) + 1, 0);
    if (max_n == 0 || i == j) return counts;
    std::set<SectorId> on_path{i};
    count_paths_dfs(graph, i, j, max_n, max_n, on_path, counts);
    return counts;
}

long long count_simple_paths(const SectorGraph& graph, SectorId i, SectorId j, int n) {
    if (n < 0) throw ValidationError("n", "must be non-negative");
    if (n == 0) return 0;
    return count_simple_paths_by_length(graph, i, j, n)[static_cast<std::size_t>(n)];
}

SectorGraph remove_sector(const SectorGraph& graph, SectorId k) {
    if (!graph.has_sector(k)) throw UnknownSector(k);
    SectorGraph out;
    for (SectorId s : graph.sector_order())
        if (s != k) out.add_sector(s);
    for (const auto& [key, attrs] : graph.routes())
        if (key.first != k && key.second != k)
            out.add_route(key.first, key.second, attrs.capacity, attrs.flow);
    return out;
}

SectorGraph remove_route(const SectorGraph& graph, SectorId i, SectorId j) {
    if (!graph.has_route(i, j) && !graph.has_route(j, i)) throw UnknownRoute(i, j);
    SectorGraph out;
    for (SectorId s : graph.sector_order()) out.add_sector(s);
    for (const auto& [key, attrs] : graph.routes()) {
        if ((key.first == i && key.second == j) || (key.first == j && key.second == i))
            continue;
        out.add_route(key.first, key.second, attrs.capacity, attrs.flow);
    }
    return out;
}

}  // namespace sectorflow
