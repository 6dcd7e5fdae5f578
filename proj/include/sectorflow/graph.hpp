#ifndef SECTORFLOW_GRAPH_HPP
#define SECTORFLOW_GRAPH_HPP

#include <Eigen/Dense>

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "sectorflow/errors.hpp"

namespace sectorflow {

using SectorId = int;
using RouteKey = std::pair<SectorId, SectorId>;

// Per-route attributes: service capacity (aircraft per interval) and nominal
// flow density (aircraft per interval that the route is planned to carry).
struct RouteAttrs {
    int capacity = 1;
    double flow = 0.0;
    bool operator==(const RouteAttrs&) const = default;
};

// Directed sector/route graph. Routes are directed edges; a bidirectional
// route is stored as two directed routes sharing capacity and flow.
// Invariants: no self-loops, at most one route per ordered pair, every
// endpoint is a declared sector.
class SectorGraph {
public:
    SectorGraph() = default;

    void add_sector(SectorId s);
    void add_route(SectorId from, SectorId to, int capacity, double flow,
                   bool bidirectional = false);

    bool has_sector(SectorId s) const { return sectors_.count(s) != 0; }
    bool has_route(SectorId from, SectorId to) const {
        return routes_.count({from, to}) != 0;
    }
    const RouteAttrs& route(SectorId from, SectorId to) const;

    // Ascending sector ids; this is the fixed ordering used for matrix rows,
    // eigenvector components and CSV columns.
    std::vector<SectorId> sector_order() const {
        return {sectors_.begin(), sectors_.end()};
    }
    std::size_t sector_count() const { return sectors_.size(); }
    std::size_t route_count() const { return routes_.size(); }

    // Ordered ascending by (from, to); deterministic iteration everywhere.
    const std::map<RouteKey, RouteAttrs>& routes() const { return routes_; }

    // Directed out-neighbors / undirected neighbors, ascending.
    std::vector<SectorId> out_neighbors(SectorId s) const;
    std::vector<SectorId> undirected_neighbors(SectorId s) const;

    // Unordered adjacent pairs {i, j} with i < j, ascending.
    std::vector<RouteKey> undirected_edges() const;

    bool connected_undirected() const;

    bool operator==(const SectorGraph&) const = default;

private:
    std::set<SectorId> sectors_;
    std::map<RouteKey, RouteAttrs> routes_;
};

using LaplacianMatrix = Eigen::MatrixXd;

// Graph Laplacian over the ascending-sector-id ordering: off-diagonal -1
// where a route exists, diagonal set so each row sums to zero. With
// symmetrize, an edge in either direction yields -1 at both (i,j) and (j,i).
LaplacianMatrix laplacian(const SectorGraph& graph, bool symmetrize);

// Longest shortest-path hop count over all unordered sector pairs, edges
// treated as undirected. Throws DisconnectedGraph when any pair is
// unreachable. A single sector has diameter 0.
int diameter(const SectorGraph& graph);

// Exact count of simple paths with exactly n edges between i and j, edges
// treated as undirected. Returns 0 for unreachable or over-length queries.
long long count_simple_paths(const SectorGraph& graph, SectorId i, SectorId j, int n);

// Counts of simple paths of every exact length 1..max_n between i and j in
// one traversal; index 0 is unused. Shared by count_simple_paths and the
// path census.
std::vector<long long> count_simple_paths_by_length(const SectorGraph& graph,
                                                    SectorId i, SectorId j, int max_n);

// Pure copies: the input graph is never modified.
SectorGraph remove_sector(const SectorGraph& graph, SectorId k);
// Removes (i,j) and, when present, (j,i).
SectorGraph remove_route(const SectorGraph& graph, SectorId i, SectorId j);

}  // namespace sectorflow

#endif
